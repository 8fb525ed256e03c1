import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import monotone_tables, random_monotone_mincuts
from sepsys.dsep import (
    CUTSET,
    PATHSET,
    HyperplaneCertificate,
    butterfly_certificate,
    glasses_certificate,
    level_of_separability,
    mincut_certificate,
    monma221_certificate,
    verify_certificate,
)
from sepsys.errors import ModelError, SizeError, ValidationError
from sepsys.graph import all_terminal_system, butterfly, cycle, glasses, monma, path
from sepsys.separability import is_separable
from sepsys.system import build_sn_family, enumerate_mincuts, parallel, series, system_from_mincuts, truth_table_system
from sepsys.threshold import ThresholdDescription


def _h(w, a):
    return ThresholdDescription(tuple(w), a, "nonstrict")


def _plain(cert):
    return {(tuple(int(x) for x in h.weights), int(h.alpha0)) for h in cert.hyperplanes}


def test_worked_certificates_verify():
    assert verify_certificate(all_terminal_system(butterfly()), butterfly_certificate())
    assert verify_certificate(all_terminal_system(glasses()), glasses_certificate())
    assert verify_certificate(all_terminal_system(monma(2, 2, 1)), monma221_certificate())


def test_invalid_certificate_counterexample():
    s = all_terminal_system(butterfly())
    only_one = HyperplaneCertificate(PATHSET, (_h([1, 1, 1, 0, 0, 0], 2),))
    check = verify_certificate(s, only_one)
    assert not check
    assert s.phi(check.counterexample) == 0 and only_one.inside(check.counterexample)
    too_strong = HyperplaneCertificate(PATHSET, (_h([1, 1, 1, 0, 0, 0], 3),))
    check = verify_certificate(s, too_strong)
    assert not check and s.phi(check.counterexample) == 1


def test_mincut_certificate_examples():
    assert _plain(mincut_certificate(series(3))) == {((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1)}
    assert _plain(mincut_certificate(build_sn_family(4))) == {((0, 0, 1, 1), 1), ((1, 1, 0, 0), 1)}
    assert _plain(mincut_certificate(parallel(2))) == {((1, 1), 1)}
    with pytest.raises(ModelError):
        mincut_certificate(truth_table_system(2, "0110"))


def test_level_examples():
    assert level_of_separability(all_terminal_system(path(5)), 3).d == 1
    for g in (butterfly(), glasses(), monma(2, 2, 1)):
        r = level_of_separability(all_terminal_system(g), 3)
        assert r.d == 2
        assert verify_certificate(all_terminal_system(g), r.certificate)
    r = level_of_separability(build_sn_family(4), 3)
    assert r.d == 2


def test_level_exceeded_and_caps():
    r = level_of_separability(all_terminal_system(butterfly()), 1)
    assert r.exceeded and r.certificate is None
    with pytest.raises(SizeError):
        level_of_separability(series(13), 2)
    with pytest.raises(ValidationError):
        level_of_separability(series(3), 0)


def test_cutset_side_certificate():
    # S_4: both mincuts stay at or below 2, each minpath exceeds one bound
    s = build_sn_family(4)
    cert = HyperplaneCertificate(CUTSET, (_h([0, 2, 1, 1], 2), _h([2, 0, 1, 1], 2)))
    assert verify_certificate(s, cert)
    wrong = HyperplaneCertificate(CUTSET, (_h([1, 1, 0, 0], 1), _h([0, 0, 1, 1], 1)))
    check = verify_certificate(s, wrong)
    assert not check and check.counterexample == (0, 0, 1, 1)


def test_augmenting_with_trivial_inequality_keeps_validity():
    s = all_terminal_system(butterfly())
    cert = butterfly_certificate()
    more = HyperplaneCertificate(PATHSET, cert.hyperplanes + (_h([1] * 6, 0),))
    assert verify_certificate(s, more)


def test_d1_iff_separable_exhaustive_n4():
    for n in range(1, 5):
        for table in monotone_tables(n):
            s = truth_table_system(n, table)
            r = level_of_separability(s, 1)
            assert (r.d == 1) == is_separable(s).separable


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10))
def test_mincut_bound(seed, n):
    rng = random.Random(seed)
    s = system_from_mincuts(n, random_monotone_mincuts(rng, n))
    cert = mincut_certificate(s)
    mu = len(enumerate_mincuts(s))
    assert cert.d == mu and verify_certificate(s, cert)
    if n <= 6:
        r = level_of_separability(s, mu)
        assert r.d is not None and r.d <= mu


def test_cycles_are_level_one():
    assert level_of_separability(all_terminal_system(cycle(6)), 2).d == 1
