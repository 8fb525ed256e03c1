import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_mincuts, brute_minpaths, brute_system_reliability, random_monotone_mincuts
from sepsys.errors import DimensionError, DomainError, ModelError, SizeError, ValidationError
from sepsys.graph import all_terminal_system, butterfly, cycle
from sepsys.system import (
    BinarySystem,
    TruthTable,
    build_sn_family,
    enumerate_mincuts,
    enumerate_minpaths,
    eval_state,
    is_monotone,
    leq,
    parallel,
    path_cut_inventory,
    reliability,
    series,
    system_from_mincuts,
    truth_table_system,
    word,
)

half = Fraction(1, 2)


def test_eval_series_and_cycle():
    s = series(3)
    assert eval_state(s, "111") == 1
    assert all(eval_state(s, w) == 0 for w in product((0, 1), repeat=3) if 0 in w)
    assert eval_state(all_terminal_system(cycle(3)), "110") == 1


def test_eval_dimension_mismatch():
    with pytest.raises(DimensionError):
        eval_state(series(3), "11")


def test_truth_table_bit_order():
    # component 1 is the most significant bit of the table index
    t = truth_table_system(2, "0010")
    assert eval_state(t, "10") == 1
    assert eval_state(t, "01") == 0


def test_is_monotone_examples():
    assert is_monotone(series(3))
    xor = truth_table_system(2, "0110")
    rep = is_monotone(xor)
    assert not rep
    assert rep.counterexample == ((1, 0), (1, 1))
    one = truth_table_system(2, "1111")
    rep = is_monotone(one)
    assert not rep and "phi(0)" in rep.reason


def test_is_monotone_cap():
    with pytest.raises(SizeError):
        is_monotone(series(5), cap=4)


def test_minpaths_mincuts_examples():
    assert enumerate_minpaths(series(2)) == [(1, 1)]
    assert sorted(enumerate_minpaths(parallel(2))) == [(0, 1), (1, 0)]
    assert sorted(enumerate_minpaths(all_terminal_system(cycle(3)))) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert sorted(enumerate_mincuts(series(2))) == [(0, 1), (1, 0)]
    assert enumerate_mincuts(parallel(2)) == [(0, 0)]


def test_butterfly_mincuts_match_brute_force():
    g = butterfly()
    s = all_terminal_system(g)
    phi = s.phi
    cuts = enumerate_mincuts(s)
    assert sorted(cuts) == sorted(brute_mincuts(phi, 6))
    # every mincut fails exactly two edges of one triangle
    for w in cuts:
        down = [i for i, b in enumerate(w) if not b]
        assert len(down) == 2 and (max(down) < 3 or min(down) >= 3)
    assert len(cuts) == 6


def test_minpaths_reject_nonmonotone():
    with pytest.raises(ModelError):
        enumerate_minpaths(truth_table_system(2, "0110"))


def test_reliability_examples():
    assert reliability(series(2, (half, half))) == Fraction(1, 4)
    assert reliability(all_terminal_system(cycle(3), (half,) * 3)) == half
    assert reliability(series(4, (1,) * 4)) == 1


def test_reliability_needs_probs():
    with pytest.raises(ValidationError):
        reliability(series(2))


def test_system_from_mincuts_examples():
    assert system_from_mincuts(2, ["01", "10"]).table.tolist() == series(2).table.tolist()
    s4 = system_from_mincuts(4, ["1100", "0011"])
    assert eval_state(s4, "1010") == 1 and eval_state(s4, "0101") == 1
    one = system_from_mincuts(1, [])
    assert one.table.tolist() == [0, 1]
    with pytest.raises(ModelError):
        system_from_mincuts(3, ["110", "100"])


def test_sn_family():
    assert sorted(enumerate_mincuts(build_sn_family(4))) == [(0, 0, 1, 1), (1, 1, 0, 0)]
    assert sorted(enumerate_mincuts(build_sn_family(5))) == [(0, 0, 1, 1, 1), (1, 1, 0, 0, 0)]
    assert sorted(enumerate_mincuts(build_sn_family(6))) == [(0, 0, 0, 1, 1, 1), (1, 1, 1, 0, 0, 0)]
    with pytest.raises(DomainError):
        build_sn_family(3)


def test_inventory_is_antichain_and_minimal():
    s = all_terminal_system(butterfly())
    inv = path_cut_inventory(s)
    for group in (inv.minpaths, inv.mincuts):
        for a in group:
            for b in group:
                assert a == b or not leq(a, b)


def _random_system(seed, n):
    rng = random.Random(seed)
    return system_from_mincuts(n, random_monotone_mincuts(rng, n))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_rays_and_duality(seed, n):
    s = _random_system(seed, n)
    P = enumerate_minpaths(s)
    C = enumerate_mincuts(s)
    assert sorted(P) == brute_minpaths(s.phi, n)
    assert sorted(C) == brute_mincuts(s.phi, n)
    for w in product((0, 1), repeat=n):
        phi = eval_state(s, w)
        assert phi == int(any(leq(p, w) for p in P))
        assert phi == int(not any(leq(w, c) for c in C))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7))
def test_sweep_bfs_pruned_agree(seed, n):
    rng = random.Random(seed)
    probs = tuple(Fraction(rng.randint(0, 6), 6) for _ in range(n))
    s = _random_system(seed, n).with_probs(probs)
    assert enumerate_minpaths(s, method="sweep") == enumerate_minpaths(s, method="bfs")
    assert enumerate_mincuts(s, method="sweep") == enumerate_mincuts(s, method="bfs")
    want = brute_system_reliability(s.phi, n, probs)
    assert reliability(s, method="sweep") == want
    assert reliability(s, method="pruned") == want


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_reliability_monotone_in_each_p(seed, n):
    rng = random.Random(seed)
    probs = [Fraction(rng.randint(0, 8), 8) for _ in range(n)]
    s = _random_system(seed, n).with_probs(probs)
    i = rng.randrange(n)
    bumped = list(probs)
    bumped[i] = min(Fraction(1), probs[i] + Fraction(1, 8))
    assert reliability(s.with_probs(bumped)) >= reliability(s)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_deterministic_probs_give_phi(seed, n):
    rng = random.Random(seed)
    w = tuple(rng.randint(0, 1) for _ in range(n))
    s = _random_system(seed, n).with_probs(w)
    assert reliability(s) == eval_state(s, w)


def test_truth_table_validation():
    with pytest.raises(ValidationError):
        TruthTable(2, (0, 1, 1))
    with pytest.raises(ValidationError):
        BinarySystem(TruthTable(1, (0, 1)), (Fraction(3, 2),))
    assert word("0101") == (0, 1, 0, 1)
