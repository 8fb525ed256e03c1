"""Level of separability: certificates made of several half-spaces.

A pathset-side certificate is a list of inequalities ``w.x >= alpha`` that
every pathset satisfies and that every cutset breaks at least once. A
cutset-side certificate uses ``w.x <= alpha`` with the roles swapped. All
normals are non-negative, so it is enough to check the minpaths and mincuts
on both clauses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import ModelError, SizeError, ValidationError
from .separability import separability_margin
from .system import (
    EVAL_CAP,
    BinarySystem,
    StateWord,
    enumerate_mincuts,
    enumerate_minpaths,
    is_monotone,
    mask_to_word,
)
from .threshold import ThresholdDescription

PATHSET = "pathset"
CUTSET = "cutset"
SIDES = (PATHSET, CUTSET)
SEARCH_CAP = 12


@dataclass(frozen=True)
class HyperplaneCertificate:
    """``side`` is "pathset" (w.x >= alpha) or "cutset" (w.x <= alpha)."""

    side: str
    hyperplanes: tuple[ThresholdDescription, ...]

    def __post_init__(self):
        if self.side not in SIDES:
            raise ValidationError(f"unknown certificate side {self.side!r}")
        hs = tuple(self.hyperplanes)
        if not hs:
            raise ValidationError("a certificate needs at least one hyperplane")
        if len({h.n for h in hs}) != 1:
            raise ValidationError("hyperplanes of different dimensions")
        object.__setattr__(self, "hyperplanes", hs)

    @property
    def d(self) -> int:
        return len(self.hyperplanes)

    @property
    def n(self) -> int:
        return self.hyperplanes[0].n

    def satisfies(self, h: ThresholdDescription, state: Sequence[int]) -> bool:
        v = h.value(state)
        return v >= h.alpha0 if self.side == PATHSET else v <= h.alpha0

    def inside(self, state: Sequence[int]) -> bool:
        return all(self.satisfies(h, state) for h in self.hyperplanes)


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    counterexample: StateWord | None = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def _hyperplane(weights, alpha) -> ThresholdDescription:
    return ThresholdDescription(tuple(weights), alpha, "nonstrict")


def verify_certificate(system: BinarySystem, cert: HyperplaneCertificate, cap: int = EVAL_CAP) -> CertificateCheck:
    """Exhaustive check over all 2^N states."""
    n = system.n
    if n > cap:
        raise SizeError(f"N = {n} exceeds the enumeration cap {cap}")
    if cert.n != n:
        raise ValidationError(f"certificate has dimension {cert.n}, system has {n}")
    table = system.table
    want = 1 if cert.side == PATHSET else 0
    for mask in range(1 << n):
        state = mask_to_word(mask, n)
        inside = cert.inside(state)
        if table[mask] == want and not inside:
            return CertificateCheck(False, state, f"{cert.side} outside the intersection")
        if table[mask] != want and inside:
            other = CUTSET if cert.side == PATHSET else PATHSET
            return CertificateCheck(False, state, f"{other} satisfies every inequality")
    return CertificateCheck(True)


def _require_smbs(system: BinarySystem, cap: int):
    report = is_monotone(system, cap)
    if not report:
        raise ModelError(f"certificates need a monotone system: {report.reason}")


def mincut_certificate(system: BinarySystem, cap: int = EVAL_CAP) -> HyperplaneCertificate:
    """One inequality sum_{j failed in w} x_j >= 1 per mincut w."""
    _require_smbs(system, cap)
    hs = tuple(_hyperplane([1 - b for b in w], 1) for w in enumerate_mincuts(system, cap))
    cert = HyperplaneCertificate(PATHSET, hs)
    check = verify_certificate(system, cert, cap)
    if not check:
        raise AssertionError(f"mincut certificate fails at {check.counterexample}")
    return cert


@dataclass(frozen=True)
class LevelResult:
    """``d`` is None when no certificate with at most ``max_d`` hyperplanes exists."""

    d: int | None
    certificate: HyperplaneCertificate | None
    max_d: int

    @property
    def exceeded(self) -> bool:
        return self.d is None


def _integer_hyperplane(weights, alpha) -> tuple[list[Fraction], Fraction]:
    vals = list(weights) + [alpha]
    scale = lcm(*(Fraction(v).denominator for v in vals))
    ints = [int(Fraction(v) * scale) for v in vals]
    g = gcd(*ints) or 1
    return [Fraction(v // g) for v in ints[:-1]], Fraction(ints[-1] // g)


class _GroupSearch:
    """Partition ``excluded`` into at most d groups, each strictly separable
    from all of ``included`` by one hyperplane."""

    def __init__(self, included: list[StateWord], excluded: list[StateWord], side: str, n: int):
        self.inc = included
        self.exc = excluded
        self.side = side
        self.n = n
        self.memo: dict[frozenset, bool] = {}

    def _verdict(self, group: Sequence[StateWord]):
        if self.side == PATHSET:
            return separability_margin(self.inc, list(group), self.n)
        return separability_margin(list(group), self.inc, self.n)

    def ok(self, idx: frozenset) -> bool:
        hit = self.memo.get(idx)
        if hit is None:
            hit = self._verdict([self.exc[i] for i in sorted(idx)]).separable
            self.memo[idx] = hit
        return hit

    def hyperplane(self, idx: frozenset) -> ThresholdDescription:
        v = self._verdict([self.exc[i] for i in sorted(idx)])
        hp = v.hyperplane
        if self.side == PATHSET:
            # included pathsets reach alpha0 + margin, the group stays at or below alpha0
            w, a = _integer_hyperplane(hp.weights, hp.alpha0 + v.margin)
        else:
            w, a = _integer_hyperplane(hp.weights, hp.alpha0)
        return _hyperplane(w, a)

    def search(self, d: int) -> list[frozenset] | None:
        k = len(self.exc)
        if k == 0:
            return []
        # elements that pairwise conflict must sit in different groups
        order = self._order()
        groups: list[set[int]] = []

        def place(pos: int) -> bool:
            if pos == k:
                return True
            e = order[pos]
            for g in groups:
                cand = frozenset(g | {e})
                if self.ok(cand):
                    g.add(e)
                    if place(pos + 1):
                        return True
                    g.discard(e)
            if len(groups) < d:
                groups.append({e})
                if place(pos + 1):
                    return True
                groups.pop()
            return False

        if place(0):
            return [frozenset(g) for g in groups]
        return None

    def _order(self) -> list[int]:
        k = len(self.exc)
        conflicts = [0] * k
        for i in range(k):
            for j in range(i + 1, k):
                if not self.ok(frozenset((i, j))):
                    conflicts[i] += 1
                    conflicts[j] += 1
        return sorted(range(k), key=lambda i: (-conflicts[i], i))


def level_of_separability(system: BinarySystem, max_d: int, cap: int = SEARCH_CAP) -> LevelResult:
    """Least d over both side conventions; the pathset side wins ties."""
    n = system.n
    if n > cap:
        raise SizeError(f"N = {n} exceeds the search cap {cap}")
    if max_d < 1:
        raise ValidationError("max_d must be at least 1")
    _require_smbs(system, cap)
    P = enumerate_minpaths(system, cap)
    C = enumerate_mincuts(system, cap)
    searches = {PATHSET: _GroupSearch(P, C, PATHSET, n), CUTSET: _GroupSearch(C, P, CUTSET, n)}
    for d in range(1, max_d + 1):
        for side in SIDES:
            s = searches[side]
            if d > len(s.exc):
                continue
            groups = s.search(d)
            if groups is None:
                continue
            hs = tuple(s.hyperplane(g) for g in sorted(groups, key=min))
            cert = HyperplaneCertificate(side, hs)
            check = verify_certificate(system, cert, cap)
            if not check:
                raise AssertionError(f"search produced an invalid certificate at {check.counterexample}")
            return LevelResult(len(hs), cert, max_d)
    return LevelResult(None, None, max_d)


# --------------------------------------------------------------------------
# worked certificates for the named graphs (edge order as in graph.py)


def butterfly_certificate() -> HyperplaneCertificate:
    return HyperplaneCertificate(
        PATHSET,
        (_hyperplane([1, 1, 1, 0, 0, 0], 2), _hyperplane([0, 0, 0, 1, 1, 1], 2)),
    )


def glasses_certificate() -> HyperplaneCertificate:
    return HyperplaneCertificate(
        PATHSET,
        (_hyperplane([1, 1, 1, 0, 0, 0, 3], 5), _hyperplane([0, 0, 0, 1, 1, 1, 0], 2)),
    )


def monma221_certificate() -> HyperplaneCertificate:
    # edges: x1 x2 (first path), y1 y2 (second path), z (direct edge)
    return HyperplaneCertificate(
        PATHSET,
        (_hyperplane([10, 10, 1, 1, 1], 12), _hyperplane([1, 1, 10, 10, 1], 12)),
    )
