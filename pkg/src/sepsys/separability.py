"""Deciding separability exactly, with a witness either way.

The max-margin program over hyperplanes with non-negative normal

    max eps  s.t.  n.s >= a0 + eps  (minpaths s),  n.w <= a0  (mincuts w),
                   n >= 0,  sum(n) = 1

is solved through its dual, which has only N + 2 rows:

    min t  s.t.  t >= P_i - C_i  for every component i,
                 P = sum y_s s,  C = sum z_w w,  y, z convex weights.

The optimal values agree. A positive optimum means the dual multipliers of
the small program form the separating hyperplane; otherwise the optimal
convex weights give a minpath combination lying below a mincut combination,
which is then pushed up to meet it inside the hull of the pathsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DegenerateError, ModelError, WitnessError
from .lp import OPTIMAL, solve_lp
from .system import (
    EVAL_CAP,
    BinarySystem,
    StateWord,
    WordLike,
    enumerate_mincuts,
    enumerate_minpaths,
    is_monotone,
    word,
    word_to_mask,
)
from .threshold import ThresholdDescription


@dataclass(frozen=True)
class IntersectionCertificate:
    """A common point of the pathset hull and the cutset hull.

    ``path_side`` holds convex weights over pathsets (minpaths, possibly
    lifted to larger pathsets), ``cut_side`` convex weights over mincuts.
    """

    path_side: tuple[tuple[Fraction, StateWord], ...]
    cut_side: tuple[tuple[Fraction, StateWord], ...]
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class SeparabilityVerdict:
    separable: bool
    margin: Fraction
    hyperplane: ThresholdDescription | None = None
    certificate: IntersectionCertificate | None = None

    @property
    def outcome(self) -> str:
        return "separable" if self.separable else "nonseparable"


def _combine(weighted: Sequence[tuple[Fraction, StateWord]], n: int) -> tuple[Fraction, ...]:
    point = [Fraction(0)] * n
    for lam, w in weighted:
        for i, b in enumerate(w):
            if b:
                point[i] += lam
    return tuple(point)


def _check_antichain(words: Sequence[StateWord], what: str):
    masks = np.array([word_to_mask(w) for w in words], dtype=object if len(words[0]) > 62 else np.int64) if words else None
    for i, a in enumerate(words):
        ma = masks[i]
        below = (masks[i + 1:] & ma) == masks[i + 1:]
        above = (masks[i + 1:] & ma) == ma
        hit = np.flatnonzero(below | above)
        if hit.size:
            raise ModelError(f"{what} are not an antichain: {a} vs {words[i + 1 + int(hit[0])]}")


def _lift(path_side: list[tuple[Fraction, StateWord]], target: Sequence[Fraction]):
    """Raise a convex combination of pathsets coordinatewise up to ``target``.

    Pathsets are closed upwards, so weight sitting on a state with bit i
    clear may be moved to the same state with bit i set. Whole terms are
    moved greedily; at most one term per coordinate is split, which keeps
    the combination short.
    """
    terms: dict[StateWord, Fraction] = {}
    for lam, w in path_side:
        terms[w] = terms.get(w, 0) + lam
    for i in range(len(target)):
        gap = target[i] - sum((lam for w, lam in terms.items() if w[i]), Fraction(0))
        if gap <= 0:
            continue
        for w in sorted(w for w in terms if not w[i]):
            lam = terms[w]
            move = min(lam, gap)
            up = w[:i] + (1,) + w[i + 1:]
            terms[up] = terms.get(up, 0) + move
            if move == lam:
                del terms[w]
            else:
                terms[w] = lam - move
            gap -= move
            if not gap:
                break
    return sorted(((lam, w) for w, lam in terms.items() if lam), key=lambda t: t[1])


def _vacuous_verdict(n: int) -> SeparabilityVerdict:
    # phi == 0: no state satisfies sum(x_i) / N > 2; the margin is unconstrained.
    return SeparabilityVerdict(
        True, Fraction(1), ThresholdDescription((Fraction(1, n),) * n, Fraction(2), "strict")
    )


def separability_margin(minpaths: Sequence[WordLike], mincuts: Sequence[WordLike], n: int) -> SeparabilityVerdict:
    """Solve the max-margin program for the given antichains exactly."""
    P = [word(w, n) for w in minpaths]
    C = [word(w, n) for w in mincuts]
    if not P and not C:
        raise DegenerateError("no minpaths and no mincuts")
    if not C:
        raise ModelError("a monotone system always has a mincut (phi(0) = 0)")
    _check_antichain(P, "minpaths")
    _check_antichain(C, "mincuts")
    if not P:
        return _vacuous_verdict(n)
    return _margin_program(P, C, n)


COLUMN_BATCH = 64


def _margin_program(P: list[StateWord], C: list[StateWord], n: int) -> SeparabilityVerdict:
    # Column generation: solve over a subset of minpaths/mincuts and add the
    # ones the current hyperplane violates until none remain. Each round is
    # exact, so the final round is optimal for the full program.
    if len(P) + len(C) <= 2 * COLUMN_BATCH:
        return _restricted_program(P, C, n)
    subP, subC = set(range(min(len(P), COLUMN_BATCH))), set(range(min(len(C), COLUMN_BATCH)))
    while True:
        verdict, duals = _restricted_program([P[j] for j in sorted(subP)], [C[k] for k in sorted(subC)], n, True)
        normal, alpha0, eps = duals
        slackP = sorted((sum(a for a, b in zip(normal, s) if b) - alpha0 - eps, j) for j, s in enumerate(P) if j not in subP)
        slackC = sorted((alpha0 - sum(a for a, b in zip(normal, w) if b), k) for k, w in enumerate(C) if k not in subC)
        newP = [j for v, j in slackP[:COLUMN_BATCH] if v < 0]
        newC = [k for v, k in slackC[:COLUMN_BATCH] if v < 0]
        if not newP and not newC:
            return verdict
        subP.update(newP)
        subC.update(newC)


def _restricted_program(P: list[StateWord], C: list[StateWord], n: int, with_duals: bool = False):
    # columns: y_s (|P|), z_w (|C|), t+, t-, slack_i (n)
    # rows 0..n-1: -sum y s_i + sum z w_i + t+ - t- - slack_i = 0
    # row n: sum y = 1;  row n+1: sum z = 1
    np_, nc = len(P), len(C)
    ncols = np_ + nc + 2 + n
    A = [[0] * ncols for _ in range(n + 2)]
    for j, s in enumerate(P):
        for i in range(n):
            A[i][j] = -s[i]
        A[n][j] = 1
    for k, w in enumerate(C):
        for i in range(n):
            A[i][np_ + k] = w[i]
        A[n + 1][np_ + k] = 1
    tp, tm = np_ + nc, np_ + nc + 1
    for i in range(n):
        A[i][tp] = 1
        A[i][tm] = -1
        A[i][tm + 1 + i] = -1
    b = [0] * n + [1, 1]
    c = [0] * ncols
    c[tp], c[tm] = 1, -1

    res = solve_lp(c, A, b)
    if res.status != OPTIMAL:
        raise AssertionError(f"margin program unexpectedly {res.status}")
    normal = res.duals[:n]
    alpha0 = -res.duals[n + 1]
    eps = res.duals[n] + res.duals[n + 1]
    if eps != res.value:
        raise AssertionError("strong duality violated")

    if eps > 0:
        hp = ThresholdDescription(tuple(normal), alpha0, "strict")
        if any(hp.value(s) < alpha0 + eps for s in P) or any(hp.value(w) > alpha0 for w in C):
            raise AssertionError("dual multipliers do not separate")
        verdict = SeparabilityVerdict(True, eps, hp)
        return (verdict, (normal, alpha0, eps)) if with_duals else verdict

    x = res.x
    path_side = [(x[j], P[j]) for j in range(np_) if x[j]]
    cut_side = sorted(((x[np_ + k], C[k]) for k in range(nc) if x[np_ + k]), key=lambda t: t[1])
    point = _combine(cut_side, n)
    path_side = _lift(path_side, point)
    cert = IntersectionCertificate(tuple(path_side), tuple(cut_side), point)
    if _combine(path_side, n) != point:
        raise AssertionError("lifted combination misses the common point")
    verdict = SeparabilityVerdict(False, eps, certificate=cert)
    return (verdict, (normal, alpha0, eps)) if with_duals else verdict


def _constant_value(system: BinarySystem) -> int | None:
    t = system.table
    if t.min() == t.max():
        return int(t[0])
    return None


def is_separable(system: BinarySystem, cap: int = EVAL_CAP) -> SeparabilityVerdict:
    """Separability of a monotone system, or of the degenerate phi == 0."""
    report = is_monotone(system, cap)
    if not report:
        const = _constant_value(system)
        if const == 0:
            return _vacuous_verdict(system.n)
        if const == 1:
            raise ModelError("phi == 1 has no cutsets; not a monotone system")
        raise ModelError(f"separability needs a monotone system: {report.reason}")
    return separability_margin(enumerate_minpaths(system, cap), enumerate_mincuts(system, cap), system.n)


def certificate_is_valid(cert: IntersectionCertificate, system: BinarySystem) -> bool:
    """Direct check that both sides are convex combinations meeting at ``point``."""
    n = system.n
    for side, want in ((cert.path_side, 1), (cert.cut_side, 0)):
        if any(lam < 0 for lam, _ in side) or sum(lam for lam, _ in side) != 1:
            return False
        if any(system.phi(w) != want for _, w in side):
            return False
        if _combine(side, n) != tuple(cert.point):
            return False
    return True


def hyperplane_reproduces(system: BinarySystem, desc: ThresholdDescription) -> bool:
    """Exhaustively compare phi with the threshold rule on every state."""
    return bool((system.table == desc.table()).all())


# --------------------------------------------------------------------------
# cost assignments


@dataclass(frozen=True)
class CostAssignment:
    """Non-negative component costs with the cheapest pathset and cutset.

    A cutset costs the sum over its failed components.
    """

    costs: tuple[Fraction, ...]
    min_path_cost: Fraction
    min_cut_cost: Fraction

    def __post_init__(self):
        costs = tuple(Fraction(c) for c in self.costs)
        if any(c < 0 for c in costs):
            raise WitnessError("costs must be non-negative")
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "min_path_cost", Fraction(self.min_path_cost))
        object.__setattr__(self, "min_cut_cost", Fraction(self.min_cut_cost))

    @property
    def total(self) -> Fraction:
        return sum(self.costs, Fraction(0))

    @classmethod
    def for_system(cls, system: BinarySystem, costs, cap: int = EVAL_CAP) -> "CostAssignment":
        costs = tuple(Fraction(c) for c in costs)
        paths = enumerate_minpaths(system, cap)
        cuts = enumerate_mincuts(system, cap)
        if not paths or not cuts:
            raise ModelError("cost assignments need at least one pathset and one cutset")
        path_cost = min(sum((c for c, b in zip(costs, s) if b), Fraction(0)) for s in paths)
        cut_cost = min(sum((c for c, b in zip(costs, w) if not b), Fraction(0)) for w in cuts)
        return cls(costs, path_cost, cut_cost)


def verify_assignment_criterion(assignment: CostAssignment) -> bool:
    return assignment.total < assignment.min_path_cost + assignment.min_cut_cost


def assignment_to_hyperplane(assignment: CostAssignment) -> ThresholdDescription:
    """Threshold at the cheapest pathset cost, nonstrict on pathsets."""
    if not verify_assignment_criterion(assignment):
        raise WitnessError(
            f"S = {assignment.total} is not below "
            f"{assignment.min_path_cost} + {assignment.min_cut_cost}"
        )
    return ThresholdDescription(assignment.costs, assignment.min_path_cost, "nonstrict")


def hyperplane_to_assignment(system: BinarySystem, hyperplane: ThresholdDescription) -> CostAssignment:
    """Read a separating hyperplane's normal as component costs."""
    return CostAssignment.for_system(system, hyperplane.weights)
