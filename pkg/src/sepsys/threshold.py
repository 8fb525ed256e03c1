"""Threshold (hyperplane) systems and the PARTITION reduction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Literal, Sequence

import numpy as np

from .errors import DegenerateError, DomainError, ValidationError
from .system import (
    RELIABILITY_CAP,
    BinarySystem,
    WordLike,
    _check_cap,
    all_masks,
    reliability,
    word,
    word_to_mask,
)

Comparison = Literal["strict", "nonstrict"]


@dataclass(frozen=True)
class ThresholdDescription:
    """phi(s) = 1 iff sum(w_i s_i) > alpha0 (strict) or >= alpha0 (nonstrict).

    Doubles as a structure function, so it can back a BinarySystem directly.
    """

    weights: tuple[Fraction, ...]
    alpha0: Fraction
    path_comparison: Comparison = "strict"
    monotone_by_construction = True

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if not weights:
            raise DomainError("a hyperplane needs at least one weight")
        if any(w < 0 for w in weights):
            raise ValidationError("hyperplane weights must be non-negative")
        if self.path_comparison not in ("strict", "nonstrict"):
            raise ValidationError(f"unknown comparison {self.path_comparison!r}")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "alpha0", Fraction(self.alpha0))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def strict(self) -> bool:
        return self.path_comparison == "strict"

    def value(self, state: Sequence[int]) -> Fraction:
        return sum((w for w, b in zip(self.weights, state) if b), Fraction(0))

    def holds(self, total: Fraction) -> bool:
        return total > self.alpha0 if self.strict else total >= self.alpha0

    def evaluate(self, mask: int) -> int:
        n = self.n
        total = sum((w for i, w in enumerate(self.weights) if mask >> (n - 1 - i) & 1), Fraction(0))
        return int(self.holds(total))

    def integer_form(self) -> tuple[list[int], int]:
        """Weights and threshold scaled by the lcm of all denominators."""
        scale = lcm(*(w.denominator for w in self.weights), self.alpha0.denominator)
        return [int(w * scale) for w in self.weights], int(self.alpha0 * scale)

    def table(self) -> np.ndarray:
        w, a = self.integer_form()
        n = self.n
        if sum(w) < 2**62 and abs(a) < 2**62:
            m = all_masks(n)
            total = np.zeros(1 << n, dtype=np.int64)
            for i, wi in enumerate(w):
                total += ((m >> (n - 1 - i)) & 1) * wi
            hit = total > a if self.strict else total >= a
            return hit.astype(np.uint8)
        # Weights too large for int64: fall back to exact Python integers.
        sums = [0]
        for wi in w:
            sums = [s + x for s in sums for x in (0, wi)]
        return np.array([(s > a) if self.strict else (s >= a) for s in sums], dtype=np.uint8)


def threshold_eval(desc: ThresholdDescription, state: WordLike) -> int:
    return desc.evaluate(word_to_mask(word(state, desc.n)))


def normalize_hyperplane(desc: ThresholdDescription) -> ThresholdDescription:
    """Rescale so the weights sum to one; the induced phi is unchanged."""
    total = sum(desc.weights)
    if total == 0:
        raise DegenerateError("cannot normalise an all-zero normal vector")
    return ThresholdDescription(
        tuple(w / total for w in desc.weights), desc.alpha0 / total, desc.path_comparison
    )


def threshold_system(weights, alpha0, path_comparison: Comparison = "strict", probs=None) -> BinarySystem:
    return BinarySystem(ThresholdDescription(tuple(weights), alpha0, path_comparison), probs)


# --------------------------------------------------------------------------
# PARTITION


@dataclass(frozen=True)
class PartitionInstance:
    values: tuple[int, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise DomainError("PARTITION instance must not be empty")
        for v in values:
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValidationError(f"PARTITION values must be positive integers, got {v!r}")
        object.__setattr__(self, "values", values)

    @property
    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class PartitionResult:
    answer: bool
    witness: tuple[int, ...] | None  # 1-based indices
    difference: Fraction  # R_S2(1/2) - R_S1(1/2)
    half_sum_count: int


def partition_reduction(instance: PartitionInstance, *, literal: bool = False) -> tuple[BinarySystem, BinarySystem]:
    """Two nonstrict threshold systems with weights a_i / s and all p_i = 1/2.

    S2 has threshold 1/2. S1 has threshold 1/2 + 1/(2s), half the spacing
    between attainable weighted sums, so that R_S2 - R_S1 is exactly the
    probability of hitting 1/2. ``literal=True`` uses 1/2 + n_min/2 instead;
    the two agree whenever min(a_i) = 1 and the literal form over-counts
    otherwise (sums strictly between 1/2 and 1/2 + n_min/2 slip in).
    """
    s = instance.total
    weights = tuple(Fraction(a, s) for a in instance.values)
    half = Fraction(1, 2)
    step = min(weights) / 2 if literal else Fraction(1, 2 * s)
    probs = (half,) * len(weights)
    s1 = BinarySystem(ThresholdDescription(weights, half + step, "nonstrict"), probs)
    s2 = BinarySystem(ThresholdDescription(weights, half, "nonstrict"), probs)
    return s1, s2


def partition_decide(instance: PartitionInstance, cap: int = RELIABILITY_CAP) -> PartitionResult:
    """Decide PARTITION by running the reduction through exact reliability.

    The witness is the first half-sum subset in binary counting order with
    a_1 as the lowest bit.
    """
    n = len(instance.values)
    _check_cap(n, cap)
    s1, s2 = partition_reduction(instance)
    difference = reliability(s2, cap, method="sweep") - reliability(s1, cap, method="sweep")

    values = instance.values
    s = instance.total
    sums = [0]
    for a in values:  # sums[mask] with a_1 on bit 0
        sums = sums + [x + a for x in sums]
    hits = [mask for mask, x in enumerate(sums) if 2 * x == s]
    witness = None
    if hits:
        witness = tuple(i + 1 for i in range(n) if hits[0] >> i & 1)
    if difference != Fraction(len(hits), 1 << n):
        raise AssertionError("reliability difference disagrees with the half-sum count")
    return PartitionResult(difference > 0, witness, difference, len(hits))
