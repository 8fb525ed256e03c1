"""Stochastic binary systems: states, structure functions, minpaths/mincuts
and exact reliability under independent component failures.

States are handled in two forms. The public form is a ``StateWord``: a tuple
of 0/1 ints, component 1 first. Internally states are integer masks in which
component 1 is the most significant bit, so a mask doubles as the index into
a truth table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Protocol, Sequence, Union

import numpy as np

from .errors import DimensionError, DomainError, ModelError, SizeError, ValidationError

StateWord = tuple[int, ...]
WordLike = Union[str, Sequence[int]]

EVAL_CAP = 24
RELIABILITY_CAP = 20
# Above this size the full truth table is not materialised.
TABLE_CAP = 22


# --------------------------------------------------------------------------
# state words


def word(state: WordLike, n: int | None = None) -> StateWord:
    """Coerce ``"0110"`` or a 0/1 sequence into a StateWord."""
    if isinstance(state, str):
        s = state.strip()
        if not s or any(ch not in "01" for ch in s):
            raise ValidationError(f"not a binary word: {state!r}")
        bits = tuple(int(ch) for ch in s)
    else:
        bits = tuple(int(b) for b in state)
        if any(b not in (0, 1) for b in bits):
            raise ValidationError(f"not a binary word: {state!r}")
    if n is not None and len(bits) != n:
        raise DimensionError(f"state has length {len(bits)}, system has {n} components")
    return bits


def word_str(w: Sequence[int]) -> str:
    return "".join(str(b) for b in w)


def word_to_mask(w: Sequence[int]) -> int:
    mask = 0
    for b in w:
        mask = (mask << 1) | b
    return mask


def mask_to_word(mask: int, n: int) -> StateWord:
    return tuple((mask >> (n - 1 - i)) & 1 for i in range(n))


def component_bit(i: int, n: int) -> int:
    """Mask bit of the 0-based component ``i``."""
    return 1 << (n - 1 - i)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise partial order on states."""
    if len(a) != len(b):
        raise DimensionError("states of different length are incomparable")
    return all(x <= y for x, y in zip(a, b))


def all_masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


# --------------------------------------------------------------------------
# structure functions


class Structure(Protocol):
    """What every representation of a structure function provides."""

    n: int
    #: True when phi is monotonically increasing whatever the parameters.
    monotone_by_construction: bool

    def evaluate(self, mask: int) -> int: ...

    def table(self) -> np.ndarray: ...


@dataclass(frozen=True)
class TruthTable:
    n: int
    bits: tuple[int, ...]
    monotone_by_construction = False

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a system needs at least one component")
        if len(self.bits) != 1 << self.n:
            raise ValidationError(
                f"truth table for {self.n} components needs {1 << self.n} bits, got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ValidationError("truth table entries must be 0 or 1")

    @classmethod
    def from_string(cls, n: int, bits: str) -> "TruthTable":
        return cls(n, word(bits))

    def evaluate(self, mask: int) -> int:
        return self.bits[mask]

    def table(self) -> np.ndarray:
        return np.array(self.bits, dtype=np.uint8)


@dataclass(frozen=True)
class MincutList:
    """phi(s) = 0 iff s lies below some listed mincut.

    The all-zeros state is always a cutset, so an empty list describes the
    parallel system.
    """

    n: int
    cuts: tuple[int, ...]
    monotone_by_construction = True

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a system needs at least one component")
        full = (1 << self.n) - 1
        for c in self.cuts:
            if not 0 <= c <= full:
                raise DimensionError("mincut mask out of range")
            if c == full:
                raise ModelError("the all-ones state cannot be a mincut")
        for i, a in enumerate(self.cuts):
            for b in self.cuts[i + 1:]:
                if a & b in (a, b):
                    raise ModelError(
                        f"mincuts {word_str(mask_to_word(a, self.n))} and "
                        f"{word_str(mask_to_word(b, self.n))} are comparable"
                    )

    def evaluate(self, mask: int) -> int:
        if mask == 0:
            return 0
        return int(not any(mask & ~c == 0 for c in self.cuts))

    def table(self) -> np.ndarray:
        m = all_masks(self.n)
        cut = m == 0
        for c in self.cuts:
            cut |= (m & ~c) == 0
        return (~cut).astype(np.uint8)


@dataclass(frozen=True)
class BinarySystem:
    """A structure function together with per-component probabilities.

    ``probs`` may be left out for purely structural analyses; reliability
    then refuses to run.
    """

    structure: Structure
    probs: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.probs is not None:
            probs = tuple(Fraction(p) for p in self.probs)
            if len(probs) != self.n:
                raise DimensionError(f"{len(probs)} probabilities for {self.n} components")
            if any(not 0 <= p <= 1 for p in probs):
                raise ValidationError("component probabilities must lie in [0, 1]")
            object.__setattr__(self, "probs", probs)

    @property
    def n(self) -> int:
        return self.structure.n

    def with_probs(self, probs: Iterable) -> "BinarySystem":
        return BinarySystem(self.structure, tuple(probs))

    def phi(self, state: WordLike) -> int:
        return self.structure.evaluate(word_to_mask(word(state, self.n)))

    @cached_property
    def table(self) -> np.ndarray:
        if self.n > TABLE_CAP:
            raise SizeError(f"{self.n} components exceed the table cap {TABLE_CAP}")
        t = self.structure.table()
        t.setflags(write=False)
        return t


@dataclass(frozen=True)
class PathCutInventory:
    minpaths: tuple[StateWord, ...]
    mincuts: tuple[StateWord, ...]


@dataclass(frozen=True)
class MonotonicityReport:
    monotone: bool
    counterexample: tuple[StateWord, StateWord] | None = None
    reason: str = ""

    def __bool__(self):
        return self.monotone


# --------------------------------------------------------------------------
# operations


def _check_cap(n: int, cap: int):
    if n > cap:
        raise SizeError(f"{n} components exceed the enumeration cap {cap}")


def eval_state(system: BinarySystem, state: WordLike) -> int:
    return system.phi(state)


def _phi_lookup(system: BinarySystem):
    if system.n <= TABLE_CAP:
        t = system.table
        return lambda mask: int(t[mask])
    memo: dict[int, int] = {}

    def phi(mask):
        v = memo.get(mask)
        if v is None:
            v = memo[mask] = system.structure.evaluate(mask)
        return v

    return phi


def _first_violation(t: np.ndarray, n: int) -> tuple[int, int] | None:
    """Smallest upper state of a covering pair (lower, upper) with
    phi(lower)=1, phi(upper)=0; ties broken towards the rightmost component."""
    m = all_masks(n)
    best = None
    for k in range(n):
        b = 1 << k
        bad = ((m & b) != 0) & (t == 0) & (t[m ^ b] == 1)
        idx = np.flatnonzero(bad)
        if idx.size and (best is None or idx[0] < best[1]):
            best = (int(idx[0]) ^ b, int(idx[0]))
    return best


def is_monotone(system: BinarySystem, cap: int = EVAL_CAP) -> MonotonicityReport:
    """Decide whether ``system`` is an SMBS (increasing, phi(0)=0, phi(1)=1)."""
    n = system.n
    _check_cap(n, cap)
    t = system.table if n <= TABLE_CAP else system.structure.table()
    hit = _first_violation(t, n)
    if hit is not None:
        lo, hi = hit
        return MonotonicityReport(
            False, (mask_to_word(lo, n), mask_to_word(hi, n)), "phi decreases along a covering pair"
        )
    zero, ones = mask_to_word(0, n), mask_to_word((1 << n) - 1, n)
    if t[0] != 0:
        return MonotonicityReport(False, (zero, zero), "phi(0) must be 0")
    if t[-1] != 1:
        return MonotonicityReport(False, (ones, ones), "phi(1) must be 1")
    return MonotonicityReport(True)


def _require_increasing(system: BinarySystem, cap: int):
    _check_cap(system.n, cap)
    if system.structure.monotone_by_construction:
        return
    t = system.table if system.n <= TABLE_CAP else system.structure.table()
    hit = _first_violation(t, system.n)
    if hit is not None:
        lo, hi = (word_str(mask_to_word(x, system.n)) for x in hit)
        raise ModelError(f"structure function is not monotone: phi({lo})=1 > phi({hi})=0")


def _minpath_masks_bfs(system: BinarySystem) -> list[int]:
    # Sweep the lattice upwards from all-zeros, expanding only through cutsets.
    n = system.n
    phi = _phi_lookup(system)
    found = []
    level = {0}
    while level:
        nxt = set()
        for s in sorted(level):
            if phi(s):
                if all(not phi(s ^ (1 << k)) for k in range(n) if s >> k & 1):
                    found.append(s)
                continue
            for k in range(n):
                if not s >> k & 1:
                    nxt.add(s | (1 << k))
        level = nxt
    return sorted(found)


def _mincut_masks_bfs(system: BinarySystem) -> list[int]:
    n = system.n
    full = (1 << n) - 1
    phi = _phi_lookup(system)
    found = []
    level = {full}
    while level:
        nxt = set()
        for s in sorted(level):
            if not phi(s):
                if all(phi(s | (1 << k)) for k in range(n) if not s >> k & 1):
                    found.append(s)
                continue
            for k in range(n):
                if s >> k & 1:
                    nxt.add(s ^ (1 << k))
        level = nxt
    return sorted(found)


def _minpath_masks_sweep(system: BinarySystem) -> list[int]:
    t = system.table.astype(bool)
    m = all_masks(system.n)
    keep = t.copy()
    for k in range(system.n):
        b = 1 << k
        keep &= ~(((m & b) != 0) & t[m ^ b])
    return np.flatnonzero(keep).tolist()


def _mincut_masks_sweep(system: BinarySystem) -> list[int]:
    t = system.table.astype(bool)
    m = all_masks(system.n)
    keep = ~t
    for k in range(system.n):
        b = 1 << k
        keep &= ~(((m & b) == 0) & ~t[m | b])
    return np.flatnonzero(keep).tolist()


def _pick_method(system: BinarySystem, method: str) -> str:
    if method == "auto":
        return "sweep" if system.n <= TABLE_CAP else "bfs"
    if method not in ("sweep", "bfs"):
        raise ValueError(f"unknown enumeration method {method!r}")
    return method


def enumerate_minpaths(system: BinarySystem, cap: int = EVAL_CAP, method: str = "auto") -> list[StateWord]:
    """Minimal pathsets, sorted by truth-table index.

    ``method="bfs"`` walks the lattice from the bottom; ``"sweep"`` tests
    every state against its lower covers on the full table.
    """
    _require_increasing(system, cap)
    if _pick_method(system, method) == "sweep":
        masks = _minpath_masks_sweep(system)
    else:
        masks = _minpath_masks_bfs(system)
    return [mask_to_word(s, system.n) for s in masks]


def enumerate_mincuts(system: BinarySystem, cap: int = EVAL_CAP, method: str = "auto") -> list[StateWord]:
    _require_increasing(system, cap)
    if _pick_method(system, method) == "sweep":
        masks = _mincut_masks_sweep(system)
    else:
        masks = _mincut_masks_bfs(system)
    return [mask_to_word(s, system.n) for s in masks]


def path_cut_inventory(system: BinarySystem, cap: int = EVAL_CAP) -> PathCutInventory:
    return PathCutInventory(
        tuple(enumerate_minpaths(system, cap)), tuple(enumerate_mincuts(system, cap))
    )


def _prob_factors(system: BinarySystem) -> tuple[list[int], list[int], int]:
    """Integer numerators for up/down states over a common denominator."""
    if system.probs is None:
        raise ValidationError("component probabilities are required for reliability")
    den = 1
    for p in system.probs:
        den = den * p.denominator // _gcd(den, p.denominator)
    up = [p.numerator * (den // p.denominator) for p in system.probs]
    down = [den - u for u in up]
    return up, down, den


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _reliability_sweep(system: BinarySystem) -> Fraction:
    up, down, den = _prob_factors(system)
    n = system.n
    t = system.table
    if all(u == up[0] for u in up):
        # i.i.d. components: group pathsets by number of working components
        pop = np.zeros(1 << n, dtype=np.int64)
        m = all_masks(n)
        for k in range(n):
            pop += (m >> k) & 1
        counts = np.bincount(pop[t == 1], minlength=n + 1)
        num = sum(int(c) * up[0] ** k * down[0] ** (n - k) for k, c in enumerate(counts))
        return Fraction(num, den ** n)
    leaves = [1]
    for i in range(n):
        d, u = down[i], up[i]
        leaves = [x * f for x in leaves for f in (d, u)]
    num = sum(leaves[s] for s in np.flatnonzero(t).tolist())
    return Fraction(num, den ** n)


def _reliability_pruned(system: BinarySystem) -> Fraction:
    # Exact sum over pathsets, grouping whole rays: once the working
    # components already form a pathset every completion counts, and once
    # switching all undecided components on still fails none does.
    up, down, den = _prob_factors(system)
    n = system.n
    phi = system.structure.evaluate
    suffix = [1] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * den
    rest = [(1 << (n - i)) - 1 for i in range(n + 1)]  # undecided components from i on

    total = 0
    stack = [(0, 0, 1)]
    while stack:
        i, on, w = stack.pop()
        if not w:
            continue
        if phi(on):
            total += w * suffix[i]
            continue
        if i == n or not phi(on | rest[i]):
            continue
        b = 1 << (n - 1 - i)
        stack.append((i + 1, on, w * down[i]))
        stack.append((i + 1, on | b, w * up[i]))
    return Fraction(total, den ** n)


def reliability(system: BinarySystem, cap: int = RELIABILITY_CAP, method: str = "auto") -> Fraction:
    """Exact probability that the system operates.

    ``method="sweep"`` sums the weight of every pathset over all 2^N states.
    ``method="pruned"`` computes the same sum but collapses whole rays; it
    needs an increasing structure function. ``"auto"`` prefers ``pruned``
    when monotonicity holds by construction.
    """
    _check_cap(system.n, cap)
    if method == "auto":
        method = "pruned" if system.structure.monotone_by_construction else "sweep"
    if method == "sweep":
        return _reliability_sweep(system)
    if method == "pruned":
        _require_increasing(system, cap)
        return _reliability_pruned(system)
    raise ValueError(f"unknown reliability method {method!r}")


# --------------------------------------------------------------------------
# constructors


def system_from_mincuts(n: int, mincuts: Iterable[WordLike], probs=None) -> BinarySystem:
    words = [word(w, n) for w in mincuts]
    masks = tuple(sorted({word_to_mask(w) for w in words}))
    if len(masks) != len(words):
        raise ModelError("duplicate mincut")
    return BinarySystem(MincutList(n, masks), probs)


def truth_table_system(n: int, bits: WordLike, probs=None) -> BinarySystem:
    return BinarySystem(TruthTable(n, word(bits)), probs)


def series(n: int, probs=None) -> BinarySystem:
    full = (1 << n) - 1
    return BinarySystem(MincutList(n, tuple(sorted(full ^ (1 << k) for k in range(n)))), probs)


def parallel(n: int, probs=None) -> BinarySystem:
    return BinarySystem(MincutList(n, (0,)), probs)


def build_sn_family(n: int, probs=None) -> BinarySystem:
    """Two complementary mincuts: the first floor(n/2) components up, the rest down."""
    if n < 4:
        raise DomainError("the S_N family starts at N = 4")
    half = n // 2
    w1 = (1,) * half + (0,) * (n - half)
    w2 = tuple(1 - b for b in w1)
    return system_from_mincuts(n, [w1, w2], probs)
