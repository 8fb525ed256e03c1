"""Exact rational simplex.

Solves ``min c.x  s.t.  A x = b, x >= 0`` over the rationals with a two-phase
tableau method. The tableau is kept integral by fraction-free (Edmonds /
Bareiss) pivoting: every entry is an integer and the true tableau is the
integer array divided by a common positive denominator, which is always the
previous pivot. Entering columns follow Dantzig's rule until a degenerate
pivot happens; from then on Bland's rule is used for as long as pivots stay
degenerate, which rules out cycling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    duals: tuple[Fraction, ...] | None = None  # y with A^T y <= c at optimum
    basis: tuple[int, ...] | None = None
    pivots: int = 0


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows  # each row: ncols coefficients followed by the rhs
        self.basis = basis
        self.ncols = ncols
        self.den = 1
        self.obj: list[int] = []
        self.pivots = 0

    def pivot(self, r: int, s: int):
        rows, den = self.rows, self.den
        pr = rows[r]
        p = pr[s]
        assert p > 0
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[s]
            if f:
                rows[i] = [(a * p - f * b) // den for a, b in zip(row, pr)]
            elif p != den:
                rows[i] = [a * p // den for a in row]
        f = self.obj[s]
        if f:
            self.obj = [(a * p - f * b) // den for a, b in zip(self.obj, pr)]
        elif p != den:
            self.obj = [a * p // den for a in self.obj]
        self.den = p
        self.basis[r] = s
        self.pivots += 1

    def set_objective(self, cost: list[int]):
        # reduced costs times den: den*c_j - sum_i c_{B_i} * T[i][j]
        den = self.den
        obj = [den * c for c in cost] + [0]
        for i, row in enumerate(self.rows):
            cb = cost[self.basis[i]]
            if cb:
                obj = [o - cb * a for o, a in zip(obj, row)]
        self.obj = obj

    def run(self, allowed: set[int] | None = None) -> bool:
        """Pivot to optimality. Returns False if unbounded."""
        bland = False
        cols = range(self.ncols) if allowed is None else sorted(allowed)
        while True:
            obj = self.obj
            s = -1
            if bland:
                for j in cols:
                    if obj[j] < 0:
                        s = j
                        break
            else:
                best = 0
                for j in cols:
                    if obj[j] < best:
                        best, s = obj[j], j
            if s < 0:
                return True
            r = -1
            for i, row in enumerate(self.rows):
                a = row[s]
                if a <= 0:
                    continue
                if r < 0:
                    r = i
                    continue
                # compare row[-1]/a with rows[r][-1]/rows[r][s]
                lhs = row[-1] * self.rows[r][s]
                rhs = self.rows[r][-1] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[r]):
                    r = i
            if r < 0:
                return False
            bland = self.rows[r][-1] == 0
            self.pivot(r, s)


def _integer_row(coeffs: Sequence[Fraction], rhs: Fraction) -> list[int]:
    scale = lcm(*(c.denominator for c in coeffs), rhs.denominator)
    row = [int(c * scale) for c in coeffs] + [int(rhs * scale)]
    if row[-1] < 0:
        row = [-a for a in row]
    return row


def _solve_transposed(B: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve B^T y = rhs by Gauss-Jordan elimination over the rationals."""
    k = len(B)
    M = [[B[r][c] for r in range(k)] + [rhs[c]] for c in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(k):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][k] for r in range(k)]


def solve_lp(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Minimise ``c.x`` subject to ``A x = b`` and ``x >= 0`` exactly."""
    c = [Fraction(v) for v in c]
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    m, n = len(A), len(c)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")

    rows = [_integer_row(A[i], b[i]) for i in range(m)]
    # reuse existing +unit columns as starting basis where possible
    basis = [-1] * m
    for j in range(n):
        nz = [i for i in range(m) if rows[i][j] != 0]
        if len(nz) == 1:
            i = nz[0]
            if basis[i] < 0 and rows[i][j] > 0 and rows[i][j] == 1:
                basis[i] = j
    art = []
    for i in range(m):
        if basis[i] < 0:
            art.append(i)
    width = n + len(art)
    for i in range(m):
        rows[i] = rows[i][:n] + [0] * len(art) + rows[i][n:]
    for k, i in enumerate(art):
        rows[i][n + k] = 1
        basis[i] = n + k
    tab = _Tableau(rows, basis, width)

    if art:
        tab.set_objective([0] * n + [1] * len(art))
        tab.run()
        if tab.obj[-1] != 0:  # -den * (sum of artificials)
            return LPResult(INFEASIBLE, pivots=tab.pivots)
        # drive artificials out of the basis; drop rows that are redundant
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n:
                row = tab.rows[i]
                j = next((j for j in range(n) if row[j] != 0), -1)
                if j < 0:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                if row[j] < 0:
                    tab.rows[i] = [-a for a in row]  # rhs is zero here
                tab.obj = [0] * (width + 1)
                tab.pivot(i, j)
            i += 1

    tab.set_objective([int(v) for v in _scaled_cost(c)] + [0] * len(art))
    if not tab.run(allowed=set(range(n))):
        return LPResult(UNBOUNDED, pivots=tab.pivots)

    x = [Fraction(0)] * n
    for i, j in enumerate(tab.basis):
        x[j] = Fraction(tab.rows[i][-1], tab.den)
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))

    # duals from the original data: B^T y = c_B on the surviving rows
    kept = _kept_rows(A, b, tab, n)
    B = [[A[r][j] for j in tab.basis] for r in kept]
    yk = _solve_transposed(B, [c[j] for j in tab.basis])
    y = [Fraction(0)] * m
    for r, v in zip(kept, yk):
        y[r] = v
    return LPResult(OPTIMAL, tuple(x), value, tuple(y), tuple(tab.basis), tab.pivots)


def _scaled_cost(c: list[Fraction]) -> list[int]:
    scale = lcm(*(v.denominator for v in c)) if c else 1
    return [int(v * scale) for v in c]


def _kept_rows(A, b, tab: _Tableau, n: int) -> list[int]:
    """Indices of original rows that survive redundancy removal.

    Rows were only ever deleted when linearly dependent on the others, so a
    maximal independent subset of size len(basis) is picked greedily.
    """
    k = len(tab.basis)
    if k == len(A):
        return list(range(len(A)))
    cols = tab.basis
    kept, echelon = [], []
    for r in range(len(A)):
        v = [A[r][j] for j in cols]
        for piv, erow in echelon:
            if v[piv] != 0:
                f = v[piv] / erow[piv]
                v = [a - f * e for a, e in zip(v, erow)]
        piv = next((j for j, a in enumerate(v) if a != 0), -1)
        if piv >= 0:
            echelon.append((piv, v))
            kept.append(r)
            if len(kept) == k:
                break
    return kept
