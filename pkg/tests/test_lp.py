import random
from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from sepsys.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

F = Fraction


def _brute_force(c, A, b):
    """Best basic feasible solution by trying every column basis."""
    A, b = _independent_rows(A, b)
    m, n = len(A), len(c)
    best = None
    for cols in combinations(range(n), m):
        M = [[F(A[i][j]) for j in cols] + [F(b[i])] for i in range(m)]
        # Gauss-Jordan
        ok = True
        for k in range(m):
            piv = next((r for r in range(k, m) if M[r][k] != 0), None)
            if piv is None:
                ok = False
                break
            M[k], M[piv] = M[piv], M[k]
            M[k] = [v / M[k][k] for v in M[k]]
            for r in range(m):
                if r != k and M[r][k]:
                    f = M[r][k]
                    M[r] = [a - f * e for a, e in zip(M[r], M[k])]
        if not ok:
            continue
        x = [F(0)] * n
        for k, j in enumerate(cols):
            x[j] = M[k][-1]
        if any(v < 0 for v in x):
            continue
        val = sum(ci * xi for ci, xi in zip(c, x))
        best = val if best is None or val < best else best
    return best


def _independent_rows(A, b):
    kept, echelon = [], []
    for row, bi in zip(A, b):
        v = [F(a) for a in row]
        for piv, e in echelon:
            if v[piv]:
                f = v[piv] / e[piv]
                v = [x - f * y for x, y in zip(v, e)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is not None:
            echelon.append((piv, v))
            kept.append((row, bi))
    return [r for r, _ in kept], [bi for _, bi in kept]


def test_small_optimum():
    # min -x1 - x2 s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
    r = solve_lp([-1, -1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert r.status == OPTIMAL
    assert r.value == F(-14, 5)
    assert r.x[:2] == (F(8, 5), F(6, 5))
    # dual feasibility and strong duality
    assert sum(y * bi for y, bi in zip(r.duals, [4, 6])) == r.value


def test_redundant_row():
    r = solve_lp([1, 1], [[1, 1], [2, 2]], [1, 2])
    assert r.status == OPTIMAL and r.value == 1


def test_infeasible_and_unbounded():
    assert solve_lp([1, 1], [[1, 1]], [-1]).status == INFEASIBLE
    assert solve_lp([-1, 0], [[1, -1]], [0]).status == UNBOUNDED


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_lps_against_basis_enumeration(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 3), rng.randint(2, 6)
    A = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    # feasible by construction and bounded because costs are non-negative
    x0 = [rng.randint(0, 3) for _ in range(n)]
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    c = [rng.randint(0, 5) for _ in range(n)]
    r = solve_lp(c, A, b)
    assert r.status == OPTIMAL
    assert r.value == _brute_force(c, A, b)
    assert all(sum(F(A[i][j]) * r.x[j] for j in range(n)) == b[i] for i in range(m))
    assert all(v >= 0 for v in r.x)
    # duals satisfy A^T y <= c and b.y = value
    for j in range(n):
        assert sum(A[i][j] * r.duals[i] for i in range(m)) <= c[j]
    assert sum(y * bi for y, bi in zip(r.duals, b)) == r.value
