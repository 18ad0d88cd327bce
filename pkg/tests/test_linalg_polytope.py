import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from gauge_trace.linalg import column_space, matmul, matpow, nullspace, rank, rref, solve
from gauge_trace.polytope import basic_feasible_points, extreme_rays

small_ints = st.integers(min_value=-3, max_value=3)
matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_rank_and_rref_match_sympy(m):
    ref = sympy.Matrix(m)
    assert rank(m) == ref.rank()
    r, pivots = rref(m)
    sr, spiv = ref.rref()
    assert tuple(pivots) == tuple(spiv)
    assert [[Fraction(int(x.p), int(x.q)) for x in sr.row(i)] for i in range(sr.rows)] == r


@given(matrices)
def test_nullspace_matches_sympy(m):
    basis = nullspace(m)
    assert len(basis) == len(m[0]) - sympy.Matrix(m).rank()
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if basis:
        assert sympy.Matrix([list(v) for v in basis]).rank() == len(basis)


@given(matrices)
def test_column_space_spans_image(m):
    cols = column_space(m)
    assert len(cols) == rank(m)
    for j in range(len(m[0])):
        col = [row[j] for row in m]
        stacked = [[c[i] for c in cols] + [col[i]] for i in range(len(m))]
        assert rank(stacked) == len(cols)


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(small_ints, min_size=3, max_size=3))
def test_solve(m, b):
    x = solve(m, b)
    consistent = sympy.Matrix(m).rank() == sympy.Matrix(m).row_join(sympy.Matrix(b)).rank()
    assert (x is not None) == consistent
    if x is not None:
        assert [sum(a * y for a, y in zip(row, x)) for row in m] == [Fraction(v) for v in b]


def test_matpow():
    m = [[1, 1], [1, 0]]
    assert matpow(m, 10) == [[89, 55], [55, 34]]
    assert matpow(m, 0) == [[1, 0], [0, 1]]
    assert matmul(m, m) == [[2, 1], [1, 1]]


def test_extreme_rays_orthant_and_simplex_slice():
    assert extreme_rays(3) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert extreme_rays(2, equalities=[[1, -1]]) == [(1, 1)]
    assert extreme_rays(2, equalities=[[1, 1]]) == []
    assert extreme_rays(2, inequalities=[[-1, 2]]) == [(0, 1), (2, 1)]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_extreme_rays_against_basic_solutions(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    eq = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, 2))]
    ineq = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, 3))]
    rays = extreme_rays(n, eq, ineq)
    got = sorted(tuple(Fraction(x, sum(r)) for x in r) for r in rays)
    E = eq + [[1] * n]
    rhs = [0] * len(eq) + [1]
    G = [[-x for x in r] for r in ineq] + [[-int(i == j) for j in range(n)] for i in range(n)]
    assert got == basic_feasible_points(E, rhs, G, [0] * len(G))
