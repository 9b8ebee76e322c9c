from fractions import Fraction
from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricmrc.errors import DependentGenerators, ZeroVector
from toricmrc.lattice import (StrictLPSystem, determinant, invariant_factors,
                              lp_strict_feasible, nonnegative_solution,
                              normalize_primitive, solve_in_basis)

from oracles import leibniz_det, minor_gcd_invariant_factors

small = st.integers(-6, 6)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@pytest.mark.parametrize("v, expected", [
    ((2, 4, -6), ((1, 2, -3), 2)),
    ((-3, 0, 0), ((-1, 0, 0), 3)),
    ((5,), ((1,), 5)),
])
def test_normalize_primitive(v, expected):
    assert normalize_primitive(v) == expected


def test_normalize_zero_vector():
    with pytest.raises(ZeroVector):
        normalize_primitive((0, 0, 0))


@given(st.lists(small, min_size=1, max_size=5).filter(any))
def test_normalize_idempotent_and_factorizes(v):
    prim, k = normalize_primitive(v)
    assert k > 0
    assert tuple(k * c for c in prim) == tuple(v)
    assert normalize_primitive(prim) == (prim, 1)


@pytest.mark.parametrize("m, expected", [
    ([[1, 0], [0, 1]], [1, 1]),
    ([[1, 0], [0, 2]], [1, 2]),
    ([[1, 0, 0], [1, 0, 1]], [1, 1]),
    ([[2, 4], [6, 8]], [2, 4]),
    ([[0, 0], [0, 0]], []),
])
def test_invariant_factors_examples(m, expected):
    assert invariant_factors(m) == expected


def test_invariant_factors_two_rows_in_z3_by_minors():
    # 1x1 minors gcd 1; 2x2 minors of [[1,0,0],[1,0,1]] are 0, 1, 0 -> gcd 1
    assert minor_gcd_invariant_factors([[1, 0, 0], [1, 0, 1]]) == [1, 1]


@settings(max_examples=150)
@given(matrices())
def test_invariant_factors_match_minor_oracle_and_transpose(m):
    expected = minor_gcd_invariant_factors(m)
    assert invariant_factors(m) == expected
    assert invariant_factors([list(r) for r in zip(*m)]) == expected
    assert all(b % a == 0 for a, b in zip(expected, expected[1:]))


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_leibniz(m):
    assert determinant(m) == leibniz_det(m)


@pytest.mark.parametrize("gens, target, expected", [
    ([(1, 0), (0, 1)], (3, 5), (3, 5)),
    ([(0, 1), (-1, -1)], (-1, 0), (1, 1)),
    ([(1, 0)], (0, 1), None),
    ([], (0, 0), ()),
])
def test_solve_in_basis_examples(gens, target, expected):
    assert solve_in_basis(gens, target) == expected


def test_solve_in_basis_dependent():
    with pytest.raises(DependentGenerators):
        solve_in_basis([(1, 2), (2, 4)], (1, 2))


@settings(max_examples=100)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=n),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=n, max_size=n))))
def test_solve_in_basis_round_trip(data):
    n, gens, coeffs = data
    try:
        rank_ok = solve_in_basis(gens, [0] * n) is not None
    except DependentGenerators:
        return
    assert rank_ok
    c = coeffs[:len(gens)]
    target = [sum(ci * g[i] for ci, g in zip(c, gens)) for i in range(n)]
    assert solve_in_basis(gens, target) == tuple(c)


def test_lp_examples():
    assert lp_strict_feasible(StrictLPSystem(1, [(1,)])) == (Fraction(1),)
    assert lp_strict_feasible(StrictLPSystem(1, [(1,), (-1,)])) is None
    assert lp_strict_feasible(StrictLPSystem(3, [])) == (0, 0, 0)


def test_lp_rejects_ragged_rows():
    with pytest.raises(ValueError):
        StrictLPSystem(2, [(1,)])


def test_nonnegative_solution_small():
    assert nonnegative_solution([[1, 1]], [2]) is not None
    assert nonnegative_solution([[1, 1]], [-1]) is None
    x = nonnegative_solution([[1, -1], [0, 1]], [0, 3])
    assert x == (3, 3)


def _grid_feasible(rows, k, bound=4):
    # homogeneous system: an integer grid point is as good as any rational one
    for x in cartesian(range(-bound, bound + 1), repeat=k):
        if all(sum(a * b for a, b in zip(r, x)) > 0 for r in rows):
            return True
    return False


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3).flatmap(lambda k: st.tuples(
    st.just(k), st.lists(st.lists(st.integers(-3, 3), min_size=k, max_size=k),
                         min_size=1, max_size=6))))
def test_lp_witness_or_grid_infeasible(data):
    k, rows = data
    system = StrictLPSystem(k, rows)
    w = lp_strict_feasible(system)
    if w is not None:
        assert all(sum(a * b for a, b in zip(r, w)) > 0 for r in rows)
    else:
        assert not _grid_feasible(rows, k)
