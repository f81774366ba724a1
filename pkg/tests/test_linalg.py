from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hqft.errors import DegeneratePairing, InconsistentSystem, NotSquare
from hqft.linalg import (Matrix, canonical_element, charpoly, format_scalar, rational_roots, scalar,
                         solve_linear, trace)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def square(n):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n)


def _sym(M):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in M.rows])


def test_scalar_parsing():
    assert scalar("3/6") == F(1, 2)
    assert scalar(2) == F(2)
    assert format_scalar(F(-4, 6)) == "-2/3"
    assert format_scalar(F(5)) == "5"
    with pytest.raises(TypeError):
        scalar(0.5)


def test_solve_examples():
    assert solve_linear(Matrix([[1]]), [1]) == (F(1),)
    assert solve_linear(Matrix([[2, 0], [0, 3]]), [1, 1]) == (F(1, 2), F(1, 3))
    with pytest.raises(InconsistentSystem):
        solve_linear(Matrix([[1, 1], [1, 1]]), [1, 2])


def test_underdetermined_gives_echelon_solution():
    x = solve_linear(Matrix([[1, 1]]), [3])
    assert x == (F(3), F(0))


def test_trace_examples():
    assert trace(Matrix.identity(2)) == 2
    assert trace(Matrix([[0, 1], [0, 0]])) == 0
    with pytest.raises(NotSquare):
        trace(Matrix([[1, 2]]))


def test_canonical_element_examples():
    assert canonical_element(Matrix([[1]])).coeffs == Matrix([[1]])
    assert canonical_element(Matrix([[2]])).coeffs == Matrix([[F(1, 2)]])
    assert canonical_element(Matrix([[0, 1], [1, 0]])).coeffs == Matrix([[0, 1], [1, 0]])
    with pytest.raises(DegeneratePairing):
        canonical_element(Matrix([[1, 1], [1, 1]]))


def _recovers(E, C):
    # p_k = sum_ij c_ij E(p_k, q_j) p_i  and  q_k = sum_ij c_ij E(p_i, q_k) q_j
    n = E.nrows
    for k in range(n):
        for i in range(n):
            assert sum(C[i, j] * E[k, j] for j in range(n)) == (1 if i == k else 0)
            assert sum(C[j, i] * E[j, k] for j in range(n)) == (1 if i == k else 0)


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_canonical_element_recovery(rows):
    E = Matrix(rows)
    if not E.is_invertible():
        return
    _recovers(E, canonical_element(E).coeffs)


@settings(max_examples=60, deadline=None)
@given(square(3), square(3))
def test_trace_formula_through_canonical_element(m, e):
    M, E = Matrix(m), Matrix(e)
    if not E.is_invertible():
        return
    C = canonical_element(E).coeffs
    n = 3
    # Tr(M) = sum_ij c_ij E(M p_i, q_j)
    total = sum(C[i, j] * sum(M[k, i] * E[k, j] for k in range(n))
                for i in range(n) for j in range(n))
    assert total == trace(M)


@settings(max_examples=60, deadline=None)
@given(square(2), square(2))
def test_trace_cyclic(a, b):
    A, B = Matrix(a), Matrix(b)
    assert trace(A @ B) == trace(B @ A)


@settings(max_examples=60, deadline=None)
@given(square(3))
def test_rank_inverse_against_sympy(rows):
    M = Matrix(rows)
    S = _sym(M)
    assert M.rank() == S.rank()
    if S.det() != 0:
        inv = M.inverse()
        assert _sym(inv) == S.inv()
        assert M @ inv == Matrix.identity(3)


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_charpoly_against_sympy(rows):
    M = Matrix(rows)
    x = sympy.Symbol("x")
    want = sympy.Poly(_sym(M).charpoly(x).as_expr(), x).all_coeffs()
    got = charpoly(M)
    assert [sympy.Rational(c.numerator, c.denominator) for c in got] == want


@settings(max_examples=40, deadline=None)
@given(square(3), st.lists(rationals, min_size=3, max_size=3))
def test_solve_consistent(rows, x):
    A = Matrix(rows)
    b = A @ tuple(x)
    y = solve_linear(A, b)
    assert A @ y == b


@given(rationals, rationals, rationals)
def test_field_identities(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * (1 / a) == 1


def test_rational_roots():
    roots, split = rational_roots([F(1), F(0), F(-1)])
    assert roots == {F(1): 1, F(-1): 1} and split
    roots, split = rational_roots([F(1), F(0), F(1)])
    assert not split and roots == {}


def test_nullspace_and_image():
    M = Matrix([[1, 2], [2, 4]])
    (v,) = M.nullspace()
    assert M @ v == (0, 0)
    assert M.image_basis() == [(F(1), F(2))]
