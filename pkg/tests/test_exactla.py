import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from genrank.errors import InputError
from genrank.exactla import (Field, Matrix, block_diag, cokernel_projection, complete_basis,
                             hstack, inverse, is_invertible, kernel_basis, multiply, rank, rref,
                             solve, vstack)

Q = Field.rational()
F5 = Field.prime(5)


def M(rows, field=Q, cols=None):
    return Matrix.from_rows(field, rows, cols)


# --- oracles -------------------------------------------------------------------


def leibniz_det(rows, p=None):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total % p if p else total


def minor_rank(rows, p=None):
    """Largest k with a nonzero k x k minor."""
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    for k in range(min(m, n), 0, -1):
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                if leibniz_det([[rows[i][j] for j in ci] for i in ri], p) != 0:
                    return k
    return 0


def small_matrices(max_dim=4, lo=-3, hi=3):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda rows: (rows, r, c))))


# --- fields -------------------------------------------------------------------------


def test_field_parse_and_str():
    assert Field.parse("rational") == Q
    assert Field.parse("Q") == Q
    assert Field.parse("gf:7") == Field.prime(7)
    assert str(Field.prime(7)) == "gf:7"
    with pytest.raises(InputError):
        Field.parse("gf:6")
    with pytest.raises(InputError):
        Field.parse("reals")


def test_field_coercion():
    assert Q("3/6") == Fraction(1, 2)
    assert F5("1/2") == 3
    assert F5(-1) == 4
    with pytest.raises(InputError):
        Q(0.5)
    with pytest.raises(InputError):
        Q(True)
    with pytest.raises(InputError):
        F5("1/5")


def test_rationals_canonical():
    m = M([["2/4", "-3/6", 4]])
    assert m.data[0] == (Fraction(1, 2), Fraction(-1, 2), Fraction(4))
    assert m.to_literal() == [["1/2", "-1/2", 4]]


# --- rank ---------------------------------------------------------------------------


def test_grid_composite_rank():
    a = M([[-1, 1, -2], [0, 0, 0]])
    b = M([[1, -1], [0, 2], [1, 1]])
    prod = multiply(a, b)
    assert prod == M([[-3, 1], [0, 0]])
    assert rank(prod) == 1


def test_identity_rank():
    for n in range(5):
        assert rank(Matrix.identity(Q, n)) == n


@settings(max_examples=200, deadline=None)
@given(small_matrices(lo=0, hi=4))
def test_rank_matches_minors_gf5(data):
    rows, r, c = data
    assert rank(M(rows, F5, c)) == minor_rank(rows, 5)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_matches_minors_rational(data):
    rows, r, c = data
    assert rank(M(rows, Q, c)) == minor_rank(rows)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_transpose_and_nullity(data):
    rows, r, c = data
    m = M(rows, Q, c)
    assert rank(m) == rank(m.T)
    K = kernel_basis(m)
    assert K.cols == c - rank(m)
    assert (m @ K).is_zero()
    assert rank(K) == K.cols


def test_rref_form():
    R, piv = rref(M([[0, 2, 4], [1, 1, 1], [2, 4, 6]]))
    assert piv == [0, 1]
    assert R == M([[1, 0, -1], [0, 1, 2], [0, 0, 0]])


# --- kernel / cokernel ---------------------------------------------------------------


def test_kernel_examples():
    assert kernel_basis(Matrix.zeros(Q, 2, 3)).cols == 3
    k = kernel_basis(M([[1, 1]]))
    assert k.cols == 1 and k.column(0)[0] == -k.column(0)[1] != 0
    assert kernel_basis(M([[1, 2], [3, 4]])).cols == 0


def test_cokernel_examples():
    assert cokernel_projection(Matrix.identity(Q, 3)).shape == (0, 3)
    assert cokernel_projection(Matrix.zeros(Q, 2, 2)) == Matrix.identity(Q, 2)
    p = cokernel_projection(M([[1], [1]]))
    assert p.shape == (1, 2)
    assert (p @ M([[1], [1]])).is_zero()
    assert rank(p) == 1


@settings(max_examples=150, deadline=None)
@given(small_matrices(lo=0, hi=4))
def test_cokernel_contract_gf5(data):
    rows, r, c = data
    m = M(rows, F5, c)
    p = cokernel_projection(m)
    assert p.shape == (r - rank(m), r)
    assert (p @ m).is_zero()
    assert rank(p) == p.rows


# --- solve / completion ---------------------------------------------------------------


def test_solve_identity():
    b = M([[1, "1/2"], [3, 4]])
    assert solve(Matrix.identity(Q, 2), b) == b


def test_solve_inconsistent():
    assert solve(M([[1], [1]]), M([[1], [2]])) is None


@settings(max_examples=150, deadline=None)
@given(small_matrices(max_dim=3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve_consistent(data, xs):
    rows, r, c = data
    a = M(rows, Q, c)
    x = Matrix.from_rows(Q, [[v] for v in xs[:c]], 1)
    b = a @ x
    y = solve(a, b)
    assert y is not None and a @ y == b


def test_complete_basis_example():
    B = complete_basis(M([[1], [1]]))
    assert B.shape == (2, 2)
    assert B.column(0) == (1, 1)
    assert leibniz_det([list(r) for r in B.data]) != 0


@settings(max_examples=100, deadline=None)
@given(small_matrices(lo=0, hi=4))
def test_complete_basis_property(data):
    rows, r, c = data
    m = M(rows, F5, c)
    R, piv = rref(m)
    indep = m.select_columns(piv)
    B = complete_basis(indep)
    assert B.shape == (r, r)
    assert is_invertible(B)
    assert B.block(0, r, 0, indep.cols) == indep
    assert inverse(B) @ B == Matrix.identity(F5, r)


def test_shape_errors():
    with pytest.raises(InputError):
        M([[1, 2]]) @ M([[1, 2]])
    with pytest.raises(InputError):
        Matrix.from_literal(Q, [[1, 2]], 2, 2)
    with pytest.raises(InputError):
        M([[1]]) @ M([[1]], F5)


def test_stacking():
    a, b = M([[1, 2]]), M([[3, 4]])
    assert vstack(Q, [a, b]) == M([[1, 2], [3, 4]])
    assert hstack(Q, [a, b]) == M([[1, 2, 3, 4]])
    assert block_diag(Q, [a, b]) == M([[1, 2, 0, 0], [0, 0, 3, 4]])
    assert hstack(Q, [], rows=3).shape == (3, 0)
    assert vstack(Q, [], cols=2).shape == (0, 2)
