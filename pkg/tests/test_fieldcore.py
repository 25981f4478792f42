from fractions import Fraction

import numpy as np
import pytest
import sympy

from artifact.fieldcore import (
    GF,
    QQ,
    FieldError,
    Matrix,
    Mod,
    Subspace,
    annihilator,
    contains,
    intersect,
    kernel,
    parse_scalar,
    rank,
    random_matrix,
    rref,
    scalar_str,
    solve_unique_nullvector_qq,
    sum_spaces,
)


def test_rref_small_cases():
    I = Matrix.identity(2)
    R, r, piv = rref(I)
    assert R.rows == I.rows and r == 2 and piv == [0, 1]
    R, r, _ = rref(Matrix.from_rows([[1, 2], [2, 4]], QQ))
    assert R.to_lists() == [[1, 2], [0, 0]] and r == 1


@pytest.mark.parametrize("shape", [(6, 8), (20, 24), (30, 40)])
def test_rank_matches_sympy(shape):
    rng = np.random.default_rng(5)
    for _ in range(5):
        a = rng.integers(-3, 4, (shape[0], 4))
        b = rng.integers(-3, 4, (4, shape[1]))
        m = a @ b + (rng.random(shape) < 0.05) * rng.integers(-2, 3, shape)
        M = Matrix.from_rows(m.tolist(), QQ)
        assert rank(M) == sympy.Matrix(m.tolist()).rank()


def test_rank_mod_p_drops_at_bad_prime():
    M = Matrix.from_rows([[1, 2], [3, 6 + 10007]], QQ)
    assert rank(M) == 2
    assert rank(M.reduce_mod(10007)) == 1


def test_rref_idempotent_and_shuffle_invariant():
    rng = np.random.default_rng(1)
    M = random_matrix(rng, 7, 9, QQ)
    R, r, _ = rref(M)
    assert rref(R)[0].rows == R.rows
    perm = rng.permutation(7)
    assert rank(Matrix.from_rows([M.rows[i] for i in perm], QQ)) == r


def test_kernel_trivial_cases():
    assert kernel(Matrix.zeros(3, 5)).dim == 5
    assert kernel(Matrix.identity(4)).dim == 0


def test_kernel_is_annihilated():
    rng = np.random.default_rng(2)
    for F in (QQ, GF(10007)):
        M = random_matrix(rng, 4, 9, F)
        K = kernel(M)
        assert K.dim == 9 - rank(M)
        for v in K.vectors():
            assert all(x == 0 for x in M.apply(v))


def test_subspace_idempotence_and_dimension_formula():
    rng = np.random.default_rng(3)
    for F in (QQ, GF(10007)):
        for _ in range(100):
            da, db = rng.integers(1, 7, 2)
            A = Subspace.span(random_matrix(rng, int(da), 8, F, 2).rows, 8, F)
            B = Subspace.span(random_matrix(rng, int(db), 8, F, 2).rows, 8, F)
            assert A.dim + B.dim == sum_spaces(A, B).dim + intersect(A, B).dim
        assert intersect(A, A) == A and sum_spaces(A, A) == A


def test_canonical_form_is_basis_independent():
    A = Subspace.span([[1, 2, 0], [0, 1, 1]], 3, QQ)
    B = Subspace.span([[1, 3, 1], [2, 5, 1]], 3, QQ)
    assert A == B and A.basis.rows == B.basis.rows
    assert contains(A, [3, 7, 1]) and not contains(A, [0, 0, 1])


def test_annihilator_default_pairing():
    A = Subspace.span([[1, 0, 0, 0], [0, 1, 1, 0]], 4, QQ)
    P = annihilator(A)
    assert P.dim == 2
    for v in P.vectors():
        for w in A.vectors():
            assert sum(x * y for x, y in zip(v, w)) == 0


def test_qq_and_mod_p_agree():
    rng = np.random.default_rng(4)
    for p in (10007, 10009, 10037):
        for _ in range(10):
            M = random_matrix(rng, 5, 7, QQ, 6)
            assert rank(M.reduce_mod(p)) == rank(M)
            assert kernel(M).reduce_mod(p) == kernel(M.reduce_mod(p))


def test_mod_arithmetic_and_mixing():
    a, b = Mod(3, 7), Mod(5, 7)
    assert a + b == Mod(1, 7) and a * b == Mod(1, 7) and a / b == Mod(2, 7)
    with pytest.raises(FieldError):
        a + Mod(1, 11)


def test_prime_field_validation():
    for bad in (4, 2, 3, 15):
        with pytest.raises(FieldError):
            GF(bad)


def test_scalar_strings():
    assert scalar_str(Fraction(-6, 4)) == "-3/2"
    assert scalar_str(Fraction(5)) == "5"
    assert parse_scalar("-3/2") == Fraction(-3, 2)
    assert Fraction(4, -6) == Fraction(-2, 3)  # lowest terms, positive denominator


def test_unique_nullvector():
    # rows orthogonal to (1, -2, 3, 1)
    rows = [[2, 1, 0, 0], [0, 3, 2, 0], [1, 0, 0, -1], [4, 2, 0, 0], [1, 1, 1, -2]]
    v, r = solve_unique_nullvector_qq(Matrix.from_rows(rows, QQ))
    assert r == 3
    assert [x / v[0] for x in v] == [1, -2, Fraction(3), 1] or [x / v[0] for x in v] == [1, Fraction(-2), 3, 1]
