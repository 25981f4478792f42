import numpy as np
import pytest
import sympy

from artifact.fieldcore import GF, QQ, FieldError, Matrix, Subspace, random_matrix
from artifact.multilinear import (
    MONOMIALS3,
    AltForm,
    OnePS,
    SymSpace,
    apolar_pair,
    apolar_perp,
    contract,
    g2_bilinear,
    index_tuples,
    is_isotropic,
    minors,
    one_ps_limit,
    restrict,
    wedge,
)
from artifact.trivectorzoo import fano_alpha, random_trivector, sl3_sigma0

S3 = SymSpace(3)


def unit(i, n=10):
    return [1 if j == i else 0 for j in range(n)]


def rand_vec(rng, n=10, h=5):
    return [int(x) for x in rng.integers(-h, h + 1, n)]


def test_coefficient_convention_and_alternation():
    f = random_trivector(3)
    rng = np.random.default_rng(0)
    for t in index_tuples(3, 10)[:30]:
        i, j, k = t
        assert f(unit(i), unit(j), unit(k)) == f.coefficient(t)
        assert f(unit(j), unit(i), unit(k)) == -f.coefficient(t)
        assert f(unit(i), unit(i), unit(k)) == 0
    for _ in range(100):
        u, v, w = rand_vec(rng), rand_vec(rng), rand_vec(rng)
        assert f(u, v, w) == -f(v, u, w) == f(v, w, u)


def test_from_dict_sign():
    f = AltForm.from_dict(3, 4, {(1, 0, 2): 5})
    assert f.coefficient((0, 1, 2)) == -5


def test_multilinearity():
    f = random_trivector(4)
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b, v, w = (rand_vec(rng) for _ in range(4))
        s = [x + 3 * y for x, y in zip(a, b)]
        assert f(s, v, w) == f(a, v, w) + 3 * f(b, v, w)


def test_minors_match_sympy():
    rng = np.random.default_rng(2)
    vs = [rand_vec(rng, 6) for _ in range(3)]
    m = minors(vs, QQ)
    for (i, j, k), val in zip(index_tuples(3, 6), m):
        assert val == sympy.Matrix([[v[i], v[j], v[k]] for v in vs]).det()


def test_contract_identity_and_fano_lines():
    f = random_trivector(5)
    rng = np.random.default_rng(3)
    for _ in range(50):
        u, v, w = rand_vec(rng), rand_vec(rng), rand_vec(rng)
        assert contract(f, u)(v, w) == f(u, v, w)
    assert contract(f, [0] * 10).is_zero()
    g = contract(fano_alpha(), unit(1, 7))
    assert len(g.support()) == 3


def test_restrict_compatible_with_inclusion():
    f = random_trivector(6)
    rng = np.random.default_rng(4)
    for _ in range(20):
        W = Subspace.span(random_matrix(rng, 4, 10, QQ, 3).rows, 10, QQ)
        r = restrict(f, W)
        basis = W.vectors()
        c = [[int(x) for x in rng.integers(-3, 4, 4)] for _ in range(3)]
        vecs = [[sum(ci * b[t] for ci, b in zip(cc, basis)) for t in range(10)] for cc in c]
        assert r(*c) == f(*vecs)


def test_wedge_of_linear_forms_is_determinant():
    rng = np.random.default_rng(5)
    ls = [AltForm.from_coeffs(1, 3, rand_vec(rng, 3)) for _ in range(3)]
    f = wedge(wedge(ls[0], ls[1]), ls[2])
    M = sympy.Matrix([list(l.coeffs) for l in ls])
    assert f.coefficient((0, 1, 2)) == M.det()


def test_is_isotropic_examples():
    s = sl3_sigma0()
    span = lambda names: Subspace.span([unit(MONOMIALS3.index(m)) for m in names], 10, QQ)
    x_block = [(3, 0, 0), (2, 1, 0), (2, 0, 1)]
    y_block = [(0, 3, 0), (1, 2, 0), (0, 2, 1)]
    assert is_isotropic(s, span(x_block + y_block))
    assert not is_isotropic(s, span([(3, 0, 0), (0, 3, 0), (0, 0, 3)]))
    with pytest.raises(FieldError):
        is_isotropic(s, span([(3, 0, 0), (0, 3, 0)]))


def test_isotropy_basis_invariant():
    s = sl3_sigma0()
    rng = np.random.default_rng(6)
    x_block = [unit(i) for i in (0, 3, 7, 1, 6, 5)]
    for _ in range(5):
        g = random_matrix(rng, 6, 6, QQ, 3)
        mixed = [[sum(g.rows[i][k] * x_block[k][t] for k in range(6)) for t in range(10)] for i in range(6)]
        if Subspace.span(mixed, 10, QQ).dim == 6:
            assert is_isotropic(s, Subspace.span(mixed, 10, QQ))


def test_g2_bilinear():
    assert g2_bilinear(AltForm.zero(3, 7)).is_zero()
    B = g2_bilinear(AltForm.from_dict(3, 7, {(0, 1, 2): 1}))
    assert sympy.Matrix(B.to_lists()).rank() < 7
    assert sympy.Matrix(g2_bilinear(fano_alpha()).to_lists()).det() == 279936


def _w3_weights(w):
    return OnePS([sum(a * b for a, b in zip(m, w)) for m in MONOMIALS3])


def test_one_ps_limit_example():
    # <x^3 + y^2 z, x y^2, y^3> with weights (1, 3, 0) on x, y, z
    U = Subspace.span([S3.from_poly({(3, 0, 0): 1, (0, 2, 1): 1}), S3.from_poly({(1, 2, 0): 1}),
                       S3.from_poly({(0, 3, 0): 1})], 10, QQ)
    L = one_ps_limit(U, _w3_weights((1, 3, 0)))
    expected = Subspace.span([unit(MONOMIALS3.index(m)) for m in [(3, 0, 0), (1, 2, 0), (0, 3, 0)]], 10, QQ)
    assert L == expected
    # the opposite sign picks the other initial part
    L2 = one_ps_limit(U, _w3_weights((-1, -3, 0)))
    assert L2 == Subspace.span([unit(MONOMIALS3.index(m)) for m in [(0, 2, 1), (1, 2, 0), (0, 3, 0)]], 10, QQ)


def test_one_ps_limit_trivial_and_idempotent():
    rng = np.random.default_rng(7)
    U = Subspace.span(random_matrix(rng, 3, 10, QQ, 3).rows, 10, QQ)
    assert one_ps_limit(U, OnePS([2] * 10)) == U
    lam = OnePS([int(x) for x in rng.integers(-4, 5, 10)])
    L = one_ps_limit(U, lam)
    assert one_ps_limit(L, lam) == L
    M = Subspace.span([unit(0), unit(4), unit(9)], 10, QQ)
    assert one_ps_limit(M, lam) == M


def test_apolarity():
    a3 = S3.dual_from_poly({(3, 0, 0): 1})
    b3 = S3.dual_from_poly({(0, 3, 0): 1})
    x3 = S3.from_poly({(3, 0, 0): 1})
    assert apolar_pair(x3, a3) == 1 and apolar_pair(x3, b3) == 0
    x2W = [S3.from_poly({(3, 0, 0): 1}), S3.from_poly({(2, 1, 0): 1}), S3.from_poly({(2, 0, 1): 1})]
    P = apolar_perp(x2W, 3)
    assert P.dim == 7 and Subspace.span([b3], 10, QQ) <= P


def test_apolar_annihilator_of_a_times_quadrics():
    # a . <a^2, ab, ac, bc> on the dual side
    gens = [{(3, 0, 0): 1}, {(2, 1, 0): 1}, {(2, 0, 1): 1}, {(1, 1, 1): 1}]
    vecs = [S3.dual_from_poly(g) for g in gens]
    assert apolar_perp(vecs, 3).dim == 6


def test_power_of_pairs_by_evaluation():
    # <u^3, psi> = psi(u) for psi a dual cubic
    rng = np.random.default_rng(8)
    for _ in range(10):
        u = rand_vec(rng, 3)
        psi = rand_vec(rng, 10)
        val = sum(c * u[0] ** m[0] * u[1] ** m[1] * u[2] ** m[2] for c, m in zip(psi, MONOMIALS3))
        assert apolar_pair(S3.power_of(u), psi) == val


def test_reduce_mod_roundtrip():
    f = random_trivector(9)
    assert f.over(GF(10007)).coeffs == f.reduce_mod(10007).coeffs
    assert AltForm.from_json(f.to_json()) == f
