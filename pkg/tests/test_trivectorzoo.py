import numpy as np
import pytest

from artifact.fieldcore import GF, QQ, FieldError, Matrix, Subspace, intersect, sum_spaces
from artifact.multilinear import MONOMIALS3, SymSpace, det, index_tuples, is_isotropic, wedge_vectors
from artifact.trivectorzoo import (
    FANO_LINES,
    fano_alpha,
    g2sl3_sigma0,
    lie_derivative,
    random_trivector,
    sl2_model,
    sl2_sigma0,
    sl2_constraint_rows,
    sl2_solve,
    sl2_vspaces,
    sl3_sigma0,
    sl3_sigma0_by_polarization,
    sp4_induced_action,
    sp4_model,
    sp4_sigma0,
    sp4_trace_form,
    sp4_transvection,
    trivector,
)
from artifact.dvgeom import quadric_points


def unit(i, n=10):
    return [1 if j == i else 0 for j in range(n)]


def test_sl3_coefficients():
    s = sl3_sigma0()
    assert s.coefficient((0, 1, 2)) == 1
    assert s.coefficient((3, 8, 9)) == -6
    assert len(s.support()) == 9
    S = SymSpace(3)
    x3, y3, z3 = (S.monomial_vector(m) for m in [(3, 0, 0), (0, 3, 0), (0, 0, 3)])
    assert s(x3, y3, z3) == 1
    assert MONOMIALS3[0] == (3, 0, 0)


def test_sl3_polarization_matches_closed_form():
    assert sl3_sigma0_by_polarization(seed=5) == sl3_sigma0()


def test_sl3_det_cubed():
    s = sl3_sigma0()
    S = SymSpace(3)
    rng = np.random.default_rng(11)
    for _ in range(20):
        u, v, w = ([int(c) for c in rng.integers(-4, 5, 3)] for _ in range(3))
        d = det(Matrix.from_rows([u, v, w], QQ))
        assert s(S.power_of(u), S.power_of(v), S.power_of(w)) == d**3


def test_sp4_trace_form_alternating_and_matches_coefficients():
    m, s = sp4_sigma0()
    rng = np.random.default_rng(0)
    for _ in range(10):
        a, b, c = ([int(x) for x in rng.integers(-3, 4, 10)] for _ in range(3))
        assert sp4_trace_form(m, a, b, c) == s(a, b, c)
        assert sp4_trace_form(m, b, a, c) == -s(a, b, c)


def test_sp4_vanishes_on_isotropic_pencils():
    m, s = sp4_sigma0()
    rng = np.random.default_rng(1)
    for x in quadric_points(m, 10, QQ, seed=3):
        perp = m.perp(x).vectors()
        z, z2 = perp[1], perp[2]
        c = [int(t) for t in rng.integers(-3, 4, 10)]
        assert s(wedge_vectors([x, z], QQ), wedge_vectors([x, z2], QQ), c) == 0


def test_sp4_invariant_under_transvections():
    m, s = sp4_sigma0()
    rng = np.random.default_rng(2)
    for _ in range(3):
        v = [int(t) for t in rng.integers(-2, 3, 4)]
        g = sp4_transvection(v, int(rng.integers(1, 4)))
        A = sp4_induced_action(g)
        cols = [list(c) for c in zip(*A.rows)]
        for i, j, k in index_tuples(3, 10)[::7]:
            assert s(cols[i], cols[j], cols[k]) == s.coefficient((i, j, k))


def test_sp4_quadric_nondegenerate():
    m = sp4_model()
    assert det(m.gram) != 0


def test_g2sl3_blocks():
    model, s = g2sl3_sigma0()
    assert s.coefficient((7, 8, 9)) == 1
    assert len(s.support()) == 8
    assert all(s.coefficient(l) != 0 for l in FANO_LINES)
    # no mixed V7 x W3 terms
    assert all(set(t) <= set(range(7)) or set(t) == {7, 8, 9} for t in s.support())
    assert model.beta.coefficient((0, 1, 2)) == 1


def test_g2_isotropic_w4_count():
    alpha = fano_alpha()
    count = 0
    for line in FANO_LINES:
        W = Subspace.span([unit(i, 7) for i in range(7) if i not in line], 7, QQ)
        count += is_isotropic(alpha, W)
    assert count == 7


def test_sl2_kernel_dimension_and_held_out_points():
    sol = sl2_solve(samples=40)
    assert sol.kernel_dim == 1
    model = sl2_model()
    rng = np.random.default_rng(99)
    for _ in range(4):
        x = [int(c) for c in rng.integers(-5, 6, 5)]
        if any(x):
            assert all(sum(a * b for a, b in zip(r, sol.sigma.coeffs)) == 0 for r in sl2_constraint_rows(model, x))


def test_sl2_invariance():
    model, s = sl2_sigma0()
    for X in (model.e, model.f, model.h):
        assert lie_derivative(s, X).is_zero()


def test_sl2_vspaces_dimensions():
    model = sl2_model()
    assert model.w3.dim == 3 and model.v7.dim == 7
    x, y = [1, 0, 2, 0, -1], [0, 1, 1, 3, 0]
    v4x, v7x = sl2_vspaces(model, x)
    v4y, _ = sl2_vspaces(model, y)
    assert v4x <= v7x
    assert intersect(v4x, v4y).dim == 1
    assert sum_spaces(v4x, v4y).dim == 7
    with pytest.raises(FieldError):
        sl2_vspaces(model, [0] * 5)


def test_random_trivector_deterministic():
    assert random_trivector(4) == random_trivector(4)
    assert random_trivector(4) != random_trivector(5)
    assert random_trivector(4, GF(101)).field == GF(101)


def test_named_trivectors_reduce():
    for name in ("sl3", "g2sl3"):
        assert trivector(name, GF(10007)).coeffs == trivector(name).reduce_mod(10007).coeffs
    with pytest.raises(KeyError):
        trivector("e8")
