from fractions import Fraction
from itertools import combinations
from math import prod

import numpy as np
import pytest

from artifact.schubert import (
    SEGRE_EXPECTED,
    SEGRE_MONOMIALS,
    AmbientMismatch,
    SchubertClass,
    _basis_product,
    aux_chern_checks,
    box_partitions,
    chern_exterior_cube,
    chern_wedge,
    complement,
    dv_degree,
    dv_segre_numbers,
    grassmannian_degree,
    integrate,
    multiply,
    pieri,
    power,
    segre_quotient,
    total,
    truncate,
)


def sig(lam, k=6, n=10):
    return SchubertClass.sigma(lam, k, n)


# ---------------------------------------------------------------- localization oracle
#
# Integrals over Gr(k, n) by summing over the C(n, k) torus-fixed coordinate
# subspaces. S has roots t_i (i in I), Q has roots t_j (j not in I), and the
# tangent space has weights t_j - t_i.

WEIGHTS = (3, -7, 11, 2, 19, -5, 13, 29, -17, 23)


def elem(roots, m):
    c = [Fraction(1)]
    for r in roots:
        c = [a + (c[i - 1] * r if i else 0) for i, a in enumerate(c + [Fraction(0)])]
    return c[m] if m < len(c) else Fraction(0)


def wedge_roots(roots, r):
    return [sum(t) for t in combinations(roots, r)]


def localize(k, n, integrand, weights=WEIGHTS):
    t = [Fraction(w) for w in weights[:n]]
    total = Fraction(0)
    for I in combinations(range(n), k):
        J = [j for j in range(n) if j not in I]
        s_roots = [t[i] for i in I]
        q_roots = [t[j] for j in J]
        euler = prod(t[j] - t[i] for i in I for j in J)
        total += integrand(s_roots, q_roots) / euler
    assert total.denominator == 1
    return int(total)


def e_dual_s(s_roots, m):
    # c_m(S^vee)
    return elem([-x for x in s_roots], m)


# ---------------------------------------------------------------- basics


def test_gr24():
    s1 = SchubertClass.sigma([1], 2, 4)
    assert multiply(s1, s1) == SchubertClass.sigma([2], 2, 4) + SchubertClass.sigma([1, 1], 2, 4)
    assert integrate(power(s1, 4)) == 2
    assert integrate(SchubertClass.sigma([2, 2], 2, 4)) == 1


def test_partitions_in_box():
    assert len(box_partitions(6, 10)) == 210
    assert complement((4, 2, 1), 6, 10) == (4, 4, 4, 3, 2)
    with pytest.raises(AmbientMismatch):
        sig([1]) + SchubertClass.sigma([1], 2, 4)


def test_pieri_agrees_with_general_rule():
    rng = np.random.default_rng(0)
    parts = box_partitions(6, 10)
    for _ in range(100):
        lam = parts[int(rng.integers(len(parts)))]
        r = int(rng.integers(1, 5))
        general = SchubertClass(6, 10, dict(_basis_product(lam, (r,), 6, 10)))
        assert general == pieri(r, sig(lam))
        assert multiply(sig([r]), sig(lam)) == pieri(r, sig(lam))


def test_duality():
    rng = np.random.default_rng(1)
    parts = box_partitions(6, 10)
    for _ in range(50):
        lam = parts[int(rng.integers(len(parts)))]
        assert integrate(multiply(sig(lam), sig(complement(lam, 6, 10)))) == 1
        other = parts[int(rng.integers(len(parts)))]
        if other != complement(lam, 6, 10) and sum(other) + sum(lam) == 24:
            assert integrate(multiply(sig(lam), sig(other))) == 0


def test_whitney():
    cS = total([sig([1] * i).scale((-1) ** i) for i in range(7)])
    cQ = total([sig([i]) for i in range(5)])
    assert truncate(multiply(cS, cQ), 24) == SchubertClass.one(6, 10)


def test_multiplication_commutes_and_associates():
    rng = np.random.default_rng(2)
    parts = [p for p in box_partitions(6, 10) if sum(p) <= 6]
    for _ in range(10):
        a, b, c = (sig(parts[int(rng.integers(len(parts)))]) for _ in range(3))
        assert multiply(a, b) == multiply(b, a)
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


def test_grassmannian_degree():
    assert grassmannian_degree(2, 4) == 2
    assert grassmannian_degree(6, 10) == 140229804
    assert integrate(power(sig([1]), 24)) == grassmannian_degree(6, 10)
    assert localize(2, 5, lambda s, q: elem(q, 1) ** 6) == grassmannian_degree(2, 5)


# ---------------------------------------------------------------- Chern classes


def test_exterior_cube_chern_classes():
    cs = chern_exterior_cube()
    assert len(cs) == 20
    assert cs[0] == sig([1]).scale(10)
    for i, c in enumerate(cs, start=1):
        assert c.codim == i


def test_chern_wedge_one_is_dual_sub():
    cs = chern_wedge(1, 3, 7)
    assert cs[1] == SchubertClass.sigma([1], 3, 7)
    assert cs[2] == SchubertClass.sigma([1, 1], 3, 7)


@pytest.mark.parametrize("i", [1, 2, 3, 5, 10])
def test_chern_classes_against_localization(i):
    k, n = 5, 8
    c = chern_wedge(3, k, n)[i]
    rest = 15 - i
    lhs = integrate(multiply(c, power(SchubertClass.sigma([1], k, n), rest)))
    rhs = localize(k, n, lambda s, q: elem(wedge_roots([-x for x in s], 3), i) * elem(q, 1) ** rest)
    assert lhs == rhs


def test_segre_convention():
    # s(Q) = c(Q)^{-1} = c(S)
    assert segre_quotient(2, 6, 10) == sig([1, 1])
    assert segre_quotient(1, 6, 10) == sig([1]).scale(-1)


def _segre_integrand(mono):
    def f(s, q):
        top = prod(wedge_roots([-x for x in s], 3))
        return top * prod(elem(s, m) for m in mono)

    return f


def test_segre_numbers_and_degree():
    assert dv_segre_numbers() == SEGRE_EXPECTED == (1452, 825, 330, 477, 105)
    assert dv_degree() == 1452


def test_segre_numbers_by_localization():
    got = tuple(localize(6, 10, _segre_integrand(m)) for m in SEGRE_MONOMIALS)
    assert got == SEGRE_EXPECTED
    deg = localize(6, 10, lambda s, q: prod(wedge_roots([-x for x in s], 3)) * elem(q, 1) ** 4)
    assert deg == 1452


def test_localization_independent_of_weights():
    w = (1, 4, 9, 16, 25, 36, 49, 64, 81, 100)
    assert localize(6, 10, _segre_integrand((4,)), w) == 105


# ---------------------------------------------------------------- auxiliary


def test_aux_checks():
    aux = aux_chern_checks()
    assert all(aux.ok.values())
    assert aux.gr37_pairings == {(2,): 12, (1, 1): 10}
    assert aux.gr57_integral == 0
    assert aux.gr47_c4.codim == 4


def test_aux_by_localization():
    def gr37(extra):
        def f(s, q):
            sv = [-x for x in s]
            top = prod(wedge_roots(sv, 2)) ** 3 * prod(wedge_roots(sv, 3))
            return top * extra(s, q)
        return f

    assert localize(3, 7, gr37(lambda s, q: elem(q, 2))) == 12
    assert localize(3, 7, gr37(lambda s, q: e_dual_s(s, 2))) == 10
    assert localize(5, 7, lambda s, q: prod(wedge_roots([-x for x in s], 3))) == 0
    c4 = aux_chern_checks().gr47_c4
    nonzero = localize(4, 7, lambda s, q: elem(wedge_roots([-x for x in s], 3), 4) * elem(q, 1) ** 8)
    assert nonzero == integrate(multiply(c4, power(SchubertClass.sigma([1], 4, 7), 8))) != 0
