"""Finite geometry of the variety of 6-spaces on which a trivector vanishes.

Membership, singular points, tangent ranks, excess fibers, the special
constructions attached to each model, and the exhaustive monomial scans for
the SL(3) trivector."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

import numpy as np

from .fieldcore import (
    QQ,
    Field,
    FieldError,
    GF,
    Matrix,
    Subspace,
    intersect,
    kernel,
    left_kernel,
    rref,
    sum_spaces,
)
from .multilinear import (
    MONOMIALS3,
    AltForm,
    SymSpace,
    apolar_perp,
    index_tuples,
    is_isotropic,
    minors,
    monomial_name,
    mul_dual,
    mul_primal,
    restrict,
    wedge_vectors,
)
from .trivectorzoo import (
    SL2Model,
    Sp4Model,
    sl2_vspaces,
    sl3_sigma0,
)

N = 10


class NotInZeroLocus(FieldError):
    pass


def _unit(i: int, n: int, F: Field) -> list:
    v = F.zeros(n)
    v[i] = F.convert(1)
    return v


# ---------------------------------------------------------------- membership


def dv_member(sigma: AltForm, W6: Subspace) -> bool:
    if W6.dim != 6:
        raise FieldError("a point of the variety is a 6-space")
    return is_isotropic(sigma, W6)


def x_singular_at(sigma: AltForm, U3: Subspace) -> bool:
    """sigma vanishes on wedge^2 U_3 ^ V_10."""
    if U3.dim != 3:
        raise FieldError("x_singular_at needs a 3-space")
    F = sigma.field
    u = U3.vectors()
    for a, b in combinations(range(3), 2):
        for i in range(N):
            if sigma(u[a], u[b], _unit(i, N, F)) != 0:
                return False
    return True


@dataclass(frozen=True)
class ExcessFiber:
    """Cokernel of the differential, given by the functionals killing its image.

    ``functionals`` is a basis of the left kernel of the 20 x 24 matrix; a
    class in wedge^3 W_6^dual (values on basis triples) maps to the cokernel
    through these rows.
    """

    base: Subspace
    functionals: Subspace

    @property
    def dim(self) -> int:
        return self.functionals.dim


@dataclass(frozen=True)
class DVDifferential:
    base: Subspace
    matrix: Matrix  # rows: triples of basis vectors of W_6; cols: (i, j) with u(w_i) = e_{c_j}
    complement: tuple


@dataclass(frozen=True)
class TangentData:
    rank: int
    tangent_dim: int
    excess: ExcessFiber
    differential: DVDifferential


def dv_differential(sigma: AltForm, W6: Subspace) -> DVDifferential:
    F = sigma.field
    w = W6.vectors()
    comp = W6.complement_coords()
    es = [_unit(c, N, F) for c in comp]
    rows = []
    for t in index_tuples(3, 6):
        row = []
        for i in range(6):
            for e in es:
                val = F.convert(0)
                for pos in range(3):
                    if t[pos] == i:
                        args = [w[t[0]], w[t[1]], w[t[2]]]
                        args[pos] = e
                        val = F.reduce(val + sigma(*args))
                row.append(val)
        rows.append(row)
    return DVDifferential(W6, Matrix.from_rows(rows, F, 6 * len(comp)), tuple(comp))


def dv_tangent_rank(sigma: AltForm, W6: Subspace) -> TangentData:
    if not dv_member(sigma, W6):
        raise NotInZeroLocus("W_6 is not in the zero locus of sigma")
    D = dv_differential(sigma, W6)
    r = rref(D.matrix)[1]
    ex = ExcessFiber(W6, left_kernel(D.matrix))
    if ex.dim != 20 - r:
        raise FieldError("cokernel dimension mismatch")
    return TangentData(r, 24 - r, ex, D)


def restriction_values(sigma: AltForm, W6: Subspace) -> list:
    """sigma|W_6 as its values on the 20 basis triples."""
    return list(restrict(sigma, W6).coeffs)


def excess_project(excess: ExcessFiber, sigma_prime: AltForm) -> list:
    F = sigma_prime.field
    r = restriction_values(sigma_prime, excess.base)
    return [F.reduce(sum(a * b for a, b in zip(f, r))) for f in excess.functionals.vectors()]


def sub_restriction_functional(W6: Subspace, U3: Subspace) -> list:
    """Functional on wedge^3 W_6^dual given by restriction to wedge^3 U_3."""
    F = W6.field
    w = W6.vectors()
    coords = []
    for u in U3.vectors():
        # coordinates of u in the RREF basis of W_6: read off the pivots
        c = [u[p] for p in W6.pivots]
        chk = F.zeros(N)
        for ci, row in zip(c, w):
            chk = [F.reduce(x + ci * y) for x, y in zip(chk, row)]
        if chk != [F.convert(x) for x in u]:
            raise FieldError("U_3 is not contained in W_6")
        coords.append(c)
    return minors(coords, F)


def kills_image(D: DVDifferential, functional: list) -> bool:
    F = D.matrix.field
    cols = list(zip(*D.matrix.rows))
    return all(F.reduce(sum(a * b for a, b in zip(functional, col))) == 0 for col in cols)


# ---------------------------------------------------------------- SL(3) constructions

S2 = SymSpace(2)
S3 = SymSpace(3)


def gauss_point(x, field: Field = QQ) -> Subspace:
    """x^2 . W_3 inside Sym^3 W_3."""
    x = [field.convert(c) for c in x]
    if all(c == 0 for c in x):
        raise FieldError("x must be nonzero")
    x2 = S2.power_of(x, field)
    vecs = [mul_primal(_unit(i, 3, field), x2, 2, field) for i in range(3)]
    return Subspace.span(vecs, 10, field)


def linear_perp(a, field: Field = QQ) -> Subspace:
    """Ker(a) in W_3 for a in W_3^dual."""
    return kernel(Matrix.from_rows([list(a)], field, 3))


def sl3_L_space(a, H: list, field: Field = QQ) -> Subspace:
    """(a . I(a,H)^perp)^perp for a 2-dimensional H in Sym^2(a^perp)."""
    a = [field.convert(c) for c in a]
    Hs = Subspace.span(H, 6, field)
    if Hs.dim != 2:
        raise FieldError("H must be 2-dimensional")
    ap = linear_perp(a, field).vectors()
    sym2_ap = Subspace.span(
        [S2.power_of(ap[0], field), S2.power_of(ap[1], field), mul_primal(ap[0], ap[1], 1, field)],
        6,
        field,
    )
    if not Hs <= sym2_ap:
        raise FieldError("H is not contained in Sym^2(a^perp)")
    Iperp = apolar_perp(Hs.vectors(), 2, field)
    T4 = [mul_dual(a, v, 2, field) for v in Iperp.vectors()]
    L = apolar_perp(T4, 3, field)
    if L.dim != 6:
        raise FieldError(f"L(a,H) has dimension {L.dim}")
    return L


def sl3_J_space(a, x, field: Field = QQ) -> Subspace:
    kerA = linear_perp(a, field).vectors()
    x = [field.convert(c) for c in x]
    return Subspace.span([mul_primal(x, k, 1, field) for k in kerA], 6, field)


def sl3_M_space(a, x, field: Field = QQ) -> Subspace:
    """(a . J(a,x)^perp)^perp with J(a,x) = x . Ker(a)."""
    a = [field.convert(c) for c in a]
    J = sl3_J_space(a, x, field)
    if J.dim != 2:
        raise FieldError("J(a,x) must be 2-dimensional")
    T4 = [mul_dual(a, v, 2, field) for v in apolar_perp(J.vectors(), 2, field).vectors()]
    M = apolar_perp(T4, 3, field)
    if M.dim != 6:
        raise FieldError(f"M(a,x) has dimension {M.dim}")
    return M


def sl3_M_branch(a, x) -> str:
    """Which normal form applies: the generic one needs a(x) != 0."""
    return "a(x)!=0" if sum(p * q for p, q in zip(a, x)) != 0 else "a(x)=0"


def monomial_span(names: list[tuple], field: Field = QQ) -> Subspace:
    return Subspace.span([S3.monomial_vector(m, field) for m in names], 10, field)


# ---------------------------------------------------------------- Sp(4) constructions


def sp4_j(model: Sp4Model, x) -> Subspace:
    F = model.gram.field
    x = [F.convert(c) for c in x]
    if model.q(x, x) != 0:
        raise FieldError("x is not on the quadric")
    perp = model.perp(x).vectors()
    U = Subspace.span([wedge_vectors([x, z], F) for z in perp], N, F)
    if U.dim != 3:
        raise FieldError("j(x) is not 3-dimensional")
    return U


def sp4_pair(model: Sp4Model, x, y) -> Subspace:
    a, b = sp4_j(model, x), sp4_j(model, y)
    W = sum_spaces(a, b)
    if W.dim != 6:
        raise FieldError("j(x) and j(y) overlap")
    return W


def quadric_points(model: Sp4Model, count: int, field: Field = QQ, seed: int = 0, max_trials: int = 10000) -> list[list]:
    """Isotropic vectors of q, by projecting from the isotropic point e_0."""
    m = model.over(field)
    rng = np.random.default_rng(seed)
    x0 = _unit(0, 5, field)
    if m.q(x0, x0) != 0:
        raise FieldError("base point is not isotropic")
    out: list[list] = []
    trials = 0
    while len(out) < count:
        trials += 1
        if trials > max_trials:
            raise TimeoutError("quadric sampler exhausted its trial budget")
        w = [field.convert(field.random(rng, 4)) for _ in range(5)]
        qww = m.q(w, w)
        if qww == 0:
            continue
        s = field.reduce(-2 * m.q(x0, w) * field.inv(qww))
        if s == 0:
            continue
        pt = [field.reduce(a + s * b) for a, b in zip(x0, w)]
        out.append(pt)
    return out


def quadric_pairs(model: Sp4Model, count: int, field: Field = QQ, seed: int = 0) -> list[tuple]:
    pts = quadric_points(model, 2 * count + 20, field, seed)
    out = []
    i = 0
    while len(out) < count:
        x, y = pts[i], pts[i + 1]
        i += 2
        try:
            sp4_pair(model.over(field), x, y)
        except FieldError:
            continue
        out.append((x, y))
    return out


# ---------------------------------------------------------------- SL(2) constructions


def sl2_k1_point(model: SL2Model, x, W: list) -> Subspace:
    """V_4[x] + lift(W) for W given by two vectors of V_7[x]."""
    F = model.field
    v4, v7 = sl2_vspaces(model, x)
    for w in W:
        if not Subspace.span([w], N, F) <= v7:
            raise FieldError("W must lie in V_7[x]")
    W6 = Subspace.span(v4.vectors() + [list(w) for w in W], N, F)
    if W6.dim != 6:
        raise FieldError("W is degenerate modulo V_4[x]")
    return W6


def random_k1_point(model: SL2Model, rng, field: Field | None = None) -> tuple[list, Subspace]:
    F = field or model.field
    m = model.over(F) if F != model.field else model
    while True:
        x = [F.convert(F.random(rng, 3)) for _ in range(5)]
        if all(c == 0 for c in x):
            continue
        try:
            _, v7 = sl2_vspaces(m, x)
        except FieldError:
            continue
        basis = v7.vectors()
        W = []
        for _ in range(2):
            cf = [F.convert(F.random(rng, 3)) for _ in basis]
            W.append([F.reduce(sum(c * b[i] for c, b in zip(cf, basis))) for i in range(N)])
        try:
            return x, sl2_k1_point(m, x, W)
        except FieldError:
            continue


def _bilinear_on_dual(w, phi, psi, F: Field):
    """w in wedge^2 V_5 evaluated on two elements of V_5^dual."""
    tot = F.convert(0)
    for c, (a, b) in zip(w, index_tuples(2, 5)):
        if c != 0:
            tot = tot + c * (phi[a] * psi[b] - phi[b] * psi[a])
    return F.reduce(tot)


@dataclass(frozen=True)
class XPoint:
    """[V_2] in Gr(2, V_5^dual) on the linear section by W_3."""

    v2: Subspace  # in V_5^dual
    v3: Subspace  # V_2^perp in V_5
    u3: Subspace  # wedge^2 V_3 in wedge^2 V_5


def fano3fold_points(model: SL2Model, count: int, field: Field | None = None, seed: int = 0,
                     max_trials: int = 10000) -> list[XPoint]:
    """Points of X: each phi_1 spans a unique V_2 with wedge^2 V_2 orthogonal to W_3."""
    F = field or GF(10007)
    m = model.over(F) if F != model.field else model
    rng = np.random.default_rng(seed)
    w3 = m.w3.vectors()
    out: list[XPoint] = []
    trials = 0
    e = [_unit(i, 5, F) for i in range(5)]
    while len(out) < count:
        trials += 1
        if trials > max_trials:
            raise TimeoutError("X sampler exhausted its trial budget")
        phi = [F.convert(F.random(rng, 3)) for _ in range(5)]
        if all(c == 0 for c in phi):
            continue
        rows = [[_bilinear_on_dual(w, phi, ei, F) for ei in e] for w in w3]
        V2 = kernel(Matrix.from_rows(rows, F, 5))
        if V2.dim != 2:
            continue
        V3 = kernel(V2.basis)
        a, b, c = V3.vectors()
        U3 = Subspace.span([wedge_vectors(p, F) for p in ((a, b), (a, c), (b, c))], N, F)
        out.append(XPoint(V2, V3, U3))
    return out


def x_point_conditions(model: SL2Model, pt: XPoint) -> dict:
    """The three W_3 conditions and the Pluecker quadrics at a point of X."""
    F = pt.v2.field
    m = model.over(F) if F != model.field else model
    p, q = pt.v2.vectors()
    lin = [_bilinear_on_dual(w, p, q, F) for w in m.w3.vectors()]
    pl = dict(zip(index_tuples(2, 5), wedge_vectors([p, q], F)))
    quad = []
    for i, j, k, l in combinations(range(5), 4):
        quad.append(F.reduce(pl[i, j] * pl[k, l] - pl[i, k] * pl[j, l] + pl[i, l] * pl[j, k]))
    return {"linear": lin, "quadrics": quad}


# ---------------------------------------------------------------- G2 x SL(3)


def g2sl3_isotropic_w4(field: Field = QQ) -> list[Subspace]:
    """Coordinate 4-spaces of V_7 complementary to the Fano lines."""
    from .trivectorzoo import FANO_LINES

    out = []
    for line in FANO_LINES:
        coords = [i for i in range(7) if i not in line]
        out.append(Subspace.span([_unit(i, N, field) for i in coords], N, field))
    return out


def g2sl3_coordinate_w2(field: Field = QQ) -> list[Subspace]:
    return [Subspace.span([_unit(i, N, field), _unit(j, N, field)], N, field) for i, j in combinations((7, 8, 9), 2)]


def random_w2(rng, field: Field = QQ) -> Subspace:
    while True:
        vecs = []
        for _ in range(2):
            v = field.zeros(N)
            for i in (7, 8, 9):
                v[i] = field.convert(field.random(rng, 5))
            vecs.append(v)
        W = Subspace.span(vecs, N, field)
        if W.dim == 2:
            return W


def random_subspace(rng, dim: int, coords: list[int], field: Field = QQ) -> Subspace:
    while True:
        vecs = []
        for _ in range(dim):
            v = field.zeros(N)
            for i in coords:
                v[i] = field.convert(field.random(rng, 5))
            vecs.append(v)
        W = Subspace.span(vecs, N, field)
        if W.dim == dim:
            return W


# ---------------------------------------------------------------- SL(3) sampling


def random_KL_point(rng, field: Field = QQ) -> tuple[Subspace, Subspace, Subspace]:
    """L(a, <l1^2, l2^2>) and the two Gauss points it is built from."""
    while True:
        a = [field.convert(field.random(rng, 4)) for _ in range(3)]
        if all(c == 0 for c in a):
            continue
        ap = linear_perp(a, field).vectors()
        ls = []
        for _ in range(2):
            s, t = field.convert(field.random(rng, 4)), field.convert(field.random(rng, 4))
            ls.append([field.reduce(s * p + t * q) for p, q in zip(*ap)])
        try:
            H = [S2.power_of(l, field) for l in ls]
            L = sl3_L_space(a, H, field)
            g1, g2 = gauss_point(ls[0], field), gauss_point(ls[1], field)
        except FieldError:
            continue
        if sum_spaces(g1, g2).dim != 6:
            continue
        return L, g1, g2


def random_KM_point(rng, field: Field = QQ) -> Subspace:
    while True:
        a = [field.convert(field.random(rng, 4)) for _ in range(3)]
        x = [field.convert(field.random(rng, 4)) for _ in range(3)]
        if all(c == 0 for c in a) or all(c == 0 for c in x):
            continue
        if field.reduce(sum(p * q for p, q in zip(a, x))) == 0:
            continue
        try:
            return sl3_M_space(a, x, field)
        except FieldError:
            continue


def crit2jet_holds(U6: Subspace, a, field: Field = QQ) -> bool:
    """(a . Sym^2 W_3^dual) meets U_6^perp."""
    perp = apolar_perp(U6.vectors(), 3, field)
    aS2 = Subspace.span([mul_dual(a, _unit(i, 6, field), 2, field) for i in range(6)], 10, field)
    return intersect(aS2, perp).dim > 0


# ---------------------------------------------------------------- monomial scans


def exponent_sums(ms) -> tuple:
    return tuple(sum(m[i] for m in ms) for i in range(3))


def nonzero_criterion(ms) -> bool:
    return exponent_sums(ms) == (3, 3, 3) and not all(m == (1, 1, 1) for m in ms)


@dataclass(frozen=True)
class MonomialReport:
    singular_spaces: tuple
    singular_count: int
    triple_total: int
    triple_matches: int
    triple_mismatches: tuple
    six_total: int
    six_isotropic: tuple

    def summary(self) -> dict:
        return {
            "singular_of_120": self.singular_count,
            "singular_spaces": [[monomial_name(MONOMIALS3[i]) for i in s] for s in self.singular_spaces],
            "nonzero_matches": f"{self.triple_matches}/{self.triple_total}",
            "isotropic_six_spaces": f"{len(self.six_isotropic)}/{self.six_total}",
        }


NO_XYZ_SPAN = [(3, 0, 0), (2, 0, 1), (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3)]


def monomial_sweeps(sigma: AltForm | None = None) -> MonomialReport:
    sigma = sigma or sl3_sigma0()
    F = sigma.field
    basis = [_unit(i, 10, F) for i in range(10)]
    sing = []
    for t in combinations(range(10), 3):
        U = Subspace.span([basis[i] for i in t], 10, F)
        if x_singular_at(sigma, U):
            sing.append(t)
    total = matches = 0
    bad = []
    for t in combinations_with_replacement(range(10), 3):
        total += 1
        val = sigma(*(basis[i] for i in t))
        crit = nonzero_criterion([MONOMIALS3[i] for i in t])
        if (val != 0) == crit:
            matches += 1
        else:
            bad.append(t)
    idx = [MONOMIALS3.index(m) for m in NO_XYZ_SPAN]
    iso = []
    six = list(combinations(idx, 6))
    for t in six:
        if is_isotropic(sigma, Subspace.span([basis[i] for i in t], 10, F)):
            iso.append(t)
    return MonomialReport(tuple(sing), len(sing), total, matches, tuple(bad), len(six), tuple(iso))


def count_monomial_spaces() -> int:
    return comb(10, 3)
