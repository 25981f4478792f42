"""The four special trivectors on a 10-dimensional space and their models."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .fieldcore import (
    QQ,
    Field,
    FieldError,
    Matrix,
    Subspace,
    kernel,
    solve_unique_nullvector_qq,
)
from .multilinear import (
    AltForm,
    det,
    g2_bilinear,
    index_tuples,
    minors,
    perm_sign,
    wedge,
    wedge_vectors,
)

N = 10

# ---------------------------------------------------------------- SL(3)

SL3_TERMS = {
    (0, 1, 2): 1,
    (0, 5, 8): -3,
    (1, 4, 7): -3,
    (2, 3, 6): -3,
    (3, 4, 5): -3,
    (6, 7, 8): -3,
    (3, 8, 9): -6,
    (4, 6, 9): -6,
    (5, 7, 9): -6,
}


@lru_cache(maxsize=None)
def sl3_sigma0() -> AltForm:
    """SL(W_3)-invariant trivector on Sym^3 W_3, sigma(x^3, y^3, z^3) = 1."""
    return AltForm.from_dict(3, N, SL3_TERMS, QQ)


def sl3_sigma0_by_polarization(samples: int = 160, seed: int = 1) -> AltForm:
    """Recover the trivector from sigma(u^3, v^3, w^3) = det(u,v,w)^3 alone."""
    from .multilinear import SymSpace

    S = SymSpace(3)
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(samples):
        u, v, w = (list(map(int, rng.integers(-4, 5, 3))) for _ in range(3))
        d = det(Matrix.from_rows([u, v, w], QQ))
        rows.append(minors([S.power_of(u), S.power_of(v), S.power_of(w)]) + [-(d**3)])
    v, _ = solve_unique_nullvector_qq(Matrix.from_rows(rows, QQ))
    last = v[-1]
    return AltForm.from_coeffs(3, N, [c / last for c in v[:-1]], QQ)


# ---------------------------------------------------------------- Sp(4)


@dataclass(frozen=True)
class Sp4Model:
    omega: AltForm  # on V_4
    v5_basis: tuple  # vectors of wedge^2 V_4, lex coordinates
    gram: Matrix  # q on V_5
    endos: tuple  # 10 q-skew 5x5 matrices, one per basis element of wedge^2 V_5

    def q(self, x, y):
        g = self.gram
        F = g.field
        return F.reduce(sum(x[i] * g.rows[i][j] * y[j] for i in range(5) for j in range(5) if g.rows[i][j] != 0))

    def endo(self, a) -> list[list]:
        """Skew endomorphism attached to a in wedge^2 V_5."""
        F = self.gram.field
        out = [[F.convert(0)] * 5 for _ in range(5)]
        for c, A in zip(a, self.endos):
            if c != 0:
                for i in range(5):
                    for j in range(5):
                        out[i][j] = F.reduce(out[i][j] + c * A[i][j])
        return out

    def perp(self, x) -> Subspace:
        F = self.gram.field
        row = [self.q(x, [1 if i == j else 0 for j in range(5)]) for i in range(5)]
        return kernel(Matrix.from_rows([row], F, 5))

    def over(self, field: Field) -> "Sp4Model":
        if field == self.gram.field:
            return self
        g = Matrix.from_rows(self.gram.rows, field, 5)
        endos = tuple(tuple(tuple(field.convert(x) for x in r) for r in A) for A in self.endos)
        return Sp4Model(self.omega.over(field), self.v5_basis, g, endos)


def _mat_mul(F: Field, A, B):
    n = len(A)
    return [[F.reduce(sum(A[i][k] * B[k][j] for k in range(n))) for j in range(n)] for i in range(n)]


def _trace(F: Field, A):
    return F.reduce(sum(A[i][i] for i in range(len(A))))


@lru_cache(maxsize=None)
def sp4_model() -> Sp4Model:
    F = QQ
    # omega = e0^ e2 + e1 ^ e3
    omega = AltForm.from_dict(2, 4, {(0, 2): 1, (1, 3): 1}, F)
    w2 = index_tuples(2, 4)

    def bivector(d):
        return [F.convert(d.get(t, 0)) for t in w2]

    v5 = (
        bivector({(0, 1): 1}),
        bivector({(0, 3): 1}),
        bivector({(1, 2): 1}),
        bivector({(2, 3): 1}),
        bivector({(0, 2): 1, (1, 3): -1}),
    )
    for v in v5:
        assert sum(a * b for a, b in zip(omega.coeffs, v)) == 0
    top = wedge(omega, omega).coeffs[0]

    def q_raw(x, y):
        fx = AltForm(2, 4, tuple(x), F)
        fy = AltForm(2, 4, tuple(y), F)
        return top * wedge(fx, fy).coeffs[0]

    gram = Matrix.from_rows([[q_raw(a, b) for b in v5] for a in v5], F, 5)
    G = gram.rows

    def q(x, y):
        return sum(x[i] * G[i][j] * y[j] for i in range(5) for j in range(5))

    e = [[1 if i == j else 0 for j in range(5)] for i in range(5)]
    endos = []
    for a, b in index_tuples(2, 5):
        # u -> q(x,u) z - q(z,u) x  for x = e_a, z = e_b
        A = [[F.convert(0)] * 5 for _ in range(5)]
        for col in range(5):
            u = e[col]
            img = [q(e[a], u) * e[b][i] - q(e[b], u) * e[a][i] for i in range(5)]
            for i in range(5):
                A[i][col] = F.convert(img[i])
        endos.append(tuple(tuple(r) for r in A))
    return Sp4Model(omega, v5, gram, tuple(endos))


@lru_cache(maxsize=None)
def sp4_sigma0() -> tuple[Sp4Model, AltForm]:
    """sigma(a, b, c) = Tr(a o b o c) on wedge^2 V_5."""
    m = sp4_model()
    F = QQ
    A = m.endos
    coeffs = []
    for i, j, k in index_tuples(3, N):
        t = _trace(F, _mat_mul(F, _mat_mul(F, A[i], A[j]), A[k]))
        # alternation check: swapping two factors flips the sign
        t2 = _trace(F, _mat_mul(F, _mat_mul(F, A[j], A[i]), A[k]))
        if t != -t2:
            raise FieldError("trace form is not alternating")
        coeffs.append(t)
    return m, AltForm(3, N, tuple(coeffs), F)


def sp4_trace_form(model: Sp4Model, a, b, c):
    F = model.gram.field
    return _trace(F, _mat_mul(F, _mat_mul(F, model.endo(a), model.endo(b)), model.endo(c)))


def sp4_transvection(v, c, field: Field = QQ) -> Matrix:
    """u -> u + c * omega(v, u) v on V_4."""
    m = sp4_model().omega.over(field)
    e = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    cols = []
    for u in e:
        w = m(v, u)
        cols.append([field.reduce(field.convert(u[i]) + field.convert(c) * w * field.convert(v[i])) for i in range(4)])
    return Matrix.from_rows([list(r) for r in zip(*cols)], field, 4)


def sp4_induced_action(g: Matrix) -> Matrix:
    """Action of g in Sp(V_4) on wedge^2 V_5 (coordinates of the model)."""
    F = g.field
    m = sp4_model()
    gcols = [list(c) for c in zip(*g.rows)]
    w2 = index_tuples(2, 4)
    # g on wedge^2 V_4
    L2 = []
    for a, b in w2:
        L2.append(wedge_vectors([gcols[a], gcols[b]], F))
    L2 = [list(r) for r in zip(*L2)]  # columns -> matrix
    # express g(v5_i) in the V_5 basis
    basis = [[F.convert(x) for x in v] for v in m.v5_basis]
    img_cols = []
    for v in basis:
        gv = [F.reduce(sum(L2[i][j] * v[j] for j in range(6))) for i in range(6)]
        # solve gv = sum c_k basis_k
        M = Matrix.from_rows([list(r) + [x] for r, x in zip(zip(*basis), gv)], F, 6)
        k = kernel(M)
        vec = k.vectors()[0]
        img_cols.append([F.reduce(-x * F.inv(vec[-1])) for x in vec[:-1]])
    cols10 = [wedge_vectors([img_cols[a], img_cols[b]], F) for a, b in index_tuples(2, 5)]
    return Matrix.from_rows([list(r) for r in zip(*cols10)], F, N)


# ---------------------------------------------------------------- G2 x SL(3)

# signed Fano-plane form, 0-indexed
FANO_TERMS = {
    (0, 1, 2): 1,
    (0, 3, 4): 1,
    (0, 5, 6): 1,
    (1, 3, 5): 1,
    (1, 4, 6): -1,
    (2, 3, 6): -1,
    (2, 4, 5): -1,
}
FANO_LINES = [tuple(t) for t in FANO_TERMS]


@dataclass(frozen=True)
class G2SL3Model:
    alpha: AltForm  # on V_7
    beta: AltForm  # on W_3
    bilinear: Matrix

    @property
    def v7_coords(self) -> list[int]:
        return list(range(7))

    @property
    def w3_coords(self) -> list[int]:
        return [7, 8, 9]


def fano_alpha(field: Field = QQ) -> AltForm:
    return AltForm.from_dict(3, 7, FANO_TERMS, field)


@lru_cache(maxsize=None)
def g2sl3_sigma0() -> tuple[G2SL3Model, AltForm]:
    alpha = fano_alpha()
    B = g2_bilinear(alpha)
    if det(B) == 0:
        raise FieldError("alpha is degenerate")
    beta = AltForm.from_dict(3, 3, {(0, 1, 2): 1}, QQ)
    terms = dict(FANO_TERMS)
    terms[(7, 8, 9)] = 1
    return G2SL3Model(alpha, beta, B), AltForm.from_dict(3, N, terms, QQ)


# ---------------------------------------------------------------- SL(2)


@dataclass(frozen=True)
class SL2Model:
    """V_5 = Sym^4 U_2 with basis x^(4-i) y^i; wedge^2 V_5 in lex basis."""

    e: Matrix
    f: Matrix
    h: Matrix
    w3: Subspace
    v7: Subspace

    @property
    def field(self) -> Field:
        return self.e.field

    def over(self, field: Field) -> "SL2Model":
        if field == self.field:
            return self
        return SL2Model(
            self.e.reduce_mod(field.p),
            self.f.reduce_mod(field.p),
            self.h.reduce_mod(field.p),
            self.w3.reduce_mod(field.p),
            self.v7.reduce_mod(field.p),
        )


def _sl2_on_v5():
    e = [[0] * 5 for _ in range(5)]
    f = [[0] * 5 for _ in range(5)]
    h = [[0] * 5 for _ in range(5)]
    for i in range(5):
        # e = x d/dy, f = y d/dx, h = x d/dx - y d/dy
        if i > 0:
            e[i - 1][i] = i
        if i < 4:
            f[i + 1][i] = 4 - i
        h[i][i] = 4 - 2 * i
    return e, f, h


def _derivation_on_wedge2(X) -> list[list]:
    pairs = index_tuples(2, 5)
    idx = {p: i for i, p in enumerate(pairs)}
    out = [[0] * N for _ in range(N)]
    for col, (a, b) in enumerate(pairs):
        # X(v_a ^ v_b) = X v_a ^ v_b + v_a ^ X v_b
        for i in range(5):
            for (s, t, c) in ((i, b, X[i][a]), (a, i, X[i][b])):
                if c == 0 or s == t:
                    continue
                sign = 1 if s < t else -1
                out[idx[tuple(sorted((s, t)))]][col] += sign * c
    return out


@lru_cache(maxsize=None)
def sl2_model() -> SL2Model:
    e, f, h = _sl2_on_v5()
    E, Fm, H = (Matrix.from_rows(_derivation_on_wedge2(X), QQ, N) for X in (e, f, h))
    pairs = index_tuples(2, 5)
    # weight-2 vectors killed by e: a + b = 3
    wt2 = [i for i, (a, b) in enumerate(pairs) if a + b == 3]
    sub = Matrix.from_rows([[E.rows[r][c] for c in wt2] for r in range(N)], QQ, len(wt2))
    k = kernel(sub)
    if k.dim != 1:
        raise FieldError("highest weight space of weight 2 is not a line")
    hw = [QQ.convert(0)] * N
    for c, i in zip(k.vectors()[0], wt2):
        hw[i] = c
    vecs = [hw]
    for _ in range(2):
        vecs.append(Fm.apply(vecs[-1]))
    w3 = Subspace.span(vecs, N, QQ)
    if w3.dim != 3 or Subspace.span(vecs + [Fm.apply(vecs[-1])], N, QQ) != w3:
        raise FieldError("W_3 is not an irreducible 3-dimensional summand")
    # V_7 generated from the weight-6 vector v_0 ^ v_1
    top = [QQ.convert(0)] * N
    top[pairs.index((0, 1))] = QQ.convert(1)
    vs = [top]
    for _ in range(6):
        vs.append(Fm.apply(vs[-1]))
    v7 = Subspace.span(vs, N, QQ)
    return SL2Model(E, Fm, H, w3, v7)


def wedge3_of(x, w, field: Field):
    """x ^ w in wedge^3 V_5 for x in V_5 and w in wedge^2 V_5 (lex coordinates)."""
    pairs = index_tuples(2, 5)
    trip_idx = {t: i for i, t in enumerate(index_tuples(3, 5))}
    out = field.zeros(10)
    for i in range(5):
        if x[i] == 0:
            continue
        for c, (a, b) in zip(w, pairs):
            if c == 0 or i in (a, b):
                continue
            t = (i, a, b)
            j = trip_idx[tuple(sorted(t))]
            out[j] = field.reduce(out[j] + perm_sign(t) * x[i] * c)
    return out


def wedge23_pairing(field: Field) -> Matrix:
    """P with v ^ t = (v^T P t) e_01234 for v in wedge^2, t in wedge^3."""
    pairs = index_tuples(2, 5)
    trips = index_tuples(3, 5)
    rows = []
    for a, b in pairs:
        row = []
        for t in trips:
            if {a, b} & set(t):
                row.append(0)
                continue
            row.append(perm_sign((a, b) + t))
        rows.append(row)
    return Matrix.from_rows(rows, field, 10)


def sl2_vspaces(model: SL2Model, x) -> tuple[Subspace, Subspace]:
    """V_4 = x ^ V_5 and V_7 = (x ^ W_3)^perp inside wedge^2 V_5."""
    F = model.field
    x = [F.convert(c) for c in x]
    if all(c == 0 for c in x):
        raise FieldError("x must be nonzero")
    e = [[1 if i == j else 0 for j in range(5)] for i in range(5)]
    v4 = Subspace.span([wedge_vectors([x, ei], F) for ei in e], N, F)
    xw = Subspace.span([wedge3_of(x, w, F) for w in model.w3.vectors()], N, F)
    if xw.dim != 3:
        raise FieldError("x ^ W_3 dropped dimension")
    P = wedge23_pairing(F)
    v7 = kernel(Matrix.from_rows([P.apply(t) for t in xw.vectors()], F, N))
    if v4.dim != 4 or v7.dim != 7:
        raise FieldError("unexpected dimensions for V_4 / V_7")
    return v4, v7


def _extend_basis(sub: Subspace, big: Subspace) -> list[list]:
    """Basis of big starting with a basis of sub."""
    F = sub.field
    vecs = sub.vectors()
    cur = sub
    for v in big.vectors():
        nxt = Subspace.span(vecs + [v], sub.ambient_dim, F)
        if nxt.dim > cur.dim:
            vecs.append(v)
            cur = nxt
    return vecs


def sl2_constraint_rows(model: SL2Model, x) -> list[list]:
    """Rows r with r . coeffs = sigma(v, w, w') for v in V_4, w, w' in V_7."""
    F = model.field
    v4, v7 = sl2_vspaces(model, x)
    b = _extend_basis(v4, v7)
    rows = []
    for i in range(4):
        for j, k in combinations(range(7), 2):
            if j == i or k == i:
                continue
            rows.append(minors([b[i], b[j], b[k]], F))
    return rows


@dataclass(frozen=True)
class SL2Solve:
    sigma: AltForm
    kernel_dim: int
    rank_mod_p: int
    points: tuple


def _sl2_points(count: int, seed: int) -> list[list[int]]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        x = [int(c) for c in rng.integers(-3, 4, 5)]
        if any(x):
            out.append(x)
    return out


def sl2_solve(samples: int = 40, seed: int = 2024, p: int = 10007) -> SL2Solve:
    """Solve the linear vanishing conditions on the 120 coefficients."""
    model = sl2_model()
    pts = _sl2_points(samples, seed)
    rows = []
    for x in pts:
        rows.extend(sl2_constraint_rows(model, x))
    M = Matrix.from_rows(rows, QQ, 120)
    v, r = solve_unique_nullvector_qq(M, p)
    first = next(c for c in v if c != 0)
    sigma = AltForm.from_coeffs(3, N, [c / first for c in v], QQ)
    return SL2Solve(sigma, 120 - r, r, tuple(tuple(x) for x in pts))


@lru_cache(maxsize=None)
def sl2_sigma0() -> tuple[SL2Model, AltForm]:
    s = sl2_solve()
    if s.kernel_dim != 1:
        raise FieldError(f"solution space has dimension {s.kernel_dim}")
    return sl2_model(), s.sigma


def lie_derivative(sigma: AltForm, X: Matrix) -> AltForm:
    """(X . sigma)(a,b,c) = -(sigma(Xa,b,c) + sigma(a,Xb,c) + sigma(a,b,Xc))."""
    F = sigma.field
    cols = [list(c) for c in zip(*X.rows)]
    e = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    out = []
    for i, j, k in index_tuples(3, N):
        t = sigma(cols[i], e[j], e[k]) + sigma(e[i], cols[j], e[k]) + sigma(e[i], e[j], cols[k])
        out.append(F.reduce(-t))
    return AltForm(3, N, tuple(out), F)


# ---------------------------------------------------------------- random


def random_trivector(seed: int, field: Field = QQ, height: int = 5) -> AltForm:
    rng = np.random.default_rng(seed)
    return AltForm(3, N, tuple(field.convert(field.random(rng, height)) for _ in range(120)), field)


def trivector(name: str, field: Field = QQ) -> AltForm:
    if name == "sl3":
        s = sl3_sigma0()
    elif name == "sp4":
        s = sp4_sigma0()[1]
    elif name == "g2sl3":
        s = g2sl3_sigma0()[1]
    elif name == "sl2":
        s = sl2_sigma0()[1]
    else:
        raise KeyError(name)
    return s.over(field)


TRIVECTOR_NAMES = ("sl3", "sp4", "sl2", "g2sl3")


def restriction_functional(W: Subspace) -> list:
    """Row vector r with r . coeffs = sigma(w_1, w_2, w_3) for a 3-space W."""
    return minors(W.vectors(), W.field)
