"""Alternating forms, contraction, isotropy, apolarity and 1-PS limits."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, lcm
from typing import Sequence

from .fieldcore import (
    QQ,
    Field,
    FieldError,
    Matrix,
    Subspace,
    annihilator,
    infer_field,
    left_kernel,
    rank,
    scalar_str,
)


def index_tuples(k: int, n: int) -> list[tuple]:
    return list(combinations(range(n), k))


_INDEX_CACHE: dict = {}


def tuple_index(k: int, n: int) -> dict:
    key = (k, n)
    if key not in _INDEX_CACHE:
        _INDEX_CACHE[key] = {t: i for i, t in enumerate(index_tuples(k, n))}
    return _INDEX_CACHE[key]


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting seq, 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _det(f: Field, m: list[list]):
    k = len(m)
    if k == 2:
        return f.reduce(m[0][0] * m[1][1] - m[0][1] * m[1][0])
    if k == 3:
        a, b, c = m
        return f.reduce(
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    total = f.convert(0)
    for p in permutations(range(k)):
        term = f.convert(perm_sign(p))
        for i, j in enumerate(p):
            term = term * m[i][j]
        total = total + term
    return f.reduce(total)


def _integral(vs: list[list], field: Field) -> tuple[list[list[int]], int]:
    """Integer rows and the common scale dividing every minor."""
    if field != QQ:
        return [[int(x) for x in v] for v in vs], 1
    out, scale = [], 1
    for v in vs:
        d = lcm(*(Fraction(x).denominator for x in v))
        out.append([int(Fraction(x) * d) for x in v])
        scale *= d
    return out, scale


def minors(vectors: Sequence[Sequence], field: Field = QQ) -> list:
    """All k x k minors of the k x n matrix of vectors, in lex column order.

    f(v_1..v_k) = sum(coeffs * minors(v)) for an AltForm f.
    """
    k = len(vectors)
    n = len(vectors[0])
    vs = [[field.convert(x) for x in v] for v in vectors]
    ints, scale = _integral(vs, field)
    if k == 1:
        raw = ints[0]
    elif k == 2:
        a, b = ints
        raw = [a[i] * b[j] - a[j] * b[i] for i, j in combinations(range(n), 2)]
    elif k == 3:
        a, b, c = ints
        m2 = {(j, l): b[j] * c[l] - b[l] * c[j] for j, l in combinations(range(n), 2)}
        raw = [a[i] * m2[j, l] - a[j] * m2[i, l] + a[l] * m2[i, j] for i, j, l in combinations(range(n), 3)]
    else:
        raw = [_det(QQ, [[Fraction(v[c]) for c in cols] for v in ints]) for cols in combinations(range(n), k)]
    if field == QQ:
        return [Fraction(int(x), scale) for x in raw]
    return [int(x) % field.p for x in raw]


def wedge_vectors(vectors: Sequence[Sequence], field: Field = QQ) -> list:
    """Coordinates of v_1 ^ ... ^ v_k in the lex basis of the k-th exterior power."""
    return minors(vectors, field)


@dataclass(frozen=True)
class AltForm:
    """Alternating k-form on field^n; coeffs[t] = f(e_i, e_j, ...) for sorted t."""

    degree: int
    ambient_dim: int
    coeffs: tuple
    field: Field = QQ

    def __post_init__(self):
        if len(self.coeffs) != comb(self.ambient_dim, self.degree):
            raise FieldError("coefficient vector has the wrong length")

    @classmethod
    def from_dict(cls, k: int, n: int, terms: dict, field: Field = QQ) -> "AltForm":
        idx = tuple_index(k, n)
        c = field.zeros(len(idx))
        for t, v in terms.items():
            s = perm_sign(t)
            if s == 0:
                continue
            st = tuple(sorted(t))
            c[idx[st]] = field.reduce(c[idx[st]] + s * field.convert(v))
        return cls(k, n, tuple(c), field)

    @classmethod
    def from_coeffs(cls, k: int, n: int, coeffs: Sequence, field: Field | None = None) -> "AltForm":
        if field is None:
            field = infer_field(coeffs)
        return cls(k, n, tuple(field.convert(x) for x in coeffs), field)

    @classmethod
    def zero(cls, k: int, n: int, field: Field = QQ) -> "AltForm":
        return cls(k, n, tuple(field.zeros(comb(n, k))), field)

    def coefficient(self, t: Sequence[int]):
        s = perm_sign(t)
        if s == 0:
            return self.field.convert(0)
        return self.field.reduce(s * self.coeffs[tuple_index(self.degree, self.ambient_dim)[tuple(sorted(t))]])

    def terms(self) -> dict:
        return {t: c for t, c in zip(index_tuples(self.degree, self.ambient_dim), self.coeffs) if c != 0}

    def support(self) -> list[tuple]:
        return list(self.terms())

    def __call__(self, *vectors):
        return eval_form(self, *vectors)

    def __add__(self, o: "AltForm") -> "AltForm":
        self._compat(o)
        f = self.field
        return AltForm(self.degree, self.ambient_dim, tuple(f.reduce(a + b) for a, b in zip(self.coeffs, o.coeffs)), f)

    def __sub__(self, o: "AltForm") -> "AltForm":
        self._compat(o)
        f = self.field
        return AltForm(self.degree, self.ambient_dim, tuple(f.reduce(a - b) for a, b in zip(self.coeffs, o.coeffs)), f)

    def scale(self, c) -> "AltForm":
        f = self.field
        c = f.convert(c)
        return AltForm(self.degree, self.ambient_dim, tuple(f.reduce(c * a) for a in self.coeffs), f)

    def _compat(self, o: "AltForm"):
        if (self.degree, self.ambient_dim) != (o.degree, o.ambient_dim) or self.field != o.field:
            raise FieldError("incompatible forms")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def reduce_mod(self, p: int) -> "AltForm":
        from .fieldcore import GF

        if self.field != QQ:
            raise FieldError("only rational forms can be reduced")
        F = GF(p)
        return AltForm(self.degree, self.ambient_dim, tuple(F.convert(c) for c in self.coeffs), F)

    def over(self, field: Field) -> "AltForm":
        if field == self.field:
            return self
        if self.field != QQ:
            raise FieldError("only rational forms change field")
        return AltForm(self.degree, self.ambient_dim, tuple(field.convert(c) for c in self.coeffs), field)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "ambient_dim": self.ambient_dim,
            "coeffs": [scalar_str(self.field.to_scalar(c)) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, d: dict) -> "AltForm":
        return cls.from_coeffs(d["degree"], d["ambient_dim"], [Fraction(s) for s in d["coeffs"]], QQ)

    def pullback(self, g: Matrix) -> "AltForm":
        """(g^* f)(v, ...) = f(g v, ...), g an n x n matrix acting on column vectors."""
        cols = [list(c) for c in zip(*g.rows)]
        f = self.field
        out = [eval_form(self, *[cols[i] for i in t]) for t in index_tuples(self.degree, self.ambient_dim)]
        return AltForm(self.degree, self.ambient_dim, tuple(f.reduce(x) for x in out), f)


def eval_form(f: AltForm, *vectors):
    if len(vectors) != f.degree:
        raise FieldError(f"{f.degree}-form needs {f.degree} arguments")
    for v in vectors:
        if len(v) != f.ambient_dim:
            raise FieldError("dimension mismatch")
    F = f.field
    m = minors(vectors, F)
    return F.reduce(sum((a * b for a, b in zip(f.coeffs, m)), F.convert(0)))


def contract(f: AltForm, u: Sequence) -> AltForm:
    """u -| f, i.e. (u -| f)(a, b) = f(u, a, b)."""
    if len(u) != f.ambient_dim:
        raise FieldError("dimension mismatch")
    F = f.field
    u = [F.convert(x) for x in u]
    k, n = f.degree, f.ambient_dim
    terms: dict = {}
    for t, c in f.terms().items():
        for pos, i in enumerate(t):
            if u[i] == 0:
                continue
            rest = t[:pos] + t[pos + 1 :]
            terms[rest] = terms.get(rest, F.convert(0)) + (-1) ** pos * u[i] * c
    return AltForm.from_dict(k - 1, n, terms, F)


def restrict(f: AltForm, W: Subspace) -> AltForm:
    """f pulled back to W in its RREF basis."""
    vs = W.vectors()
    F = f.field
    out = [eval_form(f, *[vs[i] for i in t]) for t in index_tuples(f.degree, len(vs))]
    return AltForm(f.degree, len(vs), tuple(F.reduce(x) for x in out), F)


def is_isotropic(f: AltForm, W: Subspace) -> bool:
    if W.dim < f.degree:
        raise FieldError(f"isotropy needs dim >= {f.degree}")
    return restrict(f, W).is_zero()


def wedge(f: AltForm, g: AltForm) -> AltForm:
    """Exterior product, normalized so e^i ^ e^j = e^{ij}."""
    if f.ambient_dim != g.ambient_dim or f.field != g.field:
        raise FieldError("incompatible forms")
    F = f.field
    terms: dict = {}
    for s, a in f.terms().items():
        for t, b in g.terms().items():
            if set(s) & set(t):
                continue
            st = s + t
            key = tuple(sorted(st))
            terms[key] = terms.get(key, F.convert(0)) + perm_sign(st) * a * b
    return AltForm.from_dict(f.degree + g.degree, f.ambient_dim, terms, F)


def g2_bilinear(alpha: AltForm) -> Matrix:
    """B(u,v) with (u -| a) ^ (v -| a) ^ a = B(u,v) e^{1..7}."""
    if alpha.ambient_dim != 7 or alpha.degree != 3:
        raise FieldError("g2_bilinear needs a 3-form on a 7-space")
    F = alpha.field
    e = [[1 if i == j else 0 for j in range(7)] for i in range(7)]
    cs = [contract(alpha, e[i]) for i in range(7)]
    B = [[F.convert(0)] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(i, 7):
            top = wedge(wedge(cs[i], cs[j]), alpha)
            B[i][j] = B[j][i] = top.coeffs[0]
    return Matrix.from_rows(B, F, 7)


def det(m: Matrix):
    """Exact determinant by elimination."""
    F = m.field
    rows = [list(r) for r in m.rows]
    n = len(rows)
    d = F.convert(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return F.convert(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = F.reduce(-d)
        d = F.reduce(d * rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            fct = F.reduce(rows[i][c] * inv)
            if fct != 0:
                rows[i] = [F.reduce(a - fct * b) for a, b in zip(rows[i], rows[c])]
    return d


# ---------------------------------------------------------------- 1-PS limits


@dataclass(frozen=True)
class OnePS:
    """lambda(t) = diag(t^w_0, ..., t^w_{n-1}) on the coordinates."""

    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))


def one_ps_limit(U: Subspace, lam: OnePS) -> Subspace:
    """Flat limit of lambda(t) U as t -> 0 (lowest-weight initial parts)."""
    n = U.ambient_dim
    w = lam.weights
    if len(w) != n:
        raise FieldError("weight vector length differs from ambient dimension")
    F = U.field
    levels = sorted(set(w))
    out: list[list] = []
    for c in levels:
        # U meet F_{>=c}: kill the coordinates of weight < c
        low = [j for j in range(n) if w[j] < c]
        if low:
            proj = Matrix.from_rows([[row[j] for j in low] for row in U.vectors()], F, len(low))
            comb_space = left_kernel(proj)
            combos = comb_space.vectors()
        else:
            combos = [[1 if i == j else 0 for j in range(U.dim)] for i in range(U.dim)]
        for cf in combos:
            v = F.zeros(n)
            for a, row in zip(cf, U.vectors()):
                if a != 0:
                    v = [F.reduce(x + F.convert(a) * y) for x, y in zip(v, row)]
            lead = [v[j] if w[j] == c else F.convert(0) for j in range(n)]
            if any(x != 0 for x in lead):
                out.append(lead)
    L = Subspace.span(out, n, F) if out else Subspace.zero(n, F)
    if L.dim != U.dim:
        raise FieldError("limit lost dimension")
    return L


# ---------------------------------------------------------------- apolarity

MONOMIALS3 = [(3, 0, 0), (0, 3, 0), (0, 0, 3), (2, 1, 0), (1, 0, 2), (0, 2, 1), (1, 2, 0), (2, 0, 1), (0, 1, 2), (1, 1, 1)]
MONOMIALS2 = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
MONOMIALS1 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
MONOMIALS = {1: MONOMIALS1, 2: MONOMIALS2, 3: MONOMIALS3}


def multinomial(m: Sequence[int]) -> int:
    out = factorial(sum(m))
    for e in m:
        out //= factorial(e)
    return out


def monomial_name(m: Sequence[int], letters: str = "xyz") -> str:
    parts = []
    for v, e in zip(letters, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "".join(parts) or "1"


@dataclass(frozen=True)
class SymSpace:
    """Sym^a W_3 in scaled coordinates.

    A vector phi has coordinates alpha_m meaning sum c_m alpha_m m, with c_m the
    multinomial coefficient, so the cube u^a has coordinates u^m.  The dual
    side Sym^a W_3^dual uses plain monomial coordinates; the pairing is the dot
    product.
    """

    power: int

    @property
    def monomials(self) -> list[tuple]:
        return MONOMIALS[self.power]

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def index(self, m: Sequence[int]) -> int:
        return self.monomials.index(tuple(m))

    def from_poly(self, poly: dict, field: Field = QQ) -> list:
        """Polynomial {exponent: coefficient} in x,y,z -> scaled coordinates."""
        v = field.zeros(self.dim)
        for m, c in poly.items():
            i = self.index(m)
            v[i] = field.reduce(v[i] + field.convert(c) * field.inv(field.convert(multinomial(m))))
        return v

    def to_poly(self, v: Sequence, field: Field = QQ) -> dict:
        return {m: field.reduce(field.convert(c) * multinomial(m)) for m, c in zip(self.monomials, v) if c != 0}

    def dual_from_poly(self, poly: dict, field: Field = QQ) -> list:
        v = field.zeros(self.dim)
        for m, c in poly.items():
            i = self.index(m)
            v[i] = field.reduce(v[i] + field.convert(c))
        return v

    def dual_to_poly(self, v: Sequence) -> dict:
        return {m: c for m, c in zip(self.monomials, v) if c != 0}

    def monomial_vector(self, m: Sequence[int], field: Field = QQ) -> list:
        """Coordinates of the bare monomial m (not the scaled basis vector)."""
        return self.from_poly({tuple(m): 1}, field)

    def basis_vector(self, i: int, field: Field = QQ) -> list:
        v = field.zeros(self.dim)
        v[i] = field.convert(1)
        return v

    def power_of(self, u: Sequence, field: Field = QQ) -> list:
        """u^a for u in W_3."""
        u = [field.convert(x) for x in u]
        out = []
        for m in self.monomials:
            t = field.convert(1)
            for x, e in zip(u, m):
                for _ in range(e):
                    t = field.reduce(t * x)
            out.append(t)
        return out

    def pairing(self, field: Field = QQ) -> Matrix:
        return Matrix.identity(self.dim, field)


def poly_mul(p: dict, q: dict, field: Field = QQ) -> dict:
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = field.reduce(out.get(m, field.convert(0)) + c1 * c2)
    return {m: c for m, c in out.items() if c != 0}


def linear_poly(u: Sequence, field: Field = QQ) -> dict:
    return {m: field.convert(c) for m, c in zip(MONOMIALS1, u) if c != 0}


def mul_primal(u: Sequence, v: Sequence, a: int, field: Field = QQ) -> list:
    """u * phi for u in W_3, phi in Sym^a W_3 (scaled coordinates)."""
    src, dst = SymSpace(a), SymSpace(a + 1)
    prod = poly_mul(linear_poly(u, field), src.to_poly(v, field), field)
    return dst.from_poly(prod, field)


def mul_dual(l: Sequence, v: Sequence, a: int, field: Field = QQ) -> list:
    """l * psi for l in W_3^dual, psi in Sym^a W_3^dual (plain coordinates)."""
    src, dst = SymSpace(a), SymSpace(a + 1)
    prod = poly_mul(linear_poly(l, field), src.dual_to_poly(v), field)
    return dst.dual_from_poly(prod, field)


def apolar_pair(phi: Sequence, psi: Sequence, field: Field | None = None):
    """Contraction pairing between Sym^a W_3 and its dual (same a)."""
    if len(phi) != len(psi):
        raise FieldError("power mismatch")
    if field is None:
        field = infer_field(list(phi) + list(psi))
    return field.reduce(sum((field.convert(a) * field.convert(b) for a, b in zip(phi, psi)), field.convert(0)))


def apolar_perp(vectors: Sequence[Sequence], a: int, field: Field = QQ) -> Subspace:
    """Orthogonal of a span under the apolarity pairing (either side)."""
    S = SymSpace(a)
    if not vectors:
        return Subspace.full(S.dim, field)
    A = Subspace.span(vectors, S.dim, field)
    return annihilator(A, S.pairing(field))


def matrix_rank(rows: Sequence[Sequence], field: Field = QQ) -> int:
    if not rows:
        return 0
    return rank(Matrix.from_rows(rows, field))
