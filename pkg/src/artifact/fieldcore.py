"""Exact scalars and dense linear algebra over Q and GF(p).

Scalars are kept in a raw internal form owned by a field object: ``Fraction``
for Q and plain ints in ``[0, p)`` for GF(p).  The :class:`Mod` wrapper exists
for user-facing prime-field values and refuses to mix moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq
from sympy import QQ as SQQ
from sympy import isprime
from sympy.polys.matrices import DomainMatrix


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class Mod:
    """An element of GF(p)."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _other(self, o):
        if isinstance(o, Mod):
            if o.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {o.p}")
            return o.value
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        v = self._other(o)
        return NotImplemented if v is NotImplemented else Mod(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        v = self._other(o)
        return NotImplemented if v is NotImplemented else Mod(self.value - v, self.p)

    def __rsub__(self, o):
        v = self._other(o)
        return NotImplemented if v is NotImplemented else Mod(v - self.value, self.p)

    def __mul__(self, o):
        v = self._other(o)
        return NotImplemented if v is NotImplemented else Mod(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.value, self.p)

    def inverse(self) -> "Mod":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return Mod(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, o):
        v = self._other(o)
        if v is NotImplemented:
            return v
        return self * Mod(v, self.p).inverse()

    def __eq__(self, o):
        if isinstance(o, Mod):
            if o.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {o.p}")
            return self.value == o.value
        if isinstance(o, int):
            return (self.value - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)


class Field:
    """Base class.  Subclasses fix the internal scalar representation."""

    char: int = 0

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        raise NotImplementedError

    def to_scalar(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def reduce(self, x):
        return x

    def vec(self, xs: Iterable) -> list:
        return [self.convert(x) for x in xs]

    def zeros(self, n: int) -> list:
        return [self.convert(0) for _ in range(n)]


class RationalField(Field):
    char = 0
    name = "QQ"

    def convert(self, x):
        if isinstance(x, Mod):
            raise FieldError("cannot coerce a prime-field element into Q")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, np.integer):
            return Fraction(int(x))
        raise FieldError(f"not an exact scalar: {x!r}")

    def to_scalar(self, x):
        return Fraction(x)

    def inv(self, x):
        return 1 / x

    def random(self, rng, height: int = 5):
        return Fraction(int(rng.integers(-height, height + 1)))

    def __eq__(self, o):
        return isinstance(o, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int):
        p = int(p)
        if p < 5 or not isprime(p):
            raise FieldError(f"invalid prime modulus {p}")
        if p >= 2**31:
            raise FieldError("modulus must be below 2**31")
        self.p = p
        self.char = p
        self.name = f"GF({p})"

    def convert(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise FieldError(f"mixed moduli {self.p} and {x.p}")
            return x.value
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise FieldError(f"not an exact scalar: {x!r}")

    def to_scalar(self, x):
        return Mod(x, self.p)

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, -1, self.p)

    def random(self, rng, height: int | None = None):
        return int(rng.integers(0, self.p))

    def __eq__(self, o):
        return isinstance(o, PrimeField) and o.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_for(prime: int | None) -> Field:
    return QQ if prime is None else GF(prime)


def infer_field(entries: Iterable) -> Field:
    """Pick Q or GF(p) from the scalar types present; mixing is an error."""
    moduli = set()
    saw_fraction = False
    for x in entries:
        if isinstance(x, Mod):
            moduli.add(x.p)
        elif isinstance(x, Fraction) and x.denominator != 1:
            saw_fraction = True
        elif not isinstance(x, (int, Fraction, np.integer)):
            raise FieldError(f"not an exact scalar: {x!r}")
    if len(moduli) > 1:
        raise FieldError(f"mixed moduli {sorted(moduli)}")
    if moduli:
        if saw_fraction:
            raise FieldError("mixed rational and prime-field entries")
        return GF(moduli.pop())
    return QQ


def scalar_str(x) -> str:
    """Serialize as 'p/q' or 'p'."""
    if isinstance(x, Mod):
        return str(x.value)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_scalar(s: str) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class Matrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field | None = None, ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if field is None:
            field = infer_field(x for r in rows for x in r)
        if ncols is None:
            if not rows:
                raise FieldError("column count needed for an empty matrix")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise FieldError("ragged rows")
        data = tuple(tuple(field.convert(x) for x in r) for r in rows)
        return cls(field, len(data), ncols, data)

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], field, n)

    @classmethod
    def zeros(cls, r: int, c: int, field: Field = QQ) -> "Matrix":
        return cls.from_rows([[0] * c for _ in range(r)], field, c)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, tuple(zip(*self.rows)) if self.nrows else ())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldError("field mismatch")
        if self.ncols != other.nrows:
            raise FieldError("shape mismatch")
        f = self.field
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        out = tuple(
            tuple(f.reduce(sum((a * b for a, b in zip(r, c)), f.convert(0))) for c in cols)
            for r in self.rows
        )
        return Matrix(f, self.nrows, other.ncols, out)

    def apply(self, v: Sequence) -> list:
        f = self.field
        return [f.reduce(sum((a * b for a, b in zip(r, v)), f.convert(0))) for r in self.rows]

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[scalar_str(self.field.to_scalar(x)) for x in r] for r in self.rows]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def reduce_mod(self, p: int) -> "Matrix":
        """Image of a rational matrix in GF(p)."""
        if self.field != QQ:
            raise FieldError("only rational matrices can be reduced")
        F = GF(p)
        return Matrix(F, self.nrows, self.ncols, tuple(tuple(F.convert(x) for x in r) for r in self.rows))


def _rref_rows_qq(rows: list[list], ncols: int):
    if len(rows) * ncols > 400:
        return _rref_rows_qq_domain(rows, ncols)
    # gmpy2 rationals are much faster than Fraction in the inner loop
    rows = [[mpq(x.numerator, x.denominator) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    nr = len(rows)
    for c in range(ncols):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [x * inv for x in pr]
            rows[r] = pr
        nz = [j for j in range(c, ncols) if pr[j] != 0]
        for i in range(nr):
            if i != r:
                ri = rows[i]
                f = ri[c]
                if f != 0:
                    for j in nz:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    out = [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in rows[:r]]
    return out, pivots


def _rref_rows_qq_domain(rows: list[list], ncols: int):
    # fraction-free elimination from sympy avoids coefficient blow-up
    K = DomainMatrix([[SQQ(int(x.numerator), int(x.denominator)) for x in r] for r in rows], (len(rows), ncols), SQQ)
    red, piv = K.rref()
    out = [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in red.to_list()[: len(piv)]]
    return out, list(piv)


def _rref_array_mod(a: np.ndarray, p: int):
    a = a.copy() % p
    nr, nc = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nzr = np.nonzero(a[r:, c])[0]
        if nzr.size == 0:
            continue
        piv = r + int(nzr[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        idx = np.nonzero(col)[0]
        if idx.size:
            a[idx] = (a[idx] - np.outer(col[idx], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form (same shape as m), rank and pivot columns."""
    red, r, piv = _rref(m)
    zero = m.field.convert(0)
    pad = tuple(tuple(zero for _ in range(m.ncols)) for _ in range(m.nrows - r))
    return Matrix(m.field, m.nrows, m.ncols, red.rows + pad), r, piv


def _rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """As rref, keeping only the nonzero rows."""
    if isinstance(m.field, PrimeField):
        if m.nrows == 0:
            return m, 0, []
        arr = np.array(m.rows, dtype=np.int64)
        red, piv = _rref_array_mod(arr, m.field.p)
        rows = tuple(tuple(int(x) for x in r) for r in red)
        return Matrix(m.field, len(rows), m.ncols, rows), len(piv), piv
    rows, piv = _rref_rows_qq(m.to_lists(), m.ncols)
    return Matrix(m.field, len(rows), m.ncols, tuple(tuple(r) for r in rows)), len(piv), piv


def rank(m: Matrix) -> int:
    return rref(m)[1]


def independent_rows_mod(m: Matrix, p: int) -> list[int]:
    """Indices of a maximal set of rows independent modulo p (greedy, in order)."""
    F = GF(p)
    arr = np.array([[F.convert(x) for x in r] for r in m.rows], dtype=np.int64)
    # pivots of the transpose pick out independent rows
    _, piv = _rref_array_mod(arr.T.copy(), p)
    return piv


@dataclass(frozen=True)
class Subspace:
    """A subspace of field^n stored as its canonical RREF basis."""

    field: Field
    ambient_dim: int
    basis: Matrix
    pivots: tuple

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @classmethod
    def span(cls, vectors: Sequence[Sequence], n: int, field: Field | None = None) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise FieldError(f"vector of length {len(v)} in a {n}-space")
        if field is None:
            field = infer_field(x for v in vectors for x in v)
        m = Matrix.from_rows(vectors, field, n)
        red, _, piv = _rref(m)
        return cls(field, n, red, tuple(piv))

    @classmethod
    def zero(cls, n: int, field: Field = QQ) -> "Subspace":
        return cls(field, n, Matrix(field, 0, n, ()), ())

    @classmethod
    def full(cls, n: int, field: Field = QQ) -> "Subspace":
        return cls.span(Matrix.identity(n, field).rows, n, field)

    def vectors(self) -> list[list]:
        return self.basis.to_lists()

    def complement_coords(self) -> list[int]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        ps = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in ps]

    def __eq__(self, o):
        if not isinstance(o, Subspace):
            return NotImplemented
        return self.field == o.field and self.ambient_dim == o.ambient_dim and self.basis.rows == o.basis.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.basis.rows))

    def __le__(self, o: "Subspace") -> bool:
        return all(contains(o, v) for v in self.vectors())

    def reduce_mod(self, p: int) -> "Subspace":
        return Subspace.span(self.basis.reduce_mod(p).rows, self.ambient_dim, GF(p))


def kernel(m: Matrix) -> Subspace:
    """Right kernel {v : m v = 0}."""
    f = m.field
    red, r, piv = rref(m)
    n = m.ncols
    free = [j for j in range(n) if j not in set(piv)]
    vecs = []
    for fj in free:
        v = [f.convert(0)] * n
        v[fj] = f.convert(1)
        for i, pc in enumerate(piv):
            v[pc] = f.reduce(-red.rows[i][fj])
        vecs.append(v)
    if not vecs:
        return Subspace.zero(n, f)
    return Subspace.span(vecs, n, f)


def left_kernel(m: Matrix) -> Subspace:
    return kernel(m.transpose())


def _check(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise FieldError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")
    if a.field != b.field:
        raise FieldError("subspaces over different fields")


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return Subspace.span(a.vectors() + b.vectors(), a.ambient_dim, a.field)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    f, n = a.field, a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n, f)
    # solve sum x_i a_i = sum y_j b_j
    cols = a.vectors() + [[f.reduce(-x) for x in v] for v in b.vectors()]
    m = Matrix(f, n, len(cols), tuple(zip(*cols)))
    k = kernel(m)
    av = a.vectors()
    out = []
    for coef in k.vectors():
        v = [f.convert(0)] * n
        for c, row in zip(coef[: a.dim], av):
            if c != 0:
                v = [f.reduce(x + c * y) for x, y in zip(v, row)]
        out.append(v)
    if not out:
        return Subspace.zero(n, f)
    return Subspace.span(out, n, f)


def contains(a: Subspace, v: Sequence) -> bool:
    f = a.field
    v = [f.convert(x) for x in v]
    if len(v) != a.ambient_dim:
        raise FieldError("dimension mismatch")
    # reduce v against the RREF basis
    for row, pc in zip(a.basis.rows, a.pivots):
        c = v[pc]
        if c != 0:
            v = [f.reduce(x - c * y) for x, y in zip(v, row)]
    return all(x == 0 for x in v)


def annihilator(a: Subspace, pairing: Matrix | None = None) -> Subspace:
    """{w : pairing(v, w) = 0 for all v in a}; pairing(v,w) = v^T P w.

    ``pairing`` is n x m of full rank; ``None`` means the dot product.
    """
    f = a.field
    if pairing is None:
        pairing = Matrix.identity(a.ambient_dim, f)
    if pairing.nrows != a.ambient_dim:
        raise FieldError("pairing does not match the ambient dimension")
    if rank(pairing) != min(pairing.nrows, pairing.ncols):
        raise FieldError("pairing is degenerate")
    if a.dim == 0:
        return Subspace.full(pairing.ncols, f)
    return kernel(a.basis @ pairing)


def coords_in(a: Subspace, v: Sequence) -> list:
    """Coordinates of v in the RREF basis of a (v must lie in a)."""
    f = a.field
    v = [f.convert(x) for x in v]
    c = [v[pc] for pc in a.pivots]
    w = f.zeros(a.ambient_dim)
    for ci, row in zip(c, a.basis.rows):
        w = [f.reduce(x + ci * y) for x, y in zip(w, row)]
    if w != v:
        raise FieldError("vector not in subspace")
    return c


def solve_unique_nullvector_qq(m: Matrix, p: int = 10007) -> tuple[list[Fraction], int]:
    """Kernel of a tall rational system known to have corank one.

    Picks rows independent mod p, solves that square-ish system exactly and then
    checks the result against every row.  Returns (vector, rank mod p).
    """
    idx = independent_rows_mod(m, p)
    sub = Matrix(m.field, len(idx), m.ncols, tuple(m.rows[i] for i in idx))
    k = kernel(sub)
    if k.dim != 1:
        raise FieldError(f"selected rows leave a kernel of dimension {k.dim}")
    v = k.vectors()[0]
    for r in m.rows:
        if sum(a * b for a, b in zip(r, v)) != 0:
            raise FieldError("exact null vector fails a held-back equation")
    return v, len(idx)


def random_matrix(rng, r: int, c: int, field: Field = QQ, height: int = 5) -> Matrix:
    return Matrix.from_rows([[field.random(rng, height) for _ in range(c)] for _ in range(r)], field, c)
