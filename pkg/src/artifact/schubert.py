"""Schubert calculus on Gr(k, n) and Chern classes of exterior powers.

Gr(k, n) parametrizes k-dimensional subspaces.  Schubert classes sigma_lambda
are indexed by partitions in the k x (n - k) box; sigma_r = c_r(Q) and
sigma_{1^r} = c_r(S^vee) where S is the tautological subbundle.  With
x_1..x_k the Chern roots of E = S^vee, the Schur polynomial s_lambda(x)
maps to sigma_lambda, and s_lambda with lambda_1 > n - k maps to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Iterable, Iterator

from sympy.utilities.iterables import multiset_partitions, partitions as _int_partitions

Partition = tuple[int, ...]


def normalize(parts: Iterable[int]) -> Partition:
    p = tuple(int(x) for x in parts)
    if any(a < b for a, b in zip(p, p[1:])) or any(x < 0 for x in p):
        raise ValueError(f"not a partition: {p}")
    return tuple(x for x in p if x)


def fits(lam: Partition, k: int, n: int) -> bool:
    return len(lam) <= k and (not lam or lam[0] <= n - k)


def box_partitions(k: int, n: int) -> list[Partition]:
    out = []

    def rec(prefix, maxpart, slots):
        out.append(tuple(prefix))
        if slots == 0:
            return
        for a in range(1, maxpart + 1):
            prefix.append(a)
            rec(prefix, a, slots - 1)
            prefix.pop()

    rec([], n - k, k)
    return sorted(out, key=lambda p: (sum(p), p))


def complement(lam: Partition, k: int, n: int) -> Partition:
    padded = list(lam) + [0] * (k - len(lam))
    return normalize(n - k - x for x in reversed(padded))


class AmbientMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SchubertClass:
    k: int
    n: int
    coeffs: dict

    def __post_init__(self):
        for lam in self.coeffs:
            if not fits(lam, self.k, self.n):
                raise ValueError(f"{lam} is outside the {self.k}x{self.n - self.k} box")

    @classmethod
    def sigma(cls, lam: Iterable[int], k: int, n: int) -> "SchubertClass":
        lam = normalize(lam)
        return cls(k, n, {lam: 1} if fits(lam, k, n) else {})

    @classmethod
    def one(cls, k: int, n: int) -> "SchubertClass":
        return cls(k, n, {(): 1})

    @classmethod
    def zero(cls, k: int, n: int) -> "SchubertClass":
        return cls(k, n, {})

    @property
    def dim(self) -> int:
        return self.k * (self.n - self.k)

    def codims(self) -> set[int]:
        return {sum(l) for l in self.coeffs}

    @property
    def codim(self) -> int | None:
        c = self.codims()
        return c.pop() if len(c) == 1 else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "SchubertClass") -> None:
        if (self.k, self.n) != (other.k, other.n):
            raise AmbientMismatch(f"Gr({self.k},{self.n}) vs Gr({other.k},{other.n})")

    def __add__(self, other: "SchubertClass") -> "SchubertClass":
        self._check(other)
        return SchubertClass(self.k, self.n, _acc(self.coeffs, other.coeffs, 1))

    def __sub__(self, other: "SchubertClass") -> "SchubertClass":
        self._check(other)
        return SchubertClass(self.k, self.n, _acc(self.coeffs, other.coeffs, -1))

    def scale(self, c) -> "SchubertClass":
        return SchubertClass(self.k, self.n, {l: c * v for l, v in self.coeffs.items() if c * v})

    def __mul__(self, other: "SchubertClass") -> "SchubertClass":
        return multiply(self, other)

    def part(self, codim: int) -> "SchubertClass":
        return SchubertClass(self.k, self.n, {l: v for l, v in self.coeffs.items() if sum(l) == codim})

    def integral(self) -> int:
        return integrate(self)

    def as_integral(self) -> "SchubertClass":
        out = {}
        for l, v in self.coeffs.items():
            if Fraction(v).denominator != 1:
                raise ValueError(f"non-integral coefficient {v} at {l}")
            out[l] = int(v)
        return SchubertClass(self.k, self.n, out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))
        return " + ".join(f"{v}*s{''.join(map(str, l)) or '0'}" if len(l) < 10 or max(l) < 10
                          else f"{v}*s{l}" for l, v in terms)


def _acc(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for l, v in b.items():
        w = out.get(l, 0) + sign * v
        if w:
            out[l] = w
        else:
            out.pop(l, None)
    return out


# ---------------------------------------------------------------- Pieri

def _strips(lam: Partition, r: int, k: int, width: int, vertical: bool) -> Iterator[Partition]:
    lam = list(lam) + [0] * (k - len(lam))

    def rec(i, left, prev, acc):
        if i == k:
            if left == 0:
                yield tuple(acc)
            return
        lo = lam[i]
        hi = min(prev, width, lo + (1 if vertical else left))
        hi = min(hi, lo + left)
        for v in range(lo, hi + 1):
            acc.append(v)
            yield from rec(i + 1, left - (v - lo), v, acc)
            acc.pop()

    for nu in rec(0, r, width, []):
        if not vertical:
            # horizontal strip: nu_{i+1} <= lam_i
            if any(nu[i + 1] > lam[i] for i in range(k - 1)):
                continue
        yield normalize(nu)


@lru_cache(maxsize=None)
def _pieri(lam: Partition, r: int, k: int, n: int, vertical: bool) -> tuple[Partition, ...]:
    if r == 0:
        return (lam,)
    if r < 0:
        return ()
    return tuple(_strips(lam, r, k, n - k, vertical))


def pieri(r: int, a: SchubertClass) -> SchubertClass:
    """sigma_r * a."""
    out: dict = {}
    for lam, v in a.coeffs.items():
        for nu in _pieri(lam, r, a.k, a.n, False):
            out[nu] = out.get(nu, 0) + v
    return SchubertClass(a.k, a.n, {l: v for l, v in out.items() if v})


def dual_pieri(r: int, a: SchubertClass) -> SchubertClass:
    """sigma_{1^r} * a."""
    out: dict = {}
    for lam, v in a.coeffs.items():
        for nu in _pieri(lam, r, a.k, a.n, True):
            out[nu] = out.get(nu, 0) + v
    return SchubertClass(a.k, a.n, {l: v for l, v in out.items() if v})


def _perm_sign(p) -> int:
    s, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if not seen[i]:
            j, c = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                c += 1
            if c % 2 == 0:
                s = -s
    return s


@lru_cache(maxsize=None)
def _jacobi_trudi(lam: Partition) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """sigma_lam = det(sigma_{lam_i - i + j}) as signed products of special classes."""
    l = len(lam)
    terms: dict = {}
    for p in permutations(range(l)):
        idx = [lam[i] - i + p[i] for i in range(l)]
        if any(x < 0 for x in idx):
            continue
        key = tuple(sorted((x for x in idx if x), reverse=True))
        terms[key] = terms.get(key, 0) + _perm_sign(p)
    return tuple((c, key) for key, c in terms.items() if c)


@lru_cache(maxsize=None)
def _basis_product(lam: Partition, mu: Partition, k: int, n: int) -> tuple:
    base = SchubertClass.sigma(mu, k, n)
    acc: dict = {}
    for c, rows in _jacobi_trudi(lam):
        cur = base
        for r in rows:
            cur = pieri(r, cur)
            if cur.is_zero():
                break
        acc = _acc(acc, cur.coeffs, c)
    return tuple(acc.items())


def multiply(a: SchubertClass, b: SchubertClass) -> SchubertClass:
    a._check(b)
    out: dict = {}
    for lam, u in a.coeffs.items():
        for mu, v in b.coeffs.items():
            x, y = (lam, mu) if len(lam) <= len(mu) else (mu, lam)
            for nu, c in _basis_product(x, y, a.k, a.n):
                w = out.get(nu, 0) + c * u * v
                if w:
                    out[nu] = w
                else:
                    out.pop(nu, None)
    return SchubertClass(a.k, a.n, out)


def power(a: SchubertClass, m: int) -> SchubertClass:
    out = SchubertClass.one(a.k, a.n)
    for _ in range(m):
        out = multiply(out, a)
    return out


def integrate(a: SchubertClass) -> int:
    top = tuple([a.n - a.k] * a.k) if a.n > a.k else ()
    return a.coeffs.get(top, 0)


def grassmannian_degree(k: int, n: int) -> int:
    """Pluecker degree of Gr(k, n) from the hook-length formula."""
    d = k * (n - k)
    num = factorial(d)
    den = 1
    for i in range(k):
        num *= factorial(i)
        den *= factorial(n - k + i)
    return num // den


# ---------------------------------------------------------------- power sums

# A symmetric function in the Chern roots is a dict from power-sum
# monomials (partitions) to rational coefficients.
SymFun = dict


def _sf_add(a: SymFun, b: SymFun, c=1) -> SymFun:
    return _acc(a, {m: c * v for m, v in b.items()}, 1)


def _sf_mul(a: SymFun, b: SymFun, maxdeg: int) -> SymFun:
    out: dict = {}
    for m1, v1 in a.items():
        d1 = sum(m1)
        for m2, v2 in b.items():
            if d1 + sum(m2) > maxdeg:
                continue
            m = tuple(sorted(m1 + m2, reverse=True))
            out[m] = out.get(m, 0) + v1 * v2
    return {m: v for m, v in out.items() if v}


def _set_partitions(r: int) -> list[list[list[int]]]:
    return list(multiset_partitions(list(range(r))))


def _distinct_sum(a: tuple[int, ...], rank: int) -> SymFun:
    """sum over distinct indices i_1..i_r of prod x_{i_s}^{a_s}, by Moebius inversion."""
    out: dict = {}
    for blocks in _set_partitions(len(a)):
        coeff = Fraction(1)
        mono = []
        for b in blocks:
            coeff *= (-1) ** (len(b) - 1) * factorial(len(b) - 1)
            s = sum(a[i] for i in b)
            if s == 0:
                coeff *= rank          # p_0 = number of roots
            else:
                mono.append(s)
        key = tuple(sorted(mono, reverse=True))
        out[key] = out.get(key, 0) + coeff
    return {m: v for m, v in out.items() if v}


def _compositions(m: int, r: int) -> Iterator[tuple[int, ...]]:
    if r == 1:
        yield (m,)
        return
    for i in range(m + 1):
        for rest in _compositions(m - i, r - 1):
            yield (i,) + rest


def wedge_power_sum(m: int, r: int, rank: int) -> SymFun:
    """p_m of the Chern roots of wedge^r E, for E of the given rank."""
    out: dict = {}
    seen: dict = {}
    for a in _compositions(m, r):
        key = tuple(sorted(a))
        mult = factorial(m)
        for x in a:
            mult //= factorial(x)
        if key not in seen:
            seen[key] = _distinct_sum(key, rank)
        out = _sf_add(out, seen[key], Fraction(mult, factorial(r)))
    return out


def chern_from_power_sums(psums: list[SymFun], top: int, maxdeg: int) -> list[SymFun]:
    """Elementary symmetric functions c_0..c_top from p_1..p_top (Newton)."""
    c: list[SymFun] = [{(): Fraction(1)}]
    for j in range(1, top + 1):
        acc: dict = {}
        for i in range(1, j + 1):
            if j > maxdeg:
                break
            acc = _sf_add(acc, _sf_mul(c[j - i], psums[i], maxdeg), Fraction((-1) ** (i - 1), j))
        c.append(acc)
    return c


@lru_cache(maxsize=None)
def wedge_chern_sym(r: int, rank: int) -> tuple:
    """Total Chern class of wedge^r E in power sums of the roots of E."""
    top = comb(rank, r)
    psums = [{}] + [wedge_power_sum(m, r, rank) for m in range(1, top + 1)]
    return tuple(chern_from_power_sums(psums, top, top))


# ---------------------------------------------------------------- to Schubert

def _border_strips(lam: Partition, r: int, k: int, n: int) -> list[tuple[int, Partition]]:
    """Murnaghan-Nakayama: p_r s_lam = sum (-1)^ht s_nu, on k beta-numbers."""
    parts = list(lam) + [0] * (k - len(lam))
    beta = [parts[i] + k - 1 - i for i in range(k)]
    bset = set(beta)
    out = []
    for i, b in enumerate(beta):
        t = b + r
        if t in bset or t > n - 1:
            continue
        ht = sum(1 for x in beta if b < x < t)
        nb = sorted([x for x in beta if x != b] + [t], reverse=True)
        nu = normalize(nb[j] - (k - 1 - j) for j in range(k))
        out.append(((-1) ** ht, nu))
    return out


@lru_cache(maxsize=None)
def _mn(lam: Partition, r: int, k: int, n: int) -> tuple:
    return tuple(_border_strips(lam, r, k, n))


def power_sum_times(r: int, a: SchubertClass) -> SchubertClass:
    out: dict = {}
    for lam, v in a.coeffs.items():
        for s, nu in _mn(lam, r, a.k, a.n):
            out[nu] = out.get(nu, 0) + s * v
    return SchubertClass(a.k, a.n, {l: v for l, v in out.items() if v})


class _PowerSumImages:
    def __init__(self, k: int, n: int):
        self.k, self.n = k, n
        self.memo = {(): SchubertClass.one(k, n)}

    def __call__(self, mono: Partition) -> SchubertClass:
        if mono not in self.memo:
            self.memo[mono] = power_sum_times(mono[-1], self(mono[:-1]))
        return self.memo[mono]


@lru_cache(maxsize=None)
def _images(k: int, n: int) -> _PowerSumImages:
    return _PowerSumImages(k, n)


def to_schubert(f: SymFun, k: int, n: int) -> SchubertClass:
    img = _images(k, n)
    out: dict = {}
    for mono, v in f.items():
        if sum(mono) > k * (n - k):
            continue
        out = _acc(out, img(mono).coeffs, v)
    return SchubertClass(k, n, out).as_integral()


def chern_wedge(r: int, k: int, n: int) -> list[SchubertClass]:
    """[c_0, ..., c_N] of wedge^r E_k on Gr(k, n), E_k = S^vee."""
    return [to_schubert(c, k, n) for c in wedge_chern_sym(r, k)]


def chern_exterior_cube(k: int = 6, n: int = 10) -> list[SchubertClass]:
    """c_1 .. c_N of wedge^3 E_k (N = C(k, 3))."""
    return chern_wedge(3, k, n)[1:]


def total(classes: list[SchubertClass]) -> SchubertClass:
    out = classes[0]
    for c in classes[1:]:
        out = out + c
    return out


def truncate(a: SchubertClass, maxdeg: int) -> SchubertClass:
    return SchubertClass(a.k, a.n, {l: v for l, v in a.coeffs.items() if sum(l) <= maxdeg})


# ---------------------------------------------------------------- invariants

def segre_quotient(i: int, k: int, n: int) -> SchubertClass:
    """s_i(Q) with s(Q) = c(Q)^{-1} = c(S), i.e. (-1)^i sigma_{1^i}."""
    return SchubertClass.sigma([1] * i, k, n).scale((-1) ** i)


SEGRE_MONOMIALS = ((1, 1, 1, 1), (2, 1, 1), (3, 1), (2, 2), (4,))
SEGRE_NAMES = ("s1^4", "s1^2 s2", "s1 s3", "s2^2", "s4")
SEGRE_EXPECTED = (1452, 825, 330, 477, 105)


@lru_cache(maxsize=None)
def _dv_top() -> SchubertClass:
    return chern_exterior_cube(6, 10)[19]


def dv_segre_numbers() -> tuple[int, ...]:
    """Segre numbers of the rank-4 quotient restricted to the zero locus of a trivector."""
    top = _dv_top()
    out = []
    for mono in SEGRE_MONOMIALS:
        cls = top
        for i in mono:
            cls = multiply(cls, segre_quotient(i, 6, 10))
        out.append(integrate(cls))
    return tuple(out)


def dv_degree() -> int:
    """Pluecker degree of the zero locus: integral of c_20 * sigma_1^4."""
    return integrate(multiply(_dv_top(), power(SchubertClass.sigma([1], 6, 10), 4)))


@dataclass
class AuxChecks:
    gr37_pairings: dict[Partition, int]
    gr47_c4: SchubertClass
    gr57_integral: int

    @property
    def ok(self) -> dict[str, bool]:
        return {
            "gr37": any(self.gr37_pairings.values()),
            "gr47": not self.gr47_c4.is_zero(),
            "gr57": self.gr57_integral == 0,
        }


def aux_chern_checks() -> AuxChecks:
    # (i) (O^3 (x) wedge^2 E_3) + wedge^3 E_3 on Gr(3, 7): rank 10, dim 12.
    w2 = total(chern_wedge(2, 3, 7))
    w3 = total(chern_wedge(3, 3, 7))
    c = multiply(multiply(multiply(w2, w2), w2), w3).part(10)
    pair = {lam: integrate(multiply(c, SchubertClass.sigma(lam, 3, 7)))
            for lam in box_partitions(3, 7) if sum(lam) == 2}
    # (ii) c_4(wedge^3 E_4) on Gr(4, 7).
    c4 = chern_wedge(3, 4, 7)[4]
    # (iii) c_10(wedge^3 E_5) on Gr(5, 7): rank 10 = dim.
    c10 = chern_wedge(3, 5, 7)[10]
    return AuxChecks(pair, c4, integrate(c10))
