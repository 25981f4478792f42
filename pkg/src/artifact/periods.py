"""Pell equations, cones of Hilbert squares and the period lattice.

Classes on the Hilbert square of a degree-2e K3 surface are written
``xL + yδ`` with ``q(L) = 2e``, ``q(δ) = -2`` and ``q(L, δ) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional

import numpy as np
from sympy.solvers.diophantine.diophantine import diop_DN

Pair = tuple[int, int]


class SearchBoundExhausted(RuntimeError):
    pass


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# ---------------------------------------------------------------- Pell

@lru_cache(maxsize=None)
def pell_fundamental(e: int) -> Optional[Pair]:
    """Minimal positive solution of x^2 - e y^2 = 1, or None for square e."""
    if e < 1:
        raise ValueError("e must be positive")
    if is_square(e):
        return None
    x, y = diop_DN(e, 1)[0]
    return int(x), int(y)


def _nagell_bound_sq(d: int, n: int) -> Fraction:
    """Upper bound for y^2 over the class representatives of x^2 - d y^2 = n.

    Each solution class of x^2 - d y^2 = n contains a solution with
    0 <= y <= v sqrt(|n| / (2(u -/+ 1))), (u, v) the fundamental unit.
    """
    u, v = pell_fundamental(d)
    if n < 0:
        return Fraction(v * v * -n, 2 * (u - 1))
    return Fraction(v * v * n, 2 * (u + 1))


def _min_positive_solution(d: int, n: int) -> Optional[Pair]:
    """Solution of a^2 - d b^2 = n with a, b > 0 and b minimal (n not a square)."""
    if is_square(d):
        # (a - m b)(a + m b) = n: run over divisor pairs.
        m = isqrt(d)
        best = None
        for s in range(1, abs(n) + 1):
            if n % s:
                continue
            t = n // s
            # a - m b = s', a + m b = t' with s' t' = n and t' > |s'|
            for lo, hi in ((s, t), (-s, -t)):
                if hi <= abs(lo) or (lo + hi) % 2 or m == 0:
                    continue
                a, mb = (lo + hi) // 2, (hi - lo) // 2
                if a > 0 and mb > 0 and mb % m == 0:
                    cand = (a, mb // m)
                    if best is None or cand[1] < best[1]:
                        best = cand
        return best
    if n * n < d:
        return _convergent_solution(d, n)
    bound = _nagell_bound_sq(d, n)
    b = 1
    while b * b <= bound:
        a2 = n + d * b * b
        if a2 > 0 and is_square(a2):
            return isqrt(a2), b
        b += 1
    return None


def _convergent_solution(d: int, n: int) -> Optional[Pair]:
    """First convergent p/q of sqrt(d) with p^2 - d q^2 = n.

    For |n| < sqrt(d) every primitive solution is a convergent, and n is
    squarefree here so every solution is primitive.  Two periods of the
    continued fraction reach past the fundamental unit.
    """
    a0 = isqrt(d)
    m, den, a = 0, 1, a0
    p0, p1, q0, q1 = 1, a0, 0, 1
    ends = 0
    while ends < 2:
        if p1 * p1 - d * q1 * q1 == n:
            return p1, q1
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        ends += den == 1
    return None


@lru_cache(maxsize=None)
def neg11_min(e: int) -> Optional[Pair]:
    """Minimal positive solution of a^2 - 4e b^2 = -11, or None."""
    if e < 1:
        raise ValueError("e must be positive")
    return _min_positive_solution(4 * e, -11)


@lru_cache(maxsize=None)
def pos5_min(e: int) -> Optional[Pair]:
    """Minimal positive solution of x^2 - 4e y^2 = 5, or None."""
    if e < 1:
        raise ValueError("e must be positive")
    return _min_positive_solution(4 * e, 5)


@dataclass(frozen=True)
class PellData:
    e: int
    fundamental: Optional[Pair]
    neg11: Optional[Pair]
    pos5: Optional[Pair]

    @classmethod
    def of(cls, e: int) -> "PellData":
        return cls(e, pell_fundamental(e), neg11_min(e), pos5_min(e))


# ---------------------------------------------------------------- cones

def mu(e: int) -> Fraction:
    """Slope of the movable cone."""
    fund = pell_fundamental(e)
    if fund is None:
        return Fraction(isqrt(e))
    a1, b1 = fund
    return Fraction(e * b1, a1)


def nu(e: int) -> Fraction:
    """Slope of the nef cone."""
    sol = pos5_min(e)
    if sol is None:
        return mu(e)
    a5, b5 = sol
    return Fraction(2 * e * b5, a5)


@dataclass(frozen=True, order=True)
class NSClass:
    e: int
    x: int
    y: int

    @classmethod
    def from_solution(cls, e: int, a: int, b: int) -> "NSClass":
        return cls(e, 2 * b, -a)

    @property
    def slope(self) -> Fraction:
        return Fraction(-self.y, self.x)

    def __str__(self) -> str:
        lead = "" if self.x == 1 else str(self.x)
        if self.y == 0:
            return f"{lead}L"
        sign = "-" if self.y < 0 else "+"
        mag = "" if abs(self.y) == 1 else str(abs(self.y))
        return f"{lead}L{sign}{mag}δ"


def bbf_square(c: NSClass) -> int:
    return 2 * c.e * c.x * c.x - 2 * c.y * c.y


def bbf_div(c: NSClass) -> int:
    """Divisibility of xL + yδ in the lattice U^3 + E8(-1)^2 + <-2>."""
    lat = lattice_model()
    v = np.zeros(lat.rank, dtype=object)
    v[0], v[1] = c.x, c.x * c.e          # L = u1 + e v1
    v[22] = c.y                          # δ = g
    return lat.div(v)


def _chain_solutions(e: int) -> list[Pair]:
    """Positive solutions of a^2 - 4eb^2 = -11 with a/2b <= mu(e), from the unit orbits.

    Class representatives come from sympy's generic solver and are pushed
    along by powers of the fundamental unit of x^2 - 4e y^2 = 1.
    """
    m = mu(e)
    d = 4 * e
    if is_square(e):
        sols = {(isqrt(d * b * b - 11), b) for b in range(1, 12)
                if is_square(d * b * b - 11)}
        return sorted(((a, b) for a, b in sols if Fraction(a, 2 * b) <= m), key=lambda t: t[1])
    # slope a/2b = sqrt(e - 11/4b^2) <= m bounds b
    bmax = Fraction(11, 4) / (e - m * m)
    u, v = (int(t) for t in diop_DN(d, 1)[0])
    found = set()
    for x0, y0 in diop_DN(d, -11):
        for sx in (1, -1):
            for sy in (1, -1):
                for step in ((u, v), (u, -v)):
                    x, y = sx * int(x0), sy * int(y0)
                    over = 0
                    while over < 2:
                        if x > 0 and y > 0 and Fraction(x, 2 * y) <= m:
                            found.add((x, y))
                        over = over + 1 if y * y > bmax else 0
                        x, y = x * step[0] + d * y * step[1], x * step[1] + y * step[0]
    return sorted(found, key=lambda t: t[1])


def _case_solutions(e: int) -> list[Pair]:
    """The same set, from the case analysis on the parity of b1."""
    if is_square(e):
        return {1: [(5, 3)], 9: [(5, 1)]}.get(e, [])
    sol = neg11_min(e)
    if sol is None:
        return []
    a2, b2 = sol
    a1, b1 = pell_fundamental(e)
    if b1 % 2:
        return [(a2, b2)]
    other = (2 * e * b1 * b2 - a1 * a2, a1 * b2 - a2 * b1 // 2)
    return sorted({(a2, b2), other}, key=lambda ab: ab[1])


def movable_classes_22(e: int, method: str = "cases") -> list[NSClass]:
    if method == "cases":
        sols = _case_solutions(e)
    elif method == "chain":
        sols = _chain_solutions(e)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [NSClass.from_solution(e, a, b) for a, b in sols]


def ample_classes_22(e: int, method: str = "cases") -> list[NSClass]:
    n = nu(e)
    return [c for c in movable_classes_22(e, method) if c.slope < n]


def heegner_nonempty(e: int) -> bool:
    return e > 0 and e % 11 in {0, 1, 3, 4, 5, 9}


def th31_class(m: int) -> NSClass:
    return NSClass(m * m + m + 3, 2, -(2 * m + 1))


# Reference list of 2e values, kept as data rather than computed.
UNIRULED_LIST = (46, 54, 66, 90, 94, 106, 118)

TABLE1_E = (1, 3, 5, 9, 11, 15)
TABLE1_COLUMNS = ("e", "(a1,b1)", "mu_e", "(a2,b2)", "movable", "nu_e", "ample")


def _fmt_pair(p: Optional[Pair]) -> str:
    return "-" if p is None else f"({p[0]},{p[1]})"


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_classes(cs: list[NSClass]) -> str:
    return "; ".join(str(c) for c in cs) if cs else "-"


def table1_row(e: int) -> dict[str, str]:
    return {
        "e": str(e),
        "(a1,b1)": _fmt_pair(pell_fundamental(e)),
        "mu_e": _fmt_frac(mu(e)),
        "(a2,b2)": _fmt_pair(neg11_min(e)),
        "movable": _fmt_classes(movable_classes_22(e)),
        "nu_e": _fmt_frac(nu(e)),
        "ample": _fmt_classes(ample_classes_22(e)),
    }


def table1(es=TABLE1_E) -> list[dict[str, str]]:
    return [table1_row(e) for e in es]


# ---------------------------------------------------------------- lattice

E8_CARTAN = np.array([
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
], dtype=np.int64)

U_GRAM = np.array([[0, 1], [1, 0]], dtype=np.int64)


def _block_diag(*blocks: np.ndarray) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def _int_det(m: np.ndarray) -> int:
    from sympy import Matrix
    return int(Matrix(m.tolist()).det())


@dataclass
class LatticeModel:
    """U^3 + E8(-1)^2 + <-2> with basis u1 v1 u2 v2 u3 v3 | E8 | E8 | g."""

    gram: np.ndarray
    h: np.ndarray
    perp: np.ndarray            # rows: Z-basis of h^perp in ambient coordinates
    perp_gram: np.ndarray
    k_gram: np.ndarray
    rank: int = field(default=23)

    def pair(self, v, w) -> int:
        return int(np.asarray(v, dtype=object) @ self.gram.astype(object) @ np.asarray(w, dtype=object))

    def div(self, v) -> int:
        row = self.gram.astype(object) @ np.asarray(v, dtype=object)
        d = 0
        for c in row:
            d = gcd(d, int(c))
        return d


@lru_cache(maxsize=None)
def lattice_model() -> LatticeModel:
    gram = _block_diag(U_GRAM, U_GRAM, U_GRAM, -E8_CARTAN, -E8_CARTAN,
                       np.array([[-2]], dtype=np.int64))
    h = np.zeros(23, dtype=np.int64)
    h[0], h[1], h[22] = 2, 6, 1
    k1 = np.zeros(23, dtype=np.int64)
    k1[0], k1[22] = 1, 3
    k2 = np.zeros(23, dtype=np.int64)
    k2[1], k2[22] = 1, 1
    rest = np.eye(23, dtype=np.int64)[2:22]
    perp = np.vstack([k1, k2, rest])
    perp_gram = perp @ gram @ perp.T
    lat = LatticeModel(gram, h, perp, perp_gram, perp_gram[:2, :2].copy())
    _check_lattice(lat)
    return lat


def _check_lattice(lat: LatticeModel) -> None:
    assert abs(_int_det(lat.gram)) == 2
    assert lat.pair(lat.h, lat.h) == 22
    assert lat.div(lat.h) == 2
    assert not np.any(lat.perp @ lat.gram @ lat.h)
    # |det h^perp| = |det L| q(h) / div(h)^2 = 11 forces the basis to be saturated.
    assert abs(_int_det(lat.perp_gram)) == 11
    assert _int_det(lat.k_gram) == 11


# h^perp = K + (unimodular).  K^vee / K is Z/11, generated by
# f1 = (-2 k1 + 5 k2) / 11, which has q(f1) = -2/11 so that a^2 = e mod 11.
F1_NUMERATOR = (-2, 5)


def discriminant_class(p: int, q: int, d: int) -> int:
    """Class in Z/11 of v_* = v/d for a vector whose K-part is p k1 + q k2."""
    if d % 11:
        return 0
    s = d // 11
    # v/d = (p k1 + q k2)/d; times 11 it lies in K^vee scaled: p/s k1 + q/s k2
    if p % s or q % s:
        raise ValueError("vector is not in the dual lattice after division")
    pp, qq = (p // s) % 11, (q // s) % 11
    a = (pp * pow(F1_NUMERATOR[0], -1, 11)) % 11
    if (a * F1_NUMERATOR[1] - qq) % 11:
        raise ValueError("inconsistent discriminant class")
    return a


@dataclass
class NormSearch:
    table: dict[int, int]
    witnesses: dict[int, tuple[int, ...]]
    mode: str
    bound: int
    certified: dict[int, bool]


def _norm_search(bound: int, ubound: int) -> NormSearch:
    g = lattice_model().k_gram
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    P, Q = np.meshgrid(r, r, indexing="ij")
    P, Q = P.ravel(), Q.ravel()
    gp = g[0, 0] * P + g[0, 1] * Q
    gq = g[1, 0] * P + g[1, 1] * Q
    knorm = P * gp + Q * gq
    best: dict[int, tuple[int, ...]] = {}
    for x in range(-ubound, ubound + 1):
        for y in range(-ubound, ubound + 1):
            # the unimodular part 11 (x u2 + y v2) pairs into 11x Z + 11y Z
            d = np.gcd(np.gcd(gp, gq), np.gcd(11 * x, 11 * y))
            norm = knorm + 242 * x * y
            for i in np.nonzero((d == 11) & (norm < 0))[0]:
                p, q = int(P[i]), int(Q[i])
                a = discriminant_class(p, q, 11)
                if a == 0:
                    continue
                key = min(a, 11 - a)
                cand = (-int(norm[i]) // 22, abs(p) + abs(q) + abs(x) + abs(y), p, q, x, y)
                if key not in best or cand < best[key]:
                    best[key] = cand
    return NormSearch(
        table={k: best[k][0] for k in sorted(best)},
        witnesses={k: best[k][2:] for k in sorted(best)},
        mode="K" if ubound == 0 else "K+U",
        bound=bound,
        certified={},
    )


def minimal_norm_table(bound: int = 120, mode: str = "K") -> NormSearch:
    """Minimal e = -v^2/22 per nonzero class ±a of v_* = v/div(v), div(v) = 11.

    ``mode="K"`` searches v in the rank-2 sublattice K of h^perp.
    ``mode="K+U"`` also adds 11 (x u2 + y v2) from a unimodular summand.
    Keys of ``table`` are a = 1..5 standing for ±a.
    """
    if bound < 60:
        raise ValueError("search bound must be at least 60")
    if mode == "K":
        res = _norm_search(bound, 0)
        # K is negative definite: a vector with -v^2 <= 22e has
        # |coords|^2 <= 22e / lambda_min, so the box certifies minimality.
        lam = float(min(np.linalg.eigvalsh(-lattice_model().k_gram.astype(float))))
        for a, e in res.table.items():
            radius = (22 * e / lam) ** 0.5
            res.certified[a] = radius <= bound
    elif mode == "K+U":
        res = _norm_search(bound, 3)
        # e = a^2 mod 11 for div-11 vectors; the least positive residue is a floor.
        for a, e in res.table.items():
            res.certified[a] = e == (a * a) % 11
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if set(res.table) != {1, 2, 3, 4, 5} or not all(res.certified.values()):
        raise SearchBoundExhausted(f"bound {bound} does not certify all classes")
    return res


TABLE2_REFERENCE = {1: 1, 2: 15, 3: 9, 4: 5, 5: 3}
