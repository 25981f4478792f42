"""Acceptance criteria, one test each, timed against their runtime limits.

Each test prints a single PASS/FAIL line.  Module caches are cleared first so
the timing covers the full computation.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from artifact import dvgeom, multilinear, periods, schubert, trivectorzoo
from artifact.fieldcore import QQ, Matrix
from artifact.multilinear import SymSpace, det
from artifact.suites import Config, run, sp4_excess_cases


def clear_caches(*modules):
    for m in modules:
        for obj in vars(m).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, seconds, limit):
        status = "PASS" if ok and seconds < limit else "FAIL"
        with capsys.disabled():
            print(f"\n{status} criterion {number:2d}: {title} ({seconds:.2f}s, limit {limit}s)")
        assert ok, f"criterion {number} result mismatch"
        assert seconds < limit, f"criterion {number} exceeded {limit}s"

    return emit


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


TABLE1 = {
    1: ("-", "1", "(5,3)", "6L-5δ", "2/3", "-"),
    3: ("(2,1)", "3/2", "(1,1)", "2L-δ", "3/2", "2L-δ"),
    5: ("(9,4)", "20/9", "(3,1)", "2L-3δ; 6L-13δ", "2", "2L-3δ"),
    9: ("-", "3", "(5,1)", "2L-5δ", "3", "2L-5δ"),
    11: ("(10,3)", "33/10", "(33,5)", "10L-33δ", "22/7", "-"),
    15: ("(4,1)", "15/4", "(7,1)", "2L-7δ", "15/4", "2L-7δ"),
}


def test_criterion_01_table1(report):
    clear_caches(periods)
    rows, dt = timed(lambda: periods.table1((1, 3, 5, 9, 11, 15)))
    want = [dict(zip(periods.TABLE1_COLUMNS, (str(e),) + v)) for e, v in TABLE1.items()]
    report(1, "cone table for e in {1,3,5,9,11,15}", rows == want, dt, 1)


def test_criterion_02_table2(report):
    clear_caches(periods)
    res, dt = timed(lambda: periods.minimal_norm_table(120))
    report(2, "minimal norms per discriminant class, bound 120",
           res.table == {1: 1, 2: 15, 3: 9, 4: 5, 5: 3}, dt, 30)


def test_criterion_03_segre(report):
    clear_caches(schubert)

    def go():
        return schubert.dv_segre_numbers(), schubert.dv_degree()

    (nums, deg), dt = timed(go)
    report(3, "Segre numbers and degree on Gr(6,10)",
           nums == (1452, 825, 330, 477, 105) and deg == 1452, dt, 120)


def test_criterion_04_sl3_sigma(report):
    clear_caches(trivectorzoo, multilinear)

    def go():
        s = trivectorzoo.sl3_sigma0()
        support = sorted(s.support())
        mags = sorted(abs(int(c)) for c in s.terms().values())
        anchored = sorted(trivectorzoo.SL3_TERMS)
        S = SymSpace(3)
        rng = np.random.default_rng(0)
        agree = 0
        for _ in range(50):
            u, v, w = ([int(c) for c in rng.integers(-5, 6, 3)] for _ in range(3))
            d = det(Matrix.from_rows([u, v, w], QQ))
            agree += s(S.power_of(u), S.power_of(v), S.power_of(w)) == d**3
        sweep = dvgeom.monomial_sweeps(s)
        return (support == anchored and mags == [1, 3, 3, 3, 3, 3, 6, 6, 6] and agree == 50
                and sweep.triple_matches == sweep.triple_total == 220 and sweep.singular_count == 3)

    ok, dt = timed(go)
    report(4, "SL(3) trivector support, det^3 oracle, monomial sweeps", ok, dt, 5)


def test_criterion_05_tangent_ranks(report):
    clear_caches(trivectorzoo, dvgeom)
    cfg = Config(samples=20)

    def go():
        sp4 = run("sp4", cfg)
        g2 = run("g2sl3", cfg)
        sl3 = run("sl3", cfg)
        sl2 = run("sl2", cfg)
        ids = {c.id: c for r in (sp4, g2, sl3, sl2) for c in r.cases}
        want = []
        for p in cfg.primes():
            want += [f"sp4.rank18.p{p}", f"g2sl3.rank14.p{p}", f"sl3.KM.rank.p{p}",
                     f"sl3.KL.rank_below_20.p{p}", f"sl3.KL.functionals.p{p}", f"sl2.K1.rank18.p{p}"]
        counts = (ids[f"sp4.rank18.p{cfg.prime}"].expected >= 50
                  and ids[f"g2sl3.rank14.p{cfg.prime}"].expected == 41
                  and len(ids[f"sl3.KM.rank.p{cfg.prime}"].expected) >= 20
                  and ids[f"sl2.K1.rank18.p{cfg.prime}"].expected >= 30)
        return counts and all(ids[i].status == "pass" for i in want)

    ok, dt = timed(go)
    report(5, "tangent ranks at sp4, g2sl3, sl3 and sl2 points, 3 primes", ok, dt, 120)


def test_criterion_06_sl2_unique(report):
    clear_caches(trivectorzoo)

    def go():
        sol = trivectorzoo.sl2_solve()
        model = trivectorzoo.sl2_model()
        rng = np.random.default_rng(6)
        held = good = 0
        while held < 10:
            x = [int(c) for c in rng.integers(-5, 6, 5)]
            if not any(x) or tuple(x) in sol.points:
                continue
            held += 1
            rows = trivectorzoo.sl2_constraint_rows(model, x)
            good += all(sum(a * b for a, b in zip(r, sol.sigma.coeffs)) == 0 for r in rows)
        return sol.kernel_dim == 1 and good == 10

    ok, dt = timed(go)
    report(6, "SL(2) trivector unique, 10 held-out points vanish", ok, dt, 60)


def test_criterion_07_excess(report):
    clear_caches(trivectorzoo, dvgeom)
    cases, dt = timed(lambda: sp4_excess_cases(Config(), pairs=50, designed=15, one_sided=10))
    got = {c.id: c for c in cases}
    ok = (got["sp4.excess.consistent"].actual == 50 and got["sp4.excess.designed"].actual >= 10
          and all(c.status == "pass" for c in cases))
    report(7, "excess projection vs induced cubic on 50 sp4 pairs", ok, dt, 60)


def test_criterion_08_heegner(report):
    got, dt = timed(lambda: [e for e in range(1, 31) if periods.heegner_nonempty(e)])
    want = [e for e in range(1, 31) if e % 11 in {0, 1, 3, 4, 5, 9}]
    report(8, "Heegner nonemptiness for 1 <= e <= 30",
           got == want and {1, 3, 5, 9, 11, 15} <= set(got), dt, 1)


def test_criterion_09_th31(report):
    clear_caches(periods)

    def go():
        ok = True
        for m in range(11):
            c = periods.th31_class(m)
            ok &= c.e == m * m + m + 3 and periods.bbf_square(c) == 22
            ok &= c in periods.movable_classes_22(c.e)
            ok &= c.slope == Fraction(2 * m + 1, 2) < periods.nu(c.e)
        return ok

    ok, dt = timed(go)
    report(9, "2L-(2m+1)δ at e = m^2+m+3 is square 22, movable and ample", ok, dt, 1)


def test_criterion_10_aux(report):
    clear_caches(schubert)
    aux, dt = timed(schubert.aux_chern_checks)
    ok = any(aux.gr37_pairings.values()) and not aux.gr47_c4.is_zero() and aux.gr57_integral == 0
    report(10, "auxiliary Chern classes on Gr(3,7), Gr(4,7), Gr(5,7)", ok, dt, 30)
