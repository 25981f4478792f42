"""Command line entry point.

Exit status: 0 when every case passes, 1 when some case fails, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import periods, schubert
from .fieldcore import QQ, GF, scalar_str
from .suites import SUITE_NAMES, Config, ConfigError, SuiteReport, run
from .trivectorzoo import TRIVECTOR_NAMES, trivector


def _dump(x) -> str:
    return x if isinstance(x, str) else json.dumps(x, default=str, ensure_ascii=False)


def render(reports: list[SuiteReport], fmt: str) -> str:
    if fmt == "json":
        data = [r.as_dict() for r in reports]
        return json.dumps(data[0] if len(data) == 1 else data, indent=2, default=str, ensure_ascii=False)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "id", "paper_anchor", "expected", "actual", "status"])
        for r in reports:
            for c in sorted(r.cases, key=lambda c: c.id):
                w.writerow([r.suite, c.id, c.anchor, _dump(c.expected), _dump(c.actual), c.status])
        return buf.getvalue().rstrip("\n")
    lines = []
    for r in reports:
        lines.append(f"== {r.suite} ({r.seconds:.1f}s, {r.failures} failed)")
        for c in sorted(r.cases, key=lambda c: c.id):
            tail = f"{_dump(c.actual)}" if c.status == "recorded" else f"expected {_dump(c.expected)}, got {_dump(c.actual)}"
            lines.append(f"{c.status:8s} {c.id}: {tail}")
    return "\n".join(lines)


def _config(args) -> Config:
    return Config(seed=args.seed, prime=args.prime, samples=args.samples, bound=args.bound).validate()


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=10007)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--bound", type=int, default=120, help="lattice search bound")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")


def cmd_run(args) -> int:
    cfg = _config(args)
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = [run(n, cfg) for n in names]
    text = render(reports, args.format)
    print(text)
    if args.out:
        from .figures import render_for

        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = args.suite
        (out / f"{stem}.json").write_text(render(reports, "json") + "\n", encoding="utf-8")
        (out / f"{stem}.csv").write_text(render(reports, "csv") + "\n", encoding="utf-8")
        for n in names:
            for path in render_for(n, out, cfg):
                print(f"wrote {path}", file=sys.stderr)
    return 1 if any(r.failures for r in reports) else 0


def cmd_trivector(args) -> int:
    field = GF(args.prime) if args.prime else QQ
    form = trivector(args.name, field)
    if args.format == "json":
        print(json.dumps(form.to_json()))
    else:
        print("\n".join(scalar_str(c) for c in form.coeffs))
    return 0


def cmd_dv_check(args) -> int:
    cfg = _config(args)
    rep = run(args.case, cfg)
    pts = f"seed={cfg.seed} primes={','.join(map(str, cfg.primes()))} samples={cfg.samples}"
    for c in sorted(rep.cases, key=lambda c: c.id):
        print(json.dumps({
            "case": args.case,
            "point-spec": c.point or pts,
            "assertion": f"{c.id}: {c.anchor}",
            "expected": c.expected,
            "actual": c.actual,
            "status": c.status,
        }, default=str, ensure_ascii=False))
    return 1 if rep.failures else 0


def _table_out(rows: list[dict], columns, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2, ensure_ascii=False)
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in columns}
        buf.write("  ".join(c.ljust(widths[c]) for c in columns) + "\n")
        for r in rows:
            buf.write("  ".join(str(r[c]).ljust(widths[c]) for c in columns) + "\n")
    return buf.getvalue().rstrip("\n")


def cmd_periods(args) -> int:
    if args.what == "table1":
        try:
            es = [int(x) for x in args.e.split(",") if x.strip()]
        except ValueError:
            raise ConfigError(f"bad --e list {args.e!r}")
        if any(e < 1 for e in es):
            raise ConfigError("e must be positive")
        print(_table_out(periods.table1(es), periods.TABLE1_COLUMNS, args.format))
    elif args.what == "table2":
        rows = []
        for mode in ("K", "K+U"):
            res = periods.minimal_norm_table(args.bound, mode)
            for a, e in res.table.items():
                rows.append({"mode": mode, "a": f"±{a}", "e": e, "witness": " ".join(map(str, res.witnesses[a]))})
        print(_table_out(rows, ("mode", "a", "e", "witness"), args.format))
    else:
        rows = [{"e": e, "nonempty": periods.heegner_nonempty(e)} for e in range(1, args.max + 1)]
        print(_table_out(rows, ("e", "nonempty"), args.format))
    return 0


def cmd_segre(args) -> int:
    rows = []
    if args.what == "dv":
        got = schubert.dv_segre_numbers()
        for name, exp, val in zip(schubert.SEGRE_NAMES, schubert.SEGRE_EXPECTED, got):
            rows.append({"name": name, "value": val, "expected": exp, "status": "pass" if val == exp else "fail"})
    else:
        aux = schubert.aux_chern_checks()
        vals = {
            "gr37": {"".join(map(str, k)): v for k, v in aux.gr37_pairings.items()},
            "gr47": str(aux.gr47_c4),
            "gr57": aux.gr57_integral,
        }
        expected = {"gr37": "some pairing nonzero", "gr47": "nonzero class", "gr57": 0}
        for k, ok in aux.ok.items():
            rows.append({"name": k, "value": vals[k], "expected": expected[k], "status": "pass" if ok else "fail"})
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        print(_table_out([{k: _dump(v) for k, v in r.items()} for r in rows],
                         ("name", "value", "expected", "status"), args.format))
    return 1 if any(r["status"] == "fail" for r in rows) else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artifact", description="Trivector, lattice and Schubert checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a check suite")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p.add_argument("--out", help="directory for JSON/CSV reports and figures")
    _common(p)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("trivector", help="print the 120 coefficients of a model trivector")
    p.add_argument("name", choices=TRIVECTOR_NAMES)
    p.add_argument("--emit", action="store_true", help="print coefficients (default action)")
    p.add_argument("--prime", type=int, default=0, help="reduce modulo this prime")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_trivector)

    p = sub.add_parser("dv", help="point checks on the hyperkahler variety of a trivector")
    dsub = p.add_subparsers(dest="action", required=True)
    q = dsub.add_parser("check")
    q.add_argument("--case", choices=TRIVECTOR_NAMES, required=True)
    _common(q)
    q.set_defaults(fn=cmd_dv_check)

    p = sub.add_parser("periods", help="cone and lattice tables")
    p.add_argument("what", choices=("table1", "table2", "heegner"))
    p.add_argument("--e", default=",".join(map(str, periods.TABLE1_E)))
    p.add_argument("--bound", type=int, default=120)
    p.add_argument("--max", type=int, default=30)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.set_defaults(fn=cmd_periods)

    p = sub.add_parser("segre", help="Schubert calculus checks")
    p.add_argument("what", choices=("dv", "aux"))
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.set_defaults(fn=cmd_segre)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, periods.SearchBoundExhausted, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
