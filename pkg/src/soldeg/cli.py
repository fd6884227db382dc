"""Command line front end.

Subcommands: analyze, verify-bounds, gen fk|random, oracle-diff, sweep.
Exit codes: 0 all certificates pass, 1 any certificate fails (or the two
Groebner back ends disagree), 2 usage or parse errors, 3 a resource cap was
exceeded before an answer was reached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import (
    AlgebraError,
    CapExceeded,
    DomainError,
    GenerationError,
    ParseError,
    PreconditionError,
)
from .groebner import buchberger_reduced, mutantxl_gb
from .harness import RandomSpec, SystemFile, gen_fk, gen_random, parse_system, render_system
from .invariants import DegreeReport, verify_bounds
from .rings import GREVLEX, TermOrder


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _order_from(args, sf: SystemFile) -> TermOrder:
    return TermOrder(args.order) if args.order else sf.order


def _report_exit_code(report: DegreeReport) -> int:
    if not report.all_pass:
        return 1
    if report.any_capped:
        return 3
    return 0


def _print_report_text(report: DegreeReport):
    info = report.system
    print(f"system: p={info['p']} vars={','.join(info['vars'])} k={info['k']} degrees={info['degrees']}")
    print(f"order: {report.order.kind}")
    d_reg = report.d_reg if isinstance(report.d_reg, int) else f"infinite (cap {report.d_reg.cap})"
    print(f"d_reg: {d_reg}")
    print(f"gbd: {report.gbd}")
    print(f"sd: {report.sd}")
    print(f"lfd: {report.lfd}")
    hyp = report.hypothesis
    print(
        "hypothesis: d_reg finite="
        + ("yes" if hyp["d_reg_finite"] else "no")
        + ", max deg <= d_reg="
        + ("yes" if hyp["max_deg_le_d_reg"] else "no")
    )
    _print_certificates(report)


def _print_certificates(report: DegreeReport):
    print("certificates:")
    for c in report.certificates:
        line = f"  {c.verdict:7s} {c.id:24s}"
        if c.verdict != "skipped":
            line += f" lhs={c.lhs} rhs={c.rhs}"
        if c.reason:
            line += f" ({c.reason})"
        print(line)


def _analyze_common(args, certificates_only: bool) -> int:
    sf = parse_system(_read_text(args.file))
    order = _order_from(args, sf)
    trace = open(args.trace, "w", encoding="utf-8") if args.trace else None
    try:
        report = verify_bounds(
            sf.system, order, d_reg_cap=args.cap, sd_cap=args.cap, trace=trace
        )
    finally:
        if trace is not None:
            trace.close()
    if args.json:
        doc = report.to_json()
        if certificates_only:
            doc = {"order": doc["order"], "certificates": doc["certificates"]}
        print(json.dumps(doc, indent=2))
    elif certificates_only:
        _print_certificates(report)
    else:
        _print_report_text(report)
    return _report_exit_code(report)


def _cmd_analyze(args) -> int:
    return _analyze_common(args, certificates_only=False)


def _cmd_verify_bounds(args) -> int:
    return _analyze_common(args, certificates_only=True)


def _cmd_gen(args) -> int:
    order = TermOrder(args.order) if args.order else GREVLEX
    if args.kind == "fk":
        system = gen_fk(args.k, args.p)
    else:
        bounds = tuple(args.deg_bound)
        if len(bounds) == 1:
            bounds = bounds * args.k
        spec = RandomSpec(
            seed=args.seed,
            n=args.n,
            k=args.k,
            deg_bounds=bounds,
            density=args.density,
            p=args.p,
            require_hypothesis=args.require_hypothesis,
            retry_limit=args.retry_limit,
        )
        system = gen_random(spec)
    sys.stdout.write(render_system(SystemFile(system.ring, order, system)))
    return 0


def _cmd_oracle_diff(args) -> int:
    sf = parse_system(_read_text(args.file))
    order = _order_from(args, sf)
    mutant, stats = mutantxl_gb(sf.system, order)
    reference = buchberger_reduced(sf.system, order)
    same = mutant.polys == reference.polys
    print(f"mutant elimination: {[g.render(order) for g in mutant]}")
    print(f"buchberger:         {[g.render(order) for g in reference]}")
    print(
        f"stats: bound={stats.bound} N={stats.n_monomials} steps={stats.steps} "
        f"adoptions={stats.adoptions} field_mults={stats.field_mults}"
    )
    print("agreement: " + ("yes" if same else "NO"))
    return 0 if same else 1


def _sweep_instance(task) -> dict:
    k, p, order_kind, cap = task
    system = gen_fk(k, p)
    report = verify_bounds(system, TermOrder(order_kind), d_reg_cap=cap, sd_cap=cap)
    doc = report.to_json()
    doc["k"] = k
    return doc


def _cmd_sweep(args) -> int:
    if args.kind != "fk":
        raise DomainError(f"unknown sweep family {args.kind!r}")
    if args.start < 2 or args.stop < args.start:
        raise DomainError("need 2 <= --from <= --to")
    order_kind = args.order or "grevlex"
    TermOrder(order_kind)
    tasks = [(k, args.p, order_kind, args.cap) for k in range(args.start, args.stop + 1)]
    workers = args.workers or min(len(tasks), os.cpu_count() or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_instance, tasks))
    else:
        rows = [_sweep_instance(t) for t in tasks]
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print("k   d_reg  gbd  sd  lfd  certificates")
        for row in rows:
            verdicts = [c["verdict"] for c in row["certificates"]]
            summary = f"{verdicts.count('pass')} pass, {verdicts.count('fail')} fail, {verdicts.count('skipped')} skipped"
            print(
                f"{row['k']:<3d} {row['d_reg']!s:6s} {row['gbd']!s:4s} {row['sd']!s:3s} "
                f"{row['lfd']!s:4s} {summary}"
            )
    bad = any(c["verdict"] == "fail" for row in rows for c in row["certificates"])
    capped = any(
        c["verdict"] == "skipped" and (c["reason"] or "").startswith("cap")
        for row in rows
        for c in row["certificates"]
    )
    return 1 if bad else (3 if capped else 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soldeg",
        description="Solving-degree analysis of polynomial systems over prime fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="system file path, or '-' for stdin")
        p.add_argument("--order", choices=TermOrder.KINDS, help="override the file's term order")
        p.add_argument("--cap", type=int, default=None, help="degree cap for the scans")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--trace", default=None, help="write closure adoption trace to this path")

    add_common(sub.add_parser("analyze", help="full invariant report with certificates"))
    add_common(sub.add_parser("verify-bounds", help="certificates only"))

    gen = sub.add_parser("gen", help="emit a system file")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    fk = gen_sub.add_parser("fk", help="the optimal family {x^k+y, y^k+x, x*y}")
    fk.add_argument("--k", type=int, required=True)
    fk.add_argument("--p", type=int, default=101)
    fk.add_argument("--order", choices=TermOrder.KINDS, default=None)
    rnd = gen_sub.add_parser("random", help="seeded random system")
    rnd.add_argument("--seed", type=int, required=True)
    rnd.add_argument("--n", type=int, required=True)
    rnd.add_argument("--k", type=int, required=True)
    rnd.add_argument("--deg-bound", type=int, nargs="+", required=True)
    rnd.add_argument("--density", type=float, default=1.0)
    rnd.add_argument("--p", type=int, default=101)
    rnd.add_argument("--require-hypothesis", action="store_true")
    rnd.add_argument("--retry-limit", type=int, default=200)
    rnd.add_argument("--order", choices=TermOrder.KINDS, default=None)

    diff = sub.add_parser("oracle-diff", help="compare the two Groebner back ends")
    diff.add_argument("file")
    diff.add_argument("--order", choices=TermOrder.KINDS, default=None)

    sweep = sub.add_parser("sweep", help="regression table over a family")
    sweep.add_argument("kind", choices=["fk"])
    sweep.add_argument("--from", dest="start", type=int, default=2)
    sweep.add_argument("--to", dest="stop", type=int, default=6)
    sweep.add_argument("--p", type=int, default=101)
    sweep.add_argument("--order", choices=TermOrder.KINDS, default=None)
    sweep.add_argument("--cap", type=int, default=None)
    sweep.add_argument("--json", action="store_true")
    sweep.add_argument("--workers", type=int, default=None)
    return parser


_DISPATCH = {
    "analyze": _cmd_analyze,
    "verify-bounds": _cmd_verify_bounds,
    "gen": _cmd_gen,
    "oracle-diff": _cmd_oracle_diff,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, PreconditionError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AlgebraError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
