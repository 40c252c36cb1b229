"""
charvar-epoly command line.

  compute  e(M) of a character variety, optionally with its strata
  euler    Euler characteristics (values at q = 1)
  eval     e(M) evaluated at an integer q
  verify   symbolic identities plus finite-field point counts
  schema   JSON Schema of the emitted documents

Results go to stdout; logs and progress bars go to stderr.
Exit codes: 0 ok, 1 verification mismatch, 2 usage or guard error.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys

from .config import MAX_RANK, RUNTIME_CFG, effective_level, level_names
from .errors import EPolyError, GuardError, UnsupportedField, VerificationError
from .grpvar import SCHEMA_VERSION, StrataReport
from .logs import setup_logging
from .oracle import CSV_HEADER, symbolic_suite, verify_suite
from .qpoly import eval_int
from .schema import schema_document, validated
from .sl2 import pgl2_m, pgl2_strata, sl2_euler, sl2_m, sl2_strata
from .sl3 import euler_characteristics, pgl3_m, pgl3_strata, sl3_m, sl3_strata

log = logging.getLogger("charvar_epoly.cli")

# group -> (e(M), strata report, Euler characteristics, needs r >= 2 for Euler)
GROUPS = {
    "sl2": (sl2_m, sl2_strata, sl2_euler, False),
    "pgl2": (pgl2_m, pgl2_strata, sl2_euler, False),
    "sl3": (sl3_m, sl3_strata, euler_characteristics, True),
    "pgl3": (pgl3_m, pgl3_strata, euler_characteristics, True),
}


def _rank(text: str) -> int:
    try:
        r = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 1 <= r <= MAX_RANK:
        raise argparse.ArgumentTypeError(f"r must be in 1..{MAX_RANK}, got {r}")
    return r


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonnegative(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _print_csv(header, rows) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


# ---------- compute ----------
def _strata_text(report: StrataReport) -> None:
    width_id = max(len(e.id) for e in (*report.entries, *report.aggregates))
    print(f"# {report.group} character variety, r={report.r}")
    for e in report.entries:
        print(f"{e.id:<{width_id}}  {e.epoly}  [{e.description}]")
    print()
    for e in report.aggregates:
        print(f"{e.id:<{width_id}}  {e.epoly}")


def cmd_compute(args) -> int:
    m, strata, _, _ = GROUPS[args.group]
    group = args.group.upper()
    if args.strata:
        report = strata(args.r)
        if args.format == "json":
            _print_json(validated("strata", report.to_dict()))
        elif args.format == "csv":
            rows = [(e.id, e.description, str(e.epoly)) for e in (*report.entries, *report.aggregates)]
            _print_csv(("id", "description", "epoly"), rows)
        else:
            _strata_text(report)
        return 0

    epoly = m(args.r)
    if args.format == "json":
        _print_json(validated("compute", {"schema": SCHEMA_VERSION, "group": group, "r": args.r, "epoly": str(epoly)}))
    elif args.format == "csv":
        _print_csv(("group", "r", "epoly"), [(group, args.r, str(epoly))])
    else:
        print(epoly)
    return 0


# ---------- euler ----------
def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def cmd_euler(args) -> int:
    _, _, euler, needs_two = GROUPS[args.group]
    if needs_two and args.r < 2:
        log.error("Euler characteristics of %s need r >= 2", args.group)
        return 2
    for name, value in euler(args.r).to_dict().items():
        if value is not None:
            print(f"{name}={_fmt(value)}")
    return 0


# ---------- eval ----------
def cmd_eval(args) -> int:
    m, _, _, _ = GROUPS[args.group]
    print(eval_int(m(args.r), args.q))
    return 0


# ---------- verify ----------
def cmd_verify(args) -> int:
    try:
        opts = effective_level(args.level, RUNTIME_CFG)
    except KeyError as e:
        log.error("unknown verification level: %s", e)
        return 2
    checks = symbolic_suite(int(opts["symbolic_max_rank"]))
    reports = verify_suite(args.level, jobs=args.jobs)
    failed = sum(not c.passed for c in checks) + sum(not r.matched for r in reports)

    if args.format == "json":
        _print_json(validated("verify", [c.to_dict() for c in checks] + [r.to_dict() for r in reports]))
    elif args.format == "csv":
        _print_csv(CSV_HEADER, [r.csv_row() for r in reports])
    else:
        for c in checks:
            where = "" if c.r is None else f" r={c.r}"
            print(f"[{'OK' if c.passed else 'FAIL'}] symbolic {c.name}{where}")
        for rep in reports:
            tag = "OK" if rep.matched else "FAIL"
            print(f"[{tag}] SL{rep.n} q={rep.q} r={rep.r} {rep.predicate} count={rep.raw_count} expected={rep.poly_at_q}")
        print(f"verify {args.level}: {len(checks) + len(reports)} checks, {failed} failed")

    if failed:
        log.error("%d verification checks failed", failed)
        return 1
    return 0


# ---------- schema ----------
def cmd_schema(args) -> int:
    _print_json(schema_document(args.kind))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="charvar-epoly",
        description="E-polynomials of SL/PGL character varieties of free groups.",
        allow_abbrev=False,
    )
    ap.add_argument("-v", "--verbose", action="count", default=0, help="More logging (-vv for debug).")
    ap.add_argument("-q", "--quiet", action="store_true", help="Errors only.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="Print e(M) for a group and rank.")
    p.add_argument("--group", choices=sorted(GROUPS), required=True)
    p.add_argument("--r", type=_rank, required=True)
    p.add_argument("--strata", action="store_true", help="Print every stratum, not just e(M).")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("euler", help="Print Euler characteristics.")
    p.add_argument("--group", choices=sorted(GROUPS), required=True)
    p.add_argument("--r", type=_rank, required=True)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("eval", help="Evaluate e(M) at an integer q.")
    p.add_argument("--group", choices=sorted(GROUPS), required=True)
    p.add_argument("--r", type=_rank, required=True)
    p.add_argument("--q", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="Run symbolic identities and finite-field counts.")
    p.add_argument("--level", choices=level_names(RUNTIME_CFG), default="quick")
    p.add_argument("--jobs", type=_positive, default=1, help="Worker processes for the counts.")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("schema", help="Print the JSON Schema of a document kind.")
    p.add_argument("--kind", choices=("compute", "strata", "verify"), required=True)
    p.set_defaults(func=cmd_schema)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    setup_logging(-1 if args.quiet else args.verbose)
    try:
        return args.func(args)
    except VerificationError as e:
        log.error("verification failed: %s", e)
        return 1
    except (GuardError, UnsupportedField) as e:
        log.error("%s", e)
        return 2
    except EPolyError as e:
        log.error("%s: %s", type(e).__name__, e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
