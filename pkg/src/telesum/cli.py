"""Command-line front end.

    telesum list
    telesum verify --suite <all|corpus|ez|sequences|genhyp|elementary>
                   [--id KEY ...] [--n-max N] [--samples S] [--seed X]
                   [--grid] [--format text|json] [--jobs J]
    telesum check --config FILE [--n-max N] [--samples S] [--seed X]
                  [--format text|json]

Exit codes: 0 every check passed, 1 at least one failure, 2 usage or
config error.  For a fixed (suite, seed, flags) triple the JSON report is
byte-identical across runs and worker counts; the default seed is fixed so
CI runs are reproducible.
"""

from __future__ import annotations

import argparse
import sys

from . import corpus as corpus_mod
from . import elementary as elementary_mod
from . import genhyp as genhyp_mod
from . import sequences as sequences_mod
from .errors import VerifyError
from .exprlang import ParseError, SchemaError, load_identity_config
from .report import FAIL, INADMISSIBLE, PASS, Report
from .runner import (DEFAULT_SEED, SPECIALIZATION_KEY, SUITES, run_config_identity,
                     run_suite)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="telesum",
        description="Exact verification of telescoping identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list built-in identities, families and elementary identities")

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", default="all", choices=("all",) + SUITES)
    verify.add_argument("--id", action="append", dest="ids", metavar="KEY",
                        help="restrict to the given identity/family key (repeatable)")
    _common_flags(verify)
    verify.add_argument("--grid", action="store_true",
                        help="also certify elementary identities on the deterministic grid")
    verify.add_argument("--jobs", type=int, default=1, metavar="J")

    check = sub.add_parser("check", help="verify a user identity config file")
    check.add_argument("--config", required=True, metavar="FILE")
    _common_flags(check)
    return parser


def _common_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--n-max", type=int, default=None, metavar="N")
    cmd.add_argument("--samples", type=int, default=None, metavar="S")
    cmd.add_argument("--seed", type=int, default=DEFAULT_SEED, metavar="X")
    cmd.add_argument("--format", default="text", choices=("text", "json"))


def _flags_dict(args: argparse.Namespace) -> dict:
    flags = {"n_max": args.n_max, "samples": args.samples}
    if getattr(args, "grid", None) is not None:
        flags["grid"] = args.grid
    if getattr(args, "ids", None):
        flags["ids"] = sorted(args.ids)
    if getattr(args, "config", None):
        flags["config"] = args.config
    return flags


def _render_text(report: Report, out) -> None:
    totals = report.totals()
    by_identity: dict[tuple[str, str], dict[str, int]] = {}
    for r in report.sorted_records():
        counts = by_identity.setdefault((r.suite, r.identity), {PASS: 0, FAIL: 0, INADMISSIBLE: 0})
        counts[r.status] += 1
    for (suite, identity), counts in sorted(by_identity.items()):
        marker = "ok " if counts[FAIL] == 0 else "FAIL"
        extra = f", {counts[INADMISSIBLE]} inadmissible" if counts[INADMISSIBLE] else ""
        print(f"[{marker}] {suite}/{identity}: {counts[PASS]} pass, "
              f"{counts[FAIL]} fail{extra}", file=out)
    for r in report.failures()[:20]:
        place = f"n={r.n}" if r.n is not None else ""
        if r.sample is not None:
            place += f" sample={r.sample}"
        print(f"  counterexample {r.suite}/{r.identity} [{r.check}] {place}: {r.witness}",
              file=out)
    print(f"total: {totals['checks']} checks, {totals[PASS]} pass, {totals[FAIL]} fail, "
          f"{totals[INADMISSIBLE]} inadmissible  (seed {report.seed}, "
          f"{report.wall_time:.2f}s)", file=out)


def _emit(report: Report, fmt: str, flags: dict, out) -> int:
    if fmt == "json":
        out.write(report.to_json(flags))
    else:
        _render_text(report, out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _run_list(out) -> int:
    print("corpus identities:", file=out)
    for key, idef in corpus_mod.CORPUS.items():
        cert = " [certificate]" if idef.certificate is not None else ""
        print(f"  {key:28s} {idef.citation}{cert}", file=out)
    print(f"  {SPECIALIZATION_KEY:28s} n = 1 q-Dougall row rearranged to the "
          "four-variable identity", file=out)
    print("sequence families:", file=out)
    for key, family in sequences_mod.FAMILIES.items():
        suite_note = "" if family.printed else " (generic identities only)"
        print(f"  {key:28s} {family.citation}{suite_note}", file=out)
    print("sequence-parameter sums:", file=out)
    for key, citation in genhyp_mod.CITATIONS.items():
        print(f"  {key:28s} {citation}", file=out)
    print("elementary identities:", file=out)
    for key, ident in elementary_mod.ELEMENTARY.items():
        print(f"  {key:28s} {ident.citation}", file=out)
    return EXIT_OK


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    if args.command == "list":
        return _run_list(out)

    if args.command == "verify":
        if args.jobs < 1:
            print("error: --jobs must be >= 1", file=sys.stderr)
            return EXIT_USAGE
        try:
            report = run_suite(args.suite, ids=args.ids, n_max=args.n_max,
                               samples=args.samples, seed=args.seed,
                               grid=args.grid, jobs=args.jobs)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_USAGE
        return _emit(report, args.format, _flags_dict(args), out)

    if args.command == "check":
        try:
            idef = load_identity_config(args.config)
        except FileNotFoundError:
            print(f"error: config file not found: {args.config}", file=sys.stderr)
            return EXIT_USAGE
        except (ParseError, SchemaError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        try:
            report = run_config_identity(idef, n_max=args.n_max, samples=args.samples,
                                         seed=args.seed)
        except VerifyError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        return _emit(report, args.format, _flags_dict(args), out)

    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
