"""Command line: ``lieorder {ngm,ngms,verify,oracle} ...``.

Exit codes: 0 success, 1 usage or out-of-scope request, 2 verification
mismatch, 3 data-integrity failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .config import RunConfig
from .rootdata import GROUP_TYPES

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_DATA = 0, 1, 2, 3

# largest column period expanded into a residue table
MAX_TABLE_PERIOD = 5040


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lieorder", description="Conjugacy classes of finite-order elements in exceptional Lie groups.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--format", choices=("markdown", "csv", "json"), default="markdown")
    ap.add_argument("--cache-dir", default=None, help="poset cache (default $LIEORDER_CACHE_DIR or ~/.cache/lieorder)")
    ap.add_argument("--jobs", type=_positive, default=1, help="worker processes for the poset build")
    ap.add_argument("--opt-in-e7-enumeration", action="store_true",
                    help="allow enumerating W(E7) (about 2.9M elements, ~1 GB)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ngm", help="N(G,m): classes of elements with x^m = 1")
    p.add_argument("group", choices=list(GROUP_TYPES))
    p.add_argument("m", nargs="?", type=_positive)
    p.add_argument("--table", action="store_true", help="print the quasi-polynomial table")
    p.add_argument("--classes", choices=("embedded", "enumerate"), default="embedded")

    p = sub.add_parser("ngms", help="N(G,m,s): additionally with s distinct eigenvalues")
    p.add_argument("group", choices=list(GROUP_TYPES))
    p.add_argument("m", nargs="?", type=_positive)
    p.add_argument("s", nargs="?", type=_positive)
    p.add_argument("--column", type=_positive, metavar="S", help="quasi-polynomial column for one s")
    p.add_argument("--all", action="store_true", help="symbolic gcd expressions for every s")

    p = sub.add_parser("verify", help="run acceptance checks")
    p.add_argument("--suite", choices=("tables", "oracle", "properties", "all"), default="tables")
    p.add_argument("--criterion", type=int, action="append", help="run only these criteria")

    p = sub.add_parser("oracle", help="brute-force orbit count on the m-torsion grid")
    p.add_argument("group", choices=list(GROUP_TYPES))
    p.add_argument("m", type=_positive)
    p.add_argument("s", nargs="?", type=_positive)
    return ap


def cmd_ngm(args) -> str:
    from .ordercount import fix_data, n_gm, n_gm_quasipoly
    from .quasipoly import emit_table
    from .rootdata import group_type
    from .weylgroup import conjugacy_classes

    gt = group_type(args.group)
    if args.table:
        if args.m is not None:
            raise UsageError("give either m or --table")
        return emit_table(n_gm_quasipoly(gt), args.format, gt.weyl_order, f"N({gt.name},m)")
    if args.m is None:
        raise UsageError("m is required unless --table is given")
    data = None
    if args.classes == "enumerate":
        try:
            data = fix_data(conjugacy_classes(gt, mode="enumerate", allow_e7=args.opt_in_e7_enumeration))
        except (ValueError, MemoryError) as exc:
            raise UsageError(str(exc)) from exc
    value = n_gm(gt, args.m, data)
    if args.format == "json":
        return json.dumps({"group": gt.name, "m": args.m, "N": value})
    return str(value)


def cmd_ngms(args) -> str:
    from . import eigenposet
    from .quasipoly import detect_period, emit_table
    from .rootdata import group_type

    gt = group_type(args.group)
    if gt.name not in eigenposet.POSET_GROUPS:
        raise eigenposet.OutOfScope(eigenposet.INFEASIBLE.format(g=gt.name, n=len(eigenposet.p_matrix(gt))))
    modes = sum([args.column is not None, args.all, args.m is not None])
    if modes != 1:
        raise UsageError("give exactly one of: m s, --column S, --all")
    eigenposet.get_poset(gt, jobs=args.jobs, cache_dir=args.cache_dir)
    smax = eigenposet.max_s(gt)
    if args.m is not None:
        if args.s is None:
            raise UsageError("s is required with m")
        value = eigenposet.n_gms(gt, args.m, args.s)
        if args.format == "json":
            return json.dumps({"group": gt.name, "m": args.m, "s": args.s, "N": value})
        return str(value)
    if args.column is not None:
        if args.column > smax:
            raise UsageError(f"s must be at most {smax} for {gt.name}")
        expr = eigenposet.n_gms_symbolic(gt, args.column)
        period = detect_period(expr)
        if period > MAX_TABLE_PERIOD:
            return _dump_exprs(args, {args.column: expr}, note=f"period {period} too large to tabulate")
        return emit_table(expr.to_quasipoly(), args.format, gt.weyl_order, f"N({gt.name},m,{args.column})")
    exprs = {s: eigenposet.n_gms_symbolic(gt, s) for s in range(1, smax + 1)}
    return _dump_exprs(args, exprs)


def _dump_exprs(args, exprs, note=None) -> str:
    from .quasipoly import detect_period

    if args.format == "json":
        return json.dumps(
            {"group": args.group, "columns": [
                {"s": s, "period": detect_period(e), "terms": e.to_json()} for s, e in exprs.items()
            ]},
            indent=2,
        )
    lines = [f"# {note}"] if note else []
    for s, e in exprs.items():
        lines.append(f"s={s} (period {detect_period(e)}): {e}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    from . import verify
    from .eigenposet import get_poset

    if args.criterion:
        bad = [c for c in args.criterion if c not in verify.CRITERIA]
        if bad:
            raise UsageError(f"unknown criteria {bad}")
        crit = args.criterion
    elif args.suite == "all":
        crit = sorted(verify.CRITERIA)
    else:
        crit = verify.SUITES[args.suite]
    cfg = RunConfig.from_env(cache_dir=args.cache_dir, jobs=args.jobs)
    if any(c in (5, 7, 8, 9) for c in crit):
        get_poset("F4", jobs=cfg.jobs, cache_dir=cfg.cache_dir)
    failures = verify.run(crit, run_cfg=cfg)
    print(f"{len(failures)} mismatch(es)" if failures else "all checks passed")
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_oracle(args) -> str:
    from .oracle import grid_orbits

    orbits = grid_orbits(args.group, args.m)
    value = orbits.count(args.s)
    if args.format == "json":
        return json.dumps({"group": args.group, "m": args.m, "s": args.s, "N": value})
    return str(value)


def main(argv=None) -> int:
    from .eigenposet import OutOfScope
    from .oracle import BudgetExceeded
    from .weylgroup import ClassTableError

    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.cache_dir:
        os.environ["LIEORDER_CACHE_DIR"] = args.cache_dir
    try:
        if args.command == "verify":
            return cmd_verify(args)
        handler = {"ngm": cmd_ngm, "ngms": cmd_ngms, "oracle": cmd_oracle}[args.command]
        print(handler(args))
        return EXIT_OK
    except (UsageError, OutOfScope, BudgetExceeded) as exc:
        print(f"lieorder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ClassTableError, ArithmeticError) as exc:
        print(f"lieorder: data integrity failure: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
