"""Print every quasi-polynomial table the package can derive.

    python scripts/reproduce_tables.py [--format markdown|csv|json] [--out DIR]

Covers N(G, m) for all five groups and the N(G, m, s) columns for G2 and F4.
Columns whose period is too large to tabulate are written as gcd expressions.
With --out, each table goes to its own file.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from lieorder.eigenposet import POSET_GROUPS, get_poset, max_s, n_gms_symbolic
from lieorder.ordercount import n_gm_quasipoly
from lieorder.quasipoly import detect_period, emit_table
from lieorder.rootdata import GROUP_TYPES, group_type

MAX_PERIOD = 5040
SUFFIX = {"markdown": "md", "csv": "csv", "json": "json"}


def tables(fmt: str):
    for g in GROUP_TYPES:
        gt = group_type(g)
        yield f"ngm_{g}", emit_table(n_gm_quasipoly(gt), fmt, gt.weyl_order, f"N({g},m)")
    for g in POSET_GROUPS:
        gt = group_type(g)
        get_poset(g)
        for s in range(1, max_s(g) + 1):
            expr = n_gms_symbolic(g, s)
            period = detect_period(expr)
            if period > MAX_PERIOD:
                yield f"ngms_{g}_s{s}", f"period {period}: {expr}"
            else:
                yield f"ngms_{g}_s{s}", emit_table(expr.to_quasipoly(), fmt, gt.weyl_order, f"N({g},m,{s})")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=sorted(SUFFIX), default="markdown")
    ap.add_argument("--out", type=Path, default=None)
    args = ap.parse_args()
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    for name, text in tables(args.format):
        if args.out:
            (args.out / f"{name}.{SUFFIX[args.format]}").write_text(text + "\n")
        else:
            print(f"## {name}\n\n{text}\n")


if __name__ == "__main__":
    main()
