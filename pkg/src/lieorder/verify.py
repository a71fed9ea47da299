"""Acceptance checks against the published tables and the brute-force oracle.

Each ``check_*`` function returns a list of :class:`Mismatch`; an empty list
means the criterion holds.  :data:`CRITERIA` maps criterion numbers to
checks and :data:`SUITES` groups them for the command line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable

import numpy as np

from . import golden
from .config import AcceptanceConfig, RunConfig
from .eigenposet import (
    build_m_poset,
    find_r,
    get_poset,
    max_s,
    n_gms,
    n_gms_symbolic,
    p_matrix,
    s_w,
)
from .exactlin import IntMatrix, kernel_count, snf
from .ordercount import NGM_PERIODS, n_gm, n_gm_quasipoly, n_gm_symbolic
from .quasipoly import FitError, detect_period, poly_eval
from .rootdata import GROUP_TYPES, group_type
from .weylgroup import (
    conjugacy_classes,
    conjugation_labels,
    enumerate_group,
    from_word,
    match_tables,
    validate_class_table,
)


@dataclass(frozen=True)
class Mismatch:
    criterion: int
    what: str
    table: str | None = None
    residue: str | None = None
    m: int | None = None
    s: int | None = None
    expected: object = None
    got: object = None

    def __str__(self):
        where = [f"table {self.table}" if self.table else None,
                 f"residue {self.residue}" if self.residue is not None else None,
                 f"m={self.m}" if self.m is not None else None,
                 f"s={self.s}" if self.s is not None else None]
        loc = ", ".join(x for x in where if x)
        out = f"[{self.criterion}] {self.what}"
        if loc:
            out += f" ({loc})"
        if self.expected is not None or self.got is not None:
            out += f": expected {self.expected}, got {self.got}"
        return out


# 1
def check_ngm_tables(mmax: int = 120) -> list[Mismatch]:
    out = []
    for g, t in golden.ngm_tables().items():
        qp = t.quasipoly()
        for m in range(1, mmax + 1):
            want, got = qp(m), n_gm(g, m)
            if want != got:
                out.append(Mismatch(1, f"N({g},m)", t.source, t.label_of(m), m, None, want, got))
    return out


# 2
def check_misprint() -> list[Mismatch]:
    d = golden.e6_odd_formula()
    printed = golden.parse_poly(d["printed"], "k")
    corrected = golden.parse_poly(d["corrected"], "k")
    table = golden.ngm_tables()["E6"].quasipoly()
    out = []
    for m in (9, 15, 21):
        k = (m - 3) // 6
        direct = n_gm("E6", m)
        if table(m) != direct:
            out.append(Mismatch(2, "N(E6,m) vs table", "6", "3", m, None, table(m), direct))
        if poly_eval(printed, k) == direct:
            out.append(Mismatch(2, "printed formula with 688 unexpectedly agrees", None, "3", m, None, "!= " + str(direct), poly_eval(printed, k)))
        if poly_eval(corrected, k) != direct:
            out.append(Mismatch(2, "formula with 648", None, "3", m, None, direct, poly_eval(corrected, k)))
    return out


# 3
def check_quasipoly_fits() -> list[Mismatch]:
    out = []
    for g, t in golden.ngm_tables().items():
        want = t.quasipoly()
        try:
            fitted = n_gm_quasipoly(g)
        except FitError as exc:
            out.append(Mismatch(3, f"fit for {g} failed: {exc}", t.source))
            continue
        for r in range(want.period):
            if fitted.polys[r] != want.polys[r]:
                out.append(Mismatch(3, f"N({g},m) coefficients", t.source, t.label_of(r), None, None,
                                    want.polys[r], fitted.polys[r]))
        period = detect_period(n_gm_symbolic(g))
        if period != NGM_PERIODS[g] or period != t.period:
            out.append(Mismatch(3, f"period of N({g},m)", t.source, None, None, None, t.period, period))
    return out


# 4
def check_g2_machinery(mmax: int = 24) -> list[Mismatch]:
    out = []
    poset = build_m_poset("G2")
    p = poset.p
    if len(poset) != 19:
        out.append(Mismatch(4, "|M| for G2", "10", expected=19, got=len(poset)))
    seen = set()
    for rec in golden.g2_nodes():
        rows = tuple(sorted(p.find(r) for r in rec["rows"]))
        if rows not in poset.index:
            out.append(Mismatch(4, f"node {rec['rows']} missing", "10"))
            continue
        seen.add(rows)
        i = poset.index[rows]
        node = poset.nodes[i]
        if node.svalue != rec["s"]:
            out.append(Mismatch(4, f"s of node {rec['rows']}", "10", expected=rec["s"], got=node.svalue))
        g = golden.parse_cases(rec["g"])
        for m in range(1, mmax + 1):
            if g(m) != poset.g_m(i, m):
                out.append(Mismatch(4, f"g_m of node {rec['rows']}", "10", m=m, expected=g(m), got=poset.g_m(i, m)))
    if len(seen) != len(poset):
        out.append(Mismatch(4, "nodes not listed in the table", "10", expected=19, got=len(seen)))
    for rec in golden.g2_sw():
        w = from_word("G2", rec["word"])
        want = tuple(sorted(p.find(r) for r in rec["rows"]))
        got = s_w(w, p=p)
        if want != got:
            out.append(Mismatch(4, f"S_w for word {rec['word']}", "g2sw",
                                expected=rec["rows"], got=[list(p.rows[i]) for i in got]))
    sizes = sorted(c.size for c in conjugacy_classes("G2"))
    if sizes != sorted(r["size"] for r in golden.g2_sw()):
        out.append(Mismatch(4, "G2 class sizes", "g2sw"))
    r = find_r(p)
    if r != 2:
        out.append(Mismatch(4, "find_r(G2)", expected=2, got=r))
    return out


# 5
def check_f4_machinery(jobs: int = 1, cache_dir=None) -> list[Mismatch]:
    out = []
    poset = get_poset("F4", jobs=jobs, cache_dir=cache_dir)
    if len(poset) != 22075:
        out.append(Mismatch(5, "|M| for F4", expected=22075, got=len(poset)))
    r = find_r(p_matrix("F4"), jobs=jobs)
    if r != 4:
        out.append(Mismatch(5, "find_r(F4)", expected=4, got=r))
    n = len(p_matrix("E6"))
    if n != 441:
        out.append(Mismatch(5, "rows of the E6 P-matrix", expected=441, got=n))
    return out


# 6
def check_g2_ngms(mmax: int = 48) -> list[Mismatch]:
    out = []
    for s, col in golden.g2_ngms_columns().items():
        qp = col.quasipoly()
        for m in range(1, mmax + 1):
            want, got = qp(m), n_gms("G2", m, s)
            if want != got:
                out.append(Mismatch(6, "N(G2,m,s)", "9", col.label_of(m), m, s, want, got))
    return out


# 7
def check_f4_ngms(mmax: int = 48) -> list[Mismatch]:
    out = []
    scale, cols = golden.f4_ngms_columns()
    for s, col in cols.items():
        qp = col.quasipoly()
        for m in range(1, mmax + 1):
            want, got = qp(m), scale * n_gms("F4", m, s)
            if want != got:
                out.append(Mismatch(7, f"{scale}*N(F4,m,s)", "11", col.label_of(m), m, s, want, got))
        period = detect_period(n_gms_symbolic("F4", s))
        if period != col.period:
            out.append(Mismatch(7, "column period", "11", s=s, expected=col.period, got=period))
    return out


# 8
def check_oracle(g2_max: int = 12, f4_max: int = 4) -> list[Mismatch]:
    from .oracle import grid_orbits

    out = []
    for g, mmax in (("G2", g2_max), ("F4", f4_max)):
        for m in range(1, mmax + 1):
            orbits = grid_orbits(g, m)
            if orbits.count() != n_gm(g, m):
                out.append(Mismatch(8, f"oracle N({g},m)", m=m, expected=orbits.count(), got=n_gm(g, m)))
            for s in range(1, max_s(g) + 1):
                want, got = orbits.count(s), n_gms(g, m, s)
                if want != got:
                    out.append(Mismatch(8, f"oracle N({g},m,s)", m=m, s=s, expected=want, got=got))
    return out


# 9
def check_partitions(g2_max: int = 60, f4_max: int = 24, node_max: int = 24) -> list[Mismatch]:
    out = []
    for g, mmax in (("G2", g2_max), ("F4", f4_max)):
        for m in range(1, mmax + 1):
            total = sum(n_gms(g, m, s) for s in range(1, max_s(g) + 1))
            if total != n_gm(g, m):
                out.append(Mismatch(9, f"sum over s of N({g},m,s)", m=m, expected=n_gm(g, m), got=total))
        poset = get_poset(g)
        ms = list(range(1, node_max + 1))
        f, gv = poset.f_table(ms), poset.g_table(ms)
        for i in range(len(poset)):
            sums = f[poset.below(i)].sum(axis=0)
            bad = np.nonzero(sums != gv[i])[0]
            if len(bad):
                j = int(bad[0])
                out.append(Mismatch(9, f"{g} node {poset.nodes[i].rowset}: sum of f below", m=ms[j],
                                    expected=int(gv[i, j]), got=int(sums[j])))
    return out


# 10
def _snf_problems(a: IntMatrix) -> list[str]:
    d = snf(a)
    probs = []
    if d.left @ a @ d.right != d.diag:
        probs.append("left @ a @ right != diag")
    if abs(d.left.det()) != 1 or abs(d.right.det()) != 1:
        probs.append("transform not unimodular")
    n, c = a.shape
    diag = [d.diag[i, i] for i in range(min(n, c))]
    if any(d.diag[i, j] for i in range(n) for j in range(c) if i != j):
        probs.append("off-diagonal entry")
    nz = [x for x in diag if x]
    if tuple(nz) != d.divisors or any(x <= 0 for x in nz) or diag[len(nz):] != [0] * (len(diag) - len(nz)):
        probs.append("divisors not positive and leading")
    if any(nz[i + 1] % nz[i] for i in range(len(nz) - 1)):
        probs.append("divisibility chain broken")
    return probs


def brute_kernel_count(a: IntMatrix, m: int) -> int:
    n, c = a.shape
    if c == 0:
        return 1
    pts = np.array(list(product(range(m), repeat=c)), dtype=np.int64)
    if n == 0:
        return len(pts)
    mat = np.array(a.tolist(), dtype=np.int64)
    return int(np.all((pts @ mat.T) % m == 0, axis=1).sum())


def check_exactlin_random(n: int = 10_000, seed: int = 0) -> list[Mismatch]:
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        c = rng.randint(1, 3)
        r = rng.randint(1, 4)
        a = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(c)] for _ in range(r)], c)
        m = rng.randint(1, 6)
        for prob in _snf_problems(a):
            out.append(Mismatch(10, f"SNF of {a.tolist()}: {prob}"))
        want, got = brute_kernel_count(a, m), kernel_count(a, m)
        if want != got:
            out.append(Mismatch(10, f"kernel count of {a.tolist()}", m=m, expected=want, got=got))
    return out


# 11
EXPECTED_CLASS_COUNTS = {"G2": 6, "F4": 25, "E6": 25, "E7": 60, "E8": 112}


def check_data_integrity(enumerate_groups=("G2", "F4", "E6")) -> list[Mismatch]:
    out = []
    for g in GROUP_TYPES:
        t = conjugacy_classes(g)
        for msg in validate_class_table(t):
            out.append(Mismatch(11, f"{g} class table: {msg}"))
        if len(t) != EXPECTED_CLASS_COUNTS[g]:
            out.append(Mismatch(11, f"{g} class count", expected=EXPECTED_CLASS_COUNTS[g], got=len(t)))
        total = sum(c.size for c in t)
        if total != group_type(g).weyl_order:
            out.append(Mismatch(11, f"{g} class sizes sum", expected=group_type(g).weyl_order, got=total))
    for g in enumerate_groups:
        grp = enumerate_group(g)
        for msg in match_tables(conjugacy_classes(g), grp, conjugation_labels(grp)):
            out.append(Mismatch(11, f"{g} embedded vs enumerated: {msg}"))
    return out


CRITERIA: dict[int, tuple[str, Callable[[AcceptanceConfig, RunConfig], list[Mismatch]]]] = {
    1: ("N(G,m) tables, m=1..120", lambda c, r: check_ngm_tables(c.ngm_mmax)),
    2: ("E6 misprint check", lambda c, r: check_misprint()),
    3: ("quasi-polynomial reconstruction", lambda c, r: check_quasipoly_fits()),
    4: ("G2 eigen machinery", lambda c, r: check_g2_machinery(c.node_mmax)),
    5: ("F4 eigen machinery", lambda c, r: check_f4_machinery(r.jobs, r.cache_dir)),
    6: ("N(G2,m,s), m=1..48", lambda c, r: check_g2_ngms(c.g2_ngms_mmax)),
    7: ("N(F4,m,s) columns, m=1..48", lambda c, r: check_f4_ngms(c.f4_ngms_mmax)),
    8: ("oracle equivalence", lambda c, r: check_oracle(c.oracle_g2_mmax, c.oracle_f4_mmax)),
    9: ("partition identities",
        lambda c, r: check_partitions(c.partition_g2_mmax, c.partition_f4_mmax, c.node_mmax)),
    10: ("exactlin random suite", lambda c, r: check_exactlin_random(c.random_matrices, c.seed)),
    11: ("data integrity", lambda c, r: check_data_integrity(c.enumerate_groups)),
}

SUITES = {
    "tables": (1, 2, 3, 4, 5, 6, 7),
    "oracle": (8,),
    "properties": (9, 10, 11),
}


def run_criterion(c: int, cfg: AcceptanceConfig | None = None, run_cfg: RunConfig | None = None) -> list[Mismatch]:
    return CRITERIA[c][1](cfg or AcceptanceConfig(), run_cfg or RunConfig.from_env())


def run(criteria, report: Callable[[str], None] = print, cfg: AcceptanceConfig | None = None,
        run_cfg: RunConfig | None = None) -> list[Mismatch]:
    failures = []
    for c in criteria:
        found = run_criterion(c, cfg, run_cfg)
        report(f"criterion {c:2d} {'PASS' if not found else 'FAIL'}: {CRITERIA[c][0]}")
        for mm in found[:20]:
            report(f"    {mm}")
        if len(found) > 20:
            report(f"    ... {len(found) - 20} more")
        failures += found
    return failures
