"""Published reference tables, stored as text and parsed on demand.

Formulas are kept in their printed form, e.g. ``(m-1)(m-5)/12`` or
``m(m-9)/12+2``; :func:`parse_poly` turns them into coefficient tuples.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .quasipoly import Poly, QuasiPolynomial, _trim, poly_eval

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z])|(.))")


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class _Parser:
    def __init__(self, text: str, var: str):
        self.toks = []
        for num, name, other in _TOKEN.findall(text.replace("−", "-")):
            if num:
                self.toks.append(("num", int(num)))
            elif name:
                if name != var:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                self.toks.append(("var", name))
            elif other.strip():
                self.toks.append(("op", other))
        self.pos = 0
        self.text = text

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ValueError(f"expected {op!r} in {self.text!r}")
        self.pos += 1
        return tok

    def expr(self):
        out = [Fraction(0)]
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            out = _padd(out, [sign * c for c in self.term()])
            if self.peek() not in (("op", "+"), ("op", "-")):
                return out
            sign = -1 if self.take()[1] == "-" else 1

    def term(self):
        out = self.power()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                out = _pmul(out, self.power())
            elif (kind, val) == ("op", "/"):
                self.take()
                d = self.power()
                if len(_trim(d)) > 1:
                    raise ValueError(f"division by a polynomial in {self.text!r}")
                out = [c / d[0] for c in out]
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                out = _pmul(out, self.power())  # implicit product
            else:
                return out

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError(f"bad exponent in {self.text!r}")
            out = [Fraction(1)]
            for _ in range(e):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return [Fraction(val)]
        if kind == "var":
            return [Fraction(0), Fraction(1)]
        if val == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected {val!r} in {self.text!r}")


def parse_poly(text: str, var: str = "m") -> Poly:
    """Ascending coefficients of a printed polynomial formula."""
    p = _Parser(text, var)
    out = p.expr()
    if p.pos != len(p.toks):
        raise ValueError(f"trailing input in {text!r}")
    return _trim(out)


def parse_residues(label: str, period: int) -> set[int]:
    """``0``, ``±1,±5`` or ``1,5,7,11`` as a set of residues mod ``period``."""
    out = set()
    for part in label.split(","):
        part = part.strip()
        if part.startswith("±"):
            r = int(part[1:])
            out |= {r % period, -r % period}
        else:
            out.add(int(part) % period)
    return out


def parse_cases(cases: list) -> callable:
    """``[["0 mod 2", "2m"], ["else", "m"]]`` as a function of m."""
    parsed = []
    for cond, formula in cases:
        poly = parse_poly(formula)
        if cond == "else":
            parsed.append((None, None, poly))
        else:
            res, mod = cond.split(" mod ")
            parsed.append((int(mod), parse_residues(res, int(mod)), poly))

    def value(m: int) -> Fraction:
        for mod, res, poly in parsed:
            if mod is None or m % mod in res:
                return poly_eval(poly, m)
        raise ValueError(f"no case covers m={m}")

    return value


# --- tables -----------------------------------------------------------------------


@dataclass(frozen=True)
class GoldenTable:
    """A residue table: ``rows`` pairs each printed residue label with its formula."""

    source: str
    period: int
    rows: tuple[tuple[str, str], ...]

    def quasipoly(self) -> QuasiPolynomial:
        polys: list = [None] * self.period
        for label, formula in self.rows:
            for r in parse_residues(label, self.period):
                if polys[r] is not None:
                    raise ValueError(f"table {self.source}: residue {r} listed twice")
                polys[r] = parse_poly(formula)
        missing = [r for r, p in enumerate(polys) if p is None]
        if missing:
            raise ValueError(f"table {self.source}: residues {missing} missing")
        return QuasiPolynomial(self.period, tuple(polys))

    def label_of(self, r: int) -> str:
        for label, _ in self.rows:
            if r % self.period in parse_residues(label, self.period):
                return label
        raise KeyError(r)


def _path() -> Path:
    return Path(__file__).with_name("data") / "golden_tables.json"


@lru_cache(maxsize=1)
def load() -> dict:
    return json.loads(_path().read_text(encoding="utf-8"))


def ngm_tables() -> dict[str, GoldenTable]:
    """Keyed by group name."""
    out = {}
    for num, t in load()["ngm"].items():
        out[t["group"]] = GoldenTable(num, t["period"], tuple(map(tuple, t["rows"])))
    return out


def table_number(group: str) -> str:
    return ngm_tables()[group].source


def g2_ngms_columns() -> dict[int, GoldenTable]:
    t = load()["g2_ngms"]
    cols = {}
    for j, s in enumerate(t["columns"]):
        rows = tuple((label, vals[j]) for label, vals in t["rows"])
        cols[s] = GoldenTable("9", t["period"], rows)
    return cols


def f4_ngms_columns() -> tuple[int, dict[int, GoldenTable]]:
    """(scale, columns): entries are ``scale * N(F4, m, s)``."""
    t = load()["f4_ngms"]
    cols = {c["s"]: GoldenTable("11", c["period"], tuple(map(tuple, c["rows"]))) for c in t["columns"]}
    return t["scale"], cols


def e6_odd_formula() -> dict:
    return load()["e6_odd_formula"]


def g2_sw() -> list[dict]:
    return load()["g2_sw"]


def g2_nodes() -> list[dict]:
    return load()["g2_nodes"]
