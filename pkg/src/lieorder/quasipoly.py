"""Quasi-polynomials and symbolic gcd expressions.

A ``GcdExpression`` is a sum of terms ``c * m**a * prod(gcd(d, m))`` with
exact rational ``c``; every count in this package has that shape.  A
``QuasiPolynomial`` stores one polynomial per residue of m modulo a period.
"""

from __future__ import annotations

import csv
import io
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Mapping, Sequence

Poly = tuple[Fraction, ...]  # ascending powers of m


class FitError(ValueError):
    """A sampled sequence is not a quasi-polynomial of the claimed shape."""


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _prime_powers(d: int) -> list[int]:
    return [p**e for p, e in _factor(d).items()]


def _trim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_eval(p: Sequence[Fraction], m) -> Fraction:
    out = Fraction(0)
    for c in reversed(p):
        out = out * m + c
    return out


@dataclass
class GcdExpression:
    """``terms[(power, bag)] = coefficient``; bags are sorted tuples of ints >= 2."""

    terms: dict[tuple[int, tuple[int, ...]], Fraction] = field(default_factory=dict)

    @classmethod
    def term(cls, coeff, power: int, divisors: Iterable[int] = ()) -> "GcdExpression":
        out = cls()
        out.add_term(coeff, power, divisors)
        return out

    @classmethod
    def kernel(cls, divisors: Iterable[int], ncols: int) -> "GcdExpression":
        """m**(ncols - r) * prod gcd(d_i, m): the size of a kernel."""
        divisors = list(divisors)
        return cls.term(1, ncols - len(divisors), divisors)

    def add_term(self, coeff, power: int, divisors: Iterable[int] = ()):
        coeff = Fraction(coeff)
        if not coeff:
            return
        bag = tuple(sorted(q for d in divisors for q in _prime_powers(abs(d)) if q > 1))
        key = (power, bag)
        c = self.terms.get(key, 0) + coeff
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "GcdExpression") -> "GcdExpression":
        out = GcdExpression(dict(self.terms))
        for (a, bag), c in other.terms.items():
            out.add_term(c, a, bag)
        return out

    def scale(self, k) -> "GcdExpression":
        k = Fraction(k)
        return GcdExpression({key: c * k for key, c in self.terms.items() if c * k})

    def __sub__(self, other: "GcdExpression") -> "GcdExpression":
        return self + other.scale(-1)

    def __call__(self, m: int) -> Fraction:
        return self.evaluate(m)

    def evaluate(self, m: int) -> Fraction:
        out = Fraction(0)
        for (a, bag), c in self.terms.items():
            v = c * m**a
            for d in bag:
                v *= gcd(d, m)
            out += v
        return out

    def evaluate_int(self, m: int) -> int:
        v = self.evaluate(m)
        if v.denominator != 1:
            raise ArithmeticError(f"expression is not integral at m={m}: {v}")
        return v.numerator

    def is_zero(self) -> bool:
        return not self.indicator_form()

    def degree(self) -> int:
        return max((a for a, _ in self.terms), default=0)

    def indicator_form(self) -> dict[tuple[int, int], Fraction]:
        """Rewrite as sum of c * m**a * [D divides m].

        These functions are linearly independent, so the result is canonical
        and zero coefficients mean genuine cancellation.
        """
        out: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
        for (a, bag), c in self.terms.items():
            by_prime: dict[int, list[int]] = defaultdict(list)
            for q in bag:
                (p, e), = _factor(q).items()
                by_prime[p].append(e)
            # each prime contributes p**sum(min(e, v)) as a step function of v = v_p(m)
            parts = [((1, Fraction(1)),)]
            for p, es in by_prime.items():
                steps, prev = [], 1
                for j in range(0, max(es) + 1):
                    val = p ** sum(min(e, j) for e in es)
                    if val != prev or j == 0:
                        steps.append((p**j, Fraction(val - (prev if j else 0))))
                    prev = val
                parts.append(tuple(steps))
            combos = [(1, c)]
            for steps in parts:
                combos = [(d1 * d2, c1 * c2) for d1, c1 in combos for d2, c2 in steps]
            for d, cc in combos:
                out[(a, d)] += cc
        return {k: v for k, v in out.items() if v}

    def period(self) -> int:
        return lcm(1, *(d for _, d in self.indicator_form()))

    def to_quasipoly(self) -> "QuasiPolynomial":
        form = self.indicator_form()
        period = lcm(1, *(d for _, d in form))
        deg = max((a for a, _ in form), default=0)
        polys = []
        for r in range(period):
            coeffs = [Fraction(0)] * (deg + 1)
            for (a, d), c in form.items():
                if r % d == 0:
                    coeffs[a] += c
            polys.append(_trim(coeffs))
        return QuasiPolynomial(period, tuple(polys))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, bag), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
            f = [str(c)]
            if a:
                f.append("m" if a == 1 else f"m^{a}")
            f += [f"gcd({d},m)" for d in bag]
            parts.append("*".join(f))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [
            {"coeff": str(c), "power": a, "divisors": list(bag)}
            for (a, bag), c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data: list) -> "GcdExpression":
        out = cls()
        for t in data:
            out.add_term(Fraction(t["coeff"]), t["power"], t["divisors"])
        return out


def detect_period(expr: GcdExpression) -> int:
    """Minimal period of ``expr`` as a quasi-polynomial in m.

    The candidate is the lcm of the divisors that survive cancellation.  For
    each prime p of the candidate L, a residue r is built so that r and
    r + L/p have different polynomials, and that difference is confirmed
    by sampling ``expr`` itself; so no proper divisor of L is a period.
    """
    form = expr.indicator_form()
    period = lcm(1, *(d for _, d in form))
    deg = max((a for a, _ in form), default=0)
    for p, e in _factor(period).items():
        q = period // p
        # smallest cofactor among terms carrying the full power p**e
        d0 = min(d // p**e for _, d in form if d % p**e == 0)
        r = (p**e * d0) % period
        a = _sampled_poly(expr, r, period, deg)
        b = _sampled_poly(expr, (r + q) % period, period, deg)
        if a == b:
            raise AssertionError(f"period {period} is not minimal: residues {r} and {r + q} agree")
    return period


def _sampled_poly(expr: GcdExpression, r: int, period: int, deg: int) -> Poly:
    start = r if r else period
    xs = [start + period * t for t in range(deg + 1)]
    return interpolate(xs, [expr.evaluate(x) for x in xs])


@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    polys: tuple[Poly, ...]  # polys[r] applies when m % period == r

    def __post_init__(self):
        if len(self.polys) != self.period:
            raise ValueError("need one polynomial per residue")

    def poly(self, m: int) -> Poly:
        return self.polys[m % self.period]

    def __call__(self, m: int) -> int:
        return evaluate(self, m)

    @property
    def degree(self) -> int:
        return max((len(p) - 1 for p in self.polys), default=0)

    def denominator(self) -> int:
        return lcm(1, *(c.denominator for p in self.polys for c in p))

    def groups(self) -> list[tuple[list[int], Poly]]:
        """Residues sharing a polynomial, in order of first appearance."""
        out: dict[Poly, list[int]] = {}
        for r, p in enumerate(self.polys):
            out.setdefault(p, []).append(r)
        return [(rs, p) for p, rs in out.items()]


def evaluate(qp: QuasiPolynomial, m: int) -> int:
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    v = poly_eval(qp.poly(m), m)
    if v.denominator != 1:
        raise ArithmeticError(f"quasi-polynomial value at m={m} is not an integer: {v}")
    return v.numerator


def interpolate(xs: Sequence[int], ys: Sequence) -> Poly:
    """Exact polynomial through the points (Newton form, then expanded)."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # out = out * (m - xs[i]) + coef[i]
        shifted = [Fraction(0)] + out[:-1]
        out = [s - xs[i] * o for s, o in zip(shifted, out)]
        out[0] += coef[i]
    return _trim(out)


def fit(sampler: Callable[[int], int], degree: int, period: int, held_out: int = 2) -> QuasiPolynomial:
    """Interpolate each residue class from ``degree + 1`` samples.

    Residue r uses m = r, r + period, ... (starting at ``period`` for r = 0)
    and must reproduce ``held_out`` further samples exactly.
    """
    if degree < 0 or period < 1:
        raise ValueError("degree must be >= 0 and period >= 1")
    polys = []
    for r in range(period):
        start = r if r else period
        xs = [start + period * t for t in range(degree + 1 + held_out)]
        ys = [sampler(x) for x in xs]
        p = interpolate(xs[: degree + 1], ys[: degree + 1])
        for x, y in zip(xs[degree + 1 :], ys[degree + 1 :]):
            if poly_eval(p, x) != y:
                raise FitError(f"residue {r} mod {period}: held-out sample m={x} gives {y}, fit says {poly_eval(p, x)}")
        polys.append(p)
    return QuasiPolynomial(period, tuple(polys))


# --- rendering ----------------------------------------------------------------


def format_poly(p: Poly, denominator: int | None = None, var: str = "m") -> str:
    """Render as ``(num)/den`` with integer numerator coefficients."""
    den = denominator or lcm(1, *(c.denominator for c in p))
    num = [c * den for c in p]
    if any(c.denominator != 1 for c in num):
        raise ValueError(f"{den} is not a common denominator of {p}")
    parts = []
    for a in range(len(num) - 1, -1, -1):
        c = int(num[a])
        if not c:
            continue
        mag = abs(c)
        mono = "" if a == 0 else (var if a == 1 else f"{var}^{a}")
        body = str(mag) if (mag != 1 or not mono) else ""
        body += mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    s += "".join(sg + b for sg, b in parts[1:])
    if den == 1:
        return s
    if len(parts) == 1 and parts[0][0] == "+":
        return f"{s}/{den}"
    return f"({s})/{den}"


def residue_label(rs: Sequence[int], period: int) -> str:
    """Residue label pairing r with -r: ``0``, ``±1,±5``, ``6``."""
    rs = set(rs)
    out = []
    for r in sorted(rs):
        if r not in rs:
            continue
        neg = (-r) % period
        if neg != r and neg in rs and r < neg:
            out.append(f"±{r}")
            rs.discard(neg)
        elif neg != r and neg in rs:
            continue
        else:
            out.append(str(r))
    return ",".join(out)


def to_json(qp: QuasiPolynomial, denominator: int | None = None) -> dict:
    """``{period, residues: [{r, numerator_coeffs, denominator}]}``.

    ``numerator_coeffs[a]`` is the integer coefficient of m**a.
    """
    den = denominator or qp.denominator()
    res = []
    for r, p in enumerate(qp.polys):
        num = [c * den for c in p]
        if any(c.denominator != 1 for c in num):
            raise ValueError(f"{den} is not a common denominator")
        res.append({"r": r, "numerator_coeffs": [int(c) for c in num], "denominator": den})
    return {"period": qp.period, "residues": res}


def from_json(data: Mapping) -> QuasiPolynomial:
    polys = [None] * data["period"]
    for rec in data["residues"]:
        den = rec["denominator"]
        polys[rec["r"]] = _trim(Fraction(c, den) for c in rec["numerator_coeffs"])
    if any(p is None for p in polys):
        raise ValueError("missing residues")
    return QuasiPolynomial(data["period"], tuple(polys))


def emit_table(qp: QuasiPolynomial, fmt: str = "markdown", denominator: int | None = None,
               title: str = "value") -> str:
    den = denominator or qp.denominator()
    if fmt == "json":
        return json.dumps(to_json(qp, den), indent=2, sort_keys=True)
    if fmt == "markdown":
        lines = [f"| m mod {qp.period} | {title} |", "|---|---|"]
        for rs, p in qp.groups():
            lines.append(f"| {residue_label(rs, qp.period)} | {format_poly(p, den)} |")
        return "\n".join(lines)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["residue", "period", "numerator_coeffs_ascending", "denominator"])
        for r, p in enumerate(qp.polys):
            w.writerow([r, qp.period, " ".join(str(int(c * den)) for c in p), den])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")
