"""N(G, m): Burnside's lemma over the conjugacy classes of W.

For a class representative w, the torus points of order dividing m fixed by
w are the solutions of a homogeneous integer system obtained by equating the
spanning diagonal entries of w.t(k) and t(k); the number of solutions is a
kernel count, read off the Smith divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactlin import IntMatrix, elementary_divisors, kernel_count_from_divisors
from .rootdata import WeightSystem, group_type, weight_system
from .weylgroup import ClassTableError, WeylElement, conjugacy_classes

# quasi-polynomial periods of N(G, m)
NGM_PERIODS = {"G2": 6, "F4": 12, "E6": 6, "E7": 12, "E8": 60}


@dataclass(frozen=True)
class FixSystem:
    element: WeylElement
    matrix: IntMatrix

    @property
    def divisors(self) -> tuple[int, ...]:
        return elementary_divisors(self.matrix)

    def count(self, m: int) -> int:
        return kernel_count_from_divisors(self.divisors, self.matrix.ncols, m)


def fix_matrix(w: WeylElement, ws: WeightSystem | None = None) -> FixSystem:
    """One row per spanning index i (none when sigma(i) == i).

    sigma(i) == -i gives 2 v_i; sigma(i) == +-j gives v_i -+ v_j.  Zero and
    repeated rows are kept.
    """
    ws = weight_system(w.group) if ws is None else ws
    sigma = w.sigma
    rows = []
    for i in ws.spanning:
        s = sigma(i)
        vi = ws.vectors[i - 1]
        if s == i:
            continue
        if s == -i:
            rows.append(tuple(2 * x for x in vi))
        else:
            vj = ws.vectors[abs(s) - 1]
            sign = 1 if s > 0 else -1
            rows.append(tuple(a - sign * b for a, b in zip(vi, vj)))
    return FixSystem(w, IntMatrix.from_rows(rows, ws.rank))


def fix_count(w: WeylElement, m: int, ws: WeightSystem | None = None) -> int:
    return fix_matrix(w, ws).count(m)


@lru_cache(maxsize=None)
def class_fix_data(g) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """(class size, Smith divisors of the fixed-point system) per class."""
    return fix_data(conjugacy_classes(g))


def fix_data(table) -> tuple[tuple[int, tuple[int, ...]], ...]:
    ws = weight_system(table.group)
    return tuple((c.size, fix_matrix(c.representative, ws).divisors) for c in table)


def burnside_sum(g, m: int, data=None) -> int:
    gt = group_type(g)
    data = class_fix_data(gt) if data is None else data
    return sum(size * kernel_count_from_divisors(d, gt.rank, m) for size, d in data)


def n_gm(g, m: int, data=None) -> int:
    """Number of conjugacy classes of G of elements with x**m == 1.

    ``data`` may replace the embedded classes with :func:`fix_data` of
    another class table, e.g. one obtained by enumeration.
    """
    gt = group_type(g)
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    total = burnside_sum(gt, m, data)
    q, r = divmod(total, gt.weyl_order)
    if r:
        raise ClassTableError(
            f"Burnside sum {total} for {gt.name}, m={m} is not divisible by |W| = {gt.weyl_order}"
        )
    return q


def n_gm_quasipoly(g):
    """Fit N(G, .) as a quasi-polynomial of degree rank and the known period."""
    from .quasipoly import fit

    gt = group_type(g)
    return fit(lambda m: n_gm(gt, m), gt.rank, NGM_PERIODS[gt.name])


def n_gm_symbolic(g):
    """N(G, m) as a gcd expression in m (one kernel term per class)."""
    from fractions import Fraction

    from .quasipoly import GcdExpression

    gt = group_type(g)
    out = GcdExpression()
    for size, d in class_fix_data(gt):
        out = out + GcdExpression.kernel(d, gt.rank).scale(Fraction(size, gt.weyl_order))
    return out
