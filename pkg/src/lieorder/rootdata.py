"""Cartan matrices and torus weight data for the exceptional groups.

Simple roots follow Bourbaki numbering:

    G2:  1 =< 2         (1 short)
    F4:  1 - 2 => 3 - 4  (3, 4 short)
    En:  1 - 3 - 4 - 5 - ... - n, with 2 attached to 4

``cartan[i][j] = <alpha_i, alpha_j^vee>``, so row i is alpha_i written in
the fundamental-weight basis.  A weight lambda with fundamental-weight
coordinates v scales the torus element t(k) = prod_i h_i(exp(2 pi i k_i))
by exp(2 pi i v.k), which is why every weight below is stored in those
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .exactlin import IntMatrix, Row, hnf_rows, sign_normalize


@dataclass(frozen=True)
class GroupType:
    name: str
    rank: int
    weyl_order: int
    num_classes: int


GROUP_TYPES = {
    "G2": GroupType("G2", 2, 12, 6),
    "F4": GroupType("F4", 4, 1152, 25),
    "E6": GroupType("E6", 6, 51840, 25),
    "E7": GroupType("E7", 7, 2903040, 60),
    "E8": GroupType("E8", 8, 696729600, 112),
}


def group_type(g) -> GroupType:
    if isinstance(g, GroupType):
        return g
    try:
        return GROUP_TYPES[str(g).upper()]
    except KeyError:
        raise ValueError(f"unknown group {g!r}; expected one of {', '.join(GROUP_TYPES)}") from None


def _simply_laced(n: int, edges) -> list[list[int]]:
    a = [[2 * (i == j) for j in range(n)] for i in range(n)]
    for i, j in edges:
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    return a


_CARTAN = {
    "G2": [[2, -1], [-3, 2]],
    "F4": [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "E6": _simply_laced(6, [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]),
    "E7": _simply_laced(7, [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)]),
    "E8": _simply_laced(8, [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]),
}

# highest weight of the smallest faithful representation (fundamental-weight
# coordinates), the multiplicity of its zero weight, and whether weights
# come in +- pairs
_REPRESENTATION = {
    "G2": ((1, 0), 1, True),  # 7: short roots and 0
    "F4": ((0, 0, 0, 1), 1, True),  # 26: short roots and 0
    "E6": ((1, 0, 0, 0, 0, 0), 0, False),  # 27, minuscule
    "E7": ((0, 0, 0, 0, 0, 0, 1), 0, True),  # 56, minuscule
    "E8": ((0, 0, 0, 0, 0, 0, 0, 1), 8, True),  # 248, adjoint
}


def cartan_matrix(g) -> IntMatrix:
    return IntMatrix.from_rows(_CARTAN[group_type(g).name])


def reflect(v: Sequence[int], i: int, cartan: IntMatrix) -> Row:
    """Simple reflection s_i (0-based) on a weight in fundamental coordinates."""
    c = v[i]
    if not c:
        return tuple(v)
    a = cartan.rows[i]
    return tuple(x - c * y for x, y in zip(v, a))


def weyl_orbit(v: Sequence[int], cartan: IntMatrix) -> list[Row]:
    """Orbit of a weight under W in breadth-first order from ``v``."""
    start = tuple(v)
    seen = {start}
    order = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(cartan.nrows):
                x = reflect(w, i, cartan)
                if x not in seen:
                    seen.add(x)
                    order.append(x)
                    nxt.append(x)
        frontier = nxt
    return order


@dataclass(frozen=True)
class WeightSystem:
    """Exponent vectors of the torus diagonal.

    ``vectors[j]`` holds the coefficients of P_j in k_1..k_l.  For paired
    groups only one vector per +- pair is kept (sign normalized) and the
    diagonal is {1 x one_slots} + {exp(+-2 pi i P_j)}; for E6 the diagonal
    is {exp(2 pi i P_j)} and the vectors are the actual weights.
    """

    group: GroupType
    vectors: tuple[Row, ...]
    one_slots: int
    paired: bool
    spanning: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def u(self) -> int:
        return len(self.vectors)

    def index(self) -> dict[Row, int]:
        """Map each signed weight vector to a signed 1-based index."""
        out = {}
        for j, v in enumerate(self.vectors, start=1):
            out[v] = j
            if self.paired:
                out[tuple(-x for x in v)] = -j
        return out

    def with_spanning(self, spanning: Sequence[int]) -> "WeightSystem":
        spanning = tuple(spanning)
        if not _spans(self.vectors, spanning, self.rank):
            raise ValueError(f"indices {spanning} do not span the weight lattice")
        return WeightSystem(self.group, self.vectors, self.one_slots, self.paired, spanning)


def _spans(vectors, indices, rank) -> bool:
    full = hnf_rows(vectors, rank)
    return hnf_rows([vectors[i - 1] for i in indices], rank) == full


def spanning_indices(vectors: Sequence[Row], rank: int) -> tuple[int, ...]:
    """Lexicographically first ``rank`` indices (1-based) spanning the lattice."""
    for idx in combinations(range(1, len(vectors) + 1), rank):
        if _spans(vectors, idx, rank):
            return idx
    raise RuntimeError("no spanning subset: weight data is corrupt")


@lru_cache(maxsize=None)
def weight_system(g) -> WeightSystem:
    gt = group_type(g)
    cartan = cartan_matrix(gt)
    top, ones, paired = _REPRESENTATION[gt.name]
    orbit = weyl_orbit(top, cartan)
    if paired:
        kept, seen = [], set()
        for v in orbit:
            n = sign_normalize(v)
            if n not in seen:
                seen.add(n)
                kept.append(n)
        vectors = tuple(kept)
    else:
        vectors = tuple(orbit)
    return WeightSystem(gt, vectors, ones, paired, spanning_indices(vectors, gt.rank))


def torus_eigen_exponents(ws: WeightSystem, k: Sequence) -> list[Fraction]:
    """Multiset of diagonal exponents of t(k), each reduced into [0, 1)."""
    k = [Fraction(x) for x in k]
    out = [Fraction(0)] * ws.one_slots
    for v in ws.vectors:
        p = sum((a * b for a, b in zip(v, k)), Fraction(0)) % 1
        out.append(p)
        if ws.paired:
            out.append((-p) % 1)
    return out


def distinct_eigenvalue_count(ws: WeightSystem, k: Sequence) -> int:
    return len(set(torus_eigen_exponents(ws, k)))
