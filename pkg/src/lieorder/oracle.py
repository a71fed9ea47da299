"""Brute-force ground truth on the m-torsion grid of the torus.

A grid point k in (Z/m)^l stands for the torus element whose exponent on
weight v is (v . k)/m.  A simple reflection with weight action v -> v @ K
moves k to K @ k (mod m), so W-orbits are the connected components of the
grid under the simple reflections.  No Smith forms, posets or class tables
are involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .rootdata import group_type, weight_system
from .weylgroup import simple_reflection

# largest m per group: G2 24^2 points x 12 elements, F4 6^4 points x 1152 elements
BUDGET = {"G2": 24, "F4": 6}


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GridOrbits:
    group: str
    m: int
    points: np.ndarray  # (m**l, l) residues
    labels: np.ndarray  # orbit id per point
    distinct: np.ndarray  # distinct eigenvalue count per point

    @property
    def n_orbits(self) -> int:
        return int(self.labels.max()) + 1

    def orbit_sizes(self) -> np.ndarray:
        return np.bincount(self.labels)

    def count(self, s: int | None = None) -> int:
        if s is None:
            return self.n_orbits
        return len(np.unique(self.labels[self.distinct == s]))


def _check_budget(name: str, m: int):
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    if name not in BUDGET:
        raise BudgetExceeded(f"no brute-force oracle for {name}")
    if m > BUDGET[name]:
        raise BudgetExceeded(f"{name} oracle is limited to m <= {BUDGET[name]}, got {m}")


@lru_cache(maxsize=32)
def grid_orbits(g, m: int) -> GridOrbits:
    gt = group_type(g)
    _check_budget(gt.name, m)
    ws = weight_system(gt)
    rank = gt.rank
    n = m**rank
    pts = np.array(np.unravel_index(np.arange(n), (m,) * rank)).T.astype(np.int64)
    src, dst = [], []
    for i in range(1, rank + 1):
        k = np.array(simple_reflection(gt, i).kaction.tolist(), dtype=np.int64)
        img = (pts @ k.T) % m
        src.append(np.arange(n))
        dst.append(np.ravel_multi_index(img.T, (m,) * rank))
    src, dst = np.concatenate(src), np.concatenate(dst)
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return GridOrbits(gt.name, m, pts, labels, distinct_counts(gt, pts, m))


def distinct_counts(g, pts: np.ndarray, m: int) -> np.ndarray:
    """Distinct eigenvalues at each grid point, from integer residues mod m."""
    ws = weight_system(g)
    vs = np.array(ws.vectors, dtype=np.int64)
    res = (pts @ vs.T) % m
    cols = [res]
    if ws.paired:
        cols.append((-res) % m)
    if ws.one_slots:
        cols.append(np.zeros((len(pts), 1), dtype=np.int64))
    vals = np.sort(np.concatenate(cols, axis=1), axis=1)
    return 1 + (np.diff(vals, axis=1) != 0).sum(axis=1)


def brute_n_gm(g, m: int) -> int:
    return grid_orbits(g, m).count()


def brute_n_gms(g, m: int, s: int) -> int:
    return grid_orbits(g, m).count(s)


def vanishing_rows(p, k, m: int) -> tuple[int, ...]:
    """P-row indices r with r . k == 0 mod m: the coincidences realised at k."""
    rows = np.array(p.rows, dtype=np.int64)
    return tuple(int(i) for i in np.nonzero((rows @ np.asarray(k)) % m == 0)[0])
