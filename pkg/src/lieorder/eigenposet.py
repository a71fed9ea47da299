"""N(G, m, s): eigenvalue coincidences, the closed poset M and Moebius inversion.

Every possible coincidence among the eigenvalues of t(k) is the vanishing
of one row of the P-matrix (v_i + v_j, v_i - v_j, v_i or 2 v_i, up to sign).
The set of P-rows annihilating a given k is closed: it contains every P-row
in its own row lattice.  Closed row sets are in bijection with the lattices
generated by P-rows, which is how M is built.

Order convention: ``T <= S`` (T is below S) iff rowset(T) contains
rowset(S); the full P-matrix is the minimum and the empty set the maximum.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exactlin import (
    IntMatrix,
    Row,
    elementary_divisors,
    hnf_rows,
    kernel_count_from_divisors,
    reduce_by_hnf,
    sign_normalize,
)
from .quasipoly import GcdExpression
from .rootdata import WeightSystem, group_type, weight_system
from .weylgroup import ClassTableError, WeylElement, conjugacy_classes

log = logging.getLogger(__name__)

POSET_GROUPS = ("G2", "F4")
CACHE_VERSION = 1
INFEASIBLE = (
    "N(G,m,s) for {g} is out of scope: building M needs every 7-row submatrix of the "
    "{n}-row P-matrix (about 6e14 for E6), which is infeasible"
)


class OutOfScope(ValueError):
    pass


# --- P-matrix -----------------------------------------------------------------


@dataclass(frozen=True)
class PMatrix:
    """Distinct sign-normalized coincidence vectors with their provenance.

    ``tags[r]`` lists every way row r arises: ``("SUM", i, j)``,
    ``("DIFF", i, j)``, ``("SINGLE", i)`` or ``("DOUBLE", i)`` (1-based).
    """

    rows: tuple[Row, ...]
    tags: tuple[tuple[tuple, ...], ...]
    ncols: int
    group: str

    @cached_property
    def index(self) -> dict[Row, int]:
        return {r: i for i, r in enumerate(self.rows)}

    def __len__(self):
        return len(self.rows)

    def matrix(self, rowset: Iterable[int] = None) -> IntMatrix:
        idx = range(len(self.rows)) if rowset is None else sorted(rowset)
        return IntMatrix.from_rows([self.rows[i] for i in idx], self.ncols)

    def digest(self) -> str:
        return hashlib.sha256(json.dumps([list(r) for r in self.rows]).encode()).hexdigest()

    def find(self, v: Sequence[int]) -> int:
        try:
            return self.index[sign_normalize(v)]
        except KeyError:
            raise ClassTableError(f"{tuple(v)} is not a row of P") from None


def build_p_matrix(ws: WeightSystem) -> PMatrix:
    cands = []
    vs = ws.vectors
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            cands.append((tuple(a + b for a, b in zip(vs[i], vs[j])), ("SUM", i + 1, j + 1)))
            cands.append((tuple(a - b for a, b in zip(vs[i], vs[j])), ("DIFF", i + 1, j + 1)))
    for i, v in enumerate(vs):
        cands.append((v, ("SINGLE", i + 1)))
    for i, v in enumerate(vs):
        cands.append((tuple(2 * a for a in v), ("DOUBLE", i + 1)))
    rows: dict[Row, list] = {}
    for v, tag in cands:
        if not any(v):
            continue
        rows.setdefault(sign_normalize(v), []).append(tag)
    return PMatrix(tuple(rows), tuple(tuple(t) for t in rows.values()), ws.rank, ws.group.name)


# --- nodes and the s-function ---------------------------------------------------


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


HALF = "1/2"


def s_function(rowset: Iterable[int], p: PMatrix, ws: WeightSystem) -> int:
    """Number of distinct eigenvalues of t(k) when exactly ``rowset`` vanishes."""
    rowset = set(rowset)
    name = ws.group.name
    if name == "E6":
        dsu = _DSU(range(1, ws.u + 1))
        for r in rowset:
            for t in p.tags[r]:
                if t[0] == "DIFF":
                    dsu.union(t[1], t[2])
        return len(dsu.classes())
    dsu = _DSU([0, HALF, *range(1, ws.u + 1)])
    singles = {t[1] for r in rowset for t in p.tags[r] if t[0] == "SINGLE"}
    for r in rowset:
        for t in p.tags[r]:
            if t[0] in ("SUM", "DIFF"):
                dsu.union(t[1], t[2])
            elif t[0] == "SINGLE":
                dsu.union(t[1], 0)
            elif t[0] == "DOUBLE" and t[1] not in singles:
                dsu.union(t[1], HALF)
    classes = dsu.classes()
    n = len(classes)
    zero = len(next(c for c in classes if 0 in c))
    half = len(next(c for c in classes if HALF in c))
    if name == "E7":
        # [0] and [1/2] each add one eigenvalue exactly when nontrivial; the
        # (|[0]| > 1, |[1/2]| == 1) case is not among the printed three
        return 2 * n - 4 + (zero > 1) + (half > 1)
    return 2 * n - 3 if half == 1 else 2 * n - 2


@dataclass(frozen=True)
class MNode:
    rowset: tuple[int, ...]  # sorted P-row indices
    divisors: tuple[int, ...]
    svalue: int
    lattice: tuple[Row, ...]  # RHNF basis

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def g_m(self, m: int, ncols: int) -> int:
        return kernel_count_from_divisors(self.divisors, ncols, m)


def closure(rows: Iterable[int], p: PMatrix, ws: WeightSystem | None = None) -> MNode:
    """The closed node generated by some P-rows: all P-rows in their lattice."""
    ws = weight_system(p.group) if ws is None else ws
    basis = hnf_rows([p.rows[i] for i in rows], p.ncols)
    rowset = tuple(i for i, r in enumerate(p.rows) if reduce_by_hnf(r, basis))
    return _make_node(rowset, basis, p, ws)


def _make_node(rowset, basis, p: PMatrix, ws: WeightSystem) -> MNode:
    return MNode(
        rowset=tuple(rowset),
        divisors=elementary_divisors(IntMatrix(tuple(basis), p.ncols)),
        svalue=s_function(rowset, p, ws),
        lattice=tuple(basis),
    )


@lru_cache(maxsize=None)
def p_matrix(g) -> PMatrix:
    return build_p_matrix(weight_system(group_type(g)))


# --- lattice fixpoint: find_r and the nodes of M ------------------------------------


def _expand(args):
    """New lattices from adding each P-row outside the closure of each lattice."""
    rows, ncols, bases = args
    out = []
    for basis in bases:
        inside = [reduce_by_hnf(r, basis) for r in rows]
        closed = tuple(i for i, x in enumerate(inside) if x)
        nxt = set()
        for i, x in enumerate(inside):
            if not x:
                nxt.add(hnf_rows(basis + (rows[i],), ncols))
        out.append((closed, nxt))
    return out


def lattice_levels(p: PMatrix, jobs: int = 1, max_levels: int | None = None):
    """Iterate H_0, H_1, ... where H_k holds the RHNFs of <= k-row submatrices.

    Yields ``(k, new_lattices, closures)`` where ``closures`` maps each lattice
    of the previous level's new set to its closed row set.  Stops at the
    first k with H_k == H_{k+1}.
    """
    known: set = set()
    frontier = [()]
    known.add(())
    k = 0
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while frontier:
            frontier.sort()
            chunks = _chunks(frontier, jobs * 4 if pool else 1)
            args = [(p.rows, p.ncols, c) for c in chunks]
            results = pool.map(_expand, args) if pool else map(_expand, args)
            closures = {}
            new = set()
            for chunk, res in zip(chunks, results):
                for basis, (closed, nxt) in zip(chunk, res):
                    closures[basis] = closed
                    new |= nxt
            new -= known
            known |= new
            yield k, sorted(new), closures
            frontier = sorted(new)
            k += 1
            if max_levels is not None and k > max_levels:
                return
    finally:
        if pool:
            pool.shutdown()


def _chunks(seq, n):
    n = max(1, min(n, len(seq)))
    size = -(-len(seq) // n)
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def find_r(p: PMatrix, jobs: int = 1) -> int:
    """Smallest r with H_r == H_{r+1} (row lattices of <= r-row submatrices)."""
    r = 0
    for k, new, _ in lattice_levels(p, jobs):
        if not new:
            return k
        r = k + 1
    return r


def brute_find_r(p: PMatrix, limit: int = 6) -> int:
    """Same answer as :func:`find_r` by enumerating row subsets directly (small P only)."""
    from itertools import combinations

    prev = None
    for k in range(0, limit + 1):
        h = {()}
        for size in range(1, k + 1):
            for sub in combinations(p.rows, size):
                h.add(hnf_rows(sub, p.ncols))
        if prev is not None and h == prev:
            return k - 1
        prev = h
    raise RuntimeError("no stabilization within limit")


# --- the poset ------------------------------------------------------------------


def _pack(rowsets: Sequence[Sequence[int]], nbits: int) -> np.ndarray:
    words = (nbits + 63) // 64
    out = np.zeros((len(rowsets), words), dtype=np.uint64)
    for i, rs in enumerate(rowsets):
        for r in rs:
            out[i, r // 64] |= np.uint64(1) << np.uint64(r % 64)
    return out


def _pack_one(rs: Iterable[int], nbits: int) -> np.ndarray:
    return _pack([list(rs)], nbits)[0]


@dataclass
class MPoset:
    group: str
    p: PMatrix
    nodes: list[MNode]
    r: int
    _mobius: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.nodes = sorted(self.nodes, key=lambda n: (len(n.rowset), n.rowset))
        self.index = {n.rowset: i for i, n in enumerate(self.nodes)}
        self.bits = _pack([n.rowset for n in self.nodes], len(self.p))
        self.sizes = np.array([len(n.rowset) for n in self.nodes])
        self.svalues = np.array([n.svalue for n in self.nodes])

    def __len__(self):
        return len(self.nodes)

    @property
    def ncols(self) -> int:
        return self.p.ncols

    def node(self, rows) -> int:
        """Index of the node with exactly this row set."""
        return self.index[tuple(sorted(rows))]

    def containing(self, rows: Iterable[int]) -> np.ndarray:
        """Boolean mask of nodes whose row set contains ``rows`` (nodes <= rows)."""
        want = _pack_one(rows, len(self.p))
        return np.all((self.bits & want) == want, axis=1)

    def below(self, i: int, strict: bool = False) -> np.ndarray:
        """Indices T with T <= node i, i.e. rowset(T) contains rowset(i)."""
        mask = self.containing(self.nodes[i].rowset)
        if strict:
            mask[i] = False
        return np.nonzero(mask)[0]

    def leq(self, t: int, s: int) -> bool:
        return set(self.nodes[s].rowset) <= set(self.nodes[t].rowset)

    # -- g and f ----------------------------------------------------------------

    @cached_property
    def kernel_shapes(self) -> list[tuple[int, ...]]:
        return sorted({n.divisors for n in self.nodes}, key=lambda d: (len(d), d))

    @cached_property
    def _shape_index(self) -> dict:
        return {d: k for k, d in enumerate(self.kernel_shapes)}

    @cached_property
    def f_coefficients(self) -> np.ndarray:
        """``F[S, k]``: f_m(S) as an integer combination of kernel shapes.

        Uses g(S) = sum over T <= S of f(T), solved from the bottom (largest
        row sets) up; this is Moebius inversion without materialising mu.
        """
        n, k = len(self.nodes), len(self.kernel_shapes)
        out = np.zeros((n, k), dtype=np.int64)
        for i in range(n - 1, -1, -1):
            below = self.below(i, strict=True)
            row = -out[below].sum(axis=0) if len(below) else np.zeros(k, dtype=np.int64)
            row[self._shape_index[self.nodes[i].divisors]] += 1
            out[i] = row
        # every partial sum is bounded by n * max|F|, so this rules out wraparound
        if np.abs(out).max() >= 2**62 // max(n, 1):
            raise OverflowError("f coefficients too large for int64")
        return out

    def shape_values(self, ms: Sequence[int]) -> np.ndarray:
        """``V[k, j]``: kernel count of shape k at ``ms[j]``."""
        return np.array(
            [[kernel_count_from_divisors(d, self.ncols, m) for m in ms] for d in self.kernel_shapes],
            dtype=np.int64,
        )

    def f_table(self, ms: Sequence[int]) -> np.ndarray:
        """``f_m(S)`` for every node (rows) and every m in ``ms`` (columns)."""
        return self.f_coefficients @ self.shape_values(ms)

    def g_table(self, ms: Sequence[int]) -> np.ndarray:
        idx = [self._shape_index[n.divisors] for n in self.nodes]
        return self.shape_values(ms)[idx]

    def shape_expr(self, k: int) -> GcdExpression:
        return GcdExpression.kernel(self.kernel_shapes[k], self.ncols)

    def combine(self, coeffs: np.ndarray, scale=1) -> GcdExpression:
        out = GcdExpression()
        for k, c in enumerate(coeffs):
            if c:
                out = out + self.shape_expr(k).scale(Fraction(int(c)) * Fraction(scale))
        return out

    def g_m(self, i: int, m: int) -> int:
        return self.nodes[i].g_m(m, self.ncols)

    def g_sym(self, i: int) -> GcdExpression:
        return GcdExpression.kernel(self.nodes[i].divisors, self.ncols)

    def f_sym(self, i: int) -> GcdExpression:
        return self.combine(self.f_coefficients[i])

    def f_m(self, i: int, m: int) -> int:
        return sum(
            int(c) * kernel_count_from_divisors(self.kernel_shapes[k], self.ncols, m)
            for k, c in enumerate(self.f_coefficients[i])
            if c
        )

    # -- explicit Moebius function ----------------------------------------------------

    def mobius_column(self, s: int) -> dict[int, int]:
        """mu(T, S) for all T <= S, from mu(T, S) = -sum_{T < U <= S} mu(U, S)."""
        if s in self._mobius:
            return self._mobius[s]
        below = self.below(s)
        order = sorted(below, key=lambda t: len(self.nodes[t].rowset))
        sub = self.bits[order]
        mu: dict[int, int] = {}
        vals = np.zeros(len(order), dtype=np.int64)
        for pos, t in enumerate(order):
            if t == s:
                mu[t] = 1
            else:
                # U with rowset(S) <= rowset(U) < rowset(T), among already processed
                tb = self.bits[t]
                inside = np.all((sub[:pos] & ~tb) == 0, axis=1)
                mu[t] = -int(vals[:pos][inside].sum())
            vals[pos] = mu[t]
        self._mobius[s] = mu
        return mu

    def mobius(self, t: int, s: int) -> int:
        return self.mobius_column(s).get(t, 0)

    def f_m_mobius(self, s: int, m: int) -> int:
        return sum(mu * self.g_m(t, m) for t, mu in self.mobius_column(s).items())


def build_m_poset(g, jobs: int = 1, cache_dir: str | os.PathLike | None = None) -> MPoset:
    gt = group_type(g)
    p = p_matrix(gt)
    if gt.name not in POSET_GROUPS:
        raise OutOfScope(INFEASIBLE.format(g=gt.name, n=len(p)))
    path = _cache_path(gt.name, cache_dir)
    if path is not None and path.exists():
        try:
            return load_poset(path, gt.name)
        except (ValueError, KeyError) as exc:
            log.warning("ignoring unusable poset cache %s: %s", path, exc)
    ws = weight_system(gt)
    nodes = []
    r = 0
    for k, new, closures in lattice_levels(p, jobs):
        for basis, closed in closures.items():
            nodes.append(_make_node(closed, basis, p, ws))
        if not new:
            r = k
    poset = MPoset(gt.name, p, nodes, r)
    if len({n.rowset for n in nodes}) != len(nodes):
        raise ClassTableError("two lattices produced the same closed row set")
    if path is not None:
        save_poset(poset, path)
    return poset


_POSETS: dict = {}


def get_poset(g, jobs: int = 1, cache_dir=None) -> MPoset:
    name = group_type(g).name
    if name not in _POSETS:
        _POSETS[name] = build_m_poset(name, jobs=jobs, cache_dir=cache_dir)
    return _POSETS[name]


# --- cache ------------------------------------------------------------------------


def default_cache_dir() -> Path:
    env = os.environ.get("LIEORDER_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "lieorder"


def _cache_path(name: str, cache_dir) -> Path | None:
    if name == "G2":
        return None
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return base / f"poset_{name}_v{CACHE_VERSION}.json"


def save_poset(poset: MPoset, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {
        "version": CACHE_VERSION,
        "group": poset.group,
        "p_digest": poset.p.digest(),
        "r": poset.r,
        "nodes": [
            {
                "rows": [list(poset.p.rows[i]) for i in n.rowset],
                "divisors": list(n.divisors),
                "s": n.svalue,
            }
            for n in poset.nodes
        ],
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, separators=(",", ":")))
    tmp.replace(path)


def load_poset(path, g) -> MPoset:
    """Load a cached poset, re-checking digest, closure, divisors and s-values."""
    gt = group_type(g)
    data = json.loads(Path(path).read_text())
    p = p_matrix(gt)
    ws = weight_system(gt)
    if data.get("version") != CACHE_VERSION or data.get("group") != gt.name:
        raise ValueError("cache version or group mismatch")
    if data["p_digest"] != p.digest():
        raise ValueError("P-matrix digest mismatch")
    nodes = []
    for rec in data["nodes"]:
        rowset = tuple(sorted(p.find(r) for r in rec["rows"]))
        basis = hnf_rows([p.rows[i] for i in rowset], p.ncols)
        closed = tuple(i for i, r in enumerate(p.rows) if reduce_by_hnf(r, basis))
        if closed != rowset:
            raise ValueError(f"cached node {rec['rows']} is not closed")
        node = _make_node(rowset, basis, p, ws)
        if list(node.divisors) != rec["divisors"] or node.svalue != rec["s"]:
            raise ValueError(f"cached node {rec['rows']} has inconsistent data")
        nodes.append(node)
    return MPoset(gt.name, p, nodes, data["r"])


# --- S_w, Fix_s and N(G, m, s) --------------------------------------------------------


def s_w(w: WeylElement, ws: WeightSystem | None = None, p: PMatrix | None = None) -> tuple[int, ...]:
    """P-row indices whose common kernel is exactly the fixed locus of w."""
    ws = weight_system(w.group) if ws is None else ws
    p = p_matrix(w.group) if p is None else p
    sigma = w.sigma
    out = set()
    for i in ws.spanning:
        s = sigma(i)
        vi = ws.vectors[i - 1]
        if s == i:
            continue
        if s == -i:
            out.add(p.find(tuple(2 * x for x in vi)))
        else:
            vj = ws.vectors[abs(s) - 1]
            sign = 1 if s > 0 else -1
            out.add(p.find(tuple(a - sign * b for a, b in zip(vi, vj))))
    return tuple(sorted(out))


def fix_s_count(w: WeylElement, m: int, s: int, poset: MPoset) -> int:
    mask = poset.containing(s_w(w, p=poset.p)) & (poset.svalues == s)
    return sum(poset.f_m(int(i), m) for i in np.nonzero(mask)[0])


def max_s(g) -> int:
    ws = weight_system(g)
    if ws.group.name == "E6":
        return ws.u
    return 2 * ws.u + (1 if ws.one_slots else 0)


@lru_cache(maxsize=None)
def _ngms_coefficients(name: str) -> dict[int, np.ndarray]:
    """Sum over classes of |c| * F[S] for S <= S_wc, split by s(S)."""
    poset = get_poset(name)
    acc = {s: np.zeros(len(poset.kernel_shapes), dtype=object) for s in range(1, max_s(name) + 1)}
    for c in conjugacy_classes(name):
        mask = poset.containing(s_w(c.representative, p=poset.p))
        for s in acc:
            sel = mask & (poset.svalues == s)
            if sel.any():
                acc[s] = acc[s] + c.size * poset.f_coefficients[sel].sum(axis=0).astype(object)
    return acc


def _check_scope(g) -> str:
    gt = group_type(g)
    if gt.name not in POSET_GROUPS:
        raise OutOfScope(INFEASIBLE.format(g=gt.name, n=len(p_matrix(gt))))
    return gt.name


def n_gms_symbolic(g, s: int) -> GcdExpression:
    name = _check_scope(g)
    gt = group_type(name)
    coeffs = _ngms_coefficients(name).get(s)
    if coeffs is None:
        return GcdExpression()
    return get_poset(name).combine(coeffs, Fraction(1, gt.weyl_order))


def n_gms(g, m: int, s: int) -> int:
    """Number of classes of elements with x**m == 1 and s distinct eigenvalues."""
    name = _check_scope(g)
    gt = group_type(name)
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    coeffs = _ngms_coefficients(name).get(s)
    if coeffs is None:
        return 0
    poset = get_poset(name)
    total = sum(
        int(c) * kernel_count_from_divisors(poset.kernel_shapes[k], poset.ncols, m)
        for k, c in enumerate(coeffs)
        if c
    )
    q, r = divmod(total, gt.weyl_order)
    if r:
        raise ClassTableError(f"Burnside sum {total} for N({name},{m},{s}) not divisible by |W|")
    return q
