"""Weyl group elements, enumeration and conjugacy-class tables.

An element acts on weights written as row vectors in the fundamental-weight
basis by right multiplication, ``v -> v @ kaction``; equivalently it acts on
torus parameters k (column vectors) by ``k -> kaction @ k``, since
``v . (K k) == (v K) . k``.  The word ``(i1, ..., ir)`` denotes the element
with ``kaction = M_i1 @ ... @ M_ir`` where ``M_i`` is the i-th simple
reflection.

The signed permutation ``sigma`` is defined by ``v_j @ kaction ==
sign(sigma(j)) * v_|sigma(j)|`` over the weight system's vectors.
"""

from __future__ import annotations

import json
import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .exactlin import IntMatrix
from .rootdata import GroupType, WeightSystem, cartan_matrix, group_type, weight_system

log = logging.getLogger(__name__)

CLASS_DATA_VERSION = 1

# rough peak resident memory of enumerate_group, in bytes per element
_BYTES_PER_ELEMENT = 400


class ClassTableError(RuntimeError):
    """Embedded or enumerated class data failed validation."""


@dataclass(frozen=True)
class SignedPermutation:
    """``images[j-1] = sigma(j)``, a signed 1-based index."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(abs(x) for x in self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a signed permutation: {self.images}")

    def __call__(self, j: int) -> int:
        s = self.images[abs(j) - 1]
        return s if j > 0 else -s

    def __len__(self):
        return len(self.images)

    @property
    def unsigned(self) -> bool:
        return all(x > 0 for x in self.images)

    def then(self, other: "SignedPermutation") -> "SignedPermutation":
        """Apply ``self`` first, then ``other``."""
        return SignedPermutation(tuple(other(x) for x in self.images))

    def cycle_type(self) -> tuple[tuple[int, int], ...]:
        """Cycle lengths of the induced permutation on the 2u signed points."""
        pts = [j for j in range(1, len(self) + 1)] + [-j for j in range(1, len(self) + 1)]
        seen, lengths = set(), []
        for p in pts:
            if p in seen:
                continue
            n, q = 0, p
            while q not in seen:
                seen.add(q)
                q = self(q)
                n += 1
            lengths.append(n)
        return tuple(sorted(Counter(lengths).items()))


def _reflection_matrix(cartan: IntMatrix, i: int) -> IntMatrix:
    n = cartan.nrows
    rows = [[int(r == c) for c in range(n)] for r in range(n)]
    rows[i] = [int(i == c) - cartan.rows[i][c] for c in range(n)]
    return IntMatrix.from_rows(rows, n)


def sigma_from_kaction(kaction: IntMatrix, ws: WeightSystem) -> SignedPermutation:
    idx = ws.index()
    images = []
    for v in ws.vectors:
        img = tuple(sum(v[r] * kaction.rows[r][c] for r in range(len(v))) for c in range(len(v)))
        try:
            images.append(idx[img])
        except KeyError:
            raise ClassTableError(f"{img} is not a weight of {ws.group.name}") from None
    return SignedPermutation(tuple(images))


@dataclass(frozen=True, eq=False)
class WeylElement:
    group: GroupType
    word: tuple[int, ...]
    kaction: IntMatrix

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.group == other.group
            and self.kaction == other.kaction
        )

    def __hash__(self):
        return hash((self.group.name, self.kaction))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return compose(self, other)

    def __pow__(self, n: int) -> "WeylElement":
        out = identity(self.group)
        for _ in range(n):
            out = compose(out, self)
        return out

    @cached_property
    def sigma(self) -> SignedPermutation:
        return sigma_from_kaction(self.kaction, weight_system(self.group))

    @cached_property
    def order(self) -> int:
        n, x = 1, self.kaction
        ident = IntMatrix.identity(self.group.rank)
        while x != ident:
            x = x @ self.kaction
            n += 1
        return n

    def inverse(self) -> "WeylElement":
        out = identity(self.group)
        for i in reversed(self.word):
            out = compose(out, simple_reflection(self.group, i))
        return out

    def is_identity(self) -> bool:
        return self.kaction == IntMatrix.identity(self.group.rank)

    def __repr__(self):
        return f"WeylElement({self.group.name}, word={list(self.word)})"


def identity(g) -> WeylElement:
    gt = group_type(g)
    return WeylElement(gt, (), IntMatrix.identity(gt.rank))


@lru_cache(maxsize=None)
def simple_reflection(g, i: int) -> WeylElement:
    """The i-th simple reflection (1-based), acting through the Cartan matrix."""
    gt = group_type(g)
    if not 1 <= i <= gt.rank:
        raise ValueError(f"{gt.name} has simple reflections 1..{gt.rank}, got {i}")
    return WeylElement(gt, (i,), _reflection_matrix(cartan_matrix(gt), i - 1))


def compose(a: WeylElement, b: WeylElement) -> WeylElement:
    """The element acting as ``a`` then ``b`` on weight rows."""
    if a.group != b.group:
        raise ValueError(f"cannot compose {a.group.name} with {b.group.name}")
    return WeylElement(a.group, a.word + b.word, a.kaction @ b.kaction)


def from_word(g, word: Sequence[int]) -> WeylElement:
    gt = group_type(g)
    out = identity(gt)
    for i in word:
        out = compose(out, simple_reflection(gt, i))
    return out


def reduced_word(g, kaction: IntMatrix) -> tuple[int, ...]:
    """A reduced word for the element with the given kaction.

    Pushes rho = (1, ..., 1) back into the dominant chamber by simple
    reflections; the number of steps is the length of the element.
    """
    gt = group_type(g)
    cartan = cartan_matrix(gt)
    n = gt.rank
    mu = [sum(kaction.rows[r][c] for r in range(n)) for c in range(n)]
    steps = []
    while True:
        i = next((j for j in range(n) if mu[j] < 0), None)
        if i is None:
            break
        c = mu[i]
        mu = [x - c * y for x, y in zip(mu, cartan.rows[i])]
        steps.append(i + 1)
    if mu != [1] * n:
        raise ClassTableError("kaction does not belong to the Weyl group")
    # kaction @ M_s1 @ ... @ M_sr == I, so kaction == M_sr @ ... @ M_s1
    return tuple(reversed(steps))


def char_poly(a: IntMatrix) -> tuple[int, ...]:
    """Coefficients of det(xI - a), leading first (Faddeev-LeVerrier)."""
    n = a.nrows
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    arows = [[Fraction(x) for x in r] for r in a.rows]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        m = [[m[i][j] + c_prev * ident[i][j] for j in range(n)] for i in range(n)]
        am = [[sum(arows[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
        m = am
    return tuple(int(c) for c in coeffs)


def fingerprint(w: WeylElement) -> tuple:
    """Conjugacy invariants: order, char poly, signed-cycle types of powers."""
    ords = w.order
    powers = []
    x = identity(w.group)
    for d in range(1, ords + 1):
        x = compose(x, w)
        if ords % d == 0 and d < ords:
            powers.append((d, x.sigma.cycle_type()))
    return (ords, char_poly(w.kaction), w.sigma.cycle_type(), tuple(powers))


# --- enumeration ------------------------------------------------------------


def _generator_arrays(gt: GroupType) -> np.ndarray:
    return np.array(
        [simple_reflection(gt, i).kaction.rows for i in range(1, gt.rank + 1)], dtype=np.int64
    )


def _key(a: np.ndarray) -> bytes:
    return a.astype(np.int8).tobytes()


@dataclass
class EnumeratedGroup:
    """All elements of W as a stacked array; ``index`` maps key -> row."""

    group: GroupType
    mats: np.ndarray  # (|W|, l, l) int8
    parent: np.ndarray  # BFS parent row, -1 for the identity
    letter: np.ndarray  # generator appended to the parent's word
    index: dict = field(repr=False)

    def __len__(self):
        return len(self.mats)

    def word(self, i: int) -> tuple[int, ...]:
        out = []
        while self.parent[i] >= 0:
            out.append(int(self.letter[i]))
            i = int(self.parent[i])
        return tuple(reversed(out))

    def element(self, i: int) -> WeylElement:
        return WeylElement(
            self.group, self.word(i), IntMatrix.from_rows(self.mats[i].tolist(), self.group.rank)
        )

    def lookup(self, kaction: IntMatrix) -> int:
        return self.index[_key(np.array(kaction.rows))]

    def __iter__(self) -> Iterator[WeylElement]:
        for i in range(len(self)):
            yield self.element(i)

    def __contains__(self, w: WeylElement) -> bool:
        return _key(np.array(w.kaction.rows)) in self.index


def enumerate_group(g, allow_e7: bool = False) -> EnumeratedGroup:
    """Breadth-first closure of the simple reflections.

    E7 (2 903 040 elements, roughly 1.2 GB peak) needs ``allow_e7``; E8 is
    refused outright.
    """
    gt = group_type(g)
    if gt.name == "E8":
        raise ValueError("E8 enumeration refused: 696729600 elements")
    if gt.name == "E7" and not allow_e7:
        est = gt.weyl_order * _BYTES_PER_ELEMENT / 2**30
        raise ValueError(f"E7 enumeration needs explicit opt-in (about {est:.1f} GiB)")
    gens = _generator_arrays(gt)
    n = gt.rank
    ident = np.eye(n, dtype=np.int64)
    index = {_key(ident): 0}
    mats, parent, letter = [ident[None]], [np.array([-1])], [np.array([0])]
    frontier = ident[None]
    frontier_idx = np.array([0])
    total = 1
    while len(frontier):
        new_m, new_p, new_l = [], [], []
        for gi, gen in enumerate(gens):
            prod = frontier @ gen
            for r in range(len(prod)):
                k = _key(prod[r])
                if k not in index:
                    index[k] = total
                    total += 1
                    new_m.append(prod[r])
                    new_p.append(frontier_idx[r])
                    new_l.append(gi + 1)
        if not new_m:
            break
        frontier = np.array(new_m)
        frontier_idx = np.arange(total - len(new_m), total)
        mats.append(frontier)
        parent.append(np.array(new_p))
        letter.append(np.array(new_l))
    out = EnumeratedGroup(
        gt,
        np.concatenate(mats).astype(np.int8),
        np.concatenate(parent),
        np.concatenate(letter),
        index,
    )
    if len(out) != gt.weyl_order:
        raise ClassTableError(f"enumerated {len(out)} elements, expected |W| = {gt.weyl_order}")
    return out


# --- class tables -------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    size: int
    representative: WeylElement


@dataclass(frozen=True)
class ConjugacyClassTable:
    group: GroupType
    classes: tuple[ConjugacyClass, ...]

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)


def _canonical(gt: GroupType, classes) -> ConjugacyClassTable:
    classes = sorted(classes, key=lambda c: (c.size, len(c.representative.word), c.representative.word))
    return ConjugacyClassTable(gt, tuple(classes))


def conjugation_labels(grp: EnumeratedGroup) -> np.ndarray:
    """Class label of every element, from orbits under conjugation by generators."""
    gens = _generator_arrays(grp.group)
    mats = grp.mats.astype(np.int64)
    label = np.full(len(grp), -1, dtype=np.int64)
    cid = 0
    for start in range(len(grp)):
        if label[start] >= 0:
            continue
        label[start] = cid
        frontier = [start]
        while frontier:
            fm = mats[frontier]
            nxt = []
            for gen in gens:
                conj = gen @ fm @ gen
                for r in range(len(conj)):
                    j = grp.index[_key(conj[r])]
                    if label[j] < 0:
                        label[j] = cid
                        nxt.append(j)
            frontier = nxt
        cid += 1
    return label


def enumerated_classes(grp: EnumeratedGroup, labels: np.ndarray | None = None) -> ConjugacyClassTable:
    gt = grp.group
    labels = conjugation_labels(grp) if labels is None else labels
    sizes = np.bincount(labels)
    # elements are stored in BFS order, so the first member has a shortest word
    first = np.unique(labels, return_index=True)[1]
    classes = []
    for cid, i in enumerate(first):
        k = IntMatrix.from_rows(grp.mats[i].tolist(), gt.rank)
        rep = WeylElement(gt, reduced_word(gt, k), k)
        classes.append(ConjugacyClass(int(sizes[cid]), rep))
    return _canonical(gt, classes)


def _data_path():
    override = os.environ.get("LIEORDER_CLASS_DATA")
    if override:
        return Path(override)
    return resources.files("lieorder") / "data" / "weyl_classes.json"


def load_class_data(path=None) -> dict:
    text = (path.read_text() if hasattr(path, "read_text") else open(path).read()) if path else _data_path().read_text()
    data = json.loads(text)
    if data.get("version") != CLASS_DATA_VERSION:
        raise ClassTableError(f"class data version {data.get('version')} != {CLASS_DATA_VERSION}")
    return {rec["group"]: rec for rec in data["groups"]}


def embedded_classes(g, data: dict | None = None) -> ConjugacyClassTable:
    gt = group_type(g)
    data = load_class_data() if data is None else data
    rec = data[gt.name]
    classes = [ConjugacyClass(int(c["size"]), from_word(gt, c["word"])) for c in rec["classes"]]
    return ConjugacyClassTable(gt, tuple(classes))


@lru_cache(maxsize=None)
def _validated_embedded(name: str) -> ConjugacyClassTable:
    t = embedded_classes(name)
    problems = validate_class_table(t)
    if problems:
        raise ClassTableError(f"{name} class data invalid: " + "; ".join(problems))
    return t


def conjugacy_classes(g, mode: str = "embedded", allow_e7: bool = False) -> ConjugacyClassTable:
    gt = group_type(g)
    if mode == "embedded":
        return _validated_embedded(gt.name)
    if mode == "enumerate":
        t = enumerated_classes(enumerate_group(gt, allow_e7=allow_e7))
        problems = validate_class_table(t)
        if problems:
            raise ClassTableError(f"{gt.name} enumerated classes invalid: " + "; ".join(problems))
        return t
    raise ValueError(f"mode must be 'embedded' or 'enumerate', got {mode!r}")


def validate_class_table(t: ConjugacyClassTable) -> list[str]:
    """Return the list of violated invariants (empty when the table is valid)."""
    gt = t.group
    problems = []
    sizes = [c.size for c in t.classes]
    if sum(sizes) != gt.weyl_order:
        problems.append(f"sizes do not sum to |W|: {sum(sizes)} != {gt.weyl_order}")
    for c in t.classes:
        if c.size <= 0 or gt.weyl_order % c.size:
            problems.append(f"class size {c.size} does not divide |W| = {gt.weyl_order}")
        if c.representative.group != gt:
            problems.append(f"representative {c.representative} is not in W({gt.name})")
    if len(t.classes) != gt.num_classes:
        problems.append(f"class count {len(t.classes)} != {gt.num_classes}")
    seen = {}
    for c in t.classes:
        fp = fingerprint(c.representative)
        if fp in seen:
            problems.append(
                f"representatives {list(seen[fp].word)} and {list(c.representative.word)} "
                "share a fingerprint (possibly conjugate)"
            )
        else:
            seen[fp] = c.representative
    return problems


def match_tables(t: ConjugacyClassTable, grp: EnumeratedGroup, labels: np.ndarray | None = None) -> list[str]:
    """Compare a class table against the exact classes of an enumerated group."""
    labels = conjugation_labels(grp) if labels is None else labels
    sizes = np.bincount(labels)
    problems = []
    hit = Counter()
    for c in t.classes:
        cid = int(labels[grp.lookup(c.representative.kaction)])
        hit[cid] += 1
        if sizes[cid] != c.size:
            problems.append(
                f"class of {list(c.representative.word)} has size {sizes[cid]}, table says {c.size}"
            )
    for cid, n in hit.items():
        if n > 1:
            problems.append(f"{n} representatives fall in the same class ({cid})")
    if len(hit) != len(sizes):
        problems.append(f"table covers {len(hit)} of {len(sizes)} classes")
    return problems
