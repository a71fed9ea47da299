"""Exact integer linear algebra.

Smith normal form, row-style Hermite normal form, kernel counting over
(1/m Z / Z)^l, and row-lattice membership.  Matrices are stored as tuples
of Python ints, so nothing overflows and nothing is ever a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

Row = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix.  A 0 x c matrix is legal and keeps its width."""

    rows: tuple[Row, ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError(f"row {r} does not have {self.ncols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def transpose(self) -> "IntMatrix":
        if not self.rows:
            return IntMatrix.zeros(self.ncols, 0)
        return IntMatrix(tuple(zip(*self.rows)), self.nrows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


def as_matrix(a, ncols: int | None = None) -> IntMatrix:
    if isinstance(a, IntMatrix):
        return a
    return IntMatrix.from_rows(a, ncols)


@dataclass(frozen=True)
class SmithDecomposition:
    left: IntMatrix
    right: IntMatrix
    diag: IntMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


def snf(a) -> SmithDecomposition:
    """Smith normal form with transforms: ``left @ a @ right == diag``.

    Each round moves the smallest nonzero entry of the trailing block to the
    pivot, which keeps coefficient growth modest on the small matrices used
    here.  Divisors are positive, include trailing 1s, and satisfy
    d[i] | d[i+1].
    """
    a = as_matrix(a)
    n, c = a.shape
    d = [list(r) for r in a.rows]
    left = [[int(i == j) for j in range(n)] for i in range(n)]
    right = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row[dst] += q * row[src]
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    divisors = []
    t = 0
    while t < min(n, c):
        best = None
        for i in range(t, n):
            for j in range(t, c):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, n):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, c):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                # a nonzero remainder is smaller than the pivot; promote it
                best = None
                for i in range(t, n):
                    if d[i][t] and (best is None or abs(d[i][t]) < best[0]):
                        best = (abs(d[i][t]), i, "r")
                for j in range(t, c):
                    if d[t][j] and (best is None or abs(d[t][j]) < best[0]):
                        best = (abs(d[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            p = d[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, n) for j in range(t + 1, c) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            left[t] = [-x for x in left[t]]
        divisors.append(d[t][t])
        t += 1
    return SmithDecomposition(
        left=IntMatrix.from_rows(left, n),
        right=IntMatrix.from_rows(right, c),
        diag=IntMatrix.from_rows(d, c),
        divisors=tuple(divisors),
    )


def elementary_divisors(a) -> tuple[int, ...]:
    return snf(a).divisors


def kernel_count_from_divisors(divisors: Sequence[int], ncols: int, m: int) -> int:
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    out = m ** (ncols - len(divisors))
    for d in divisors:
        out *= gcd(d, m)
    return out


def kernel_count(a, m: int) -> int:
    """Number of k in (1/m Z / Z)^l with a @ k == 0 (mod 1)."""
    a = as_matrix(a)
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    return kernel_count_from_divisors(elementary_divisors(a), a.ncols, m)


# --- row lattices ---------------------------------------------------------


def hnf_rows(rows: Iterable[Sequence[int]], ncols: int) -> tuple[Row, ...]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive, entries above a pivot lie in [0, pivot) and zero
    rows are dropped, so equal lattices give identical output.
    """
    work = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    col = 0
    while work and col < ncols:
        live = [r for r in work if r[col]]
        if not live:
            col += 1
            continue
        rest = [r for r in work if not r[col]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            p = piv[col]
            for r in live[1:]:
                q = r[col] // p
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col]:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        p = piv[col]
        for b in basis:
            q = b[col] // p
            if q:
                for j in range(col, ncols):
                    b[j] -= q * piv[j]
        basis.append(piv)
        work = rest
        col += 1
    return tuple(tuple(r) for r in basis)


@dataclass(frozen=True)
class RowLattice:
    basis: IntMatrix

    def __contains__(self, v) -> bool:
        return in_row_lattice(v, self)


def rhnf(a) -> RowLattice:
    a = as_matrix(a)
    return RowLattice(IntMatrix(hnf_rows(a.rows, a.ncols), a.ncols))


def reduce_by_hnf(v: Sequence[int], basis: Sequence[Row]) -> bool:
    """True iff ``v`` lies in the lattice with echelon ``basis``."""
    v = list(v)
    for b in basis:
        c = 0
        while not b[c]:
            c += 1
        if v[c]:
            q, r = divmod(v[c], b[c])
            if r:
                return False
            for j in range(c, len(v)):
                v[j] -= q * b[j]
    return not any(v)


def in_row_lattice(v: Sequence[int], lattice: RowLattice) -> bool:
    if len(v) != lattice.basis.ncols:
        raise ValueError("dimension mismatch")
    return reduce_by_hnf(v, lattice.basis.rows)


def row_lattice_equal(a, b) -> bool:
    a, b = as_matrix(a), as_matrix(b)
    if a.ncols != b.ncols:
        raise ValueError("column counts differ")
    return rhnf(a) == rhnf(b)


def sign_normalize(v: Sequence[int]) -> Row:
    """Return v or -v, whichever has a positive first nonzero coordinate."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)
