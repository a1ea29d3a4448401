"""Exact rational linear algebra.

Dense helpers work on ``list[list[Fraction]]`` rows. :class:`Subspace` keeps a
canonical reduced row echelon basis, so two subspaces are equal exactly when
their bases are equal. :class:`SparseEchelon` handles the large, very sparse
systems assembled by the motion solver.

A floating path (:func:`numeric_rank`, :func:`numeric_nullspace`) exists for
inputs that cannot be written as rationals; nothing in the exact verdict path
touches it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Number = int | Fraction

DEFAULT_CUTOFF = 1e-9


class DimensionError(ValueError):
    """Ambient dimensions of two operands disagree."""


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are refused: they belong on the approximate path.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            den_val = int(den)
            if den_val == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(int(num), den_val)
        return Fraction(int(text))
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_fraction(q: Fraction) -> int | str:
    """JSON encoding of a rational: an int when integral, else ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("row length does not match declared column count")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], ncols: int | None = None) -> "RationalMatrix":
        rows = [tuple(to_fraction(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(rows[0])
        return cls(tuple(rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def as_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]


def rref(rows: Sequence[Sequence[Number]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with unit pivots; zero rows are dropped."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pivot_row = m[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            for j in range(c, ncols):
                if pivot_row[j]:
                    pivot_row[j] *= inv
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for j in range(c, ncols):
                        if pivot_row[j]:
                            row[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m: RationalMatrix | Sequence[Sequence[Number]], ncols: int | None = None) -> int:
    if isinstance(m, RationalMatrix):
        rows, ncols = m.rows, m.ncols
    else:
        rows = m
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
    return len(rref(rows, ncols)[1])


def _kernel_rows(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        out.append(v)
    return out


def nullspace(m: RationalMatrix | Sequence[Sequence[Number]], ncols: int | None = None) -> "Subspace":
    """Exact kernel ``{x : m x = 0}`` as a canonical subspace."""
    if isinstance(m, RationalMatrix):
        rows, ncols = m.rows, m.ncols
    else:
        rows = m
        if ncols is None:
            raise ValueError("ncols is required for a bare row list")
    return Subspace.span(_kernel_rows(rows, ncols), ncols)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^n stored by its canonical (RREF) basis."""

    n: int
    basis: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Number]], n: int) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
        red, _ = rref(vectors, n)
        return cls(n, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.n - len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(r) if x) for r in self.basis]

    def contains(self, v: Sequence[Number]) -> bool:
        if len(v) != self.n:
            raise DimensionError("vector length differs from ambient dimension")
        # reduce against the RREF basis; pivot entries give the coefficients
        residual = [Fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            f = residual[p]
            if f:
                for j, x in enumerate(row):
                    if x:
                        residual[j] -= f * x
        return not any(residual)

    def coordinates(self, v: Sequence[Number]) -> list[Fraction]:
        """Coefficients of ``v`` in the canonical basis (``v`` must lie in the space)."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [Fraction(v[p]) for p in self.pivots]

    def issubspace(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return all(other.contains(b) for b in self.basis)

    def complement_rows(self) -> list[list[Fraction]]:
        return orthogonal_complement_rows(self)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_spaces(self, other)


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.n != b.n:
        raise DimensionError(f"ambient dimensions {a.n} and {b.n} differ")


def orthogonal_complement_rows(a: Subspace) -> list[list[Fraction]]:
    """Rows spanning the orthogonal complement, so ``nullspace(rows) == a``."""
    if not a.basis:
        return [list(r) for r in Subspace.full(a.n).basis]
    return _kernel_rows(a.basis, a.n)


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return Subspace.span(list(a.basis) + list(b.basis), a.n)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.n)
    if a.dim == a.n:
        return b
    if b.dim == b.n:
        return a
    return nullspace(orthogonal_complement_rows(a) + orthogonal_complement_rows(b), a.n)


def intersect_all(spaces: Iterable[Subspace], n: int) -> Subspace:
    rows: list[list[Fraction]] = []
    for s in spaces:
        if s.n != n:
            raise DimensionError(f"ambient dimensions {s.n} and {n} differ")
        if s.dim < n:
            rows.extend(orthogonal_complement_rows(s))
    if not rows:
        return Subspace.full(n)
    return nullspace(rows, n)


def sum_all(spaces: Iterable[Subspace], n: int) -> Subspace:
    vecs: list[Sequence[Fraction]] = []
    for s in spaces:
        if s.n != n:
            raise DimensionError(f"ambient dimensions {s.n} and {n} differ")
        vecs.extend(s.basis)
    return Subspace.span(vecs, n)


def solve(rows: Sequence[Sequence[Number]], rhs: Sequence[Number], ncols: int) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` (free variables zero), or None if inconsistent."""
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def matvec(rows: Sequence[Sequence[Number]], v: Sequence[Number]) -> list[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in rows]


class SparseEchelon:
    """Incremental row echelon form over Q for large sparse systems.

    Rows are ``{column: value}`` dicts. Each stored row has a unit pivot at
    its smallest column under ``order`` and no entries in earlier columns.
    Column order matters for fill-in, so callers pass the elimination order.
    """

    def __init__(self, ncols: int, order: Sequence[int] | None = None):
        self.ncols = ncols
        self.order = list(order) if order is not None else list(range(ncols))
        if sorted(self.order) != list(range(ncols)):
            raise ValueError("order must be a permutation of the columns")
        self.rank_of = {c: k for k, c in enumerate(self.order)}
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = {c: Fraction(v) for c, v in row.items() if v}
        rank_of = self.rank_of
        heap = [rank_of[c] for c in row]
        heapq.heapify(heap)
        seen: set[int] = set()
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = self.order[k]
            f = row.get(c)
            if not f:
                continue
            prow = self.pivot_rows.get(c)
            if prow is None:
                continue
            for j, x in prow.items():
                val = row.get(j, 0) - f * x
                if val:
                    if j not in row:
                        heapq.heappush(heap, rank_of[j])
                    row[j] = val
                else:
                    row.pop(j, None)
        return row

    def add(self, row: dict[int, Fraction]) -> bool:
        """Insert a row; returns True when it raised the rank."""
        red = self.reduce(row)
        if not red:
            return False
        lead = min(red, key=self.rank_of.__getitem__)
        inv = 1 / red[lead]
        self.pivot_rows[lead] = {j: x * inv for j, x in red.items()}
        return True

    def satisfies(self, x: Sequence[Number]) -> bool:
        return all(
            sum((v * x[j] for j, v in row.items()), Fraction(0)) == 0
            for row in self.pivot_rows.values()
        )

    def nullspace_basis(self) -> list[list[Fraction]]:
        """Kernel basis: one vector per free column, back-substituted."""
        free = [c for c in range(self.ncols) if c not in self.pivot_rows]
        # solve pivots from the latest (in elimination order) backwards
        pivots_desc = sorted(self.pivot_rows, key=self.rank_of.__getitem__, reverse=True)
        basis = []
        for f in free:
            x: dict[int, Fraction] = {f: Fraction(1)}
            for p in pivots_desc:
                s = Fraction(0)
                for j, v in self.pivot_rows[p].items():
                    if j != p:
                        xj = x.get(j)
                        if xj:
                            s += v * xj
                if s:
                    x[p] = -s
            vec = [Fraction(0)] * self.ncols
            for j, v in x.items():
                vec[j] = v
            basis.append(vec)
        return basis


def numeric_rank(m, cutoff: float = DEFAULT_CUTOFF) -> int:
    """Rank from singular values above ``cutoff`` times the largest one."""
    a = np.asarray(m, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > cutoff * s[0]))


def numeric_nullspace(m, ncols: int, cutoff: float = DEFAULT_CUTOFF) -> np.ndarray:
    """Orthonormal rows spanning the numerical kernel."""
    a = np.asarray(m, dtype=float).reshape(-1, ncols)
    if a.shape[0] == 0:
        return np.eye(ncols)
    _, s, vt = np.linalg.svd(a)
    r = int(np.sum(s > cutoff * s[0])) if s.size and s[0] > 0 else 0
    return vt[r:]
