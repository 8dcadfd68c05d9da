"""Exact integer matrices and subgroup (lattice) arithmetic in Z^n.

Everything here runs on arbitrary-precision Python ints; no floating point.
Canonical lattice bases are row-style Hermite echelon forms with positive
pivots and reduced entries above each pivot, so equal subgroups always store
equal bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import PreconditionError


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise PreconditionError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise PreconditionError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise PreconditionError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise PreconditionError("vector length does not match column count")
        return tuple(sum(row[j] * vec[j] for j in range(self.cols)) for row in self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise PreconditionError("inner dimensions do not match")
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            out.append(
                tuple(
                    sum(ri[k] * other.entries[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                )
            )
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __pow__(self, exp: int) -> "IntMatrix":
        if not self.is_square:
            raise PreconditionError("only square matrices have powers")
        if exp < 0:
            raise PreconditionError("negative powers are not defined here")
        result = IntMatrix.identity(self.rows)
        base = self
        while exp:
            if exp & 1:
                result = result @ base
            base = base @ base if exp > 1 else base
            exp >>= 1
        return result

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else tuple(() for _ in range(self.cols)))


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise PreconditionError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(r) for r in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_basis(vectors: Iterable[Sequence[int]], ambient_rank: int) -> tuple[tuple[int, ...], ...]:
    """Canonical echelon basis of the subgroup generated by the vectors."""
    basis: list[list[int]] = []  # sorted by pivot column, one pivot per row
    pivots: list[int] = []
    for vec in vectors:
        if len(vec) != ambient_rank:
            raise PreconditionError("generator length does not match ambient rank")
        v = [int(x) for x in vec]
        j = 0
        while j < ambient_rank:
            if v[j] == 0:
                j += 1
                continue
            if j in pivots:
                p = pivots.index(j)
                row = basis[p]
                if v[j] % row[j] == 0:
                    q = v[j] // row[j]
                    for c in range(j, ambient_rank):
                        v[c] -= q * row[c]
                else:
                    x, y, g = _xgcd(row[j], v[j])
                    new_row = [x * row[c] + y * v[c] for c in range(ambient_rank)]
                    coef_r, coef_v = row[j] // g, v[j] // g
                    v = [coef_r * v[c] - coef_v * row[c] for c in range(ambient_rank)]
                    basis[p] = new_row
            else:
                if v[j] < 0:
                    v = [-x for x in v]
                where = 0
                while where < len(pivots) and pivots[where] < j:
                    where += 1
                basis.insert(where, v)
                pivots.insert(where, j)
                break
    # reduce entries above each pivot into [0, pivot)
    for p in range(len(basis) - 1, -1, -1):
        j = pivots[p]
        pj = basis[p][j]
        for above in range(p):
            q = basis[above][j] // pj
            if q:
                for c in range(j, ambient_rank):
                    basis[above][c] -= q * basis[p][c]
    return tuple(tuple(row) for row in basis)


@dataclass(frozen=True)
class Lattice:
    """A finitely generated subgroup of Z^ambient_rank."""

    ambient_rank: int
    generators: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        for g in gens:
            if len(g) != ambient_rank:
                raise PreconditionError("generator length does not match ambient rank")
        return cls(ambient_rank, gens)

    @classmethod
    def standard(cls, ambient_rank: int) -> "Lattice":
        return cls.from_generators(IntMatrix.identity(ambient_rank).entries, ambient_rank)

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient_rank: int) -> "Lattice":
        gens = []
        for i in indices:
            v = [0] * ambient_rank
            v[i] = 1
            gens.append(v)
        return cls.from_generators(gens, ambient_rank)

    @cached_property
    def basis(self) -> tuple[tuple[int, ...], ...]:
        return hermite_basis(self.generators, self.ambient_rank)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.ambient_rank:
            raise PreconditionError("vector length does not match ambient rank")
        v = [int(x) for x in vec]
        for row in self.basis:
            j = next(c for c in range(self.ambient_rank) if row[c] != 0)
            if v[j] == 0:
                continue
            if v[j] % row[j] != 0:
                return False
            q = v[j] // row[j]
            for c in range(j, self.ambient_rank):
                v[c] -= q * row[c]
        return not any(v)


def lattice_rank(x: Lattice) -> int:
    return x.rank


def image_lattice(l: IntMatrix, x: Lattice) -> Lattice:
    """Lattice generated by l . g over the generators g of x."""
    if l.cols != x.ambient_rank:
        raise PreconditionError(
            f"matrix has {l.cols} columns but lattice lives in Z^{x.ambient_rank}"
        )
    return Lattice.from_generators([l.apply(g) for g in x.basis], l.rows)


def eta_fitting(l: IntMatrix, x: Lattice) -> int:
    """Stabilization index of l on x.

    Returns the least k such that l is injective on l^m(x) for every m >= k.
    On free abelian groups injectivity on a sublattice is rank preservation,
    so this is the index just after the last strict drop in rank(l^m(x)), and
    the sequence can only drop during the first ambient_rank steps.
    """
    if not l.is_square:
        raise PreconditionError("eta is defined for square matrices only")
    if l.cols != x.ambient_rank:
        raise PreconditionError("lattice does not live in the matrix's space")
    n = l.rows
    ranks = [x.rank]
    current = x
    for _ in range(n):
        current = image_lattice(l, current)
        ranks.append(current.rank)
    eta = 0
    for m in range(n):
        if ranks[m + 1] < ranks[m]:
            eta = m + 1
    return eta


def project_quotient(l: IntMatrix, d_coords: Iterable[int]) -> IntMatrix:
    """Matrix induced on Z^n / <e_i : i in d_coords>.

    Requires the deleted coordinate subgroup to be invariant: every deleted
    basis vector must map into the deleted coordinates.
    """
    if not l.is_square:
        raise PreconditionError("quotient projection needs a square matrix")
    dset = set(d_coords)
    for i in dset:
        if not 0 <= i < l.cols:
            raise PreconditionError(f"coordinate {i} out of range")
    for i in sorted(dset):
        for r in range(l.rows):
            if r not in dset and l.entries[r][i] != 0:
                raise PreconditionError(
                    f"column {i} maps outside the deleted coordinates (row {r})"
                )
    keep = [i for i in range(l.rows) if i not in dset]
    entries = tuple(tuple(l.entries[r][c] for c in keep) for r in keep)
    return IntMatrix(len(keep), len(keep), entries)


def project_vector(vec: Sequence[int], d_coords: Iterable[int]) -> tuple[int, ...]:
    dset = set(d_coords)
    return tuple(x for i, x in enumerate(vec) if i not in dset)
