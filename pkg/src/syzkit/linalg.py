"""Generic exact Gaussian elimination over a field.

Matrices are lists (or tuples) of rows of field elements. Every routine is
deterministic: pivots are always the first nonzero entry scanning down.
"""

from __future__ import annotations


def zeros(field, rows: int, cols: int) -> list[list]:
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(field, n: int) -> list[list]:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def matmul(a, b) -> list[list]:
    if not a:
        return []
    inner = len(b)
    out_cols = len(b[0]) if b else 0
    res = []
    for row in a:
        assert len(row) == inner
        new = []
        for j in range(out_cols):
            acc = None
            for k in range(inner):
                if row[k]:
                    term = row[k] * b[k][j]
                    acc = term if acc is None else acc + term
            if acc is None:
                # need a zero of the right type; rows may be empty of nonzeros
                acc = row[0] - row[0] if row else b[0][j] - b[0][j]
            new.append(acc)
        res.append(new)
    return res


def matvec(a, v) -> list:
    return [x[0] for x in matmul(a, [[e] for e in v])] if a else []


def copy_matrix(m) -> list[list]:
    return [list(r) for r in m]


def rref(mat) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = copy_matrix(mat)
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c]:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def row_space_basis(mat) -> list[list]:
    reduced, pivots = rref(mat)
    return [reduced[i] for i in range(len(pivots))]


def nullspace(field, mat, cols: int) -> list[list]:
    """Basis of {x : mat . x = 0}, one vector per free column, ascending."""
    reduced, pivots = rref(mat)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [field.zero] * cols
        vec[fc] = field.one
        for i, pc in enumerate(pivots):
            vec[pc] = -reduced[i][fc]
        basis.append(vec)
    return basis


def solve(field, a, b, cols_a: int):
    """One solution X of a . X = b (b a matrix), or None if inconsistent.

    Free variables are set to zero, so the solution is deterministic.
    """
    rows = len(a)
    cols_b = len(b[0]) if b else 0
    if rows == 0:
        return zeros(field, cols_a, cols_b)
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    reduced, pivots = rref(aug)
    for c in pivots:
        if c >= cols_a:
            return None
    x = zeros(field, cols_a, cols_b)
    for i, pc in enumerate(pivots):
        for j in range(cols_b):
            x[pc][j] = reduced[i][cols_a + j]
    return x


def is_zero_matrix(m) -> bool:
    return all(not x for row in m for x in row)


def is_invertible(m) -> bool:
    n = len(m)
    if n == 0:
        return True
    if len(m[0]) != n:
        return False
    return rank(m) == n


def transpose(m, cols: int) -> list[list]:
    if not m:
        return [[] for _ in range(cols)]
    return [list(col) for col in zip(*m)]


def hstack(a, b) -> list[list]:
    if not a:
        return copy_matrix(b)
    if not b:
        return copy_matrix(a)
    return [list(ra) + list(rb) for ra, rb in zip(a, b)]


def vstack(a, b) -> list[list]:
    return copy_matrix(a) + copy_matrix(b)


class SpanTracker:
    """Incremental row span with exact reduction; used for greedy basis picks."""

    def __init__(self, field, width: int):
        self.field = field
        self.width = width
        self.rows: list[list] = []  # reduced echelon rows
        self.pivots: list[int] = []

    def residue(self, vec) -> list:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self.residue(vec))

    def add(self, vec) -> bool:
        """Insert vec; returns True when it enlarged the span."""
        v = self.residue(vec)
        for p in range(self.width):
            if v[p]:
                inv = v[p]
                v = [x / inv for x in v]
                for i in range(len(self.rows)):
                    if self.rows[i][p]:
                        f = self.rows[i][p]
                        self.rows[i] = [a - f * b for a, b in zip(self.rows[i], v)]
                where = 0
                while where < len(self.pivots) and self.pivots[where] < p:
                    where += 1
                self.rows.insert(where, v)
                self.pivots.insert(where, p)
                return True
        return False

    @property
    def dim(self) -> int:
        return len(self.rows)
