"""Bound path algebras: truncations kQ/J^k and monomial quotients kQ/(paths).

Paths compose left to right and are stored as tuples of arrow names. The
nonzero paths of an algebra (those avoiding every relation as a contiguous
factor, resp. shorter than the truncation degree) form its linear basis
together with the trivial paths at each vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import PreconditionError
from .quiver import Quiver

Path = tuple[str, ...]


def _ordered_extensions(quiver: Quiver, at: str) -> tuple:
    return quiver.arrows_from[at]


@dataclass(frozen=True)
class TruncatedAlgebra:
    """kQ/J^k: all paths of length >= k vanish."""

    quiver: Quiver
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise PreconditionError(f"truncation degree must be at least 2, got {self.k}")

    def path_is_zero(self, path: Path) -> bool:
        return len(path) >= self.k

    @cached_property
    def _alive_cache(self) -> dict[str, tuple[tuple[Path, str], ...]]:
        return {v: tuple(_enumerate_alive(self, v)) for v in self.quiver.vertices}

    def alive_paths_from(self, v: str) -> tuple[tuple[Path, str], ...]:
        """Nonzero paths starting at v as (path, target) pairs, the trivial
        path first, ordered by length then by arrow declaration order."""
        return self._alive_cache[v]

    @cached_property
    def max_alive_length(self) -> int:
        return max(
            (len(p) for v in self.quiver.vertices for p, _ in self.alive_paths_from(v)),
            default=0,
        )

    def dimension(self) -> int:
        return sum(len(self.alive_paths_from(v)) for v in self.quiver.vertices)


@dataclass(frozen=True)
class MonomialAlgebra:
    """kQ modulo an ideal generated by paths of length >= 2.

    Construction validates that the relation paths are composable and that
    the surviving path basis is finite (the algebra is finite dimensional).
    """

    quiver: Quiver
    relations: tuple[Path, ...]

    def __post_init__(self):
        for rel in self.relations:
            if len(rel) < 2:
                raise PreconditionError(f"relation {rel} has length < 2")
            if not self.quiver.is_composable(rel):
                raise PreconditionError(f"relation {rel} is not a composable path")
        _check_finite_dimensional(self)

    def path_is_zero(self, path: Path) -> bool:
        for rel in self.relations:
            m = len(rel)
            if m <= len(path):
                for i in range(len(path) - m + 1):
                    if path[i : i + m] == rel:
                        return True
        return False

    @cached_property
    def _alive_cache(self) -> dict[str, tuple[tuple[Path, str], ...]]:
        return {v: tuple(_enumerate_alive(self, v)) for v in self.quiver.vertices}

    def alive_paths_from(self, v: str) -> tuple[tuple[Path, str], ...]:
        return self._alive_cache[v]

    @cached_property
    def max_alive_length(self) -> int:
        return max(
            (len(p) for v in self.quiver.vertices for p, _ in self.alive_paths_from(v)),
            default=0,
        )

    def dimension(self) -> int:
        return sum(len(self.alive_paths_from(v)) for v in self.quiver.vertices)


Algebra = TruncatedAlgebra | MonomialAlgebra


def _enumerate_alive(algebra: Algebra, v: str):
    quiver = algebra.quiver
    out = [((), v)]
    frontier: list[tuple[Path, str]] = [((), v)]
    while frontier:
        nxt: list[tuple[Path, str]] = []
        for path, at in frontier:
            for arrow in _ordered_extensions(quiver, at):
                candidate = path + (arrow.name,)
                if not algebra.path_is_zero(candidate):
                    entry = (candidate, arrow.target)
                    out.append(entry)
                    nxt.append(entry)
        frontier = nxt
    return out


def _check_finite_dimensional(algebra: MonomialAlgebra) -> None:
    """Reject algebras with infinitely many nonzero paths.

    Whether a long path survives depends only on its trailing window of
    length m-1 (m = longest relation), so the surviving paths are the walks
    of a finite automaton on those windows; the basis is infinite exactly
    when that automaton has a directed cycle.
    """
    quiver = algebra.quiver
    if not algebra.relations:
        # relation-free: finite iff the quiver is acyclic
        index = quiver.vertex_index
        succ: list[list[int]] = [[] for _ in quiver.vertices]
        for a in quiver.arrows:
            succ[index[a.source]].append(index[a.target])
        col = [0] * len(quiver.vertices)

        def dfs(u: int) -> bool:
            col[u] = 1
            for w in succ[u]:
                if col[w] == 1 or (col[w] == 0 and dfs(w)):
                    return True
            col[u] = 2
            return False

        for u in range(len(quiver.vertices)):
            if col[u] == 0 and dfs(u):
                raise PreconditionError(
                    "monomial algebra is infinite dimensional (relation-free cycle)"
                )
        return

    window = max(len(r) for r in algebra.relations) - 1
    states: list[Path] = []
    for v in quiver.vertices:
        stack: list[tuple[Path, str]] = [((), v)]
        while stack:
            path, at = stack.pop()
            if len(path) == window:
                states.append(path)
                continue
            for arrow in quiver.arrows_from[at]:
                cand = path + (arrow.name,)
                if not algebra.path_is_zero(cand):
                    stack.append((cand, arrow.target))
    state_set = set(states)

    def successors(state: Path):
        at = quiver.path_target(state)
        for arrow in quiver.arrows_from[at]:
            cand = state + (arrow.name,)
            if algebra.path_is_zero(cand):
                continue
            nxt = cand[1:]
            if nxt in state_set:
                yield nxt

    color: dict[Path, int] = {}

    def has_cycle(s: Path) -> bool:
        stack = [(s, iter(successors(s)))]
        color[s] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                c = color.get(nxt, 0)
                if c == 1:
                    return True
                if c == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(successors(nxt))))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
        return False

    for s in states:
        if color.get(s, 0) == 0 and has_cycle(s):
            raise PreconditionError(
                "monomial algebra is infinite dimensional (unbounded nonzero paths)"
            )


def truncated_to_monomial(a: TruncatedAlgebra) -> MonomialAlgebra:
    """Present kQ/J^k by the explicit relation set of all length-k paths."""
    quiver = a.quiver
    rels: list[Path] = []
    for v in quiver.vertices:
        stack: list[tuple[Path, str]] = [((), v)]
        while stack:
            path, at = stack.pop()
            if len(path) == a.k:
                rels.append(path)
                continue
            for arrow in quiver.arrows_from[at]:
                stack.append((path + (arrow.name,), arrow.target))
    rels.sort()
    return MonomialAlgebra(quiver, tuple(rels))


def recognize_truncated(m: MonomialAlgebra) -> TruncatedAlgebra | None:
    """Return the equivalent truncation kQ/J^k when the relation ideal equals
    the ideal of all length-k paths, else None."""
    k = max(m.max_alive_length + 1, 2)
    counts_alive: dict[int, int] = {}
    for v in m.quiver.vertices:
        for p, _ in m.alive_paths_from(v):
            counts_alive[len(p)] = counts_alive.get(len(p), 0) + 1
    from .quiver import path_count_matrix

    for length in range(1, k):
        total = sum(
            path_count_matrix(m.quiver, length).entries[i][j]
            for i in range(len(m.quiver.vertices))
            for j in range(len(m.quiver.vertices))
        )
        if counts_alive.get(length, 0) != total:
            return None
    return TruncatedAlgebra(m.quiver, k)


def as_algebra_with_relations(a: Algebra) -> MonomialAlgebra:
    return a if isinstance(a, MonomialAlgebra) else truncated_to_monomial(a)
