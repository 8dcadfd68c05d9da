"""Finite quivers (directed multigraphs) with exact integer path counting.

Vertices and arrows keep their declaration order; every matrix produced here
is indexed in that order, so identical inputs give identical outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import PreconditionError
from .lattice import IntMatrix


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class StructuralFlags:
    has_loop: bool
    sinks: frozenset[str]
    sources: frozenset[str]


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PreconditionError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PreconditionError("duplicate arrow ids")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise PreconditionError(
                    f"arrow {a.name}: endpoint {a.source!r} -> {a.target!r} not declared"
                )

    @classmethod
    def build(cls, vertices: Iterable[str], arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        return cls(tuple(vertices), tuple(Arrow(n, s, t) for n, s, t in arrows))

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrows_from(self) -> dict[str, tuple[Arrow, ...]]:
        out: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a)
        return {v: tuple(lst) for v, lst in out.items()}

    @cached_property
    def arrows_into(self) -> dict[str, tuple[Arrow, ...]]:
        inc: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a)
        return {v: tuple(lst) for v, lst in inc.items()}

    def path_source(self, path: tuple[str, ...]) -> str:
        return self.arrow_by_name[path[0]].source

    def path_target(self, path: tuple[str, ...]) -> str:
        return self.arrow_by_name[path[-1]].target

    def is_composable(self, path: tuple[str, ...]) -> bool:
        byname = self.arrow_by_name
        for name in path:
            if name not in byname:
                return False
        for prev, nxt in zip(path, path[1:]):
            if byname[prev].target != byname[nxt].source:
                return False
        return len(path) > 0


def adjacency_matrix(q: Quiver) -> IntMatrix:
    """Entry (i, j) counts arrows from vertex i to vertex j."""
    n = len(q.vertices)
    entries = [[0] * n for _ in range(n)]
    idx = q.vertex_index
    for a in q.arrows:
        entries[idx[a.source]][idx[a.target]] += 1
    return IntMatrix.from_rows(entries, cols=n)


def path_count_matrix(q: Quiver, length: int) -> IntMatrix:
    """Entry (v, w) counts directed paths v -> w of exactly the given length."""
    if length < 0:
        raise PreconditionError("path length must be nonnegative")
    return adjacency_matrix(q) ** length


def is_strongly_connected(q: Quiver) -> bool:
    """Every ordered vertex pair joined by a path of length >= 1.

    A single vertex without a loop counts as strongly connected by convention.
    """
    n = len(q.vertices)
    if n == 1 and not q.arrows:
        return True
    idx = q.vertex_index
    succ: list[list[int]] = [[] for _ in range(n)]
    for a in q.arrows:
        succ[idx[a.source]].append(idx[a.target])
    for start in range(n):
        # reach via length >= 1: seed with out-neighbours, not the vertex itself
        seen = [False] * n
        stack = list(succ[start])
        for s in stack:
            seen[s] = True
        while stack:
            v = stack.pop()
            for w in succ[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if not all(seen):
            return False
    return True


def structural_flags(q: Quiver) -> StructuralFlags:
    out_deg = {v: 0 for v in q.vertices}
    in_deg = {v: 0 for v in q.vertices}
    has_loop = False
    for a in q.arrows:
        out_deg[a.source] += 1
        in_deg[a.target] += 1
        if a.source == a.target:
            has_loop = True
    return StructuralFlags(
        has_loop=has_loop,
        sinks=frozenset(v for v in q.vertices if out_deg[v] == 0),
        sources=frozenset(v for v in q.vertices if in_deg[v] == 0),
    )
