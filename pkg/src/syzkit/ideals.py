"""Path ideals pA of a monomial algebra and their symbolic syzygies.

For a nonzero path p the right ideal pA has basis {pq : pq nonzero} and its
syzygy splits as the direct sum of qA over the minimal nonzero q with pq = 0
(minimal: the parent prefix of q still composes with p to something nonzero).
Minimality forbids one such q being a prefix of another, which makes the sum
direct, so projective dimension questions reduce to a finite state graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra, Path


def alive_suffixes(a: Algebra, p: Path, start: str | None = None) -> frozenset[Path]:
    """All q (trivial included) with pq nonzero; p = () needs a start vertex."""
    at = a.quiver.path_target(p) if p else start
    if at is None:
        raise ValueError("trivial path needs an explicit start vertex")
    out = [()]
    frontier: list[tuple[Path, str]] = [((), at)]
    while frontier:
        nxt = []
        for q, v in frontier:
            for arrow in a.quiver.arrows_from[v]:
                cand = q + (arrow.name,)
                if not a.path_is_zero(p + cand):
                    out.append(cand)
                    nxt.append((cand, arrow.target))
        frontier = nxt
    return frozenset(out)


def state_key(a: Algebra, p: Path, start: str | None = None):
    """Isomorphism key of the path ideal: the top vertex and the alive cone."""
    at = a.quiver.path_target(p) if p else start
    return (at, alive_suffixes(a, p, start))


def minimal_killed(a: Algebra, p: Path) -> tuple[tuple[Path, str], ...]:
    """Generators of the syzygy of pA: minimal nonzero q with pq = 0.

    Returned as (q, start vertex of qA) pairs in breadth-first order.
    """
    at = a.quiver.path_target(p)
    out: list[tuple[Path, str]] = []
    frontier: list[tuple[Path, str]] = [((), at)]
    while frontier:
        nxt = []
        for q, v in frontier:
            for arrow in a.quiver.arrows_from[v]:
                cand = q + (arrow.name,)
                if a.path_is_zero(cand):
                    continue  # not a basis path of the cover; extensions die too
                if a.path_is_zero(p + cand):
                    out.append((cand, arrow.target))
                else:
                    nxt.append((cand, arrow.target))
        frontier = nxt
    return tuple(out)


def is_projective_path_ideal(a: Algebra, p: Path, start: str | None = None) -> bool:
    at = a.quiver.path_target(p) if p else start
    full = frozenset(q for q, _ in a.alive_paths_from(at))
    return alive_suffixes(a, p, start) == full


@dataclass(frozen=True)
class PathIdealPd:
    kind: str  # "finite" | "infinite"
    n: int | None = None
    cycle: tuple[Path, ...] = ()


def pd_path_ideal(a: Algebra, p: Path) -> PathIdealPd:
    """Exact projective dimension of pA via the finite state graph."""
    rep_of: dict[object, Path] = {}
    succ: dict[object, list[object]] = {}

    def key_of(path: Path):
        key = state_key(a, path)
        rep_of.setdefault(key, path)
        return key

    def expand(key) -> list[object]:
        if key in succ:
            return succ[key]
        path = rep_of[key]
        succ[key] = [key_of(q) for q, _ in minimal_killed(a, path)]
        return succ[key]

    root = key_of(p)
    # explore the full reachable graph first
    stack = [root]
    seen = {root}
    while stack:
        k = stack.pop()
        for nk in expand(k):
            if nk not in seen:
                seen.add(nk)
                stack.append(nk)

    index: dict[object, int] = {}
    low: dict[object, int] = {}
    onstack: set[object] = set()
    order: list[object] = []
    comps: list[list[object]] = []
    counter = [0]

    def strongconnect(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        order.append(v)
        onstack.add(v)
        for w in succ[v]:
            if w not in index:
                strongconnect(w)
                low[v] = min(low[v], low[w])
            elif w in onstack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = order.pop()
                onstack.discard(w)
                comp.append(w)
                if w is v or w == v:
                    break
            comps.append(comp)

    for k in seen:
        if k not in index:
            strongconnect(k)

    result: dict[object, PathIdealPd] = {}
    for comp in comps:
        cyclic = len(comp) > 1 or comp[0] in succ[comp[0]]
        if cyclic:
            cycle = tuple(rep_of[k] for k in comp)
            for k in comp:
                result[k] = PathIdealPd("infinite", cycle=cycle)
            continue
        k = comp[0]
        if not succ[k]:
            # no relation kills anything after this path: the ideal is projective
            result[k] = PathIdealPd("finite", n=0)
            continue
        best = 0
        verdict: PathIdealPd | None = None
        for w in succ[k]:
            sub = result[w]
            if sub.kind == "infinite":
                verdict = PathIdealPd("infinite", cycle=sub.cycle)
                break
            best = max(best, sub.n)
        result[k] = verdict or PathIdealPd("finite", n=1 + best)
    return result[root]


@lru_cache(maxsize=None)
def distinct_path_ideal_states(a: Algebra) -> tuple[tuple[Path, str], ...]:
    """One shortest representative path per isomorphism class of path ideal,
    the projectives (trivial paths) included as ((), vertex)."""
    seen = {}
    for v in a.quiver.vertices:
        for q, target in a.alive_paths_from(v):
            key = state_key(a, q, start=v)
            if key not in seen:
                seen[key] = (q, v if not q else a.quiver.path_source(q))
    return tuple(seen.values())
