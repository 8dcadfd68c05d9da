"""Seeded random generators and exhaustive small-quiver enumeration.

Used by the verification commands and the test suites; everything is driven
by an explicit random.Random instance so identical seeds give identical
objects.
"""

from __future__ import annotations

import random
from typing import Iterator

from . import linalg, rep as rep_mod, stable
from .algebra import TruncatedAlgebra
from .field import QQ
from .lattice import IntMatrix, Lattice
from .quiver import Quiver, is_strongly_connected
from .rep import Representation, direct_sum


def random_quiver(rng: random.Random, max_vertices: int = 5, max_arrows: int = 8) -> Quiver:
    n = rng.randint(1, max_vertices)
    vertices = [str(i + 1) for i in range(n)]
    m = rng.randint(0, max_arrows)
    arrows = []
    for i in range(m):
        s = rng.choice(vertices)
        t = rng.choice(vertices)
        arrows.append((f"a{i + 1}", s, t))
    return Quiver.build(vertices, arrows)


def random_truncated_algebra(
    rng: random.Random,
    max_vertices: int = 5,
    max_arrows: int = 8,
    kmin: int = 2,
    kmax: int = 5,
    proj_dim_cap: int = 120,
    total_dim_cap: int = 280,
) -> TruncatedAlgebra:
    """Rejection-sampled so projective modules stay small enough for the
    exact-arithmetic oracle to verify quickly."""
    while True:
        quiver = random_quiver(rng, max_vertices, max_arrows)
        k = rng.randint(kmin, kmax)
        a = TruncatedAlgebra(quiver, k)
        sizes = [len(a.alive_paths_from(v)) for v in quiver.vertices]
        if max(sizes) <= proj_dim_cap and sum(sizes) <= total_dim_cap:
            return a


def random_class_vector(
    rng: random.Random, a: TruncatedAlgebra, max_support: int = 3, max_mult: int = 2
) -> stable.ClassVector:
    basis = stable.class_basis(a)
    if not basis:
        return stable.ClassVector.zero()
    support_size = rng.randint(1, min(max_support, len(basis)))
    chosen = rng.sample(list(basis), support_size)
    return stable.ClassVector.of({c: rng.randint(1, max_mult) for c in chosen})


def random_valid_subcat(rng: random.Random, a: TruncatedAlgebra) -> stable.SubcategorySpec:
    """A validated 0-Igusa-Todorov subcategory: the closure of some class with
    vanishing gamma when one exists, else the empty one."""
    candidates = [c for c in stable.class_basis(a) if stable.gamma(a, stable.ClassVector.of({c: 1})) == 0]
    if not candidates or rng.random() < 0.25:
        return stable.SubcategorySpec.empty()
    c = rng.choice(candidates)
    closure = stable.syzygy_closure(a, [c])
    return stable.make_0IT(a, closure)


def random_int_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> IntMatrix:
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)], cols=n
    )


def random_lattice(rng: random.Random, n: int, max_gens: int | None = None) -> Lattice:
    g = rng.randint(0, max_gens if max_gens is not None else n + 1)
    return Lattice.from_generators(
        [[rng.randint(-4, 4) for _ in range(n)] for _ in range(g)], n
    )


def random_sublattice(rng: random.Random, x: Lattice) -> Lattice:
    """Random integer combinations of x's generators: always a subgroup."""
    basis = x.basis
    if not basis:
        return x
    g = rng.randint(0, len(basis))
    gens = []
    for _ in range(g):
        coeffs = [rng.randint(-2, 2) for _ in basis]
        vec = [0] * x.ambient_rank
        for cf, row in zip(coeffs, basis):
            for i, val in enumerate(row):
                vec[i] += cf * val
        gens.append(vec)
    return Lattice.from_generators(gens, x.ambient_rank)


def random_invertible(field, rng: random.Random, n: int) -> list[list]:
    """Product of elementary matrices: exactly invertible by construction."""
    m = linalg.identity(field, n)
    for _ in range(2 * n + 2):
        kind = rng.randint(0, 2)
        i, j = rng.randrange(n), rng.randrange(n)
        if kind == 0 and i != j:
            m[i], m[j] = m[j], m[i]
        elif kind == 1:
            m[i] = [x * field.from_int(rng.choice([-2, -1, 1, 2])) for x in m[i]]
        elif i != j:
            c = field.from_int(rng.randint(-2, 2))
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    return m


def conjugate_rep(rng: random.Random, quiver: Quiver, rep: Representation) -> Representation:
    """Change bases at every vertex by a random invertible matrix."""
    field = rep.field
    g = {v: random_invertible(field, rng, rep.dim_at(v)) for v in quiver.vertices}
    ginv = {
        v: linalg.solve(field, g[v], linalg.identity(field, rep.dim_at(v)), rep.dim_at(v))
        for v in quiver.vertices
    }
    maps = {}
    for a in quiver.arrows:
        m = linalg.matmul(
            g[a.target], linalg.matmul(list(map(list, rep.maps[a.name])), ginv[a.source])
        )
        maps[a.name] = tuple(tuple(row) for row in m)
    return Representation(dict(rep.dims), maps, field)


def random_class_sum_module(
    rng: random.Random,
    a: TruncatedAlgebra,
    max_classes: int = 3,
    conjugate: bool = True,
    field=QQ,
) -> tuple[Representation, list[stable.StableClass]]:
    """A module isomorphic to a known direct sum of stable classes, optionally
    written in a scrambled basis."""
    basis = stable.class_basis(a)
    if not basis:
        v = a.quiver.vertices[0]
        return rep_mod.projective_rep(a, v, field).rep, []
    count = rng.randint(1, max_classes)
    chosen = [rng.choice(list(basis)) for _ in range(count)]
    summands = [rep_mod.class_rep(a, c.vertex, c.level, field).rep for c in chosen]
    total = direct_sum(a.quiver, summands)
    if conjugate:
        total = conjugate_rep(rng, a.quiver, total)
    return total, chosen


def enumerate_strongly_connected_quivers(
    max_vertices: int = 3, max_arrows: int = 5
) -> Iterator[Quiver]:
    """All labeled quivers (arrow multiset per ordered vertex pair) with at
    most the given sizes whose every ordered pair is path connected."""
    for n in range(1, max_vertices + 1):
        vertices = [str(i + 1) for i in range(n)]
        cells = [(s, t) for s in vertices for t in vertices]

        def assign(cell_idx: int, remaining: int, counts: list[int]):
            if cell_idx == len(cells):
                yield list(counts)
                return
            for c in range(remaining + 1):
                counts.append(c)
                yield from assign(cell_idx + 1, remaining - c, counts)
                counts.pop()

        for counts in assign(0, max_arrows, []):
            arrows = []
            idx = 0
            for (s, t), c in zip(cells, counts):
                for _ in range(c):
                    idx += 1
                    arrows.append((f"a{idx}", s, t))
            quiver = Quiver.build(vertices, arrows)
            if is_strongly_connected(quiver):
                yield quiver
