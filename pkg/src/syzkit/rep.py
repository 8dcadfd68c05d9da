"""Exact-arithmetic quiver representations: covers, syzygies, hom spaces.

A representation assigns a based vector space to every vertex and a matrix of
shape (dim target, dim source) to every arrow; a path acts by composing its
arrow matrices left to right. Everything runs over an exact field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import ideals, linalg, stable
from .algebra import Algebra, Path, TruncatedAlgebra
from .errors import PreconditionError, SkeletonError
from .field import QQ
from .linalg import SpanTracker
from .quiver import Quiver

Matrix = tuple[tuple, ...]


def _freeze(m) -> Matrix:
    return tuple(tuple(row) for row in m)


@dataclass
class Representation:
    dims: dict[str, int]
    maps: dict[str, Matrix]
    field: object = QQ

    def dim_at(self, v: str) -> int:
        return self.dims.get(v, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self, quiver: Quiver) -> tuple[int, ...]:
        return tuple(self.dim_at(v) for v in quiver.vertices)


def make_rep(
    quiver: Quiver,
    dims: Mapping[str, int],
    maps: Mapping[str, object] | None = None,
    field=QQ,
) -> Representation:
    """Fill in zero dimensions and zero maps for anything unspecified."""
    full_dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
    for v in dims:
        if v not in full_dims:
            raise PreconditionError(f"unknown vertex {v!r}")
    full_maps: dict[str, Matrix] = {}
    maps = maps or {}
    for name in maps:
        if name not in quiver.arrow_by_name:
            raise PreconditionError(f"unknown arrow {name!r}")
    for a in quiver.arrows:
        r, c = full_dims[a.target], full_dims[a.source]
        given = maps.get(a.name)
        if given is None:
            full_maps[a.name] = _freeze(linalg.zeros(field, r, c))
        else:
            mat = _freeze([[x for x in row] for row in given])
            if len(mat) != r or any(len(row) != c for row in mat):
                raise PreconditionError(
                    f"map for arrow {a.name} must have shape {r}x{c}"
                )
            full_maps[a.name] = mat
    return Representation(full_dims, full_maps, field)


def zero_rep(quiver: Quiver, field=QQ) -> Representation:
    return make_rep(quiver, {}, field=field)


def simple_rep(quiver: Quiver, v: str, field=QQ) -> Representation:
    return make_rep(quiver, {v: 1}, field=field)


def path_action(rep: Representation, quiver: Quiver, path: Path) -> Matrix:
    """Matrix of the path acting on the source-vertex space."""
    src = quiver.path_source(path)
    n = rep.dim_at(src)
    mat = linalg.identity(rep.field, n)
    for name in path:
        mat = linalg.matmul(list(map(list, rep.maps[name])), mat)
    return _freeze(mat)


def validate_representation(algebra: Algebra, rep: Representation) -> None:
    """Shape checks plus vanishing of every relation (or of rad^k)."""
    quiver = algebra.quiver
    for v in quiver.vertices:
        if rep.dim_at(v) < 0:
            raise PreconditionError(f"negative dimension at {v}")
    for a in quiver.arrows:
        mat = rep.maps[a.name]
        r, c = rep.dim_at(a.target), rep.dim_at(a.source)
        if len(mat) != r or any(len(row) != c for row in mat):
            raise PreconditionError(f"map for arrow {a.name} must have shape {r}x{c}")
    if isinstance(algebra, TruncatedAlgebra):
        layers = radical_layer_dims(algebra.quiver, rep)
        if len(layers) > algebra.k:
            raise PreconditionError(
                f"radical power {algebra.k} does not vanish on the module"
            )
    else:
        for rel in algebra.relations:
            if not linalg.is_zero_matrix(path_action(rep, quiver, rel)):
                raise PreconditionError(f"relation {' '.join(rel)} does not vanish")


def direct_sum(quiver: Quiver, reps: list[Representation]) -> Representation:
    if not reps:
        return zero_rep(quiver)
    field = reps[0].field
    dims = {v: sum(r.dim_at(v) for r in reps) for v in quiver.vertices}
    maps = {}
    for a in quiver.arrows:
        rows, cols = dims[a.target], dims[a.source]
        block = linalg.zeros(field, rows, cols)
        r0 = c0 = 0
        for rep in reps:
            m = rep.maps[a.name]
            for i, row in enumerate(m):
                for j, x in enumerate(row):
                    block[r0 + i][c0 + j] = x
            r0 += rep.dim_at(a.target)
            c0 += rep.dim_at(a.source)
        maps[a.name] = _freeze(block)
    return Representation(dims, maps, field)


@dataclass
class LabeledRep:
    """A representation whose basis is labeled by paths."""

    rep: Representation
    labels: tuple[tuple[Path, str], ...]  # (path, vertex it sits at), global order
    index_at: dict[str, dict[Path, int]]


def _paths_to_rep(algebra: Algebra, entries, field) -> LabeledRep:
    """Build a representation from a prefix-closed list of (path, at) pairs,
    arrows acting by concatenation when the extension stays in the list."""
    quiver = algebra.quiver
    by_vertex: dict[str, list[Path]] = {v: [] for v in quiver.vertices}
    for p, at in entries:
        by_vertex[at].append(p)
    index_at = {v: {p: i for i, p in enumerate(ps)} for v, ps in by_vertex.items()}
    dims = {v: len(ps) for v, ps in by_vertex.items()}
    maps = {}
    for a in quiver.arrows:
        rows, cols = dims[a.target], dims[a.source]
        m = linalg.zeros(field, rows, cols)
        for p in by_vertex[a.source]:
            ext = p + (a.name,)
            row = index_at[a.target].get(ext)
            if row is not None:
                m[row][index_at[a.source][p]] = field.one
        maps[a.name] = _freeze(m)
    return LabeledRep(Representation(dims, maps, field), tuple(entries), index_at)


def projective_rep(algebra: Algebra, v: str, field=QQ) -> LabeledRep:
    """e_v A: basis the nonzero paths out of v, arrows act by concatenation."""
    return _paths_to_rep(algebra, algebra.alive_paths_from(v), field)


def class_rep(a: TruncatedAlgebra, v: str, level: int, field=QQ) -> LabeledRep:
    """The module of the class M[level]@? generated at v: e_v A truncated to
    paths of length at most k - 1 - level."""
    cutoff = a.k - 1 - level
    entries = [(p, at) for p, at in a.alive_paths_from(v) if len(p) <= cutoff]
    return _paths_to_rep(a, entries, field)


def path_ideal_rep(algebra: Algebra, p: Path, field=QQ) -> LabeledRep:
    """pA: basis the nonzero extensions of p, labeled by the extension."""
    if algebra.path_is_zero(p):
        raise PreconditionError(f"path {p} is zero in the algebra")
    at = algebra.quiver.path_target(p)
    entries = []
    frontier: list[tuple[Path, str]] = [((), at)]
    entries.append(((), at))
    while frontier:
        nxt = []
        for q, w in frontier:
            for arrow in algebra.quiver.arrows_from[w]:
                cand = q + (arrow.name,)
                if not algebra.path_is_zero(p + cand):
                    entries.append((cand, arrow.target))
                    nxt.append((cand, arrow.target))
        frontier = nxt
    return _paths_to_rep(algebra, entries, field)


def stable_class_rep(a: TruncatedAlgebra, c: stable.StableClass, field=QQ) -> LabeledRep:
    return class_rep(a, c.vertex, c.level, field)


@dataclass
class TopRadical:
    top_dims: dict[str, int]
    radical: Representation
    radical_bases: dict[str, list[list]]  # row vectors in the ambient coordinates
    generators: tuple[tuple[str, tuple], ...]  # (vertex, coordinate vector)


def top_and_radical(algebra: Algebra, rep: Representation) -> TopRadical:
    """Radical = sum of arrow images; top generators are the first standard
    coordinates completing the radical, in vertex order."""
    quiver = algebra.quiver
    field = rep.field
    trackers = {v: SpanTracker(field, rep.dim_at(v)) for v in quiver.vertices}
    for a in quiver.arrows:
        mat = rep.maps[a.name]
        for j in range(rep.dim_at(a.source)):
            vec = [mat[i][j] for i in range(rep.dim_at(a.target))]
            trackers[a.target].add(vec)
    rad_bases = {v: [list(r) for r in trackers[v].rows] for v in quiver.vertices}
    top_dims = {v: rep.dim_at(v) - len(rad_bases[v]) for v in quiver.vertices}

    generators: list[tuple[str, tuple]] = []
    for v in quiver.vertices:
        picker = SpanTracker(field, rep.dim_at(v))
        for row in rad_bases[v]:
            picker.add(row)
        for i in range(rep.dim_at(v)):
            if picker.dim == rep.dim_at(v):
                break
            e = [field.zero] * rep.dim_at(v)
            e[i] = field.one
            if picker.add(e):
                generators.append((v, tuple(e)))

    rad_dims = {v: len(rad_bases[v]) for v in quiver.vertices}
    rad_maps = {}
    for a in quiver.arrows:
        src_basis = rad_bases[a.source]
        tgt_basis = rad_bases[a.target]
        images = []
        mat = rep.maps[a.name]
        for vec in src_basis:
            images.append(linalg.matvec(list(map(list, mat)), vec))
        if rad_dims[a.target] == 0 or rad_dims[a.source] == 0:
            rad_maps[a.name] = _freeze(linalg.zeros(field, rad_dims[a.target], rad_dims[a.source]))
            continue
        tgt_cols = linalg.transpose(tgt_basis, rep.dim_at(a.target))  # ambient x rank
        img_cols = linalg.transpose(images, rep.dim_at(a.target))
        x = linalg.solve(field, tgt_cols, img_cols, rad_dims[a.target])
        if x is None:
            raise SkeletonError("radical is not arrow stable; internal error")
        rad_maps[a.name] = _freeze(x)
    radical = Representation(rad_dims, rad_maps, field)
    return TopRadical(top_dims, radical, rad_bases, tuple(generators))


def radical_layer_dims(quiver: Quiver, rep: Representation) -> tuple[tuple[int, ...], ...]:
    """Per-vertex dimensions of rad^j / rad^(j+1), top layer first."""
    field = rep.field
    current = {
        v: [list(row) for row in linalg.identity(field, rep.dim_at(v))]
        for v in quiver.vertices
    }
    layers = []
    while True:
        dims_now = tuple(len(current[v]) for v in quiver.vertices)
        nxt: dict[str, SpanTracker] = {
            v: SpanTracker(field, rep.dim_at(v)) for v in quiver.vertices
        }
        for a in quiver.arrows:
            mat = list(map(list, rep.maps[a.name]))
            for vec in current[a.source]:
                nxt[a.target].add(linalg.matvec(mat, vec))
        dims_next = tuple(nxt[v].dim for v in quiver.vertices)
        layers.append(tuple(x - y for x, y in zip(dims_now, dims_next)))
        if not any(dims_next):
            break
        current = {v: [list(r) for r in nxt[v].rows] for v in quiver.vertices}
    while layers and not any(layers[-1]):
        layers.pop()
    return tuple(layers)


@dataclass
class SES:
    left: Representation
    middle: Representation
    right: Representation
    inj: dict[str, Matrix]
    surj: dict[str, Matrix]


def validate_ses(algebra: Algebra, s: SES) -> None:
    quiver = algebra.quiver
    for v in quiver.vertices:
        dl, dm, dr = s.left.dim_at(v), s.middle.dim_at(v), s.right.dim_at(v)
        if dm != dl + dr:
            raise PreconditionError(f"dimension mismatch at {v}: {dl}+{dr} != {dm}")
        if linalg.rank(list(map(list, s.inj[v]))) != dl:
            raise PreconditionError(f"inclusion not injective at {v}")
        if linalg.rank(list(map(list, s.surj[v]))) != dr:
            raise PreconditionError(f"projection not surjective at {v}")
        comp = linalg.matmul(list(map(list, s.surj[v])), list(map(list, s.inj[v])))
        if not linalg.is_zero_matrix(comp):
            raise PreconditionError(f"composite not zero at {v}")
    for a in quiver.arrows:
        lhs = linalg.matmul(list(map(list, s.inj[a.target])), list(map(list, s.left.maps[a.name])))
        rhs = linalg.matmul(list(map(list, s.middle.maps[a.name])), list(map(list, s.inj[a.source])))
        if lhs != rhs:
            raise PreconditionError(f"inclusion does not intertwine arrow {a.name}")
        lhs = linalg.matmul(list(map(list, s.surj[a.target])), list(map(list, s.middle.maps[a.name])))
        rhs = linalg.matmul(list(map(list, s.right.maps[a.name])), list(map(list, s.surj[a.source])))
        if lhs != rhs:
            raise PreconditionError(f"projection does not intertwine arrow {a.name}")


@dataclass
class CoverData:
    cover: Representation
    cover_labels: tuple[tuple[int, Path, str], ...]  # (generator index, path, vertex)
    generators: tuple[tuple[str, tuple], ...]
    top_dims: dict[str, int]
    surj: dict[str, Matrix]
    syzygy: Representation
    incl: dict[str, Matrix]


def projective_cover_and_syzygy(algebra: Algebra, rep: Representation) -> CoverData:
    """Cover = one projective per top generator; syzygy = its kernel.

    The surjection lifts the chosen top basis, generator g at vertex v going
    to paths p by basis path (g, p) -> g . p, so it is a module map by
    construction; kernels are computed per vertex by exact elimination.
    """
    quiver = algebra.quiver
    field = rep.field
    tr = top_and_radical(algebra, rep)
    projectives = {
        v: projective_rep(algebra, v, field) for v in quiver.vertices if tr.top_dims[v] > 0
    }
    parts: list[LabeledRep] = []
    labels: list[tuple[int, Path, str]] = []
    for gi, (v, _vec) in enumerate(tr.generators):
        proj = projectives[v]
        parts.append(proj)
        labels.extend((gi, p, at) for p, at in proj.labels)
    cover = direct_sum(quiver, [p.rep for p in parts])

    # order of direct_sum coordinates per vertex: parts in order, paths within
    value_cache: dict[tuple[int, Path], list] = {}

    def value(gi: int, p: Path) -> list:
        got = value_cache.get((gi, p))
        if got is not None:
            return got
        if not p:
            out = list(tr.generators[gi][1])
        else:
            prefix = value(gi, p[:-1])
            out = linalg.matvec(list(map(list, rep.maps[p[-1]])), prefix)
        value_cache[(gi, p)] = out
        return out

    surj: dict[str, Matrix] = {}
    cover_index: dict[str, list[tuple[int, Path]]] = {v: [] for v in quiver.vertices}
    for gi, (v, _vec) in enumerate(tr.generators):
        for p, at in projectives[v].labels:
            cover_index[at].append((gi, p))
    for v in quiver.vertices:
        cols = [value(gi, p) for gi, p in cover_index[v]]
        mat = linalg.transpose(cols, rep.dim_at(v)) if cols else [
            [] for _ in range(rep.dim_at(v))
        ]
        surj[v] = _freeze(mat)
        if linalg.rank(list(map(list, mat))) != rep.dim_at(v):
            raise SkeletonError("cover map failed to be surjective; internal error")

    kernel_bases: dict[str, list[list]] = {}
    for v in quiver.vertices:
        kernel_bases[v] = linalg.nullspace(field, list(map(list, surj[v])), cover.dim_at(v))
    syz_dims = {v: len(kernel_bases[v]) for v in quiver.vertices}
    incl = {
        v: _freeze(linalg.transpose(kernel_bases[v], cover.dim_at(v)))
        for v in quiver.vertices
    }
    syz_maps = {}
    for a in quiver.arrows:
        sd, td = syz_dims[a.source], syz_dims[a.target]
        if sd == 0 or td == 0:
            syz_maps[a.name] = _freeze(linalg.zeros(field, td, sd))
            continue
        images = linalg.matmul(list(map(list, cover.maps[a.name])), list(map(list, incl[a.source])))
        x = linalg.solve(field, list(map(list, incl[a.target])), images, td)
        if x is None:
            raise SkeletonError("kernel is not arrow stable; internal error")
        syz_maps[a.name] = _freeze(x)
    syzygy = Representation(syz_dims, syz_maps, field)

    total_cover = cover.total_dim
    if syzygy.total_dim != total_cover - rep.total_dim:
        raise SkeletonError("kernel dimension violates rank-nullity; internal error")

    return CoverData(
        cover=cover,
        cover_labels=tuple(labels),
        generators=tr.generators,
        top_dims=tr.top_dims,
        surj=surj,
        syzygy=syzygy,
        incl=incl,
    )


def cover_sequence(algebra: Algebra, rep: Representation) -> SES:
    cd = projective_cover_and_syzygy(algebra, rep)
    return SES(cd.syzygy, cd.cover, rep, cd.incl, cd.surj)


def skeleton_decompose(a: TruncatedAlgebra, rep: Representation) -> stable.StableDecomposition:
    """Predict the syzygy of rep as a multiset of stable classes.

    A path-labeled basis is grown layer by layer (arrows in declaration
    order); each one-arrow extension that fails to stay independent modulo
    the next radical layer contributes the class of its path. The prediction
    is cross-checked against the kernel dimension, which is ground truth.
    """
    quiver = a.quiver
    field = rep.field
    tr = top_and_radical(a, rep)

    # radical layer bases rad^j, j = 0..; index j holds rad^j row vectors
    layer_bases: list[dict[str, list[list]]] = [
        {v: [list(r) for r in linalg.identity(field, rep.dim_at(v))] for v in quiver.vertices}
    ]
    while True:
        prev = layer_bases[-1]
        nxt: dict[str, SpanTracker] = {v: SpanTracker(field, rep.dim_at(v)) for v in quiver.vertices}
        for arr in quiver.arrows:
            mat = list(map(list, rep.maps[arr.name]))
            for vec in prev[arr.source]:
                nxt[arr.target].add(linalg.matvec(mat, vec))
        layer_bases.append({v: [list(r) for r in nxt[v].rows] for v in quiver.vertices})
        if not any(len(rows) for rows in layer_bases[-1].values()):
            break

    def basis_at(j: int, v: str) -> list[list]:
        if j >= len(layer_bases):
            return []
        return layer_bases[j][v]

    current = [((), v, list(vec)) for v, vec in tr.generators]
    counts: dict[stable.StableClass, int] = {}
    for j in range(1, a.k + 1):
        if not current:
            break
        trackers: dict[str, SpanTracker] = {}
        nxt = []
        for path, v, vec in current:
            for arrow in quiver.arrows_from[v]:
                target = arrow.target
                y = linalg.matvec(list(map(list, rep.maps[arrow.name])), vec)
                if j >= a.k:
                    continue  # length-k extensions generate nothing
                tk = trackers.get(target)
                if tk is None:
                    tk = SpanTracker(field, rep.dim_at(target))
                    for row in basis_at(j + 1, target):
                        tk.add(row)
                    trackers[target] = tk
                if tk.add(y):
                    nxt.append((path + (arrow.name,), target, y))
                else:
                    cls = stable.class_at(a, target, j)
                    counts[cls] = counts.get(cls, 0) + 1
        current = nxt

    predicted_dim = sum(
        sum(stable.class_dim_vector(a, c)) * n for c, n in counts.items()
    )
    cover_dim = sum(
        tr.top_dims[v] * len(a.alive_paths_from(v)) for v in quiver.vertices
    )
    if predicted_dim != cover_dim - rep.total_dim:
        raise SkeletonError(
            f"skeleton predicts syzygy dimension {predicted_dim}, "
            f"kernel has {cover_dim - rep.total_dim}"
        )
    vector = {c: n for c, n in counts.items() if not c.projective}
    projectives = tuple(
        sorted(
            ((c, n) for c, n in counts.items() if c.projective),
            key=lambda p: (p[0].vertex, p[0].level),
        )
    )
    return stable.StableDecomposition(stable.ClassVector.of(vector), projectives)


def hom_basis(quiver: Quiver, m: Representation, n: Representation) -> list[dict[str, Matrix]]:
    """Basis of the intertwiner space Hom(m, n)."""
    field = m.field
    offsets: dict[str, int] = {}
    total = 0
    for v in quiver.vertices:
        offsets[v] = total
        total += n.dim_at(v) * m.dim_at(v)

    def var(v: str, i: int, j: int) -> int:
        return offsets[v] + i * m.dim_at(v) + j

    rows: list[list] = []
    for a in quiver.arrows:
        s, t = a.source, a.target
        tm = m.maps[a.name]
        tn = n.maps[a.name]
        for r in range(n.dim_at(t)):
            for c in range(m.dim_at(s)):
                row = [field.zero] * total
                # (X_t . T^m_a)[r][c]
                for jj in range(m.dim_at(t)):
                    if tm[jj][c]:
                        row[var(t, r, jj)] = row[var(t, r, jj)] + tm[jj][c]
                # -(T^n_a . X_s)[r][c]
                for jj in range(n.dim_at(s)):
                    if tn[r][jj]:
                        row[var(s, jj, c)] = row[var(s, jj, c)] - tn[r][jj]
                if any(row):
                    rows.append(row)
    kernel = linalg.nullspace(field, rows, total)
    out = []
    for vec in kernel:
        mats = {}
        for v in quiver.vertices:
            mat = linalg.zeros(field, n.dim_at(v), m.dim_at(v))
            for i in range(n.dim_at(v)):
                for j in range(m.dim_at(v)):
                    mat[i][j] = vec[var(v, i, j)]
            mats[v] = _freeze(mat)
        out.append(mats)
    return out


def hom_space_dim(quiver: Quiver, m: Representation, n: Representation) -> int:
    return len(hom_basis(quiver, m, n))


@dataclass
class IsoResult:
    isomorphic: bool
    certain: bool
    trials: int = 0

    def __bool__(self) -> bool:
        return self.isomorphic


def is_isomorphic(quiver: Quiver, m: Representation, n: Representation, seed: int) -> IsoResult:
    """Randomized isomorphism test.

    Cheap invariants reject first; otherwise seeded random elements of
    Hom(m, n) are tried for invertibility at every vertex. A True answer
    carries an explicit isomorphism; a False after the trials is probabilistic
    (an isomorphism, if it exists, is generically invertible, so eight misses
    are overwhelming evidence).
    """
    import random

    if m.dim_vector(quiver) != n.dim_vector(quiver):
        return IsoResult(False, True)
    total = m.total_dim
    if total == 0:
        return IsoResult(True, True)
    basis_mn = hom_basis(quiver, m, n)
    if not basis_mn:
        return IsoResult(False, True)
    if len(basis_mn) != hom_space_dim(quiver, n, m):
        return IsoResult(False, True)
    field = m.field
    rng = random.Random(seed)
    trials = 8
    for t in range(trials):
        coeffs = [field.sample(rng, total) for _ in basis_mn]
        ok = True
        for v in quiver.vertices:
            d = m.dim_at(v)
            if d == 0:
                continue
            acc = linalg.zeros(field, d, d)
            for cf, mats in zip(coeffs, basis_mn):
                if cf:
                    mat = mats[v]
                    for i in range(d):
                        for j in range(d):
                            acc[i][j] = acc[i][j] + cf * mat[i][j]
            if not linalg.is_invertible(acc):
                ok = False
                break
        if ok:
            return IsoResult(True, True, t + 1)
    return IsoResult(False, False, trials)


def socle_dims(algebra: Algebra, rep: Representation) -> dict[str, int]:
    """Per-vertex dimension of the annihilator of all arrows."""
    quiver = algebra.quiver
    out = {}
    for v in quiver.vertices:
        stacked: list[list] = []
        for a in quiver.arrows_from[v]:
            stacked.extend(list(map(list, rep.maps[a.name])))
        if not stacked:
            out[v] = rep.dim_at(v)
        else:
            out[v] = len(linalg.nullspace(rep.field, stacked, rep.dim_at(v)))
    return out


def syzygy_sequence(algebra: Algebra, s: SES) -> SES:
    """From 0 -> C1 -> M -> C2 -> 0 produce 0 -> syz(C2) -> C1 + P(C2) -> M -> 0.

    The new surjection is [inclusion, lift], where the lift sends a cover
    generator to a preimage of its top representative and extends by the path
    action; exactness of the result is verified by rank computations.
    """
    validate_ses(algebra, s)
    quiver = algebra.quiver
    field = s.middle.field
    cd = projective_cover_and_syzygy(algebra, s.right)

    # preimages in M of the chosen top representatives of C2
    gen_pre: list[list] = []
    for v, vec in cd.generators:
        col = [[x] for x in vec]
        sol = linalg.solve(field, list(map(list, s.surj[v])), col, s.middle.dim_at(v))
        if sol is None:
            raise PreconditionError("projection is not surjective; not exact")
        gen_pre.append([row[0] for row in sol])

    value_cache: dict[tuple[int, Path], list] = {}

    def value(gi: int, p: Path) -> list:
        got = value_cache.get((gi, p))
        if got is not None:
            return got
        if not p:
            out = gen_pre[gi]
        else:
            out = linalg.matvec(list(map(list, s.middle.maps[p[-1]])), value(gi, p[:-1]))
        value_cache[(gi, p)] = out
        return out

    cover_index: dict[str, list[tuple[int, Path]]] = {v: [] for v in quiver.vertices}
    for gi, p, at in cd.cover_labels:
        cover_index[at].append((gi, p))
    h: dict[str, list[list]] = {}
    for v in quiver.vertices:
        cols = [value(gi, p) for gi, p in cover_index[v]]
        h[v] = linalg.transpose(cols, s.middle.dim_at(v)) if cols else [
            [] for _ in range(s.middle.dim_at(v))
        ]

    middle = direct_sum(quiver, [s.left, cd.cover])
    surj = {v: _freeze(linalg.hstack(s.inj[v], h[v])) for v in quiver.vertices}

    inj = {}
    for v in quiver.vertices:
        kdim = cd.syzygy.dim_at(v)
        c1 = s.left.dim_at(v)
        if kdim == 0:
            inj[v] = _freeze(linalg.zeros(field, c1 + cd.cover.dim_at(v), 0))
            continue
        hk = linalg.matmul(h[v], list(map(list, cd.incl[v])))
        c = linalg.solve(field, list(map(list, s.inj[v])), hk, c1)
        if c is None:
            raise PreconditionError("lift does not land in the image; not exact")
        top = [[-x for x in row] for row in c]
        inj[v] = _freeze(linalg.vstack(top, list(map(list, cd.incl[v]))))

    out = SES(cd.syzygy, middle, s.middle, inj, surj)
    validate_ses(algebra, out)
    return out


def restrict_rep(
    big: Algebra, small: Algebra, rep: Representation
) -> Representation:
    """Forget everything outside the small algebra's quiver."""
    _check_subquiver(big, small)
    dims = {v: rep.dim_at(v) for v in small.quiver.vertices}
    maps = {a.name: rep.maps[a.name] for a in small.quiver.arrows}
    return Representation(dims, maps, rep.field)


def extend_rep(small: Algebra, big: Algebra, rep: Representation) -> Representation:
    """Extend by zero to the big algebra; errors if a relation would break."""
    _check_subquiver(big, small)
    dims = {v: rep.dim_at(v) for v in small.quiver.vertices}
    maps = {a.name: rep.maps[a.name] for a in small.quiver.arrows}
    out = make_rep(big.quiver, dims, maps, rep.field)
    validate_representation(big, out)
    return out


def _check_subquiver(big: Algebra, small: Algebra) -> None:
    bq, sq = big.quiver, small.quiver
    bset = set(bq.vertices)
    for v in sq.vertices:
        if v not in bset:
            raise PreconditionError(f"vertex {v} is not in the ambient quiver")
    by_name = bq.arrow_by_name
    small_vertices = set(sq.vertices)
    for a in sq.arrows:
        if a.name not in by_name or by_name[a.name] != a:
            raise PreconditionError(f"arrow {a.name} is not in the ambient quiver")
    for a in bq.arrows:
        if a.source in small_vertices and a.target in small_vertices:
            if a.name not in sq.arrow_by_name:
                raise PreconditionError(
                    f"subquiver is not full: missing arrow {a.name}"
                )


@dataclass
class PdEvidence:
    kind: str  # "finite" | "infinite" | "unresolved"
    n: int | None
    certified: bool
    steps: int
    detail: str = ""


def pd_resolution(
    algebra: Algebra, rep: Representation, cutoff: int = 12, seed: int = 0
) -> PdEvidence:
    """Projective dimension evidence at the representation level.

    Over a truncation the first syzygy decomposes into stable classes, so the
    answer is exact. Over a general monomial algebra the kernel is matched
    against direct sums of path ideals, which again closes the computation;
    failing that, covers are iterated up to the cutoff and a repeated
    fingerprint (dimension vector, top, radical profile) is reported as
    non-certified evidence of infinite projective dimension.
    """
    if rep.total_dim == 0:
        return PdEvidence("finite", 0, True, 0)
    if isinstance(algebra, TruncatedAlgebra):
        dec = skeleton_decompose(algebra, rep)
        if not dec.vector and not dec.projectives:
            return PdEvidence("finite", 0, True, 0)
        best = 0
        for c, _ in dec.vector.items:
            sub = stable.pd_class(algebra, c)
            if not sub.is_finite:
                labels = ",".join(x.label for x in sub.cycle)
                return PdEvidence("infinite", None, True, 1, f"cycle {labels}")
            best = max(best, sub.n)
        return PdEvidence("finite", 1 + best, True, 1)

    current = rep
    fingerprints = []
    for step in range(1, cutoff + 1):
        cd = projective_cover_and_syzygy(algebra, current)
        kernel = cd.syzygy
        if kernel.total_dim == 0:
            return PdEvidence("finite", step - 1, True, step)
        states = _recognize_path_ideal_sum(algebra, kernel, seed)
        if states is not None:
            best = 0
            for p, start in states:
                if not p:
                    continue  # projective summand
                sub = ideals.pd_path_ideal(algebra, p)
                if sub.kind == "infinite":
                    cyc = ";".join("." .join(x) for x in sub.cycle)
                    return PdEvidence(
                        "infinite", None, True, step, f"path-ideal cycle {cyc}"
                    )
                best = max(best, sub.n)
            return PdEvidence("finite", step + best, True, step)
        tr_profile = radical_layer_dims(algebra.quiver, kernel)
        fp = (kernel.dim_vector(algebra.quiver), tr_profile)
        if fp in fingerprints:
            return PdEvidence(
                "infinite", None, False, step, "fingerprint repeats (not certified)"
            )
        fingerprints.append(fp)
        current = kernel
    return PdEvidence("unresolved", None, False, cutoff, "cutoff reached")


def _recognize_path_ideal_sum(algebra: Algebra, rep: Representation, seed: int):
    """Try to match rep with a direct sum of path ideals; None when no match.

    Candidates are constrained per vertex by the top of rep and pruned by
    dimension vectors before the final randomized isomorphism check.
    """
    quiver = algebra.quiver
    tr = top_and_radical(algebra, rep)
    states = ideals.distinct_path_ideal_states(algebra)
    reps_cache: dict[tuple[Path, str], LabeledRep] = {}

    def state_rep(p: Path, start: str) -> LabeledRep:
        key = (p, start)
        if key not in reps_cache:
            if p:
                reps_cache[key] = path_ideal_rep(algebra, p, rep.field)
            else:
                reps_cache[key] = projective_rep(algebra, start, rep.field)
        return reps_cache[key]

    by_top: dict[str, list[tuple[Path, str]]] = {v: [] for v in quiver.vertices}
    for p, start in states:
        top_v = quiver.path_target(p) if p else start
        by_top[top_v].append((p, start))

    target = rep.dim_vector(quiver)
    choices: list[list[list[tuple[Path, str]]]] = []
    import itertools

    total_candidates = 1
    for v in quiver.vertices:
        need = tr.top_dims[v]
        opts = [
            list(combo)
            for combo in itertools.combinations_with_replacement(by_top[v], need)
        ]
        choices.append(opts)
        total_candidates *= max(len(opts), 1)
        if total_candidates > 20000:
            return None

    def dim_vec_of(p: Path, start: str) -> tuple[int, ...]:
        return state_rep(p, start).rep.dim_vector(quiver)

    for combo in itertools.product(*choices):
        flat = [s for group in combo for s in group]
        total = [0] * len(quiver.vertices)
        for p, start in flat:
            dv = dim_vec_of(p, start)
            total = [x + y for x, y in zip(total, dv)]
        if tuple(total) != target:
            continue
        candidate = direct_sum(quiver, [state_rep(p, s).rep for p, s in flat])
        if is_isomorphic(quiver, rep, candidate, seed):
            return tuple(flat)
    return None
