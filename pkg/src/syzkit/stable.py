"""Stable classes of a truncated path algebra and the syzygy action on K0.

For kQ/J^k the cyclic modules generated by a path of length l ending at a
vertex v form a finite set closed (modulo projectives) under syzygies, so the
Igusa-Todorov data lives on a finite free abelian group with an explicit
integer matrix for the syzygy endomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from . import checks
from .algebra import TruncatedAlgebra
from .errors import PreconditionError
from .lattice import IntMatrix, Lattice, eta_fitting, project_quotient, project_vector
from .quiver import is_strongly_connected, path_count_matrix


@dataclass(frozen=True)
class StableClass:
    """The class of e_v A modulo paths of length >= k - level, written M[level]@v.

    realizable: some path of length `level` ends at v, so the class is the
    cyclic module generated by an actual path.
    projective: no path of length k - level starts at v, so the module is all
    of e_v A.
    """

    vertex: str
    level: int
    realizable: bool
    projective: bool

    @property
    def label(self) -> str:
        return f"M[{self.level}]@{self.vertex}"


@dataclass(frozen=True)
class ClassVector:
    """Nonnegative integer combination of nonprojective stable classes.

    Projective classes are zero in K0 and may not appear as keys; syzygy
    computations report them through a side channel instead.
    """

    items: tuple[tuple[StableClass, int], ...]

    @classmethod
    def of(cls, coeffs: Mapping[StableClass, int] | Iterable[tuple[StableClass, int]]) -> "ClassVector":
        pairs = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        merged: dict[StableClass, int] = {}
        for c, n in pairs:
            if n < 0:
                raise PreconditionError("class multiplicities must be nonnegative")
            if n == 0:
                continue
            if c.projective:
                raise PreconditionError(f"projective class {c.label} cannot appear in K0")
            if not c.realizable:
                raise PreconditionError(f"class {c.label} is not realizable")
            merged[c] = merged.get(c, 0) + n
        ordered = tuple(sorted(merged.items(), key=lambda p: (p[0].vertex, p[0].level)))
        return cls(ordered)

    @classmethod
    def zero(cls) -> "ClassVector":
        return cls(())

    @property
    def coeffs(self) -> dict[StableClass, int]:
        return dict(self.items)

    @property
    def support(self) -> tuple[StableClass, ...]:
        return tuple(c for c, _ in self.items)

    def __add__(self, other: "ClassVector") -> "ClassVector":
        merged = self.coeffs
        for c, n in other.items:
            merged[c] = merged.get(c, 0) + n
        return ClassVector.of(merged)

    def __bool__(self) -> bool:
        return bool(self.items)


@dataclass(frozen=True)
class StableDecomposition:
    """Module-level syzygy multiset: the K0 part plus projective summands."""

    vector: ClassVector
    projectives: tuple[tuple[StableClass, int], ...]

    def multiset(self) -> dict[StableClass, int]:
        out = self.vector.coeffs
        for c, n in self.projectives:
            out[c] = out.get(c, 0) + n
        return out


@dataclass(frozen=True)
class SubcategorySpec:
    classes: frozenset[StableClass]
    validated_0IT: bool = False

    @classmethod
    def empty(cls) -> "SubcategorySpec":
        return cls(frozenset(), validated_0IT=True)


@dataclass(frozen=True)
class PdResult:
    kind: str  # "finite" | "infinite"
    n: int | None = None
    cycle: tuple[StableClass, ...] = ()

    @classmethod
    def finite(cls, n: int) -> "PdResult":
        return cls("finite", n=n)

    @classmethod
    def infinite(cls, cycle: tuple[StableClass, ...]) -> "PdResult":
        return cls("infinite", cycle=cycle)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


@dataclass(frozen=True)
class Validation0IT:
    ok: bool
    reason: str = ""


@dataclass(frozen=True)
class LITCertificate:
    n: int
    v_classes: ClassVector
    d: SubcategorySpec
    psi_value: int
    findim_bound: int


@dataclass(frozen=True)
class ClassifyResult:
    verdict: str  # "only_trivial" | "nontrivial_witness" | "inconclusive"
    witness: SubcategorySpec | None
    criteria_report: "checks.CriteriaReport"
    gamma_by_class: tuple[tuple[StableClass, int], ...] = ()


class _Space:
    """Per-algebra cache: classes, the K0 basis, and the syzygy matrix."""

    def __init__(self, a: TruncatedAlgebra):
        self.algebra = a
        q = a.quiver
        counts = {length: path_count_matrix(q, length) for length in range(0, a.k + 1)}
        self.counts = counts
        idx = q.vertex_index
        classes = []
        for v in q.vertices:
            for level in range(1, a.k):
                ends = any(counts[level].entries[idx[u]][idx[v]] for u in q.vertices)
                starts = any(counts[a.k - level].entries[idx[v]][idx[w]] for w in q.vertices)
                classes.append(
                    StableClass(vertex=v, level=level, realizable=ends, projective=not starts)
                )
        self.classes = tuple(classes)
        self.by_key = {(c.vertex, c.level): c for c in classes}
        self.basis = tuple(c for c in classes if c.realizable and not c.projective)
        self.index = {c: i for i, c in enumerate(self.basis)}
        self._syzygy: dict[StableClass, StableDecomposition] = {}
        self._matrix: IntMatrix | None = None
        self._pd: dict[StableClass, PdResult] = {}

    def syzygy(self, c: StableClass) -> StableDecomposition:
        cached = self._syzygy.get(c)
        if cached is not None:
            return cached
        a = self.algebra
        q = a.quiver
        idx = q.vertex_index
        vector: dict[StableClass, int] = {}
        projectives: dict[StableClass, int] = {}
        if not c.projective:
            length = a.k - c.level
            row = self.counts[length].entries[idx[c.vertex]]
            for w in q.vertices:
                m = row[idx[w]]
                if m:
                    out = self.by_key[(w, length)]
                    (projectives if out.projective else vector)[out] = m
        dec = StableDecomposition(
            vector=ClassVector.of(vector),
            projectives=tuple(sorted(projectives.items(), key=lambda p: (p[0].vertex, p[0].level))),
        )
        self._syzygy[c] = dec
        return dec

    def matrix(self) -> IntMatrix:
        if self._matrix is None:
            n = len(self.basis)
            entries = [[0] * n for _ in range(n)]
            for j, c in enumerate(self.basis):
                for out, m in self.syzygy(c).vector.items:
                    entries[self.index[out]][j] = m
            self._matrix = IntMatrix.from_rows(entries, cols=n)
        return self._matrix

    def _pd_table(self) -> dict[StableClass, PdResult]:
        """pd for every basis class in one pass.

        Tarjan emits strongly connected components sinks first, so a single
        sweep settles each class from its already-settled successors: reaching
        a cycle means infinite projective dimension, otherwise pd is one plus
        the maximum over the module-level syzygy summands.
        """
        if self._pd:
            return self._pd
        succ = {c: [cl for cl, _ in self.syzygy(c).vector.items] for c in self.basis}
        index: dict[StableClass, int] = {}
        low: dict[StableClass, int] = {}
        onstack: set[StableClass] = set()
        stack: list[StableClass] = []
        comps: list[list[StableClass]] = []
        counter = [0]

        def strongconnect(v: StableClass) -> None:
            index[v] = low[v] = counter[0]
            counter[0] += 1
            stack.append(v)
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
                    w = stack.pop()
                    onstack.discard(w)
                    comp.append(w)
                    if w is v:
                        break
                comps.append(comp)

        for c in self.basis:
            if c not in index:
                strongconnect(c)

        def comp_cycle(comp: list[StableClass]) -> tuple[StableClass, ...]:
            inside = set(comp)
            start = comp[0]
            # BFS from the successors of start back to start, inside the component
            parents: dict[StableClass, StableClass] = {}
            frontier = [w for w in succ[start] if w in inside]
            for w in frontier:
                parents.setdefault(w, start)
            while frontier:
                nxt = []
                for u in frontier:
                    if u is start:
                        continue
                    for w in succ[u]:
                        if w in inside and w not in parents:
                            parents[w] = u
                            nxt.append(w)
                frontier = nxt
                if start in parents:
                    break
            cycle = [start]
            node = parents[start]
            while node is not start:
                cycle.append(node)
                node = parents[node]
            cycle.reverse()
            return tuple(cycle)

        for comp in comps:
            cyclic = len(comp) > 1 or comp[0] in succ[comp[0]]
            if cyclic:
                cycle = comp_cycle(comp)
                for node in comp:
                    self._pd[node] = PdResult.infinite(cycle)
                continue
            node = comp[0]
            best = 0
            verdict: PdResult | None = None
            for w in succ[node]:
                sub = self._pd[w]
                if sub.kind == "infinite":
                    verdict = PdResult.infinite(sub.cycle)
                    break
                best = max(best, sub.n)
            self._pd[node] = verdict or PdResult.finite(1 + best)
        return self._pd

    def pd(self, c: StableClass) -> PdResult:
        if c.projective:
            return PdResult.finite(0)
        table = self._pd_table()
        if c in table:
            return table[c]
        # class outside the K0 basis (not realizable): resolve through its
        # syzygy, whose summands are always realizable
        best = 0
        for w, _ in self.syzygy(c).vector.items:
            sub = table[w]
            if sub.kind == "infinite":
                return PdResult.infinite(sub.cycle)
            best = max(best, sub.n)
        return PdResult.finite(1 + best)


@lru_cache(maxsize=None)
def _space(a: TruncatedAlgebra) -> _Space:
    return _Space(a)


def enumerate_classes(a: TruncatedAlgebra) -> tuple[StableClass, ...]:
    """All classes (v, l) with 1 <= l <= k-1, flags included."""
    return _space(a).classes


def class_basis(a: TruncatedAlgebra) -> tuple[StableClass, ...]:
    """The realizable nonprojective classes: the K0 coordinate system."""
    return _space(a).basis


def class_at(a: TruncatedAlgebra, vertex: str, level: int) -> StableClass:
    sp = _space(a)
    key = (vertex, level)
    if key not in sp.by_key:
        raise PreconditionError(f"no class M[{level}]@{vertex}: level must be in 1..{a.k - 1}")
    return sp.by_key[key]


def syzygy_parts(a: TruncatedAlgebra, c: StableClass) -> StableDecomposition:
    """Module-level first syzygy of the class: one summand M[k-l]@t(p) per
    path p of length k-l out of c.vertex; projective summands reported aside."""
    return _space(a).syzygy(c)


def syzygy_class(a: TruncatedAlgebra, c: StableClass) -> ClassVector:
    return syzygy_parts(a, c).vector


def syzygy_vector(a: TruncatedAlgebra, x: ClassVector) -> ClassVector:
    out = ClassVector.zero()
    for c, n in x.items:
        piece = syzygy_class(a, c)
        out = out + ClassVector.of({cl: m * n for cl, m in piece.items})
    return out


def syzygy_matrix(a: TruncatedAlgebra) -> IntMatrix:
    """Columns are syzygy_class over the basis returned by class_basis."""
    return _space(a).matrix()


def pd_class(a: TruncatedAlgebra, c: StableClass) -> PdResult:
    return _space(a).pd(c)


def class_dim_vector(a: TruncatedAlgebra, c: StableClass) -> tuple[int, ...]:
    """Per-vertex dimensions: paths from c.vertex of length <= k-1-level."""
    sp = _space(a)
    idx = a.quiver.vertex_index
    row_totals = [0] * len(a.quiver.vertices)
    for length in range(0, a.k - c.level):
        row = sp.counts[length].entries[idx[c.vertex]]
        for j in range(len(row_totals)):
            row_totals[j] += row[j]
    return tuple(row_totals)


def class_radical_profile(a: TruncatedAlgebra, c: StableClass) -> tuple[tuple[int, ...], ...]:
    """Radical layer dimension vectors, layer by layer from the top."""
    sp = _space(a)
    idx = a.quiver.vertex_index
    layers = []
    for length in range(0, a.k - c.level):
        row = sp.counts[length].entries[idx[c.vertex]]
        layers.append(tuple(row))
    return tuple(layers)


def _effective_d_indices(a: TruncatedAlgebra, d: SubcategorySpec | None) -> list[int]:
    if d is None:
        return []
    sp = _space(a)
    out = []
    for c in d.classes:
        if (c.vertex, c.level) not in sp.by_key:
            raise PreconditionError(f"class {c.label} does not belong to this algebra")
        if c in sp.index:
            out.append(sp.index[c])
    return sorted(out)


def _check_syzygy_closed(a: TruncatedAlgebra, d: SubcategorySpec) -> str:
    """Empty string when closed, else a message naming the offender."""
    for c in sorted(d.classes, key=lambda c: (c.vertex, c.level)):
        if c.projective:
            continue
        for out, _ in syzygy_class(a, c).items:
            if out not in d.classes:
                return f"syzygy of {c.label} contains {out.label}, which is outside the set"
    return ""


def phi_generalized(
    a: TruncatedAlgebra, x: ClassVector, d: SubcategorySpec | None = None
) -> int:
    """Stabilization index of the syzygy endomorphism on the subgroup spanned
    by the distinct classes of x, computed modulo the classes of d.

    d must be closed under syzygies; with d empty this is the plain phi.
    """
    sp = _space(a)
    if d is not None and d.classes and not d.validated_0IT:
        msg = _check_syzygy_closed(a, d)
        if msg:
            raise PreconditionError(msg)
    d_idx = _effective_d_indices(a, d)
    dset = set(d_idx)
    lbar = project_quotient(sp.matrix(), d_idx)
    n = len(sp.basis)
    gens = []
    for c in x.support:
        if c not in sp.index:
            raise PreconditionError(f"class {c.label} does not belong to this algebra")
        i = sp.index[c]
        if i in dset:
            continue
        e = [0] * n
        e[i] = 1
        gens.append(project_vector(e, d_idx))
    lat = Lattice.from_generators(gens, n - len(d_idx))
    return eta_fitting(lbar, lat)


def findim_add(a: TruncatedAlgebra, x: ClassVector) -> int:
    """Largest finite projective dimension among the classes of x; zero when
    none is finite (only projectives then have finite pd in the closure)."""
    best = 0
    for c in x.support:
        res = pd_class(a, c)
        if res.is_finite:
            best = max(best, res.n)
    return best


def psi_generalized(
    a: TruncatedAlgebra, x: ClassVector, d: SubcategorySpec | None = None
) -> int:
    t = phi_generalized(a, x, d)
    v = x
    for _ in range(t):
        v = syzygy_vector(a, v)
    return t + findim_add(a, v)


def syzygy_closure(a: TruncatedAlgebra, start: Iterable[StableClass]) -> frozenset[StableClass]:
    """All nonprojective classes appearing in some iterated syzygy, the given
    classes included."""
    sp = _space(a)
    seen: set[StableClass] = set()
    stack = []
    for c in start:
        if (c.vertex, c.level) not in sp.by_key:
            raise PreconditionError(f"class {c.label} does not belong to this algebra")
        if not c.projective and c not in seen:
            seen.add(c)
            stack.append(c)
    while stack:
        c = stack.pop()
        for out, _ in syzygy_class(a, c).items:
            if out not in seen:
                seen.add(out)
                stack.append(out)
    return frozenset(seen)


def gamma(a: TruncatedAlgebra, x: ClassVector) -> int:
    """phi of the syzygy closure of the support of x."""
    closure = syzygy_closure(a, x.support)
    return phi_generalized(a, ClassVector.of({c: 1 for c in closure}))


def validate_0IT(a: TruncatedAlgebra, d: SubcategorySpec) -> Validation0IT:
    msg = _check_syzygy_closed(a, d)
    if msg:
        return Validation0IT(False, msg)
    total = ClassVector.of({c: 1 for c in d.classes if not c.projective})
    value = phi_generalized(a, total)
    if value != 0:
        return Validation0IT(False, f"phi of the class set is {value}, not 0")
    return Validation0IT(True)


def make_0IT(a: TruncatedAlgebra, classes: Iterable[StableClass]) -> SubcategorySpec:
    spec = SubcategorySpec(frozenset(classes), validated_0IT=False)
    res = validate_0IT(a, spec)
    if not res.ok:
        raise PreconditionError(res.reason)
    return SubcategorySpec(spec.classes, validated_0IT=True)


def classify_trivial_0IT(a: TruncatedAlgebra, reading: str = "q") -> ClassifyResult:
    """Decide whether every syzygy-closed class set with phi zero meets only
    projectives.

    Requires a strongly connected quiver; then every nonprojective module has
    all its syzygies supported on the stable classes, so scanning gamma over
    single classes is decisive. Otherwise the verdict is inconclusive and only
    the structural criteria are reported.
    """
    report = checks.only_trivial_criteria(a, reading=reading)
    if not is_strongly_connected(a.quiver):
        return ClassifyResult("inconclusive", None, report)
    table = []
    witness: SubcategorySpec | None = None
    for c in class_basis(a):
        g = gamma(a, ClassVector.of({c: 1}))
        table.append((c, g))
        if g == 0 and witness is None:
            closure = syzygy_closure(a, [c])
            witness = SubcategorySpec(closure, validated_0IT=True)
    if witness is not None:
        return ClassifyResult("nontrivial_witness", witness, report, tuple(table))
    return ClassifyResult("only_trivial", None, report, tuple(table))


def lit_witness(a: TruncatedAlgebra, d: SubcategorySpec | None = None) -> LITCertificate:
    """Certificate (n=1, V, D): V collects every nonprojective stable class
    outside D, so each first syzygy splits into add(V) and D summands, and the
    finitistic dimension is bounded by psi_[D](V) + n + 1."""
    if d is None:
        d = SubcategorySpec.empty()
    elif d.classes and not d.validated_0IT:
        res = validate_0IT(a, d)
        if not res.ok:
            raise PreconditionError(res.reason)
        d = SubcategorySpec(d.classes, validated_0IT=True)
    v = ClassVector.of({c: 1 for c in class_basis(a) if c not in d.classes})
    psi_value = psi_generalized(a, v, d)
    return LITCertificate(n=1, v_classes=v, d=d, psi_value=psi_value, findim_bound=psi_value + 2)
