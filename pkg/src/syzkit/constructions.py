"""Builders for the concrete algebra families used throughout the package.

Includes truncated oriented cycles (the selfinjective Nakayama family), the
five-vertex circuit algebra with its small-circuit module, a no-sink gluing
of two algebras along annihilating cross arrows, and the two-loop double
extension that attaches a pair of looped vertices to an arbitrary monomial
algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import checks, rep as rep_mod, stable
from .algebra import (
    MonomialAlgebra,
    Path,
    TruncatedAlgebra,
    recognize_truncated,
    truncated_to_monomial,
)
from .errors import PreconditionError
from .field import QQ
from .quiver import Quiver, structural_flags
from .rep import (
    LabeledRep,
    Representation,
    SES,
    direct_sum,
    make_rep,
    projective_rep,
    simple_rep,
    validate_ses,
    _paths_to_rep,
)

B_PREFIX = "b_"


def build_truncated_cycle(n: int, k: int) -> TruncatedAlgebra:
    """Oriented n-cycle modulo paths of length k; selfinjective for all n, k."""
    if n < 1:
        raise PreconditionError("cycle needs at least one vertex")
    vertices = [str(i + 1) for i in range(n)]
    arrows = [(f"c{i + 1}", str(i + 1), str((i + 1) % n + 1)) for i in range(n)]
    quiver = Quiver.build(vertices, arrows)
    return TruncatedAlgebra(quiver, k)


def build_ex5_5() -> tuple[TruncatedAlgebra, Representation]:
    """Five-vertex circuit with branch, truncated at 8, plus the module whose
    syzygy is two copies of itself."""
    quiver = Quiver.build(
        ["1", "2", "3", "4", "5"],
        [
            ("a21", "2", "1"),
            ("a31", "3", "1"),
            ("a14", "1", "4"),
            ("a45", "4", "5"),
            ("a53", "5", "3"),
            ("a52", "5", "2"),
        ],
    )
    algebra = TruncatedAlgebra(quiver, 8)
    one = [[1]]
    module = make_rep(
        quiver,
        {v: 1 for v in quiver.vertices},
        {"a14": one, "a45": one, "a53": one, "a52": one},
    )
    return algebra, module


@dataclass(frozen=True)
class GlueSpec:
    gamma_part: MonomialAlgebra
    gammabar_part: MonomialAlgebra
    alpha_arrows: tuple[tuple[str, str], ...]


@dataclass
class GlueResult:
    algebra: MonomialAlgebra
    hypotheses: dict[str, bool]
    conclusion_applicable: bool
    reason: str
    gammabar_truncated: TruncatedAlgebra | None


def glue_algebras(spec: GlueSpec) -> GlueResult:
    """Join two algebras by cross arrows that annihilate all compositions.

    Hypotheses checked: disjoint parts, no sinks in the second part, every
    first-part vertex sources a cross arrow, no arrows back. When the second
    part is a truncation with only trivial 0-Igusa-Todorov subcategories, the
    glued algebra inherits that property.
    """
    g, gb = spec.gamma_part, spec.gammabar_part
    if set(g.quiver.vertices) & set(gb.quiver.vertices):
        raise PreconditionError("parts must have disjoint vertex names")
    if set(a.name for a in g.quiver.arrows) & set(a.name for a in gb.quiver.arrows):
        raise PreconditionError("parts must have disjoint arrow names")
    sinks = structural_flags(gb.quiver).sinks
    if sinks:
        raise PreconditionError(f"no sinks allowed in the second part, found {sorted(sinks)}")
    sourced = {s for s, _ in spec.alpha_arrows}
    missing = [v for v in g.quiver.vertices if v not in sourced]
    if missing:
        raise PreconditionError(
            f"every first-part vertex needs a cross arrow, missing {missing}"
        )
    for s, t in spec.alpha_arrows:
        if s not in g.quiver.vertex_index:
            raise PreconditionError(f"cross arrow source {s} is not a first-part vertex")
        if t not in gb.quiver.vertex_index:
            raise PreconditionError(f"cross arrow target {t} is not a second-part vertex")

    vertices = list(g.quiver.vertices) + list(gb.quiver.vertices)
    arrows = [(a.name, a.source, a.target) for a in g.quiver.arrows]
    arrows += [(a.name, a.source, a.target) for a in gb.quiver.arrows]
    alpha_names = []
    for i, (s, t) in enumerate(spec.alpha_arrows):
        name = f"alpha{i}"
        alpha_names.append(name)
        arrows.append((name, s, t))
    quiver = Quiver.build(vertices, arrows)

    relations: list[Path] = list(g.relations) + list(gb.relations)
    for name, (s, t) in zip(alpha_names, spec.alpha_arrows):
        for b in quiver.arrows_into[s]:
            relations.append((b.name, name))
        for b in quiver.arrows_from[t]:
            relations.append((name, b.name))
    algebra = MonomialAlgebra(quiver, tuple(relations))

    hypotheses = {
        "disjoint_parts": True,
        "no_sinks_in_second_part": True,
        "every_first_vertex_sources_cross_arrow": True,
        "no_arrows_back": True,
        "cross_arrows_annihilate": True,
    }
    truncated = recognize_truncated(gb)
    if truncated is None:
        return GlueResult(
            algebra,
            hypotheses,
            False,
            "second part is not a truncation; only-trivial certification unavailable",
            None,
        )
    verdict = stable.classify_trivial_0IT(truncated)
    if verdict.verdict == "only_trivial":
        return GlueResult(algebra, hypotheses, True, "", truncated)
    return GlueResult(
        algebra,
        hypotheses,
        False,
        f"second part classifies as {verdict.verdict}",
        truncated,
    )


def _rename_vertex(v: str) -> str:
    return f"{B_PREFIX}{v}"


def _rename_path(p: Path) -> Path:
    return tuple(f"{B_PREFIX}{name}" for name in p)


def renamed_base_algebra(b: MonomialAlgebra | TruncatedAlgebra) -> MonomialAlgebra:
    """The base algebra with all vertex and arrow names prefixed, so it can sit
    inside a larger quiver without clashes."""
    mono = b if isinstance(b, MonomialAlgebra) else truncated_to_monomial(b)
    quiver = Quiver.build(
        [_rename_vertex(v) for v in mono.quiver.vertices],
        [
            (f"{B_PREFIX}{a.name}", _rename_vertex(a.source), _rename_vertex(a.target))
            for a in mono.quiver.arrows
        ],
    )
    return MonomialAlgebra(quiver, tuple(_rename_path(r) for r in mono.relations))


def rename_base_rep(rep: Representation) -> Representation:
    return Representation(
        {_rename_vertex(v): d for v, d in rep.dims.items()},
        {f"{B_PREFIX}{name}": m for name, m in rep.maps.items()},
        rep.field,
    )


def _two_loop_part() -> MonomialAlgebra:
    quiver = Quiver.build(
        ["1", "2"],
        [
            ("beta1", "1", "2"),
            ("beta2", "2", "1"),
            ("betabar1", "1", "1"),
            ("betabar2", "2", "2"),
        ],
    )
    rels = []
    for a in quiver.arrows:
        for b in quiver.arrows_from[a.target]:
            rels.append((a.name, b.name))
    return MonomialAlgebra(quiver, tuple(sorted(rels)))


def build_ex6_1(b: MonomialAlgebra | TruncatedAlgebra) -> MonomialAlgebra:
    """Attach the two-vertex looped part to the base algebra b by one
    annihilating cross arrow from every base vertex to vertex 1."""
    renamed = renamed_base_algebra(b)
    spec = GlueSpec(
        gamma_part=renamed,
        gammabar_part=_two_loop_part(),
        alpha_arrows=tuple((v, "1") for v in renamed.quiver.vertices),
    )
    return glue_algebras(spec).algebra


def extend_base_module(a61: MonomialAlgebra, rep_over_b: Representation) -> Representation:
    """Extend a base-algebra module by zero to the glued algebra."""
    renamed = rename_base_rep(rep_over_b)
    return make_rep(a61.quiver, renamed.dims, renamed.maps, renamed.field)


def nakayama_indecomposables(
    b: TruncatedAlgebra, field=QQ
) -> list[tuple[str, Representation, stable.StableClass | None]]:
    """All indecomposables of a truncated cycle: the classes and the
    projectives, labeled; the class object is None for projectives."""
    if checks.is_selfinjective_truncated(b) is not True or not b.quiver.arrows:
        raise PreconditionError("expected a truncated oriented cycle")
    out = []
    for v in b.quiver.vertices:
        for level in range(1, b.k):
            c = stable.class_at(b, v, level)
            if c.realizable and not c.projective:
                out.append((c.label, rep_mod.class_rep(b, v, level, field).rep, c))
        out.append((f"P@{v}", projective_rep(b, v, field).rep, None))
    return out


def _cycle_path_ending_at(b: TruncatedAlgebra, v: str, length: int) -> tuple[Path, str]:
    cur = v
    rev = []
    for _ in range(length):
        incoming = b.quiver.arrows_into[cur]
        if len(incoming) != 1:
            raise PreconditionError("not a cycle quiver")
        rev.append(incoming[0].name)
        cur = incoming[0].source
    return tuple(reversed(rev)), cur


@dataclass
class K1SequenceReport:
    ses: SES
    s1_exponent: int
    top_dim_of_quotient: int
    exact: bool


def k1_membership_sequence(
    a61: MonomialAlgebra, b: TruncatedAlgebra, v: str, level: int, field=QQ
) -> K1SequenceReport:
    """Embed the class M[level]@v of the selfinjective base into a glued-
    algebra projective: 0 -> V + S1 -> P -> W -> 0 exhibits [V] inside the
    syzygy-closed part of the class group of the glued algebra."""
    if checks.is_selfinjective_truncated(b) is not True:
        raise PreconditionError("base algebra must be selfinjective (truncated cycle)")
    c = stable.class_at(b, v, level)
    if c.projective or not c.realizable:
        raise PreconditionError(f"{c.label} is not a nonprojective class")
    rho, u = _cycle_path_ending_at(b, v, level)
    bu = _rename_vertex(u)
    cover = projective_rep(a61, bu, field)

    # quotient W: base paths from u shorter than `level`, extended by zero
    w_entries = [
        (_rename_path(p), _rename_vertex(at))
        for p, at in b.alive_paths_from(u)
        if len(p) <= level - 1
    ]
    w_labeled = _paths_to_rep(a61, w_entries, field)
    w_index = w_labeled.index_at

    # V: base paths from v of length <= k-1-level, renamed; plus one S1
    v_entries = [
        (_rename_path(p), _rename_vertex(at))
        for p, at in b.alive_paths_from(v)
        if len(p) <= b.k - 1 - level
    ]
    v_labeled = _paths_to_rep(a61, v_entries, field)
    s1 = simple_rep(a61.quiver, "1", field)
    left = direct_sum(a61.quiver, [v_labeled.rep, s1])

    alpha = [a for a in a61.quiver.arrows_from[bu] if a.target == "1"]
    assert len(alpha) == 1
    alpha_path = (alpha[0].name,)
    rho_renamed = _rename_path(rho)

    quiver = a61.quiver
    surj = {}
    inj = {}
    for w in quiver.vertices:
        cov_paths = [p for p, at in cover.labels if at == w]
        wd = w_labeled.rep.dim_at(w)
        mat = [[field.zero] * len(cov_paths) for _ in range(wd)]
        for col, p in enumerate(cov_paths):
            row = w_index[w].get(p)
            if row is not None:
                mat[row][col] = field.one
        surj[w] = tuple(tuple(r) for r in mat)

        vd = v_labeled.rep.dim_at(w)
        sd = s1.dim_at(w)
        cols = vd + sd
        matj = [[field.zero] * cols for _ in range(len(cov_paths))]
        v_paths = [p for p, at in v_labeled.labels if at == w]
        for col, mu in enumerate(v_paths):
            target_path = rho_renamed + mu
            matj[cover.index_at[w][target_path]][col] = field.one
        if sd:
            matj[cover.index_at[w][alpha_path]][vd] = field.one
        inj[w] = tuple(tuple(r) for r in matj)

    ses = SES(left, cover.rep, w_labeled.rep, inj, surj)
    validate_ses(a61, ses)
    top_w = sum(rep_mod.top_and_radical(a61, w_labeled.rep).top_dims.values())
    return K1SequenceReport(ses=ses, s1_exponent=1, top_dim_of_quotient=top_w, exact=True)


@dataclass
class BulletReport:
    label: str
    syzygy_decomposition_ok: bool
    pd_kind: str
    pd_certified: bool
    k1_sequence_ok: bool | None


def verify_6_1_bullets(
    a61: MonomialAlgebra,
    b: TruncatedAlgebra,
    modules: list[tuple[str, Representation, stable.StableClass | None]],
    seed: int = 0,
) -> list[BulletReport]:
    """For each base module M check the glued syzygy law
    syz_A(M) = syz_B(M) + S1^(dim top M), the 0-or-infinite projective
    dimension, and (for nonprojective classes) the embedding sequence."""
    reports = []
    for label, m_rep, cls in modules:
        m_ext = extend_base_module(a61, m_rep)
        omega_a = rep_mod.projective_cover_and_syzygy(a61, m_ext).syzygy
        omega_b = rep_mod.projective_cover_and_syzygy(b, m_rep).syzygy
        topdim = sum(rep_mod.top_and_radical(b, m_rep).top_dims.values())
        candidate = direct_sum(
            a61.quiver,
            [extend_base_module(a61, omega_b)]
            + [simple_rep(a61.quiver, "1", m_rep.field)] * topdim,
        )
        dec_ok = bool(rep_mod.is_isomorphic(a61.quiver, omega_a, candidate, seed))
        ev = rep_mod.pd_resolution(a61, m_ext, seed=seed)
        k1_ok = None
        if cls is not None:
            rep = k1_membership_sequence(a61, b, cls.vertex, cls.level, m_rep.field)
            k1_ok = rep.exact and rep.s1_exponent == rep.top_dim_of_quotient
        reports.append(
            BulletReport(
                label=label,
                syzygy_decomposition_ok=dec_ok,
                pd_kind=ev.kind,
                pd_certified=ev.certified,
                k1_sequence_ok=k1_ok,
            )
        )
    return reports
