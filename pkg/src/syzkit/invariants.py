"""Igusa-Todorov invariants of explicit modules over a truncated algebra.

A module given as a representation is first matched against direct sums of
stable classes (then everything is symbolic and exact). Unrecognized modules
get one extra coordinate in the class group: the syzygy of the module is
always a sum of stable classes, so the endomorphism extends to the enlarged
group. That computation is exact when the module is indecomposable, which is
certified when its endomorphism ring is one dimensional; otherwise the result
carries a marker.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rep as rep_mod
from . import stable
from .algebra import TruncatedAlgebra
from .errors import PreconditionError
from .lattice import IntMatrix, Lattice, eta_fitting, project_quotient
from .rep import Representation


@dataclass(frozen=True)
class ModuleInvariant:
    value: int
    certified: bool
    method: str  # "class-sum" | "augmented"
    recognized: stable.ClassVector | None = None
    note: str = ""


def recognize_class_vector(
    a: TruncatedAlgebra, r: Representation, seed: int = 0
) -> stable.ClassVector | None:
    """Match r with a direct sum of stable classes and projectives; returns
    the K0 class (projective summands dropped) or None."""
    states = rep_mod._recognize_path_ideal_sum(a, r, seed)
    if states is None:
        return None
    counts: dict[stable.StableClass, int] = {}
    for p, start in states:
        if not p:
            continue  # projective summand, zero in K0
        c = stable.class_at(a, a.quiver.path_target(p), len(p))
        if c.projective:
            continue
        counts[c] = counts.get(c, 0) + 1
    return stable.ClassVector.of(counts)


def _augmented_setup(
    a: TruncatedAlgebra,
    r: Representation,
    d: stable.SubcategorySpec | None,
):
    """Syzygy matrix enlarged by one coordinate for the module's own class."""
    sp_basis = stable.class_basis(a)
    index = {c: i for i, c in enumerate(sp_basis)}
    d_idx = sorted(
        index[c] for c in (d.classes if d else ()) if c in index
    )
    if d is not None and d.classes and not d.validated_0IT:
        res = stable.validate_0IT(a, stable.SubcategorySpec(d.classes))
        if not res.ok:
            raise PreconditionError(res.reason)
    base = project_quotient(stable.syzygy_matrix(a), d_idx)
    omega_r = rep_mod.skeleton_decompose(a, r).vector
    dset = set(d_idx)
    keep = [i for i in range(len(sp_basis)) if i not in dset]
    col = [0] * len(keep)
    for c, n in omega_r.items:
        i = index[c]
        if i in dset:
            continue
        col[keep.index(i)] = n
    nb = len(keep)
    rows = [list(base.entries[i]) + [col[i]] for i in range(nb)]
    rows.append([0] * (nb + 1))
    aug = IntMatrix.from_rows(rows, cols=nb + 1)
    return aug, keep, index


def _endo_is_scalar(a: TruncatedAlgebra, r: Representation) -> bool:
    return rep_mod.hom_space_dim(a.quiver, r, r) == 1


def phi_module(
    a: TruncatedAlgebra,
    r: Representation,
    d: stable.SubcategorySpec | None = None,
    seed: int = 0,
) -> ModuleInvariant:
    rep_mod.validate_representation(a, r)
    if r.total_dim == 0:
        return ModuleInvariant(0, True, "class-sum", stable.ClassVector.zero())
    vec = recognize_class_vector(a, r, seed)
    if vec is not None:
        return ModuleInvariant(stable.phi_generalized(a, vec, d), True, "class-sum", vec)
    aug, keep, _ = _augmented_setup(a, r, d)
    e = [0] * (len(keep) + 1)
    e[-1] = 1
    value = eta_fitting(aug, Lattice.from_generators([e], len(keep) + 1))
    certified = _endo_is_scalar(a, r)
    note = "" if certified else "module not certified indecomposable"
    return ModuleInvariant(value, certified, "augmented", None, note)


def gamma_module(
    a: TruncatedAlgebra, r: Representation, seed: int = 0
) -> ModuleInvariant:
    rep_mod.validate_representation(a, r)
    if r.total_dim == 0:
        return ModuleInvariant(0, True, "class-sum", stable.ClassVector.zero())
    vec = recognize_class_vector(a, r, seed)
    if vec is not None:
        return ModuleInvariant(stable.gamma(a, vec), True, "class-sum", vec)
    omega = rep_mod.skeleton_decompose(a, r).vector
    closure = stable.syzygy_closure(a, omega.support)
    aug, keep, index = _augmented_setup(a, r, None)
    gens = []
    e = [0] * (len(keep) + 1)
    e[-1] = 1
    gens.append(e)
    for c in sorted(closure, key=lambda c: (c.vertex, c.level)):
        v = [0] * (len(keep) + 1)
        v[keep.index(index[c])] = 1
        gens.append(v)
    value = eta_fitting(aug, Lattice.from_generators(gens, len(keep) + 1))
    certified = _endo_is_scalar(a, r)
    note = "" if certified else "module not certified indecomposable"
    return ModuleInvariant(value, certified, "augmented", None, note)


def psi_module(
    a: TruncatedAlgebra,
    r: Representation,
    d: stable.SubcategorySpec | None = None,
    seed: int = 0,
) -> ModuleInvariant:
    base = phi_module(a, r, d, seed)
    t = base.value
    if base.recognized is not None:
        vec = base.recognized
        for _ in range(t):
            vec = stable.syzygy_vector(a, vec)
        return ModuleInvariant(
            t + stable.findim_add(a, vec), base.certified, base.method, base.recognized
        )
    if t == 0:
        # findim(add r) for a single unrecognized module: its own pd if finite
        ev = rep_mod.pd_resolution(a, r)
        extra = ev.n if ev.kind == "finite" else 0
        certified = base.certified and ev.certified
        return ModuleInvariant(extra, certified, "augmented", None, base.note)
    vec = rep_mod.skeleton_decompose(a, r).vector
    for _ in range(t - 1):
        vec = stable.syzygy_vector(a, vec)
    return ModuleInvariant(
        t + stable.findim_add(a, vec), base.certified, "augmented", None, base.note
    )
