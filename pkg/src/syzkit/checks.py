"""Structural criteria: monomial ideal conditions and only-trivial verdicts.

The only-trivial checks cover two shapes of truncated algebra: radical square
zero with strongly connected quiver and singular adjacency matrix, and any
truncation degree when the quiver is strongly connected with a loop and
singular adjacency. "Singular" defaults to determinant zero over the
rationals; a flag switches to the unimodularity reading (det not in {1, -1}).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, Path, TruncatedAlgebra
from .errors import PreconditionError
from .lattice import determinant
from .quiver import adjacency_matrix, is_strongly_connected, structural_flags


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple[Path, ...]

    @classmethod
    def of(cls, generators) -> "MonomialIdeal":
        return cls(tuple(tuple(g) for g in generators))


@dataclass(frozen=True)
class IdealConditions:
    ji_zero: bool
    rad_i_zero: bool
    rad_power_zero: bool
    ji_witness: Path | None = None
    rad_i_witness: Path | None = None
    rad_power_witness: Path | None = None


def _occurrences(path: Path, gen: Path) -> list[int]:
    m = len(gen)
    return [s for s in range(len(path) - m + 1) if path[s : s + m] == gen]


def _validate_ideal(a: Algebra, ideal: MonomialIdeal, name: str) -> None:
    for g in ideal.generators:
        if not g:
            raise PreconditionError(f"ideal {name}: empty generator path")
        if not a.quiver.is_composable(g):
            raise PreconditionError(f"ideal {name}: generator {g} is not a composable path")
        if a.path_is_zero(g):
            raise PreconditionError(f"ideal {name}: generator {g} is zero in the algebra")


def ideal_conditions(a: Algebra, i: MonomialIdeal, j: MonomialIdeal, n: int) -> IdealConditions:
    """Check J.I = 0, rad(A).I = 0 and rad^(2n+1)(A) = 0 on the path basis.

    J.I vanishes when no nonzero path carries a J-generator factor followed
    (disjointly) by an I-generator factor; rad.I when no I-generator occurs
    at positive offset in a nonzero path.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    _validate_ideal(a, i, "I")
    _validate_ideal(a, j, "J")
    alive = [
        p for v in a.quiver.vertices for p, _ in a.alive_paths_from(v) if p
    ]
    ji_witness = None
    rad_i_witness = None
    rad_power_witness = None
    for w in alive:
        if ji_witness is None:
            ends_j = [s + len(g) for g in j.generators for s in _occurrences(w, g)]
            starts_i = [s for g in i.generators for s in _occurrences(w, g)]
            if ends_j and starts_i and min(ends_j) <= max(starts_i):
                ji_witness = w
        if rad_i_witness is None:
            for g in i.generators:
                if any(s >= 1 for s in _occurrences(w, g)):
                    rad_i_witness = w
                    break
        if rad_power_witness is None and len(w) >= 2 * n + 1:
            rad_power_witness = w
    return IdealConditions(
        ji_zero=ji_witness is None,
        rad_i_zero=rad_i_witness is None,
        rad_power_zero=rad_power_witness is None,
        ji_witness=ji_witness,
        rad_i_witness=rad_i_witness,
        rad_power_witness=rad_power_witness,
    )


def is_selfinjective_truncated(a: TruncatedAlgebra) -> bool | None:
    """True/False when decidable, None otherwise.

    Without arrows the algebra is semisimple. For a strongly connected quiver
    the truncation is selfinjective exactly when the quiver is a single
    oriented cycle: any vertex with two outgoing arrows gives a projective
    with a non-simple socle.
    """
    q = a.quiver
    if not q.arrows:
        return True
    if not is_strongly_connected(q):
        return None
    return all(len(q.arrows_from[v]) == 1 for v in q.vertices)


@dataclass(frozen=True)
class CaseResult:
    applicable: bool
    verdict: str | None  # "only_trivial" when applicable
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class CriteriaReport:
    case1: CaseResult
    case2: CaseResult
    k: int
    strongly_connected: bool
    has_loop: bool
    det: int
    singular_q: bool
    singular_z: bool
    reading: str
    selfinjective: bool | None


def only_trivial_criteria(a: TruncatedAlgebra, reading: str = "q") -> CriteriaReport:
    """Structural sufficient conditions for the only-trivial verdict."""
    if reading not in ("q", "z"):
        raise PreconditionError("reading must be 'q' (det = 0) or 'z' (det not a unit)")
    q = a.quiver
    det = determinant(adjacency_matrix(q))
    singular_q = det == 0
    singular_z = det not in (1, -1)
    singular = singular_q if reading == "q" else singular_z
    sc = is_strongly_connected(q)
    flags = structural_flags(q)
    selfinj = is_selfinjective_truncated(a)

    notes1 = []
    if a.k != 2:
        notes1.append("needs truncation degree 2")
    if not sc:
        notes1.append("quiver not strongly connected")
    if not singular:
        notes1.append("adjacency matrix invertible under the chosen reading")
    if selfinj is None:
        notes1.append("selfinjectivity undetermined")
    elif selfinj:
        notes1.append("algebra is selfinjective")
    app1 = not notes1
    case1 = CaseResult(app1, "only_trivial" if app1 else None, tuple(notes1))

    notes2 = []
    if not sc:
        notes2.append("quiver not strongly connected")
    if not flags.has_loop:
        notes2.append("no loop")
    if not singular:
        notes2.append("adjacency matrix invertible under the chosen reading")
    app2 = not notes2
    case2 = CaseResult(app2, "only_trivial" if app2 else None, tuple(notes2))

    return CriteriaReport(
        case1=case1,
        case2=case2,
        k=a.k,
        strongly_connected=sc,
        has_loop=flags.has_loop,
        det=det,
        singular_q=singular_q,
        singular_z=singular_z,
        reading=reading,
        selfinjective=selfinj,
    )
