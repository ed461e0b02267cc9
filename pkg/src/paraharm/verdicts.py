"""Plancherel geometry and the Fourier-algebra decision table.

`verdict` answers, for each group family and distinguished subgroup, whether
the algebra of regular-representation coefficients exhausts the decaying
positive-definite functions.  The engine is a transparent rule table, not a
prover: every answer carries an ordered machine-readable reason trace whose
first entry is the citation key of the result it encodes, followed by the
structural rules that drive it (unimodularity, orbit measure geometry, the
type-I + split conditions behind the positive answers).

Families: SO0 / SU / Sp (rank-one classical, parametrized by n >= 2), F4
(the exceptional family, one entry), and P3x3 (the solvable 3x3 matrix
group).  Subgroups: the full group P, the nilpotent part N, its compact
extension MN, and the solvable part AN.  For the P3x3 family the letters
resolve as: N = MN = the unipotent wall lam = 1 (a three-dimensional
Heisenberg group; the compact factor is trivial) and AN = the whole group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import AlgebraTag, norm as algebra_norm
from .errors import DomainError, UnsupportedDescriptorError
from .heisenberg import NGroupSpec
from .orbits import CentralParam, OrbitId

FAMILIES = ("SO0", "SU", "Sp", "F4", "P3x3")
SUBGROUPS = ("N", "MN", "AN", "P")

_FAMILY_TAG = {
    "SO0": AlgebraTag.REAL,
    "SU": AlgebraTag.COMPLEX,
    "Sp": AlgebraTag.QUATERNION,
    "F4": AlgebraTag.OCTONION,
}


def family_spec(family: str, n: int | None = None) -> NGroupSpec:
    """The (algebra, n) shape of N for a rank-one family; F4 pins n = 2."""
    if family not in _FAMILY_TAG:
        raise DomainError(f"family {family!r} carries no algebra spec")
    if family == "F4":
        return NGroupSpec(AlgebraTag.OCTONION, 2)
    if n is None or n < 2:
        raise DomainError(f"family {family} needs n >= 2, got {n}")
    return NGroupSpec(_FAMILY_TAG[family], n)


# ---------------------------------------------------------------------------
# Plancherel density on the infinite-dimensional part of the dual (F = C).

def plancherel_density(spec: NGroupSpec, m) -> float:
    """|m|^(n-1), the density of the Plancherel measure over the central
    parameter line (normalization constant fixed to 1).  F = C only."""
    if spec.tag is not AlgebraTag.COMPLEX:
        raise UnsupportedDescriptorError(
            "the density formula is exposed for the complex (Heisenberg) family only"
        )
    mm = m.m if isinstance(m, CentralParam) else m
    value = algebra_norm(mm) if hasattr(mm, "coeffs") else abs(float(mm))
    if value == 0:
        raise DomainError("central parameter must be nonzero")
    return value ** (spec.n - 1)


# ---------------------------------------------------------------------------
# Measure classes of dual orbits.

@dataclass(frozen=True)
class MeasureClass:
    klass: str  # "Zero" | "Positive"
    reason: str


def orbit_measure_class(orbit: OrbitId) -> MeasureClass:
    """Zero/Positive Plancherel mass of an orbit, by its geometry.

    Half-planes and full punctured spaces carry positive Lebesgue (hence
    Plancherel) mass; points, lines, and half-lines in dimension >= 2 are
    null.  Characters of a group with non-compact center are always
    Plancherel-null regardless of their orbit geometry.
    """
    if orbit.family == "P3x3":
        if orbit.index in ("O1", "O2"):
            return MeasureClass("Positive", "open half-plane: positive Lebesgue mass")
        if orbit.index in ("O3", "O4"):
            return MeasureClass("Zero", "half-line inside a null axis of the plane")
        return MeasureClass("Zero", "single point")
    actor, letter, n_str = orbit.family.split(":")
    tag = AlgebraTag.from_letter(letter)
    n = int(n_str)
    idx = orbit.index
    if idx == "CHAR_ZERO":
        return MeasureClass("Zero", "single point")
    if idx.startswith("CHAR"):
        if tag is not AlgebraTag.REAL:
            return MeasureClass(
                "Zero", "characters kill the non-compact center: Plancherel-null set"
            )
        dim = n - 1
        if idx in ("CHAR_POS", "CHAR_NEG"):
            return MeasureClass("Positive", "half-line in a 1-dimensional dual")
        if idx == "CHAR_NONZERO":
            return MeasureClass("Positive", "full punctured character space")
        if idx == "CHAR_HALFLINE":
            if dim == 1:
                return MeasureClass("Positive", "half-line in a 1-dimensional dual")
            return MeasureClass("Zero", f"half-line in dimension {dim} >= 2")
    if idx.startswith("CENTRAL"):
        k = tag.dim - 1
        if idx in ("CENTRAL_POS", "CENTRAL_NEG"):
            return MeasureClass(
                "Positive", "half-line in the 1-dimensional central parameter line"
            )
        if idx == "CENTRAL_NONZERO":
            return MeasureClass(
                "Positive", "full punctured central space under an absolutely continuous density"
            )
        if idx == "CENTRAL_HALFLINE":
            if k == 1:
                return MeasureClass("Positive", "half-line in a 1-dimensional central space")
            return MeasureClass("Zero", f"half-line in dimension {k} >= 2")
    raise DomainError(f"unknown orbit index {orbit.index!r}")


# ---------------------------------------------------------------------------
# Decomposition of the regular representation of the 3x3 group.

_P3X3_SERIES = ("pi1", "pi2", "pi3", "pi4", "pi5")


@dataclass(frozen=True)
class DecompositionRecord:
    """Multiplicities of the irreducible series inside the regular
    representation; math.inf encodes countably infinite multiplicity."""

    family: str
    multiplicities: tuple

    def multiplicity(self, series: str) -> float:
        table = dict(self.multiplicities)
        if series not in table:
            raise DomainError(f"unknown series {series!r} for family {self.family}")
        return table[series]

    @property
    def present_series(self) -> tuple:
        return tuple(name for name, mult in self.multiplicities if mult > 0)


def lambda_p_decomposition(family: str = "P3x3") -> DecompositionRecord:
    """The regular representation of the 3x3 group is the countably infinite
    direct sum of the two open-orbit series; nothing else appears."""
    if family != "P3x3":
        raise UnsupportedDescriptorError(
            f"decomposition table available for P3x3 only, not {family!r}"
        )
    return DecompositionRecord(
        family="P3x3",
        multiplicities=(
            ("pi1", math.inf),
            ("pi2", math.inf),
            ("pi3", 0),
            ("pi4", 0),
            ("pi5", 0),
        ),
    )


_P3X3_SERIES_ORBIT = {"pi1": "O1", "pi2": "O2", "pi3": "O3", "pi4": "O4", "pi5": "O5"}


def p3x3_series_orbit(series: str) -> OrbitId:
    if series not in _P3X3_SERIES_ORBIT:
        raise DomainError(f"unknown series {series!r}")
    return OrbitId("P3x3", _P3X3_SERIES_ORBIT[series])


# ---------------------------------------------------------------------------
# Subgroup metadata and the relative-mixing (Howe-Moore style) companion.

@dataclass(frozen=True)
class SubgroupInfo:
    family: str
    name: str
    normal: bool
    compact: bool
    # True when every irreducible of the ambient group is either trivial on
    # this subgroup or embeds in the regular representation.
    splits_dual: bool
    cite: str


_HOWE_MOORE = {
    "P3x3": SubgroupInfo("P3x3", "N1", normal=True, compact=False, splits_dual=True, cite="Cor8.1"),
    "SO0": SubgroupInfo("SO0", "N", normal=True, compact=False, splits_dual=True, cite="Cor8.1"),
    "SU": SubgroupInfo("SU", "Z(N)", normal=True, compact=False, splits_dual=True, cite="Cor8.1"),
    "Sp": SubgroupInfo("Sp", "Z(N)", normal=True, compact=False, splits_dual=True, cite="Cor8.1"),
    "F4": SubgroupInfo("F4", "Z(N)", normal=True, compact=False, splits_dual=True, cite="Cor8.1"),
}


def howe_moore_pair(family: str, n: int | None = None) -> SubgroupInfo:
    """The non-compact closed normal subgroup H making (G, H) a relative
    mixing pair: the corner wall for the 3x3 group, all of N over R, and the
    center of N otherwise."""
    if family not in _HOWE_MOORE:
        raise DomainError(f"unknown family {family!r}")
    _validate_family_n(family, n)
    return _HOWE_MOORE[family]


# ---------------------------------------------------------------------------
# The decision table.

@dataclass(frozen=True)
class Verdict:
    family: str
    subgroup: str
    n: int | None
    answer: str  # "Equal" | "NotEqual"
    reasons: tuple

    def __post_init__(self):
        if not self.reasons:
            raise DomainError("a verdict must carry at least one reason")


def _validate_family_n(family: str, n: int | None) -> None:
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family in ("SO0", "SU", "Sp"):
        if n is None:
            raise DomainError(f"family {family} requires n")
        if n < 2:
            raise DomainError(f"family {family} requires n >= 2, got {n}")
    elif n is not None and family == "P3x3":
        raise DomainError("the 3x3 family takes no rank parameter")


def _equal_reasons(cite: str, h_name: str, extra: tuple = ()) -> tuple:
    return (
        cite,
        "type-I",
        f"every-irreducible-trivial-on-H-or-subrep-of-regular:H={h_name}",
        "compact-stabilizers",
    ) + extra


def verdict(family: str, subgroup: str, n: int | None = None) -> Verdict:
    """The Equal/NotEqual answer for (family, subgroup) with its reason trace.

    NotEqual traces cite a hard obstruction (connected unimodular non-compact,
    or all dual orbits Plancherel-null); Equal traces cite the split condition
    (type I, and every irreducible trivial on H or inside the regular
    representation) together with the key carrying the result.
    """
    _validate_family_n(family, n)
    if subgroup not in SUBGROUPS:
        raise DomainError(f"unknown subgroup {subgroup!r}; expected one of {SUBGROUPS}")

    if family == "P3x3":
        return _verdict_p3x3(subgroup)

    if subgroup == "P":
        h_name = howe_moore_pair(family, n).name
        return Verdict(
            family, subgroup, n, "Equal",
            _equal_reasons("Thm1.2", h_name, ("orbit-positive-measure:generic-series",)),
        )

    if subgroup == "N":
        return Verdict(
            family, subgroup, n, "NotEqual",
            (_notequal_cite(family, n), "unimodular-connected-noncompact", "nilpotent-is-unimodular"),
        )

    if subgroup == "MN":
        return Verdict(
            family, subgroup, n, "NotEqual",
            (
                _notequal_cite(family, n),
                "unimodular-connected-noncompact",
                "compact-extension-of-unimodular:Delta_MN=1",
            ),
        )

    # subgroup == "AN"
    if family == "SO0" and n == 2:
        return Verdict(
            family, subgroup, n, "Equal",
            (
                "Sec9:P-coincides-with-AN",
                "Thm1.2",
                "type-I",
                "every-irreducible-trivial-on-H-or-subrep-of-regular:H=N",
            ),
        )
    if family == "SU":
        return Verdict(
            family, subgroup, n, "Equal",
            _equal_reasons(
                "Prop9.2", "Z(N)",
                ("orbit-positive-measure:central-half-lines-dimension-1",),
            ),
        )
    dim = {"SO0": (n - 1) if n else 0, "Sp": 3, "F4": 7}[family]
    return Verdict(
        family, subgroup, n, "NotEqual",
        (
            "Prop9.1",
            f"all-dual-orbits-plancherel-null:half-lines-in-dimension-{dim}",
            "no-irreducible-subrepresentation-of-regular",
        ),
    )


def _notequal_cite(family: str, n: int | None) -> str:
    # The stated null/unimodularity proposition covers SO0 with n >= 3, Sp,
    # and F4; the remaining unimodular cases ride on the same general rule.
    if family in ("Sp", "F4") or (family == "SO0" and n is not None and n >= 3):
        return "Prop9.1"
    return "Sec9:unimodularity"


def _verdict_p3x3(subgroup: str) -> Verdict:
    if subgroup == "P":
        return Verdict(
            "P3x3", subgroup, None, "Equal",
            _equal_reasons("Thm1.1", "N1", ("regular-rep-decomposes:pi1+pi2-infinitely",)),
        )
    if subgroup in ("N", "MN"):
        reasons = (
            "Sec9:unimodularity",
            "unimodular-connected-noncompact",
            "nilpotent-is-unimodular",
            "subgroup-resolves-to:unipotent-wall(3-dim-Heisenberg)",
        )
        if subgroup == "MN":
            reasons += ("compact-factor-trivial:MN=N",)
        return Verdict("P3x3", subgroup, None, "NotEqual", reasons)
    # AN: the dilations together with the unipotent wall exhaust the group.
    return Verdict(
        "P3x3", subgroup, None, "Equal",
        (
            "Thm1.1",
            "subgroup-resolves-to:whole-group:AN=P",
            "type-I",
            "every-irreducible-trivial-on-H-or-subrep-of-regular:H=N1",
            "compact-stabilizers",
        ),
    )


def verdict_table() -> list:
    """All (family, subgroup) combinations with representative n values."""
    rows = []
    for family in FAMILIES:
        ns = (2, 3, 5) if family in ("SO0", "SU", "Sp") else (None,)
        for n in ns:
            for subgroup in SUBGROUPS:
                rows.append(verdict(family, subgroup, n))
    return rows
