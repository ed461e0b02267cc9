"""Heisenberg-type groups N = F^{n-1} x Im F and the abelian plane N0.

The product twists the center by the imaginary part of the hermitian form,

    (w1, z1) (w2, z2) = (w1 + w2, z1 + z2 + Im<w1, w2>),

so N is two-step nilpotent, abelian exactly when F = R, with center
{(0, z)} otherwise.  The commutator has the closed form (0, 2 Im<w1, w2>).
In (w, z) coordinates Lebesgue measure is a two-sided Haar measure.

N0 is the abelian group R^2 in coordinates (b, c); it sits inside the 3x3
matrix group handled by `paraharm.parabolic` as the unipotent block with b
on the middle-right and c in the corner.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import AlgebraElement, AlgebraTag, FVector
from .errors import DomainError

# Relative slack allowed in the purely-imaginary check for z; conjugation
# of an imaginary element produces real parts at rounding level only.
_IM_TOL = 1e-9


@dataclass(frozen=True)
class NGroupSpec:
    """Shape of one group N: the algebra F and the rank parameter n >= 2."""

    tag: AlgebraTag
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")

    @property
    def w_len(self) -> int:
        return self.n - 1

    @property
    def dim(self) -> int:
        d = self.tag.dim
        return d * (self.n - 1) + (d - 1)


@dataclass(frozen=True)
class NElement:
    """A point (w, z) with w in F^{n-1} and z purely imaginary."""

    spec: NGroupSpec
    w: FVector
    z: AlgebraElement

    def __post_init__(self):
        if self.w.tag is not self.spec.tag or self.z.tag is not self.spec.tag:
            raise DomainError("component tags disagree with the group spec")
        if len(self.w) != self.spec.w_len:
            raise DomainError(f"w must have length {self.spec.w_len}, got {len(self.w)}")
        re_z = float(algebra.re(self.z))
        if abs(re_z) > _IM_TOL * (1.0 + algebra.norm(self.z)):
            raise DomainError(f"z must be purely imaginary, has real part {re_z}")


def n_element(spec: NGroupSpec, w: FVector, z: AlgebraElement) -> NElement:
    return NElement(spec, w, z)


def n_identity(spec: NGroupSpec) -> NElement:
    return NElement(spec, algebra.zero_vector(spec.tag, spec.w_len), algebra.zero(spec.tag))


def _check_specs(g1: NElement, g2: NElement) -> None:
    if g1.spec != g2.spec:
        raise DomainError(f"group spec mismatch: {g1.spec} vs {g2.spec}")


def n_multiply(g1: NElement, g2: NElement) -> NElement:
    """(w1,z1)(w2,z2) = (w1+w2, z1+z2+Im<w1,w2>)."""
    _check_specs(g1, g2)
    twist = algebra.im(algebra.hermitian_form(g1.w, g2.w))
    return NElement(g1.spec, g1.w + g2.w, g1.z + g2.z + twist)


def n_inverse(g: NElement) -> NElement:
    """(-w, -z); the twist vanishes because Im<w,w> = 0."""
    return NElement(g.spec, -g.w, -g.z)


def commutator(g1: NElement, g2: NElement) -> NElement:
    """g1 g2 g1^-1 g2^-1, which collapses to (0, 2 Im<w1,w2>)."""
    _check_specs(g1, g2)
    prod = n_multiply(n_multiply(g1, g2), n_multiply(n_inverse(g1), n_inverse(g2)))
    return prod


def commutator_closed_form(g1: NElement, g2: NElement) -> NElement:
    _check_specs(g1, g2)
    twist = algebra.im(algebra.hermitian_form(g1.w, g2.w))
    return NElement(g1.spec, algebra.zero_vector(g1.spec.tag, g1.spec.w_len), twist.scale(2))


def is_central(g: NElement, atol: float = 0.0) -> bool:
    """True iff g commutes with everything: w = 0, or F = R where N is abelian."""
    if g.spec.tag is AlgebraTag.REAL:
        return True
    return all(abs(float(c)) <= atol for e in g.w.entries for c in e.coeffs)


@dataclass(frozen=True)
class N0Element:
    """A point of the abelian plane N0 in coordinates (b, c)."""

    b: float
    c: float


def n0_multiply(g1: N0Element, g2: N0Element) -> N0Element:
    return N0Element(g1.b + g2.b, g1.c + g2.c)


def n0_inverse(g: N0Element) -> N0Element:
    return N0Element(-g.b, -g.c)


# ---------------------------------------------------------------------------
# Coordinates and batch group law (used by quadrature charts and bulk tests).
# The chart packs w entry-by-entry, then the d-1 imaginary coefficients of z.

def n_to_coords(g: NElement) -> np.ndarray:
    parts = [float(c) for e in g.w.entries for c in e.coeffs]
    parts.extend(float(c) for c in g.z.coeffs[1:])
    return np.array(parts)


def n_from_coords(spec: NGroupSpec, coords: np.ndarray) -> NElement:
    d, k = spec.tag.dim, spec.w_len
    coords = np.asarray(coords, dtype=float)
    if coords.shape != (spec.dim,):
        raise DomainError(f"expected {spec.dim} coordinates, got {coords.shape}")
    entries = tuple(
        AlgebraElement(spec.tag, tuple(coords[i * d : (i + 1) * d])) for i in range(k)
    )
    z = AlgebraElement(spec.tag, (0.0,) + tuple(coords[k * d :]))
    return NElement(spec, FVector(spec.tag, entries), z)


def batch_n_multiply(spec: NGroupSpec, w1, z1, w2, z2):
    """Group law on arrays: w of shape (..., k, d), z of shape (..., d)."""
    twist = algebra.batch_hermitian(spec.tag, np.asarray(w1), np.asarray(w2))
    twist[..., 0] = 0.0
    return np.asarray(w1) + np.asarray(w2), np.asarray(z1) + np.asarray(z2) + twist


def random_n_element(spec: NGroupSpec, rng: np.random.Generator, scale: float = 1.0) -> NElement:
    w = algebra.random_fvector(spec.tag, spec.w_len, rng, scale)
    z = algebra.random_imaginary(spec.tag, rng, scale)
    return NElement(spec, w, z)
