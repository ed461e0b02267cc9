"""Dual actions on character data, orbit classification, stabilizers, and
constructive transitivity witnesses.

Three kinds of dual points appear:

* `N0Char(s, t)`: a character (b, c) -> exp(i(s c + t b)) of the abelian
  plane inside the 3x3 group.  The quotient of the 3x3 group acts by
  (s, t) -> (s / lam, -a s + lam t); there are exactly five orbits, the two
  open half-planes {s > 0}, {s < 0}, the two half-axes {s = 0, t > 0},
  {s = 0, t < 0}, and the origin.
* `CharParam`: v in F^{n-1} parametrizing the character exp(i Re<w, v>).
  MA acts by v -> alpha^-1 beta (v . u~), the same compact-part action as on
  N itself with the dilation inverted; this is forced by the defining
  relation (g.chi)(x) = chi(g^-1 . x).
* `CentralParam`: a nonzero m in Im F parametrizing a central character; the
  dual action is m -> alpha^-2 beta m beta^-1.

Stabilizer membership is decided algebraically (alpha = 1 plus a rearranged
fixed-point identity); the property suites confirm it against the literal
fixed-point test.  Witnesses are constructed, never searched: a unitary
completion of the target direction plus the dilation that fixes the norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import AlgebraElement, AlgebraTag, FVector
from .errors import DomainError, OrbitError, UnsupportedDescriptorError
from .heisenberg import NGroupSpec
from .parabolic import (
    AxBElement,
    FMatrix,
    MAElement,
    PMatrixElement,
    fmat_column,
    fmat_from_columns,
    fmat_identity,
    m_act_vector,
    unitary_with_first_column,
)

WITNESS_TOL = 1e-10


# ---------------------------------------------------------------------------
# Dual point types.

@dataclass(frozen=True)
class N0Char:
    """Character parameters (s, t); s pairs with the corner coordinate c."""

    s: float
    t: float


@dataclass(frozen=True)
class CharParam:
    spec: NGroupSpec
    v: FVector

    def __post_init__(self):
        if self.v.tag is not self.spec.tag or len(self.v) != self.spec.w_len:
            raise DomainError("character parameter does not fit the group spec")

    @property
    def is_trivial(self) -> bool:
        return algebra.vector_norm_sq(self.v) == 0


@dataclass(frozen=True)
class CentralParam:
    spec: NGroupSpec
    m: AlgebraElement

    def __post_init__(self):
        if self.spec.tag is AlgebraTag.REAL:
            raise DomainError("Im R = 0: no central parameters over R")
        if self.m.tag is not self.spec.tag:
            raise DomainError("central parameter tag mismatch")
        if float(algebra.re(self.m)) != 0.0:
            raise DomainError("central parameter must be purely imaginary")
        if algebra.norm_sq(self.m) == 0:
            raise DomainError("central parameter must be nonzero")


@dataclass(frozen=True)
class OrbitId:
    """Orbit label: the acting family ('P3x3', 'MA:H:2', 'A:C:2', ...) + index."""

    family: str
    index: str


# ---------------------------------------------------------------------------
# The five orbits of the 3x3 family.

def p0_dual_act(p, nu: N0Char) -> N0Char:
    """(s, t) -> (s / lam, -a s + lam t); the dual of conjugation on the plane."""
    if isinstance(p, PMatrixElement):
        lam, a = p.lam, p.a
    elif isinstance(p, AxBElement):
        lam, a = p.a, p.b
    else:
        raise DomainError(f"cannot act by {type(p).__name__}")
    return N0Char(nu.s / lam, -a * nu.s + lam * nu.t)


def classify_orbit_p0(nu: N0Char) -> OrbitId:
    if nu.s > 0:
        index = "O1"
    elif nu.s < 0:
        index = "O2"
    elif nu.t > 0:
        index = "O3"
    elif nu.t < 0:
        index = "O4"
    else:
        index = "O5"
    return OrbitId("P3x3", index)


_P0_REPRESENTATIVES = {
    "O1": N0Char(1.0, 0.0),
    "O2": N0Char(-1.0, 0.0),
    "O3": N0Char(0.0, 1.0),
    "O4": N0Char(0.0, -1.0),
    "O5": N0Char(0.0, 0.0),
}


def p0_transitivity_witness(target: N0Char, representative: N0Char | None = None) -> PMatrixElement:
    """An element of the (lam, a) quotient moving the orbit representative to target.

    Solving (s0/lam, -a s0 + lam t0) = (s, t) gives lam = s0/s and
    a = (lam t0 - t)/s0 on the open orbits, and lam = t/t0 on the half-axes.
    """
    orbit = classify_orbit_p0(target)
    rep = _P0_REPRESENTATIVES[orbit.index] if representative is None else representative
    if classify_orbit_p0(rep) != orbit:
        raise OrbitError(f"representative {rep} lies outside orbit {orbit.index}")
    if orbit.index in ("O1", "O2"):
        lam = rep.s / target.s
        return PMatrixElement(lam, (lam * rep.t - target.t) / rep.s, 0.0, 0.0)
    if orbit.index in ("O3", "O4"):
        return PMatrixElement(target.t / rep.t, 0.0, 0.0, 0.0)
    return PMatrixElement(1.0, 0.0, 0.0, 0.0)


# ---------------------------------------------------------------------------
# Dual actions of MA (and of the dilation part alone).

def dual_char_act(g: MAElement, p: CharParam) -> CharParam:
    """v -> alpha^-1 beta (v . u~); satisfies chi_{g.v}(x) = chi_v(g^-1 . x)."""
    if g.spec != p.spec:
        raise DomainError("group spec mismatch")
    v = m_act_vector(g.u, g.beta, p.v).scale(1.0 / g.alpha)
    return CharParam(p.spec, v)


def dual_central_act(g: MAElement, p: CentralParam) -> CentralParam:
    """m -> alpha^-2 beta m beta^-1; the norm scales by alpha^-2."""
    if g.spec != p.spec:
        raise DomainError("group spec mismatch")
    beta_inv = algebra.conjugate(g.beta)
    m = algebra.multiply(algebra.multiply(g.beta, p.m), beta_inv).scale(g.alpha**-2)
    return CentralParam(p.spec, m)


def a_char_act(alpha: float, p: CharParam) -> CharParam:
    """Dual action of the dilation subgroup alone."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    return CharParam(p.spec, p.v.scale(1.0 / alpha))


def a_central_act(alpha: float, p: CentralParam) -> CentralParam:
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    return CentralParam(p.spec, p.m.scale(alpha**-2))


# ---------------------------------------------------------------------------
# Orbit classification for the MA and A families.

def _ma_family(spec: NGroupSpec, actor: str) -> str:
    return f"{actor}:{spec.tag.letter}:{spec.n}"


def classify_char_orbit(p: CharParam, actor: str = "MA") -> OrbitId:
    family = _ma_family(p.spec, actor)
    if p.is_trivial:
        return OrbitId(family, "CHAR_ZERO")
    split = p.spec.tag is AlgebraTag.REAL and p.spec.n == 2
    if actor == "MA":
        if split:
            sign = float(p.v.entries[0].coeffs[0])
            return OrbitId(family, "CHAR_POS" if sign > 0 else "CHAR_NEG")
        return OrbitId(family, "CHAR_NONZERO")
    if actor == "A":
        if split:
            sign = float(p.v.entries[0].coeffs[0])
            return OrbitId(family, "CHAR_POS" if sign > 0 else "CHAR_NEG")
        return OrbitId(family, "CHAR_HALFLINE")
    raise DomainError(f"unknown actor {actor!r}")


def classify_central_orbit(p: CentralParam, actor: str = "MA") -> OrbitId:
    family = _ma_family(p.spec, actor)
    if p.spec.tag is AlgebraTag.COMPLEX:
        mu = float(p.m.coeffs[1])
        return OrbitId(family, "CENTRAL_POS" if mu > 0 else "CENTRAL_NEG")
    if actor == "MA":
        return OrbitId(family, "CENTRAL_NONZERO")
    if actor == "A":
        return OrbitId(family, "CENTRAL_HALFLINE")
    raise DomainError(f"unknown actor {actor!r}")


def orbit_representative(orbit: OrbitId):
    """The canonical representative point of a finite-index orbit."""
    if orbit.family == "P3x3":
        return _P0_REPRESENTATIVES[orbit.index]
    actor, letter, n = orbit.family.split(":")
    spec = NGroupSpec(AlgebraTag.from_letter(letter), int(n))
    tag = spec.tag
    if orbit.index == "CHAR_ZERO":
        return CharParam(spec, algebra.zero_vector(tag, spec.w_len))
    if orbit.index == "CHAR_POS" or orbit.index == "CHAR_NONZERO":
        return CharParam(spec, algebra.standard_basis_vector(tag, spec.w_len, 0))
    if orbit.index == "CHAR_NEG":
        return CharParam(spec, algebra.standard_basis_vector(tag, spec.w_len, 0).scale(-1))
    if orbit.index == "CENTRAL_POS" or orbit.index == "CENTRAL_NONZERO":
        return CentralParam(spec, algebra.basis_unit(tag, 1))
    if orbit.index == "CENTRAL_NEG":
        return CentralParam(spec, algebra.basis_unit(tag, 1).scale(-1))
    raise DomainError(f"orbit {orbit.index} has no canonical representative")


# ---------------------------------------------------------------------------
# Stabilizers.

def stabilizer_membership(g, p, tol: float = WITNESS_TOL) -> bool:
    """Decide g . p = p by the algebraic stabilizer conditions.

    For a character parameter: alpha = 1 and (v . u~) = beta^-1 v.  For a
    central parameter: alpha = 1 and beta m = m beta.  For the 3x3 family:
    lam = 1, plus a = 0 when s != 0.  The trivial parameter is fixed by
    everything.
    """
    if isinstance(p, N0Char):
        if isinstance(g, AxBElement):
            lam, a = g.a, g.b
        else:
            lam, a = g.lam, g.a
        scale = max(abs(p.s), abs(p.t))
        if scale == 0.0:
            return True
        if abs(lam - 1.0) > tol:
            return False
        return abs(p.s) == 0.0 or abs(a * p.s) <= tol * max(1.0, scale)
    if isinstance(p, CharParam):
        if p.is_trivial:
            return True
        if abs(g.alpha - 1.0) > tol:
            return False
        rotated = m_act_vector(g.u, algebra.one(g.spec.tag), p.v)
        expected = p.v.left_mul(algebra.conjugate(g.beta))
        return algebra.vector_is_close(rotated, expected, tol)
    if isinstance(p, CentralParam):
        if abs(g.alpha - 1.0) > tol:
            return False
        left = algebra.multiply(g.beta, p.m)
        right = algebra.multiply(p.m, g.beta)
        return algebra.is_close(left, right, tol)
    raise DomainError(f"no stabilizer rule for {type(p).__name__}")


def stabilizer_fixed_point(g, p, tol: float = WITNESS_TOL) -> bool:
    """Decide g . p = p by literally applying the dual action."""
    if isinstance(p, N0Char):
        moved = p0_dual_act(g, p)
        scale = max(1.0, abs(p.s), abs(p.t))
        return abs(moved.s - p.s) <= tol * scale and abs(moved.t - p.t) <= tol * scale
    if isinstance(p, CharParam):
        moved = dual_char_act(g, p)
        return algebra.vector_is_close(moved.v, p.v, tol)
    if isinstance(p, CentralParam):
        moved = dual_central_act(g, p)
        return algebra.is_close(moved.m, p.m, tol)
    raise DomainError(f"no dual action for {type(p).__name__}")


def random_char_stabilizer_element(
    p: CharParam, rng: np.random.Generator
) -> MAElement:
    """A random element fixing the character parameter p.

    Writing the compact-part action as x -> C(u C(x)) with C the entrywise
    conjugation, fixing v amounts to u = u_v D u_v^* where u_v is a unitary
    completion of C(v/|v|) and D = diag(beta, ...) with free unit entries,
    subject over C to det(u) = det(D) = beta^-2.
    """
    spec = p.spec
    tag, k = spec.tag, spec.w_len
    nrm = algebra.vector_norm(p.v)
    if nrm == 0:
        raise DomainError("trivial parameter: the stabilizer is everything")
    vhat = p.v.scale(1.0 / nrm)
    from .parabolic import fmat_adjoint, fmat_mul

    u_v = unitary_with_first_column(_entrywise_conj(vhat))
    if tag is AlgebraTag.REAL:
        if k == 1:
            return MAElement(spec, fmat_identity(tag, 1), algebra.one(tag), 1.0)
        block = _random_special_orthogonal(k - 1, rng)
        diag = _embed_diag_block(tag, k, algebra.one(tag), block)
        u = fmat_mul(fmat_mul(u_v, diag), fmat_adjoint(u_v))
        return MAElement(spec, u, algebra.one(tag), 1.0)
    if tag is AlgebraTag.COMPLEX:
        if k == 1:
            # The stabilizer is the cube roots of unity.
            root = int(rng.integers(0, 3))
            theta = 2.0 * math.pi * root / 3.0
            beta = algebra.element(tag, (math.cos(theta), math.sin(theta)))
            return MAElement(spec, ((beta,),), beta, 1.0)
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        beta = algebra.element(tag, (math.cos(theta), math.sin(theta)))
        entries = [beta]
        phases = [float(rng.uniform(0.0, 2.0 * math.pi)) for _ in range(k - 2)]
        # det(D) = beta * prod(entries[1:]) must equal beta^-2.
        last = -3.0 * theta - sum(phases)
        for ph in phases + [last]:
            entries.append(algebra.element(tag, (math.cos(ph), math.sin(ph))))
        diag = tuple(
            tuple(entries[i] if i == j else algebra.zero(tag) for j in range(k))
            for i in range(k)
        )
        u = fmat_mul(fmat_mul(u_v, diag), fmat_adjoint(u_v))
        return MAElement(spec, u, beta, 1.0)
    if tag is AlgebraTag.QUATERNION:
        beta = algebra.random_unit(tag, rng)
        entries = [beta] + [algebra.random_unit(tag, rng) for _ in range(k - 1)]
        diag = tuple(
            tuple(entries[i] if i == j else algebra.zero(tag) for j in range(k))
            for i in range(k)
        )
        u = fmat_mul(fmat_mul(u_v, diag), fmat_adjoint(u_v))
        return MAElement(spec, u, beta, 1.0)
    raise UnsupportedDescriptorError("no stabilizer sampler over O")


def random_central_stabilizer_element(
    p: CentralParam, rng: np.random.Generator
) -> MAElement:
    """A random element fixing a central parameter: beta commuting with m."""
    spec = p.spec
    tag, k = spec.tag, spec.w_len
    from .parabolic import random_unitary

    if tag is AlgebraTag.COMPLEX:
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        beta = algebra.element(tag, (math.cos(theta), math.sin(theta)))
        u = random_unitary(tag, k, rng)
        u = _fix_complex_det(u, target=complex(math.cos(-2 * theta), math.sin(-2 * theta)), keep=None)
        return MAElement(spec, u, beta, 1.0)
    if tag is AlgebraTag.QUATERNION:
        # Units commuting with m are cos(t) + sin(t) m / |m|.
        t = float(rng.uniform(0.0, 2.0 * math.pi))
        mhat = p.m.scale(1.0 / algebra.norm(p.m))
        beta = algebra.scalar(tag, math.cos(t)) + mhat.scale(math.sin(t))
        u = random_unitary(tag, k, rng)
        return MAElement(spec, u, beta, 1.0)
    raise UnsupportedDescriptorError(f"no central stabilizer sampler over {tag.name}")


def _random_special_orthogonal(k: int, rng: np.random.Generator):
    from .parabolic import fmat_det, gram_schmidt_columns

    tag = AlgebraTag.REAL
    cols = [algebra.random_fvector(tag, k, rng) for _ in range(k + 3)]
    u = fmat_from_columns(gram_schmidt_columns(cols, k))
    if fmat_det(u).real < 0:
        cs = [fmat_column(u, j) for j in range(k)]
        cs[-1] = -cs[-1]
        u = fmat_from_columns(cs)
    return u


def _embed_diag_block(tag: AlgebraTag, k: int, corner: AlgebraElement, block) -> FMatrix:
    """diag(corner, block) as a k x k matrix over F."""
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == 0 and j == 0:
                row.append(corner)
            elif i >= 1 and j >= 1:
                row.append(block[i - 1][j - 1])
            else:
                row.append(algebra.zero(tag))
        rows.append(tuple(row))
    return tuple(rows)


def _entrywise_conj(v: FVector) -> FVector:
    return FVector(v.tag, tuple(algebra.conjugate(e) for e in v.entries))


def _fix_complex_det(u: FMatrix, target: complex, keep: int | None) -> FMatrix:
    """Scale one column of a complex unitary so det(u) = target (|target| = 1).

    `keep` protects a column (the witness direction); the scaled column is the
    last one unless that is protected.
    """
    from .parabolic import fmat_det

    k = len(u)
    det = fmat_det(u)
    ratio = target / det
    col_index = k - 1
    if keep is not None and col_index == keep:
        if k == 1:
            raise DomainError("cannot adjust the determinant of a protected 1x1 block")
        col_index = k - 2
    factor = algebra.element(AlgebraTag.COMPLEX, (ratio.real, ratio.imag))
    cols = [fmat_column(u, j) for j in range(k)]
    cols[col_index] = cols[col_index].right_mul(factor)
    return fmat_from_columns(cols)


# ---------------------------------------------------------------------------
# Transitivity witnesses (constructed, not searched).

def transitivity_witness(spec: NGroupSpec, target, representative=None) -> MAElement:
    """An MA element whose dual action maps the orbit representative to target.

    The compact part is a unitary completion of the target direction; the
    dilation fixes the norm.  Raises OrbitError when an explicitly given
    representative lies in a different orbit (the sign-split families refuse
    cross-branch targets this way).
    """
    if isinstance(target, CharParam):
        return _char_witness(spec, target, representative)
    if isinstance(target, CentralParam):
        return _central_witness(spec, target, representative)
    raise DomainError(f"no witness construction for {type(target).__name__}")


def _char_witness(spec: NGroupSpec, target: CharParam, representative) -> MAElement:
    if target.spec != spec:
        raise DomainError("target does not belong to the requested group spec")
    if target.is_trivial:
        raise OrbitError("the zero parameter is its own orbit; no witness needed")
    if spec.tag is AlgebraTag.OCTONION:
        raise UnsupportedDescriptorError(
            "character witnesses over O need the spin action, which is not modeled"
        )
    orbit = classify_char_orbit(target)
    rep = orbit_representative(orbit) if representative is None else representative
    if classify_char_orbit(rep) != orbit:
        raise OrbitError(
            f"representative lies in {classify_char_orbit(rep).index}, target in {orbit.index}"
        )
    tag, k = spec.tag, spec.w_len
    nrm = algebra.vector_norm(target.v)
    alpha = 1.0 / nrm
    vhat = target.v.scale(1.0 / nrm)
    if tag is AlgebraTag.REAL:
        if k == 1:
            return MAElement(spec, fmat_identity(tag, 1), algebra.one(tag), alpha)
        u = unitary_with_first_column(vhat)
        from .parabolic import fmat_det

        if fmat_det(u).real < 0:
            cols = [fmat_column(u, j) for j in range(k)]
            cols[-1] = -cols[-1]
            u = fmat_from_columns(cols)
        return MAElement(spec, u, algebra.one(tag), alpha)
    if tag is AlgebraTag.COMPLEX:
        if k == 1:
            theta = math.atan2(float(vhat.entries[0].coeffs[1]), float(vhat.entries[0].coeffs[0]))
            beta = algebra.element(tag, (math.cos(theta / 3), math.sin(theta / 3)))
            u0 = algebra.element(tag, (math.cos(-2 * theta / 3), math.sin(-2 * theta / 3)))
            return MAElement(spec, ((u0,),), beta, alpha)
        u = unitary_with_first_column(_entrywise_conj(vhat))
        u = _fix_complex_det(u, target=1.0 + 0.0j, keep=0)
        return MAElement(spec, u, algebra.one(tag), alpha)
    # Quaternions: no determinant constraint.
    u = unitary_with_first_column(_entrywise_conj(vhat))
    return MAElement(spec, u, algebra.one(tag), alpha)


def _central_witness(spec: NGroupSpec, target: CentralParam, representative) -> MAElement:
    if target.spec != spec:
        raise DomainError("target does not belong to the requested group spec")
    tag, k = spec.tag, spec.w_len
    if tag is AlgebraTag.OCTONION:
        raise UnsupportedDescriptorError(
            "central witnesses over O need the vector action of the compact "
            "factor; only the dilation scaling is modeled there"
        )
    orbit = classify_central_orbit(target)
    rep = orbit_representative(orbit) if representative is None else representative
    if classify_central_orbit(rep) != orbit:
        raise OrbitError(
            f"representative lies in {classify_central_orbit(rep).index}, target in {orbit.index}"
        )
    rep_norm = algebra.norm(rep.m)
    alpha = math.sqrt(rep_norm / algebra.norm(target.m))
    if tag is AlgebraTag.COMPLEX:
        return MAElement(spec, fmat_identity(tag, k), algebra.one(tag), alpha)
    # Quaternions: rotate the representative direction onto the target's.
    mhat = target.m.scale(1.0 / algebra.norm(target.m))
    rhat = rep.m.scale(1.0 / rep_norm)
    beta = algebra.one(tag) - algebra.multiply(mhat, rhat)
    if algebra.norm(beta) < 1e-8:
        # Antipodal pair: any unit imaginary orthogonal to both works.
        beta = _orthogonal_imaginary_unit(rhat)
    beta = beta.scale(1.0 / algebra.norm(beta))
    return MAElement(spec, fmat_identity(tag, k), beta, alpha)


def _orthogonal_imaginary_unit(mhat: AlgebraElement) -> AlgebraElement:
    coeffs = np.array([float(c) for c in mhat.coeffs])
    for idx in range(1, mhat.tag.dim):
        cand = np.zeros(mhat.tag.dim)
        cand[idx] = 1.0
        cand -= np.dot(cand, coeffs) * coeffs
        nrm = float(np.linalg.norm(cand))
        if nrm > 1e-6:
            return AlgebraElement(mhat.tag, tuple(float(c / nrm) for c in cand))
    raise DomainError("could not find an orthogonal imaginary unit")


def central_scaling_witness(spec: NGroupSpec, target: CentralParam) -> float:
    """The dilation alpha moving the canonical central direction onto target,
    available for every algebra including O; requires a collinear target."""
    rep = orbit_representative(classify_central_orbit(target, actor="MA"))
    mhat_t = target.m.scale(1.0 / algebra.norm(target.m))
    mhat_r = rep.m.scale(1.0 / algebra.norm(rep.m))
    if not algebra.is_close(mhat_t, mhat_r, 1e-10):
        raise OrbitError("dilations alone cannot change the central direction")
    return math.sqrt(algebra.norm(rep.m) / algebra.norm(target.m))
