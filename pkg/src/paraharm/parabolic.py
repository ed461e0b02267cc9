"""The solvable matrix group of shape 3x3, MA |x N semidirect products,
the ax+b group, and their Haar data.

`PMatrixElement` holds the coordinates (lam, a, b, c) of

    [ lam   a    c  ]
    [  0  1/lam  b  ],      lam > 0,
    [  0    0    1  ]

whose product and inverse are written out so exact coefficient types pass
through.  `MAElement` is a triple (u, beta, alpha) with u a unitary matrix
over F (columns orthonormal for [x,y] = sum conj(x_i) y_i), beta a unit of F,
alpha > 0, constrained by beta^2 det(u) = 1 when F is R or C.  It acts on
N = F^{n-1} x Im F by

    (u, beta, alpha) . (w, z) = (alpha beta (w . u~), alpha^2 beta z beta^-1),

where (w . u~)_i = sum_j w_j conj(u_ij).  This is the conjugation action of
the block-diagonal matrix diag(beta, u, beta): with the hermitian form
<x, y> = sum x_i conj(y_i) twisting the product of N, it is the orientation
of the compact factor that acts by group automorphisms (the imaginary part
of the form transforms as Im<w1', w2'> = beta Im<w1, w2> beta^-1, matching
the center).  Over R and C it reduces to the familiar rotate-and-scale
action.  Semidirect elements are pairs (n, h) with
(n1, h1)(n2, h2) = (n1 (h1.n2), h1 h2), so N sits as the normal factor.

Haar measure conventions are pinned numerically: left Haar density and the
modular function Delta (right Haar = Delta^-1 . left Haar) are exposed per
group descriptor, and the quadrature charts at the bottom carry the same
densities in integration-friendly log coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import AlgebraElement, AlgebraTag, FVector
from .errors import DomainError, UnsupportedDescriptorError
from .heisenberg import NElement, NGroupSpec, batch_n_multiply

_UNITARY_TOL = 1e-8
_DET_TOL = 1e-6


# ---------------------------------------------------------------------------
# The 3x3 group in coordinates (lam, a, b, c).

@dataclass(frozen=True)
class PMatrixElement:
    lam: float
    a: float
    b: float
    c: float

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"lam must be positive, got {self.lam}")


def p_identity() -> PMatrixElement:
    return PMatrixElement(1, 0, 0, 0)


def p_multiply(g1: PMatrixElement, g2: PMatrixElement) -> PMatrixElement:
    """Coordinates of the 3x3 matrix product."""
    return PMatrixElement(
        g1.lam * g2.lam,
        g1.lam * g2.a + g1.a / g2.lam,
        g1.b + g2.b / g1.lam,
        g1.c + g1.lam * g2.c + g1.a * g2.b,
    )


def p_inverse(g: PMatrixElement) -> PMatrixElement:
    return PMatrixElement(1 / g.lam, -g.a, -g.lam * g.b, g.a * g.b - g.c / g.lam)


def p_to_matrix(g: PMatrixElement):
    """Rows of the underlying upper-triangular 3x3 matrix."""
    one = g.lam / g.lam
    zero = one - one
    return (
        (g.lam, g.a, g.c),
        (zero, one / g.lam, g.b),
        (zero, zero, one),
    )


def p_from_matrix(rows) -> PMatrixElement:
    return PMatrixElement(rows[0][0], rows[0][1], rows[1][2], rows[0][2])


def p_conjugate(g: PMatrixElement, x: PMatrixElement) -> PMatrixElement:
    return p_multiply(p_multiply(g, x), p_inverse(g))


def random_p_element(rng: np.random.Generator, scale: float = 1.0) -> PMatrixElement:
    lam = float(np.exp(rng.uniform(-scale, scale)))
    a, b, c = (float(v) for v in rng.normal(0.0, scale, 3))
    return PMatrixElement(lam, a, b, c)


# ---------------------------------------------------------------------------
# The ax+b group (a > 0), composition of affine maps x -> a x + b.

@dataclass(frozen=True)
class AxBElement:
    a: float
    b: float

    def __post_init__(self):
        if not self.a > 0:
            raise DomainError(f"a must be positive, got {self.a}")


def axb_identity() -> AxBElement:
    return AxBElement(1.0, 0.0)


def axb_multiply(g1: AxBElement, g2: AxBElement) -> AxBElement:
    return AxBElement(g1.a * g2.a, g1.a * g2.b + g1.b)


def axb_inverse(g: AxBElement) -> AxBElement:
    return AxBElement(1.0 / g.a, -g.b / g.a)


# ---------------------------------------------------------------------------
# Matrices over F as tuples of rows of AlgebraElement.

FMatrix = tuple


def fmat_identity(tag: AlgebraTag, k: int) -> FMatrix:
    return tuple(
        tuple(algebra.one(tag) if i == j else algebra.zero(tag) for j in range(k))
        for i in range(k)
    )


def fmat_matvec(u: FMatrix, v: FVector) -> FVector:
    k = len(u)
    if len(v) != k:
        raise DomainError("matrix/vector size mismatch")
    entries = []
    for i in range(k):
        acc = algebra.zero(v.tag)
        for j in range(k):
            acc = acc + algebra.multiply(u[i][j], v.entries[j])
        entries.append(acc)
    return FVector(v.tag, tuple(entries))


def fmat_mul(u1: FMatrix, u2: FMatrix) -> FMatrix:
    k = len(u1)
    tag = u1[0][0].tag
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = algebra.zero(tag)
            for l in range(k):
                acc = acc + algebra.multiply(u1[i][l], u2[l][j])
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def fmat_adjoint(u: FMatrix) -> FMatrix:
    k = len(u)
    return tuple(tuple(algebra.conjugate(u[j][i]) for j in range(k)) for i in range(k))


def fmat_column(u: FMatrix, j: int) -> FVector:
    tag = u[0][0].tag
    return FVector(tag, tuple(u[i][j] for i in range(len(u))))


def fmat_from_columns(cols) -> FMatrix:
    k = len(cols)
    return tuple(tuple(cols[j].entries[i] for j in range(k)) for i in range(k))


def fmat_unitarity_defect(u: FMatrix) -> float:
    k = len(u)
    prod = fmat_mul(fmat_adjoint(u), u)
    defect = 0.0
    for i in range(k):
        for j in range(k):
            target = 1.0 if i == j else 0.0
            coeffs = prod[i][j].coeffs
            defect = max(defect, abs(float(coeffs[0]) - target))
            defect = max(defect, max((abs(float(c)) for c in coeffs[1:]), default=0.0))
    return defect


def fmat_det(u: FMatrix) -> complex:
    """Determinant for R and C matrices (undefined here over H, O)."""
    tag = u[0][0].tag
    if tag is AlgebraTag.REAL:
        m = np.array([[float(e.coeffs[0]) for e in row] for row in u])
        return complex(np.linalg.det(m))
    if tag is AlgebraTag.COMPLEX:
        m = np.array([[float(e.coeffs[0]) + 1j * float(e.coeffs[1]) for e in row] for row in u])
        return complex(np.linalg.det(m))
    raise DomainError(f"determinant not defined for {tag.name} matrices")


def _module_form(x: FVector, y: FVector) -> AlgebraElement:
    # [x, y] = sum conj(x_i) y_i; right-linear in y, which Gram-Schmidt needs.
    acc = algebra.zero(x.tag)
    for a, b in zip(x.entries, y.entries):
        acc = acc + algebra.multiply(algebra.conjugate(a), b)
    return acc


def gram_schmidt_columns(candidates, k: int):
    """Orthonormalize up to k vectors from `candidates` (right scalar action)."""
    cols = []
    for cand in candidates:
        v = cand
        for e in cols:
            v = v - e.right_mul(_module_form(e, v))
        nrm = algebra.vector_norm(v)
        if nrm > 1e-8:
            cols.append(v.scale(1.0 / nrm))
        if len(cols) == k:
            return cols
    raise DomainError("could not complete an orthonormal set")


def unitary_with_first_column(vhat: FVector) -> FMatrix:
    """Deterministic unitary completion of a unit vector into a full matrix."""
    k = len(vhat)
    tag = vhat.tag
    candidates = [vhat] + [algebra.standard_basis_vector(tag, k, i) for i in range(k)]
    cols = gram_schmidt_columns(candidates, k)
    return fmat_from_columns(cols)


# ---------------------------------------------------------------------------
# MA elements.

@dataclass(frozen=True)
class MAElement:
    """(u, beta, alpha): unitary block u, unit scalar beta, dilation alpha > 0."""

    spec: NGroupSpec
    u: FMatrix
    beta: AlgebraElement
    alpha: float

    def __post_init__(self):
        tag = self.spec.tag
        if tag is AlgebraTag.OCTONION:
            raise UnsupportedDescriptorError(
                "the compact factor over O acts through a spin representation "
                "that is not modeled; only dilations are available there"
            )
        if len(self.u) != self.spec.w_len:
            raise DomainError(f"u must be {self.spec.w_len}x{self.spec.w_len}")
        if self.beta.tag is not tag:
            raise DomainError("beta tag disagrees with the group spec")
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")
        if abs(algebra.norm(self.beta) - 1.0) > _UNITARY_TOL:
            raise DomainError("beta must be a unit")
        if fmat_unitarity_defect(self.u) > _UNITARY_TOL:
            raise DomainError("u must be unitary")
        if tag is AlgebraTag.REAL:
            # The connected unit group of R is trivial.
            if abs(float(self.beta.coeffs[0]) - 1.0) > _UNITARY_TOL:
                raise DomainError("beta must equal 1 over R")
        if tag in (AlgebraTag.REAL, AlgebraTag.COMPLEX):
            beta_c = complex(float(self.beta.coeffs[0]), float(self.beta.coeffs[1]) if tag is AlgebraTag.COMPLEX else 0.0)
            if abs(beta_c * beta_c * fmat_det(self.u) - 1.0) > _DET_TOL:
                raise DomainError("determinant constraint beta^2 det(u) = 1 violated")


def ma_identity(spec: NGroupSpec, alpha: float = 1.0) -> MAElement:
    return MAElement(spec, fmat_identity(spec.tag, spec.w_len), algebra.one(spec.tag), alpha)


def ma_multiply(g1: MAElement, g2: MAElement) -> MAElement:
    if g1.spec != g2.spec:
        raise DomainError("group spec mismatch")
    return MAElement(
        g1.spec,
        fmat_mul(g1.u, g2.u),
        algebra.multiply(g1.beta, g2.beta),
        g1.alpha * g2.alpha,
    )


def ma_inverse(g: MAElement) -> MAElement:
    return MAElement(g.spec, fmat_adjoint(g.u), algebra.conjugate(g.beta), 1.0 / g.alpha)


def m_act_vector(u: FMatrix, beta: AlgebraElement, v: FVector) -> FVector:
    """Compact-part action v_i' = beta sum_j v_j conj(u_ij)."""
    k = len(u)
    if len(v) != k:
        raise DomainError("matrix/vector size mismatch")
    entries = []
    for i in range(k):
        acc = algebra.zero(v.tag)
        for j in range(k):
            acc = acc + algebra.multiply(v.entries[j], algebra.conjugate(u[i][j]))
        entries.append(algebra.multiply(beta, acc))
    return FVector(v.tag, tuple(entries))


def ma_act_n(g: MAElement, x: NElement) -> NElement:
    """(alpha beta (w . u~), alpha^2 beta z beta^-1); an automorphism of N."""
    if g.spec != x.spec:
        raise DomainError("group spec mismatch")
    beta_inv = algebra.conjugate(g.beta)  # unit beta
    w = m_act_vector(g.u, g.beta, x.w).scale(g.alpha)
    z = algebra.multiply(algebra.multiply(g.beta, x.z), beta_inv).scale(g.alpha**2)
    return NElement(x.spec, w, z)


def random_unitary(tag: AlgebraTag, k: int, rng: np.random.Generator) -> FMatrix:
    """Haar-ish unitary over F via Gram-Schmidt on a random matrix."""
    candidates = [algebra.random_fvector(tag, k, rng) for _ in range(k + 4)]
    cols = gram_schmidt_columns(candidates, k)
    return fmat_from_columns(cols)


def random_ma_element(
    spec: NGroupSpec, rng: np.random.Generator, alpha_spread: float = math.log(2.0)
) -> MAElement:
    tag, k = spec.tag, spec.w_len
    alpha = float(np.exp(rng.uniform(-alpha_spread, alpha_spread)))
    if tag is AlgebraTag.REAL:
        u = random_unitary(tag, k, rng)
        if fmat_det(u).real < 0:
            cols = [fmat_column(u, j) for j in range(k)]
            cols[-1] = -cols[-1]
            u = fmat_from_columns(cols)
        if k == 1:
            u = fmat_identity(tag, 1)
        return MAElement(spec, u, algebra.one(tag), alpha)
    if tag is AlgebraTag.COMPLEX:
        u = random_unitary(tag, k, rng)
        det = fmat_det(u)
        phase = math.atan2(det.imag, det.real)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        beta = algebra.element(tag, (sign * math.cos(-phase / 2), sign * math.sin(-phase / 2)))
        return MAElement(spec, u, beta, alpha)
    if tag is AlgebraTag.QUATERNION:
        u = random_unitary(tag, k, rng)
        beta = algebra.random_unit(tag, rng)
        return MAElement(spec, u, beta, alpha)
    raise UnsupportedDescriptorError("no MA sampler over O")


# ---------------------------------------------------------------------------
# Semidirect product MA |x N, written as pairs (n, h) with N the normal part.

@dataclass(frozen=True)
class SemidirectElement:
    n: NElement
    h: MAElement

    def __post_init__(self):
        if self.n.spec != self.h.spec:
            raise DomainError("component specs disagree")


def semidirect_identity(spec: NGroupSpec) -> SemidirectElement:
    from .heisenberg import n_identity

    return SemidirectElement(n_identity(spec), ma_identity(spec))


def semidirect_multiply(g1: SemidirectElement, g2: SemidirectElement) -> SemidirectElement:
    from .heisenberg import n_multiply

    return SemidirectElement(
        n_multiply(g1.n, ma_act_n(g1.h, g2.n)),
        ma_multiply(g1.h, g2.h),
    )


def semidirect_inverse(g: SemidirectElement) -> SemidirectElement:
    from .heisenberg import n_inverse

    h_inv = ma_inverse(g.h)
    return SemidirectElement(ma_act_n(h_inv, n_inverse(g.n)), h_inv)


# ---------------------------------------------------------------------------
# Group descriptors and Haar data.

_FAMILIES = ("P3x3", "AXB", "N", "MN", "AN", "P")


@dataclass(frozen=True)
class GroupDescriptor:
    """A group family plus, where needed, the algebra tag and rank n."""

    family: str
    tag: AlgebraTag | None = None
    n: int | None = None

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise UnsupportedDescriptorError(f"unknown family {self.family!r}")
        if self.family in ("N", "MN", "AN", "P") and (self.tag is None or self.n is None):
            raise DomainError(f"family {self.family} requires an algebra tag and n")

    def serialize(self) -> str:
        if self.tag is None:
            return self.family
        return f"{self.family}:{self.tag.letter}:{self.n}"

    @classmethod
    def parse(cls, text: str) -> "GroupDescriptor":
        parts = text.split(":")
        if len(parts) == 1:
            return cls(parts[0])
        if len(parts) == 3:
            return cls(parts[0], AlgebraTag.from_letter(parts[1]), int(parts[2]))
        raise DomainError(f"cannot parse group descriptor {text!r}")

    @property
    def spec(self) -> NGroupSpec:
        if self.tag is None or self.n is None:
            raise DomainError(f"descriptor {self.family} carries no (tag, n) spec")
        return NGroupSpec(self.tag, self.n)


def homogeneous_dimension(spec: NGroupSpec) -> int:
    """d(n-1) + 2(d-1): the w-block dimension plus twice the center's."""
    d = spec.tag.dim
    return d * (spec.n - 1) + 2 * (d - 1)


def left_haar_density(desc: GroupDescriptor, point) -> float:
    """Density rho of a left Haar measure w.r.t. Lebesgue in chart coordinates.

    Charts: P3x3 -> (lam, a, b, c); AXB -> (a, b); N -> any (w, z) coordinates;
    AN -> (alpha, w..., z...).  Families with a compact factor carry no global
    coordinate chart here and are rejected.
    """
    if desc.family == "P3x3":
        lam = float(point[0])
        return 1.0 / (lam * lam)
    if desc.family == "AXB":
        a = float(point[0])
        return 1.0 / (a * a)
    if desc.family == "N":
        return 1.0
    if desc.family == "AN":
        alpha = float(point[0])
        return alpha ** -(homogeneous_dimension(desc.spec) + 1)
    raise UnsupportedDescriptorError(
        f"no coordinate Haar density for family {desc.family}"
    )


def modular_function(desc: GroupDescriptor, point) -> float:
    """Delta(g): right Haar = Delta^-1 . left Haar.  Identically 1 iff unimodular."""
    if desc.family == "P3x3":
        lam = float(point[0])
        return 1.0 / (lam * lam)
    if desc.family == "AXB":
        return 1.0 / float(point[0])
    if desc.family in ("N", "MN"):
        # Nilpotent, resp. compact-by-nilpotent: unimodular.
        return 1.0
    if desc.family in ("AN", "P"):
        alpha = float(point[0])
        return alpha ** -homogeneous_dimension(desc.spec)
    raise UnsupportedDescriptorError(f"unknown family {desc.family}")


# ---------------------------------------------------------------------------
# Vectorized coordinate charts for quadrature.  Points are arrays (..., dim);
# `density` is the left Haar density w.r.t. Lebesgue in the chart coordinates.

class P3x3Chart:
    """Chart (l, a, b, c) with lam = exp(l) (log_scale) or (lam, a, b, c) raw."""

    def __init__(self, log_scale: bool = True):
        self.log_scale = log_scale
        self.dim = 4

    def identity(self) -> np.ndarray:
        return np.array([0.0, 0.0, 0.0, 0.0]) if self.log_scale else np.array([1.0, 0.0, 0.0, 0.0])

    def multiply(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        l1, a1, b1, c1 = np.moveaxis(x, -1, 0)
        l2, a2, b2, c2 = np.moveaxis(y, -1, 0)
        if self.log_scale:
            s1, s2 = np.exp(l1), np.exp(l2)
            out = np.stack(
                [l1 + l2, s1 * a2 + a1 / s2, b1 + b2 / s1, c1 + s1 * c2 + a1 * b2], axis=-1
            )
        else:
            out = np.stack(
                [l1 * l2, l1 * a2 + a1 / l2, b1 + b2 / l1, c1 + l1 * c2 + a1 * b2], axis=-1
            )
        return out

    def inverse(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        l, a, b, c = np.moveaxis(x, -1, 0)
        if self.log_scale:
            s = np.exp(l)
            return np.stack([-l, -a, -s * b, a * b - c / s], axis=-1)
        return np.stack([1.0 / l, -a, -l * b, a * b - c / l], axis=-1)

    def density(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        if self.log_scale:
            return np.exp(-x[..., 0])
        return x[..., 0] ** -2.0

    def to_element(self, x) -> PMatrixElement:
        l, a, b, c = (float(v) for v in x)
        return PMatrixElement(math.exp(l) if self.log_scale else l, a, b, c)

    def from_element(self, g: PMatrixElement) -> np.ndarray:
        lam = math.log(g.lam) if self.log_scale else g.lam
        return np.array([lam, g.a, g.b, g.c])


class AxBChart:
    """Chart (s, b) with a = exp(s) (log_scale) or (a, b) raw."""

    def __init__(self, log_scale: bool = True):
        self.log_scale = log_scale
        self.dim = 2

    def identity(self) -> np.ndarray:
        return np.array([0.0, 0.0]) if self.log_scale else np.array([1.0, 0.0])

    def multiply(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        s1, b1 = np.moveaxis(x, -1, 0)
        s2, b2 = np.moveaxis(y, -1, 0)
        if self.log_scale:
            return np.stack([s1 + s2, np.exp(s1) * b2 + b1], axis=-1)
        return np.stack([s1 * s2, s1 * b2 + b1], axis=-1)

    def inverse(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        s, b = np.moveaxis(x, -1, 0)
        if self.log_scale:
            return np.stack([-s, -b * np.exp(-s)], axis=-1)
        return np.stack([1.0 / s, -b / s], axis=-1)

    def density(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        if self.log_scale:
            return np.exp(-x[..., 0])
        return x[..., 0] ** -2.0

    def to_element(self, x) -> AxBElement:
        s, b = (float(v) for v in x)
        return AxBElement(math.exp(s) if self.log_scale else s, b)

    def from_element(self, g: AxBElement) -> np.ndarray:
        return np.array([math.log(g.a) if self.log_scale else g.a, g.b])


class NChart:
    """Flat chart for N: w entries coefficientwise, then the imaginary z block."""

    def __init__(self, spec: NGroupSpec):
        self.spec = spec
        self.dim = spec.dim

    def identity(self) -> np.ndarray:
        return np.zeros(self.dim)

    def _unpack(self, x):
        x = np.asarray(x, float)
        d, k = self.spec.tag.dim, self.spec.w_len
        w = x[..., : k * d].reshape(x.shape[:-1] + (k, d))
        z = np.zeros(x.shape[:-1] + (d,))
        z[..., 1:] = x[..., k * d :]
        return w, z

    def _pack(self, w, z) -> np.ndarray:
        lead = w.shape[:-2]
        flat_w = w.reshape(lead + (-1,))
        return np.concatenate([flat_w, z[..., 1:]], axis=-1)

    def multiply(self, x, y) -> np.ndarray:
        x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
        w1, z1 = self._unpack(x)
        w2, z2 = self._unpack(y)
        w, z = batch_n_multiply(self.spec, w1, z1, w2, z2)
        return self._pack(w, z)

    def inverse(self, x) -> np.ndarray:
        return -np.asarray(x, float)

    def density(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        return np.ones(x.shape[:-1])

    def to_element(self, x) -> NElement:
        from .heisenberg import n_from_coords

        return n_from_coords(self.spec, np.asarray(x, float))

    def from_element(self, g: NElement) -> np.ndarray:
        from .heisenberg import n_to_coords

        return n_to_coords(g)


def chart_for(desc: GroupDescriptor, log_scale: bool = True):
    if desc.family == "P3x3":
        return P3x3Chart(log_scale)
    if desc.family == "AXB":
        return AxBChart(log_scale)
    if desc.family == "N":
        return NChart(desc.spec)
    raise UnsupportedDescriptorError(f"no quadrature chart for family {desc.family}")
