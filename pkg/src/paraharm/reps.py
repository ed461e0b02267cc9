"""Representation models and their numerically checkable coefficients.

* Characters of N: chi_v(w, z) = exp(i Re<w, v>), constant in z, and central
  characters exp(i lambda(z)) with lambda(z) = -Re(m conj(z)).
* An exact phase-space model of the infinite-dimensional representation with
  central parameter m = i mu over C.  Operators are triples (q, xi, theta)
  acting on L^2 by f(x) -> e^{i theta} e^{i xi.x} f(x + q); composition is

      (q1, xi1, th1) (q2, xi2, th2) = (q1+q2, xi1+xi2, th1+th2+xi2.q1),

  exact in floating point, so the homomorphism tests carry no discretization
  error.  The embedding of N is

      (w, i t) -> (q, xi, theta) = (Im w, -2 mu Re w, -mu t - mu Re w . Im w),

  the unique choice (up to equivalence) making both the group cocycle
  Im<w1, w2> and the central identity come out exactly.
* The induced-picture model for the 3x3 group: sections over the dilation
  coset line, translated on the left, with the inner character of the
  lam = 1 subgroup absorbing the coset defect.
* Matrix coefficients of the left regular representation on coordinate
  charts, with a Gram assembly that shares one quadrature grid across all
  translates, so positive semidefiniteness survives discretization exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import algebra
from .algebra import AlgebraElement, AlgebraTag, FVector
from .errors import DomainError, QuadratureError, UnsupportedDescriptorError
from .heisenberg import N0Element, NElement, NGroupSpec, n_inverse, n_multiply
from .orbits import CentralParam, CharParam, N0Char
from .parabolic import PMatrixElement, p_inverse, p_multiply
from .quadrature import modulated_overlap_1d, product_grid


# ---------------------------------------------------------------------------
# Character evaluations.

def char_eval(v, x: NElement) -> complex:
    """chi_v(w, z) = exp(i Re<w, v>); unit modulus, independent of z."""
    vec = v.v if isinstance(v, CharParam) else v
    if vec.tag is not x.spec.tag or len(vec) != x.spec.w_len:
        raise DomainError("character parameter does not fit the group element")
    return cmath.exp(1j * float(algebra.re(algebra.hermitian_form(x.w, vec))))


def central_exponent(m, z: AlgebraElement) -> float:
    """lambda(z) = -Re(m conj(z)), linear in z."""
    mm = m.m if isinstance(m, CentralParam) else m
    return -float(algebra.re(algebra.multiply(mm, algebra.conjugate(z))))


def central_char_eval(m, z: AlgebraElement) -> complex:
    return cmath.exp(1j * central_exponent(m, z))


def n0_char_eval(nu: N0Char, n0: N0Element) -> complex:
    """The plane character (b, c) -> exp(i (s c + t b))."""
    return cmath.exp(1j * (nu.s * n0.c + nu.t * n0.b))


# ---------------------------------------------------------------------------
# Exact phase-space operators.

@dataclass(frozen=True)
class PhaseSpaceOp:
    """f(x) -> e^{i theta} e^{i xi . x} f(x + q); always unitary on L^2."""

    q: tuple
    xi: tuple
    theta: float

    def compose(self, other: "PhaseSpaceOp") -> "PhaseSpaceOp":
        if len(self.q) != len(other.q):
            raise DomainError("phase-space dimension mismatch")
        cocycle = sum(x * y for x, y in zip(other.xi, self.q))
        return PhaseSpaceOp(
            tuple(a + b for a, b in zip(self.q, other.q)),
            tuple(a + b for a, b in zip(self.xi, other.xi)),
            self.theta + other.theta + cocycle,
        )

    def apply(self, f: Callable, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, float)
        phase = np.exp(1j * (self.theta + x @ np.asarray(self.xi)))
        return phase * f(x + np.asarray(self.q))


def phase_space_identity(dim: int) -> PhaseSpaceOp:
    return PhaseSpaceOp((0.0,) * dim, (0.0,) * dim, 0.0)


def phase_space_distance(op1: PhaseSpaceOp, op2: PhaseSpaceOp) -> float:
    """Max coordinate deviation, with the global phase compared modulo 2 pi."""
    dq = max((abs(a - b) for a, b in zip(op1.q, op2.q)), default=0.0)
    dxi = max((abs(a - b) for a, b in zip(op1.xi, op2.xi)), default=0.0)
    dtheta = abs(cmath.exp(1j * (op1.theta - op2.theta)) - 1.0)
    return max(dq, dxi, dtheta)


def eta_op(m, x: NElement) -> PhaseSpaceOp:
    """The phase-space image of (w, z) for central parameter m = i mu (F = C).

    A homomorphism into PhaseSpaceOp with exact phases; central elements map
    to the pure phase (0, 0, lambda(z)).
    """
    mm = m.m if isinstance(m, CentralParam) else m
    if x.spec.tag is not AlgebraTag.COMPLEX or mm.tag is not AlgebraTag.COMPLEX:
        raise UnsupportedDescriptorError("the phase-space model is built over C only")
    mu = float(mm.coeffs[1])
    if mu == 0.0 or float(mm.coeffs[0]) != 0.0:
        raise DomainError("central parameter must be nonzero purely imaginary")
    a = tuple(float(e.coeffs[0]) for e in x.w.entries)
    b = tuple(float(e.coeffs[1]) for e in x.w.entries)
    t = float(x.z.coeffs[1])
    theta = -mu * t - mu * sum(p * q for p, q in zip(a, b))
    return PhaseSpaceOp(b, tuple(-2.0 * mu * p for p in a), theta)


def gaussian_coefficient(m, x: NElement) -> complex:
    """<eta(x) g, g> for the unit Gaussian g, in closed form.

    The modulus is exp(-(|q|^2 + |xi|^2)/4); on the center it is exactly 1.
    """
    op = eta_op(m, x)
    q = np.asarray(op.q)
    xi = np.asarray(op.xi)
    return cmath.exp(1j * (op.theta - 0.5 * float(xi @ q))) * math.exp(
        -0.25 * float(q @ q + xi @ xi)
    )


def gaussian_coefficient_modulus(m, x: NElement) -> float:
    """exp(-(|q|^2 + |xi|^2)/4): the exact modulus of the Gaussian coefficient.

    On the center q = xi = 0, so the value is exactly 1.0 (the closed-form
    complex value itself only reaches |.| = 1 up to one rounding of cos/sin).
    """
    op = eta_op(m, x)
    q = np.asarray(op.q)
    xi = np.asarray(op.xi)
    return math.exp(-0.25 * float(q @ q + xi @ xi))


def gaussian_coefficient_quadrature(m, x: NElement, nodes: int = 240) -> complex:
    """The same coefficient by direct quadrature of the defining integrals."""
    op = eta_op(m, x)
    value = cmath.exp(1j * op.theta)
    for qk, xik in zip(op.q, op.xi):
        value *= modulated_overlap_1d(qk, xik, nodes=nodes)
    return value


# ---------------------------------------------------------------------------
# Induced-picture model for the 3x3 group.

@dataclass(frozen=True)
class InducedRep3x3:
    """Left translation on sections over the dilation line.

    The inducing subgroup is the normal lam = 1 wall; its unitary character
    sigma(1, a, b, c) = exp(i (rho a + s c + t b)) combines the plane
    character (s, t) with the wall character rho.  The quotient is the
    dilation group, whose Haar measure is translation invariant, so the
    induced action is plain left translation of sections.
    """

    s: float
    t: float
    rho: float = 0.0

    # The quotient of the 3x3 group by the lam=1 wall carries an invariant
    # measure (it is a group); this flag records the precondition.
    quotient_has_invariant_measure: bool = field(default=True, init=False)

    def inner_character(self, a: float, b: float, c: float) -> complex:
        return cmath.exp(1j * (self.rho * a + self.s * c + self.t * b))

    @staticmethod
    def coset_decompose(g: PMatrixElement):
        """g = g_lam h with g_lam the pure dilation and h in the lam = 1 wall."""
        h = (g.a / g.lam, g.lam * g.b, g.c / g.lam)
        return g.lam, h

    def translate(self, x: PMatrixElement, section: Callable[[float], complex], lam: float) -> complex:
        """(pi(x) f)(g_lam) = conj(sigma(h)) f(lam') where x^-1 g_lam = g_lam' h."""
        moved = p_multiply(p_inverse(x), PMatrixElement(lam, 0.0, 0.0, 0.0))
        lam_new, (ha, hb, hc) = self.coset_decompose(moved)
        return complex(section(lam_new)) * self.inner_character(ha, hb, hc).conjugate()


# ---------------------------------------------------------------------------
# Coefficient functions.

@dataclass(frozen=True)
class GroupOps:
    """The minimal group interface a coefficient function needs."""

    multiply: Callable
    inverse: Callable
    identity: object


def n_group_ops(spec: NGroupSpec) -> GroupOps:
    from .heisenberg import n_identity

    return GroupOps(n_multiply, n_inverse, n_identity(spec))


def p3x3_group_ops() -> GroupOps:
    from .parabolic import p_identity

    return GroupOps(p_multiply, p_inverse, p_identity())


def chart_group_ops(chart) -> GroupOps:
    return GroupOps(chart.multiply, chart.inverse, chart.identity())


@dataclass(frozen=True)
class CoefficientFn:
    """A matrix-coefficient-like function with its group and provenance."""

    evaluate: Callable[[object], complex]
    group: GroupOps
    label: str
    gram_builder: Callable | None = None

    def __call__(self, g) -> complex:
        return self.evaluate(g)

    def gram(self, points) -> np.ndarray:
        """[phi(g_i^-1 g_j)]_{ij}, via the structure-preserving path if present."""
        if self.gram_builder is not None:
            return self.gram_builder(points)
        n = len(points)
        out = np.empty((n, n), dtype=complex)
        for i in range(n):
            gi_inv = self.group.inverse(points[i])
            for j in range(n):
                out[i, j] = self.evaluate(self.group.multiply(gi_inv, points[j]))
        return out


def char_coefficient(v: CharParam) -> CoefficientFn:
    return CoefficientFn(
        evaluate=lambda x: char_eval(v, x),
        group=n_group_ops(v.spec),
        label=f"character:{v.spec.tag.letter}:{v.spec.n}",
    )


def gaussian_coefficient_fn(m: CentralParam) -> CoefficientFn:
    return CoefficientFn(
        evaluate=lambda x: gaussian_coefficient(m, x),
        group=n_group_ops(m.spec),
        label="gaussian-vector-coefficient",
    )


class RegularCoefficient:
    """phi(g) = int f(g^-1 x) conj(h(x)) dmu_L(x) on a coordinate chart.

    The quadrature grid is fixed once.  `gram` evaluates all entries as
    discrete L^2 inner products of left translates on that one grid, which
    both approximates phi(g_i^-1 g_j) (left invariance moves the integral)
    and is exactly positive semidefinite when h = f.

    Resolution bound: left translation by g compresses some coordinate
    directions by a factor up to exp(|scale part of g|), so pointwise values
    are trustworthy only while the compressed feature width of f stays above
    the grid spacing; keep translation arguments moderate or raise `nodes`.
    """

    def __init__(self, chart, f, h, box, nodes: int = 12):
        self.chart = chart
        self.f = f
        self.h = h
        self.points, weights = product_grid(box, nodes)
        self.wdens = weights * chart.density(self.points)
        if np.any(self.wdens <= 0):
            raise QuadratureError("quadrature weights must stay positive")
        self._hvals = np.conjugate(np.asarray(h(self.points), dtype=complex)) * self.wdens

    def __call__(self, g) -> complex:
        g = np.asarray(g, float)
        shifted = self.chart.multiply(self.chart.inverse(g), self.points)
        return complex(np.sum(np.asarray(self.f(shifted), dtype=complex) * self._hvals))

    def translate_matrix(self, points, fn) -> np.ndarray:
        scale = np.sqrt(self.wdens)
        rows = []
        for g in points:
            shifted = self.chart.multiply(self.chart.inverse(np.asarray(g, float)), self.points)
            rows.append(np.asarray(fn(shifted), dtype=complex) * scale)
        return np.array(rows)

    def gram(self, points) -> np.ndarray:
        vf = self.translate_matrix(points, self.f)
        wh = vf if self.h is self.f else self.translate_matrix(points, self.h)
        return np.conjugate(wh) @ vf.T


def regular_coefficient(chart, f, h, box, nodes: int = 12, label: str = "regular") -> CoefficientFn:
    reg = RegularCoefficient(chart, f, h, box, nodes)
    return CoefficientFn(
        evaluate=reg.__call__,
        group=chart_group_ops(chart),
        label=label,
        gram_builder=reg.gram,
    )


# ---------------------------------------------------------------------------
# Analytic checks on coefficients.

def positive_definite_check(phi: CoefficientFn, points) -> float:
    """Minimum eigenvalue of the Gram matrix [phi(g_i^-1 g_j)]."""
    if len(points) < 2:
        raise DomainError("need at least two points")
    gram = np.asarray(phi.gram(points), dtype=complex)
    gram = 0.5 * (gram + gram.conj().T)
    return float(np.linalg.eigvalsh(gram)[0])


def coset_constancy_check(phi, coset_elements, g_samples, multiply, tol: float = 1e-10) -> bool:
    """True iff phi(g h) = phi(g) within tol for all sampled g and h."""
    for g in g_samples:
        base = phi(g)
        for h in coset_elements:
            if abs(phi(multiply(g, h)) - base) > tol:
                return False
    return True


def decay_radius(
    value_at,
    dim: int,
    epsilon: float,
    rng: np.random.Generator,
    r_start: float = 1.0,
    r_max: float = 4096.0,
    samples_per_shell: int = 48,
    include_axes: bool = True,
) -> dict:
    """Doubling sweep over the coordinate norm.

    Returns the smallest radius in the sweep whose sphere samples all fall
    below epsilon, together with the per-shell maxima seen on the way.  The
    signed coordinate axes are always sampled alongside random directions:
    on sheared groups they are the slowest-decaying directions and random
    sampling alone would miss them.
    """
    axes = np.concatenate([np.eye(dim), -np.eye(dim)]) if include_axes else np.empty((0, dim))
    shells = []
    radius = r_start
    while radius <= r_max:
        dirs = rng.normal(size=(samples_per_shell, dim))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        dirs = np.concatenate([axes, dirs])
        values = np.abs(np.asarray(value_at(radius * dirs)))
        shells.append({"radius": radius, "max_abs": float(values.max())})
        if values.max() < epsilon:
            return {"epsilon": epsilon, "radius": radius, "shells": shells}
        radius *= 2.0
    raise QuadratureError(f"no decay below {epsilon} out to radius {r_max}")
