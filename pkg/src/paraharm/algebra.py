"""Arithmetic in the four real composition algebras R, C, H and O.

Elements are coefficient tuples over the standard basis (1, e1, ..., e_{d-1})
with d in {1, 2, 4, 8}.  Products are generated by the Cayley-Dickson doubling

    (a, b) (c, d) = (a c - d~ b,  d a + b c~)        (x~ = conjugate of x)

applied to R -> C -> H -> O, so i*j = k holds in H and the octonion basis
carries the sign table induced by the doubling.  Conjugation negates the
imaginary coefficients, the squared norm is the coefficient sum of squares,
and |xy| = |x| |y| in all four algebras.  O is not associative (it is only
alternative), which callers must not rely on.

Scalar operations are plain Python arithmetic on tuples, so exact coefficient
types (`fractions.Fraction`, `int`) pass through unchanged.  The `batch_*`
functions operate on numpy arrays of shape (..., d) for bulk work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DomainError


class AlgebraTag(Enum):
    """One of the four normed real division algebras, keyed by dimension."""

    REAL = 1
    COMPLEX = 2
    QUATERNION = 4
    OCTONION = 8

    @property
    def dim(self) -> int:
        return self.value

    @property
    def associative(self) -> bool:
        return self.value <= 4

    @property
    def letter(self) -> str:
        return {1: "R", 2: "C", 4: "H", 8: "O"}[self.value]

    @classmethod
    def from_letter(cls, letter: str) -> "AlgebraTag":
        table = {"R": cls.REAL, "C": cls.COMPLEX, "H": cls.QUATERNION, "O": cls.OCTONION}
        try:
            return table[letter.upper()]
        except KeyError:
            raise DomainError(f"unknown algebra letter {letter!r}; expected one of R, C, H, O")


def _cd_conj(x: tuple) -> tuple:
    return (x[0],) + tuple(-c for c in x[1:])


def _cd_mul(x: tuple, y: tuple) -> tuple:
    # Recursive Cayley-Dickson product on coefficient tuples of equal 2^k length.
    if len(x) == 1:
        return (x[0] * y[0],)
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    ac = _cd_mul(a, c)
    db = _cd_mul(_cd_conj(d), b)
    da = _cd_mul(d, a)
    bc = _cd_mul(b, _cd_conj(c))
    return tuple(p - q for p, q in zip(ac, db)) + tuple(p + q for p, q in zip(da, bc))


@lru_cache(maxsize=None)
def structure_tensor(dim: int) -> np.ndarray:
    """(d, d, d) tensor T with e_i e_j = sum_k T[i, j, k] e_k; entries in {-1, 0, 1}."""
    tensor = np.zeros((dim, dim, dim))
    for i in range(dim):
        ei = tuple(1 if p == i else 0 for p in range(dim))
        for j in range(dim):
            ej = tuple(1 if p == j else 0 for p in range(dim))
            tensor[i, j, :] = _cd_mul(ei, ej)
    return tensor


@dataclass(frozen=True)
class AlgebraElement:
    """A value of F as a coefficient tuple over the standard basis."""

    tag: AlgebraTag
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.tag.dim:
            raise DomainError(
                f"{self.tag.name} element needs {self.tag.dim} coefficients, "
                f"got {len(self.coeffs)}"
            )

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_tags(self, other)
        return AlgebraElement(self.tag, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_tags(self, other)
        return AlgebraElement(self.tag, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.tag, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return AlgebraElement(self.tag, tuple(other * a for a in self.coeffs))

    def __rmul__(self, other):
        # Scalar-on-the-left only; algebra products must use multiply() or x * y.
        return AlgebraElement(self.tag, tuple(other * a for a in self.coeffs))

    def scale(self, s) -> "AlgebraElement":
        return AlgebraElement(self.tag, tuple(s * a for a in self.coeffs))


def _check_tags(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.tag is not y.tag:
        raise DomainError(f"algebra tag mismatch: {x.tag.name} vs {y.tag.name}")


def element(tag: AlgebraTag, coeffs) -> AlgebraElement:
    coeffs = tuple(coeffs)
    if len(coeffs) < tag.dim:
        coeffs = coeffs + (0.0,) * (tag.dim - len(coeffs))
    return AlgebraElement(tag, coeffs)


def zero(tag: AlgebraTag) -> AlgebraElement:
    return AlgebraElement(tag, (0.0,) * tag.dim)


def one(tag: AlgebraTag) -> AlgebraElement:
    return AlgebraElement(tag, (1.0,) + (0.0,) * (tag.dim - 1))


def basis_unit(tag: AlgebraTag, k: int) -> AlgebraElement:
    """The basis element e_k (e_0 = 1, e_1 = i, ...)."""
    if not 0 <= k < tag.dim:
        raise DomainError(f"basis index {k} out of range for {tag.name}")
    return AlgebraElement(tag, tuple(1.0 if p == k else 0.0 for p in range(tag.dim)))


def scalar(tag: AlgebraTag, value) -> AlgebraElement:
    return AlgebraElement(tag, (value,) + (0,) * (tag.dim - 1))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Algebra product xy.  Bilinear; conj(xy) = conj(y) conj(x); |xy| = |x| |y|."""
    _check_tags(x, y)
    return AlgebraElement(x.tag, _cd_mul(x.coeffs, y.coeffs))


def conjugate(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.tag, _cd_conj(x.coeffs))


def re(x: AlgebraElement):
    """Real part as a plain number; x = re(x)*1 + im(x)."""
    return x.coeffs[0]


def im(x: AlgebraElement) -> AlgebraElement:
    """Imaginary part as an algebra element with zero real coefficient."""
    return AlgebraElement(x.tag, (0 * x.coeffs[0],) + x.coeffs[1:])


def norm_sq(x: AlgebraElement):
    return sum(c * c for c in x.coeffs)


def norm(x: AlgebraElement) -> float:
    return math.sqrt(float(norm_sq(x)))


def inverse(x: AlgebraElement) -> AlgebraElement:
    """Multiplicative inverse conj(x) / |x|^2.  Raises on x = 0."""
    nsq = norm_sq(x)
    if nsq == 0:
        raise DomainError("zero element has no inverse")
    return AlgebraElement(x.tag, tuple(c / nsq for c in _cd_conj(x.coeffs)))


def is_close(x: AlgebraElement, y: AlgebraElement, tol: float = 1e-12) -> bool:
    _check_tags(x, y)
    return all(abs(float(a - b)) <= tol for a, b in zip(x.coeffs, y.coeffs))


@dataclass(frozen=True)
class FVector:
    """A column vector in F^k, all entries sharing one algebra tag."""

    tag: AlgebraTag
    entries: tuple

    def __post_init__(self):
        for e in self.entries:
            if e.tag is not self.tag:
                raise DomainError("FVector entries must all share the vector's tag")

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "FVector") -> "FVector":
        _check_vectors(self, other)
        return FVector(self.tag, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "FVector") -> "FVector":
        _check_vectors(self, other)
        return FVector(self.tag, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "FVector":
        return FVector(self.tag, tuple(-a for a in self.entries))

    def scale(self, s) -> "FVector":
        """Entrywise multiplication by a real scalar."""
        return FVector(self.tag, tuple(a.scale(s) for a in self.entries))

    def right_mul(self, s: AlgebraElement) -> "FVector":
        """Right module action v . s (entrywise right multiplication)."""
        return FVector(self.tag, tuple(multiply(a, s) for a in self.entries))

    def left_mul(self, s: AlgebraElement) -> "FVector":
        """Entrywise left multiplication s . v; distinct from right_mul over H, O."""
        return FVector(self.tag, tuple(multiply(s, a) for a in self.entries))


def _check_vectors(x: FVector, y: FVector) -> None:
    if x.tag is not y.tag:
        raise DomainError(f"vector tag mismatch: {x.tag.name} vs {y.tag.name}")
    if len(x.entries) != len(y.entries):
        raise DomainError(f"vector length mismatch: {len(x.entries)} vs {len(y.entries)}")


def fvector(tag: AlgebraTag, entries) -> FVector:
    return FVector(tag, tuple(entries))


def zero_vector(tag: AlgebraTag, k: int) -> FVector:
    return FVector(tag, tuple(zero(tag) for _ in range(k)))


def standard_basis_vector(tag: AlgebraTag, k: int, index: int = 0) -> FVector:
    entries = [zero(tag) for _ in range(k)]
    entries[index] = one(tag)
    return FVector(tag, tuple(entries))


def hermitian_form(x: FVector, y: FVector) -> AlgebraElement:
    """<x, y> = sum_i x_i conj(y_i) (positive definite; <x,x> is real >= 0)."""
    _check_vectors(x, y)
    acc = zero(x.tag)
    for a, b in zip(x.entries, y.entries):
        acc = acc + multiply(a, conjugate(b))
    return acc


def vector_norm_sq(v: FVector):
    return sum(norm_sq(e) for e in v.entries)


def vector_norm(v: FVector) -> float:
    return math.sqrt(float(vector_norm_sq(v)))


def vector_is_close(x: FVector, y: FVector, tol: float = 1e-12) -> bool:
    _check_vectors(x, y)
    return all(is_close(a, b, tol) for a, b in zip(x.entries, y.entries))


# ---------------------------------------------------------------------------
# Batch paths (numpy, float64).  Coefficient axes are the trailing axis.

def batch_multiply(tag: AlgebraTag, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    tensor = structure_tensor(tag.dim)
    return np.einsum("...i,...j,ijk->...k", x, y, tensor)


def batch_conjugate(tag: AlgebraTag, x: np.ndarray) -> np.ndarray:
    signs = np.full(tag.dim, -1.0)
    signs[0] = 1.0
    return x * signs


def batch_norm(x: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(x * x, axis=-1))


def batch_hermitian(tag: AlgebraTag, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """<x, y> over batched F^k arrays of shape (..., k, d); sums the k axis."""
    prod = batch_multiply(tag, x, batch_conjugate(tag, y))
    return np.sum(prod, axis=-2)


# ---------------------------------------------------------------------------
# Random sampling helpers (seeded numpy generators keep everything reproducible).

def random_element(tag: AlgebraTag, rng: np.random.Generator, scale: float = 1.0) -> AlgebraElement:
    return AlgebraElement(tag, tuple(float(c) for c in rng.normal(0.0, scale, tag.dim)))


def random_unit(tag: AlgebraTag, rng: np.random.Generator) -> AlgebraElement:
    while True:
        coeffs = rng.normal(0.0, 1.0, tag.dim)
        n = float(np.sqrt(np.sum(coeffs * coeffs)))
        if n > 1e-6:
            return AlgebraElement(tag, tuple(float(c / n) for c in coeffs))


def random_imaginary(tag: AlgebraTag, rng: np.random.Generator, scale: float = 1.0) -> AlgebraElement:
    coeffs = rng.normal(0.0, scale, tag.dim)
    coeffs[0] = 0.0
    return AlgebraElement(tag, tuple(float(c) for c in coeffs))


def random_fvector(tag: AlgebraTag, k: int, rng: np.random.Generator, scale: float = 1.0) -> FVector:
    return FVector(tag, tuple(random_element(tag, rng, scale) for _ in range(k)))
