"""Group law of the twisted products F^{n-1} x Im F."""

from fractions import Fraction

import numpy as np
import pytest

from paraharm.algebra import (
    AlgebraElement,
    AlgebraTag,
    FVector,
    basis_unit,
    element,
    fvector,
    im,
    is_close,
    one,
    vector_is_close,
    zero,
    zero_vector,
)
from paraharm.errors import DomainError
from paraharm.heisenberg import (
    N0Element,
    NElement,
    NGroupSpec,
    batch_n_multiply,
    commutator,
    commutator_closed_form,
    is_central,
    n0_multiply,
    n_from_coords,
    n_identity,
    n_inverse,
    n_multiply,
    n_to_coords,
    random_n_element,
)

R, C, H, O = AlgebraTag.REAL, AlgebraTag.COMPLEX, AlgebraTag.QUATERNION, AlgebraTag.OCTONION
RNG = np.random.default_rng(202)

ALL_SPECS = [NGroupSpec(tag, n) for tag in (R, C, H, O) for n in (2, 3, 4)]


def test_identity_and_inverse():
    for spec in ALL_SPECS:
        e = n_identity(spec)
        g = random_n_element(spec, RNG)
        prod = n_multiply(e, g)
        assert vector_is_close(prod.w, g.w, 0.0) and is_close(prod.z, g.z, 0.0)
        gg = n_multiply(g, n_inverse(g))
        assert vector_is_close(gg.w, e.w, 1e-13) and is_close(gg.z, e.z, 1e-13)


def test_group_law_example_complex():
    spec = NGroupSpec(C, 2)
    g1 = NElement(spec, fvector(C, [one(C)]), zero(C))
    g2 = NElement(spec, fvector(C, [basis_unit(C, 1)]), zero(C))
    prod = n_multiply(g1, g2)
    assert prod.w.entries[0] == element(C, (1.0, 1.0))
    assert prod.z == element(C, (0.0, -1.0))  # Im(1 * conj(i)) = -i


def test_real_case_is_abelian():
    spec = NGroupSpec(R, 3)
    for _ in range(1000):
        g1 = random_n_element(spec, RNG)
        g2 = random_n_element(spec, RNG)
        p12 = n_multiply(g1, g2)
        p21 = n_multiply(g2, g1)
        assert vector_is_close(p12.w, p21.w, 0.0) and is_close(p12.z, p21.z, 0.0)
        assert is_close(p12.z, zero(R), 0.0)


def test_inverse_exact_in_rational_coordinates():
    spec = NGroupSpec(H, 3)

    def rational(num_range=20):
        return Fraction(int(RNG.integers(-num_range, num_range)), int(RNG.integers(1, num_range)))

    for _ in range(50):
        w = FVector(H, tuple(AlgebraElement(H, tuple(rational() for _ in range(4))) for _ in range(2)))
        z = AlgebraElement(H, (Fraction(0),) + tuple(rational() for _ in range(3)))
        g = NElement(spec, w, z)
        prod = n_multiply(g, n_inverse(g))
        assert all(c == 0 for e in prod.w.entries for c in e.coeffs)
        assert all(c == 0 for c in prod.z.coeffs)


def test_central_inverse_example():
    spec = NGroupSpec(C, 2)
    g = NElement(spec, zero_vector(C, 1), element(C, (0.0, 0.7)))
    assert n_inverse(g).z == element(C, (0.0, -0.7))
    g1 = NElement(spec, fvector(C, [one(C)]), zero(C))
    assert n_inverse(g1).w.entries[0] == element(C, (-1.0, -0.0))


def test_commutator_example_and_closed_form():
    spec = NGroupSpec(C, 2)
    g1 = NElement(spec, fvector(C, [one(C)]), zero(C))
    g2 = NElement(spec, fvector(C, [basis_unit(C, 1)]), zero(C))
    comm = commutator(g1, g2)
    assert vector_is_close(comm.w, zero_vector(C, 1), 1e-14)
    assert is_close(comm.z, element(C, (0.0, -2.0)), 1e-14)
    for spec in (NGroupSpec(C, 2), NGroupSpec(H, 3), NGroupSpec(O, 2)):
        for _ in range(300):
            a, b = random_n_element(spec, RNG), random_n_element(spec, RNG)
            brute = commutator(a, b)
            closed = commutator_closed_form(a, b)
            assert vector_is_close(brute.w, closed.w, 1e-12)
            assert is_close(brute.z, closed.z, 1e-12)
    ga = random_n_element(NGroupSpec(H, 2), RNG)
    self_comm = commutator(ga, ga)
    assert is_close(self_comm.z, zero(H), 1e-13)


def test_commutator_real_always_trivial():
    spec = NGroupSpec(R, 4)
    for _ in range(100):
        c = commutator(random_n_element(spec, RNG), random_n_element(spec, RNG))
        assert is_close(c.z, zero(R), 0.0)
        assert vector_is_close(c.w, zero_vector(R, 3), 0.0)


def test_is_central():
    spec = NGroupSpec(C, 2)
    assert is_central(NElement(spec, zero_vector(C, 1), basis_unit(C, 1)))
    assert not is_central(NElement(spec, fvector(C, [one(C)]), zero(C)))
    # Over R everything is central: the group is abelian.
    spec_r = NGroupSpec(R, 3)
    assert is_central(random_n_element(spec_r, RNG))


def test_is_central_matches_commutator_sampling():
    for spec in (NGroupSpec(C, 2), NGroupSpec(H, 2), NGroupSpec(R, 3)):
        for _ in range(20):
            g = random_n_element(spec, RNG)
            if RNG.random() < 0.5:
                g = NElement(spec, zero_vector(spec.tag, spec.w_len), g.z)
            commutes = all(
                is_close(commutator(g, random_n_element(spec, RNG)).z, zero(spec.tag), 1e-10)
                for _ in range(100)
            )
            assert is_central(g) == commutes


def test_associativity_batch():
    for spec in ALL_SPECS:
        k, d = spec.w_len, spec.tag.dim
        w = RNG.normal(size=(3, 10_000, k, d))
        z = RNG.normal(size=(3, 10_000, d))
        z[..., 0] = 0.0
        w12, z12 = batch_n_multiply(spec, w[0], z[0], w[1], z[1])
        left_w, left_z = batch_n_multiply(spec, w12, z12, w[2], z[2])
        w23, z23 = batch_n_multiply(spec, w[1], z[1], w[2], z[2])
        right_w, right_z = batch_n_multiply(spec, w[0], z[0], w23, z23)
        assert np.max(np.abs(left_w - right_w)) < 1e-12
        assert np.max(np.abs(left_z - right_z)) < 1e-12 * 100


def test_spec_mismatch_raises():
    g1 = random_n_element(NGroupSpec(C, 2), RNG)
    g2 = random_n_element(NGroupSpec(C, 3), RNG)
    with pytest.raises(DomainError):
        n_multiply(g1, g2)


def test_z_must_be_imaginary():
    spec = NGroupSpec(C, 2)
    with pytest.raises(DomainError):
        NElement(spec, zero_vector(C, 1), one(C))


def test_coords_roundtrip():
    for spec in ALL_SPECS:
        g = random_n_element(spec, RNG)
        back = n_from_coords(spec, n_to_coords(g))
        assert vector_is_close(back.w, g.w, 0.0) and is_close(back.z, g.z, 0.0)
    assert NGroupSpec(O, 2).dim == 15
    assert NGroupSpec(C, 3).dim == 5


def test_translation_jacobians_are_unimodular():
    # Lebesgue measure in (w, z) coordinates is both left and right invariant:
    # translation Jacobians are unit-determinant (triangular with unit diagonal).
    from paraharm.parabolic import NChart
    from paraharm.quadrature import numerical_jacobian

    for spec in (NGroupSpec(C, 2), NGroupSpec(H, 2)):
        chart = NChart(spec)
        g0 = n_to_coords(random_n_element(spec, RNG))
        x = n_to_coords(random_n_element(spec, RNG))
        left = numerical_jacobian(lambda y: chart.multiply(g0, y), x)
        right = numerical_jacobian(lambda y: chart.multiply(y, g0), x)
        assert abs(np.linalg.det(left) - 1.0) < 1e-8
        assert abs(np.linalg.det(right) - 1.0) < 1e-8


def test_n0_plane():
    a = N0Element(1.5, -2.0)
    b = N0Element(0.5, 3.0)
    assert n0_multiply(a, b) == N0Element(2.0, 1.0)
