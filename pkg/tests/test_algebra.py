"""Division algebra arithmetic: defining relations, composition identities,
and the hermitian form."""

from fractions import Fraction

import numpy as np
import pytest

from paraharm.algebra import (
    AlgebraElement,
    AlgebraTag,
    basis_unit,
    batch_conjugate,
    batch_hermitian,
    batch_multiply,
    batch_norm,
    conjugate,
    element,
    fvector,
    hermitian_form,
    im,
    inverse,
    is_close,
    multiply,
    norm,
    norm_sq,
    one,
    random_element,
    random_fvector,
    re,
    structure_tensor,
    vector_norm_sq,
    zero,
)
from paraharm.errors import DomainError

R, C, H, O = AlgebraTag.REAL, AlgebraTag.COMPLEX, AlgebraTag.QUATERNION, AlgebraTag.OCTONION
RNG = np.random.default_rng(101)


def test_quaternion_defining_relations():
    i, j, k = basis_unit(H, 1), basis_unit(H, 2), basis_unit(H, 3)
    assert multiply(i, j) == k
    assert multiply(j, i) == -k
    assert multiply(j, k) == basis_unit(H, 1)
    assert multiply(i, i) == -one(H)
    assert multiply(multiply(i, j), k) == -one(H)


def test_identity_element():
    for tag in (R, C, H, O):
        x = random_element(tag, RNG)
        assert is_close(multiply(x, one(tag)), x)
        assert is_close(multiply(one(tag), x), x)


def test_octonion_associativity_failure_witness():
    # Brute force over the basis table: some triple must fail to associate.
    witnesses = []
    units = [basis_unit(O, k) for k in range(8)]
    for a in units:
        for b in units:
            for c in units:
                lhs = multiply(multiply(a, b), c)
                rhs = multiply(a, multiply(b, c))
                if not is_close(lhs, rhs, 0.0):
                    witnesses.append((a, b, c))
    assert witnesses, "octonions associated on the whole basis table"
    e1, e2, e4 = units[1], units[2], units[4]
    lhs = multiply(multiply(e1, e2), e4)
    rhs = multiply(e1, multiply(e2, e4))
    assert lhs == -rhs and lhs == units[7]


def test_associative_algebras_associate():
    for tag in (R, C, H):
        for _ in range(200):
            x, y, z = (random_element(tag, RNG) for _ in range(3))
            assert is_close(multiply(multiply(x, y), z), multiply(x, multiply(y, z)), 1e-12)


def test_composition_norm_batch():
    for tag in (R, C, H, O):
        x = RNG.normal(size=(10_000, tag.dim))
        y = RNG.normal(size=(10_000, tag.dim))
        prod = batch_multiply(tag, x, y)
        assert np.max(np.abs(batch_norm(prod) - batch_norm(x) * batch_norm(y))) < 1e-12 * 100


def test_moufang_identity_octonions():
    z = RNG.normal(size=(1000, 8))
    x = RNG.normal(size=(1000, 8))
    y = RNG.normal(size=(1000, 8))
    lhs = batch_multiply(O, z, batch_multiply(O, x, batch_multiply(O, z, y)))
    rhs = batch_multiply(O, batch_multiply(O, batch_multiply(O, z, x), z), y)
    assert np.max(np.abs(lhs - rhs)) < 1e-12 * 100


def test_alternativity_octonions():
    x = RNG.normal(size=(1000, 8))
    y = RNG.normal(size=(1000, 8))
    lhs = batch_multiply(O, x, batch_multiply(O, x, y))
    rhs = batch_multiply(O, batch_multiply(O, x, x), y)
    assert np.max(np.abs(lhs - rhs)) < 1e-12 * 100


def test_conjugation_properties():
    assert conjugate(basis_unit(C, 1)) == -basis_unit(C, 1)
    q = element(H, (3.0, 2.0, -1.0, 0.0))
    assert re(q) == 3.0
    assert im(q) == element(H, (0.0, 2.0, -1.0, 0.0))
    for tag in (C, H, O):
        x, y = random_element(tag, RNG), random_element(tag, RNG)
        assert is_close(conjugate(conjugate(x)), x, 0.0)
        assert is_close(conjugate(multiply(x, y)), multiply(conjugate(y), conjugate(x)), 1e-12)
        assert is_close(x, im(x) + element(tag, (re(x),)), 0.0)


def test_inverse_random_quaternions():
    for _ in range(1000):
        q = random_element(H, RNG)
        if norm(q) < 1e-2:
            continue
        assert is_close(multiply(inverse(q), q), one(H), 1e-14 * max(1.0, 1.0 / norm_sq(q)))


def test_inverse_exact_rationals():
    q = AlgebraElement(H, (Fraction(1, 2), Fraction(-2, 3), Fraction(4, 7), Fraction(1, 5)))
    assert multiply(inverse(q), q) == AlgebraElement(H, (Fraction(1), Fraction(0), Fraction(0), Fraction(0)))


def test_inverse_of_zero_raises():
    with pytest.raises(DomainError):
        inverse(zero(O))


def test_tag_mismatch_raises():
    with pytest.raises(DomainError):
        multiply(one(C), one(H))


def test_hermitian_form_values():
    w = fvector(C, [one(C)])
    v = fvector(C, [basis_unit(C, 1)])
    assert hermitian_form(w, v) == element(C, (0.0, -1.0))


def test_hermitian_form_properties():
    for tag in (R, C, H, O):
        for k in (1, 2, 3):
            w = random_fvector(tag, k, RNG)
            w2 = random_fvector(tag, k, RNG)
            ww = hermitian_form(w, w)
            # <w,w> is real and matches the coefficient-sum oracle.
            assert all(abs(c) < 1e-12 for c in ww.coeffs[1:])
            assert abs(re(ww) - vector_norm_sq(w)) < 1e-10
            # Re<x,y> is the Euclidean pairing of coefficient vectors.
            euclid = sum(
                float(a * b) for e1, e2 in zip(w.entries, w2.entries)
                for a, b in zip(e1.coeffs, e2.coeffs)
            )
            assert abs(re(hermitian_form(w, w2)) - euclid) < 1e-10
            # Im<y,x> = -Im<x,y>.
            fwd = im(hermitian_form(w, w2))
            bwd = im(hermitian_form(w2, w))
            assert is_close(fwd + bwd, zero(tag), 1e-12)


def test_hermitian_form_mismatch_raises():
    with pytest.raises(DomainError):
        hermitian_form(random_fvector(C, 2, RNG), random_fvector(C, 3, RNG))
    with pytest.raises(DomainError):
        hermitian_form(random_fvector(C, 2, RNG), random_fvector(H, 2, RNG))


def test_batch_matches_scalar_paths():
    for tag in (C, H, O):
        x, y = random_element(tag, RNG), random_element(tag, RNG)
        bx, by = np.array(x.coeffs), np.array(y.coeffs)
        assert np.allclose(batch_multiply(tag, bx, by), multiply(x, y).coeffs, atol=1e-13)
        assert np.allclose(batch_conjugate(tag, bx), conjugate(x).coeffs, atol=0.0)
    w1 = random_fvector(H, 2, RNG)
    w2 = random_fvector(H, 2, RNG)
    b1 = np.array([e.coeffs for e in w1.entries])
    b2 = np.array([e.coeffs for e in w2.entries])
    assert np.allclose(batch_hermitian(H, b1, b2), hermitian_form(w1, w2).coeffs, atol=1e-13)


def test_structure_tensor_shape_and_signs():
    for dim in (1, 2, 4, 8):
        t = structure_tensor(dim)
        assert t.shape == (dim, dim, dim)
        assert set(np.unique(t)).issubset({-1.0, 0.0, 1.0})
        # e_0 is the identity on both sides.
        assert np.allclose(t[0], np.eye(dim))
        assert np.allclose(t[:, 0, :], np.eye(dim))
