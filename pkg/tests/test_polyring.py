import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import coeffs, scalars
from paf.oracle import naive_convolve
from paf.polyring import (
    BoundedPoly,
    IncompatibleSpacesError,
    conj_reverse,
    evaluate,
    inner_product,
    mul,
    mult_matrix,
)

A = BoundedPoly([0, -1, 0.5, 0.5, 0, 0])


def test_mul_reproduces_example_factorization():
    # (0 z + 1)^2 * (z - 1) z (z + 2) / 2 in C_<=5
    inf_factor = BoundedPoly([1, 0])
    finite = BoundedPoly([0, -1, 0.5, 0.5])
    prod = mul(mul(inf_factor, inf_factor), finite)
    assert prod.degree_bound == 5
    np.testing.assert_array_equal(prod.coeffs, A.coeffs)


def test_mul_by_one_is_identity(rng):
    b = BoundedPoly(rng.standard_normal(5) + 1j * rng.standard_normal(5))
    out = mul(BoundedPoly.one(), b)
    assert out.degree_bound == b.degree_bound
    np.testing.assert_array_equal(out.coeffs, b.coeffs)


def test_mul_matches_double_loop(rng):
    for _ in range(20):
        a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        b = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        np.testing.assert_allclose(mul(BoundedPoly(a), BoundedPoly(b)).coeffs, naive_convolve(a, b), atol=1e-13)


def test_trailing_zeros_are_kept():
    p = mul(BoundedPoly([1, 0, 0]), BoundedPoly([2, 0]))
    assert p.degree_bound == 3
    np.testing.assert_array_equal(p.coeffs, [2, 0, 0, 0])


def test_conj_reverse_example():
    np.testing.assert_array_equal(conj_reverse(A).coeffs, [0, 0, 0.5, 0.5, -1, 0])


def test_conj_reverse_index_flip(rng):
    a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    out = conj_reverse(BoundedPoly(a)).coeffs
    for n in range(4):
        assert out[n] == np.conj(a[3 - n])


def test_mult_matrix_small():
    np.testing.assert_array_equal(mult_matrix(BoundedPoly([1, 2]), 1), [[1, 0], [2, 1], [0, 2]])


def test_mult_matrix_single_column():
    M = mult_matrix(A, 0)
    assert M.shape == (6, 1)
    np.testing.assert_array_equal(M[:, 0], A.coeffs)


def test_mult_matrix_matches_mul(rng):
    b = BoundedPoly(rng.standard_normal(3) + 1j * rng.standard_normal(3))
    M = mult_matrix(A, 2)
    assert M.shape == (8, 3)
    np.testing.assert_allclose(M @ b.coeffs, mul(A, b).coeffs, atol=1e-14)


def test_inner_product_examples():
    x = BoundedPoly([1 + 2j, -1j, 3])
    ip = inner_product(x, x)
    assert ip.imag == 0 and ip.real == pytest.approx(np.linalg.norm(x.coeffs) ** 2)
    assert inner_product(BoundedPoly([1, 0]), BoundedPoly([0, 1])) == 0


def test_inner_product_is_center_coefficient(rng):
    for _ in range(20):
        x = BoundedPoly(rng.standard_normal(6) + 1j * rng.standard_normal(6))
        y = BoundedPoly(rng.standard_normal(6) + 1j * rng.standard_normal(6))
        direct = np.sum(x.coeffs * np.conj(y.coeffs))
        assert abs(inner_product(x, y) - direct) < 1e-12
        assert abs(mul(x, conj_reverse(y)).coeffs[5] - direct) < 1e-12


def test_inner_product_bound_mismatch():
    with pytest.raises(IncompatibleSpacesError):
        inner_product(BoundedPoly([1, 2]), BoundedPoly([1, 2, 3]))


def test_evaluate_examples(rng):
    assert evaluate(A, 1) == 0
    a = BoundedPoly(rng.standard_normal(5) + 1j * rng.standard_normal(5))
    assert evaluate(a, 0) == a.coeffs[0]
    z = 0.3 - 1.1j
    assert abs(evaluate(a, z) - sum(c * z**n for n, c in enumerate(a.coeffs))) < 1e-12


def test_equality_uses_tolerance():
    a = BoundedPoly([1, 2, 3])
    assert a == BoundedPoly([1, 2, 3 + 1e-12])
    assert a != BoundedPoly([1, 2, 3.1])
    assert a != BoundedPoly([1, 2, 3, 0])


def test_rejects_nonfinite_and_empty():
    with pytest.raises(ValueError):
        BoundedPoly([1, np.nan])
    with pytest.raises(ValueError):
        BoundedPoly([])


def test_immutable():
    with pytest.raises(ValueError):
        A.coeffs[0] = 1


@given(coeffs(), coeffs(), coeffs(), scalars, scalars)
@settings(max_examples=200, deadline=None)
def test_mul_bilinear(a, b, c, alpha, beta):
    if a.size != b.size:
        b = np.resize(b, a.size)
    A_, B_, C_ = BoundedPoly(a), BoundedPoly(b), BoundedPoly(c)
    lhs = mul(A_.scale(alpha) + B_.scale(beta), C_).coeffs
    rhs = (mul(A_, C_).scale(alpha) + mul(B_, C_).scale(beta)).coeffs
    scale = max(1.0, np.max(np.abs(lhs)))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@given(coeffs(), coeffs())
@settings(max_examples=200, deadline=None)
def test_conj_reverse_antihomomorphism(a, b):
    A_, B_ = BoundedPoly(a), BoundedPoly(b)
    lhs = conj_reverse(mul(A_, B_))
    rhs = mul(conj_reverse(A_), conj_reverse(B_))
    assert lhs.degree_bound == rhs.degree_bound
    np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, atol=1e-12)


@given(coeffs())
def test_conj_reverse_involution(a):
    np.testing.assert_array_equal(conj_reverse(conj_reverse(BoundedPoly(a))).coeffs, a)


@given(coeffs(), coeffs())
@settings(max_examples=200, deadline=None)
def test_mult_matrix_symmetry(a, b):
    A_, B_ = BoundedPoly(a), BoundedPoly(b)
    p = mul(A_, B_).coeffs
    np.testing.assert_allclose(mult_matrix(A_, B_.degree_bound) @ b, p, atol=1e-11)
    np.testing.assert_allclose(mult_matrix(B_, A_.degree_bound) @ a, p, atol=1e-11)


@given(coeffs())
def test_inner_product_positive(a):
    x = BoundedPoly(a)
    ip = inner_product(x, x)
    assert ip.real >= 0 and ip.imag == 0
    assert (ip == 0) == x.is_zero()


@given(st.integers(0, 6))
def test_zero_and_one(bound):
    z = BoundedPoly.zero(bound)
    assert z.degree_bound == bound and z.is_zero()
    assert mul(BoundedPoly.one(), z).degree_bound == bound
