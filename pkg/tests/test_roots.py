import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import separated_roots
from paf.polyring import BoundedPoly, conj_reverse
from paf.roots import (
    INFINITY,
    RootFactorization,
    RootFindingError,
    ZeroPolynomialError,
    aberth,
    cluster_roots,
    conj_reflect,
    find_roots,
    from_roots,
    match_multisets,
    multiple_root_backward_error,
    riemann_reflection,
)

A = BoundedPoly([0, -1, 0.5, 0.5, 0, 0])
A_ROOTS = ((INFINITY, 2), (-2, 1), (1, 1), (0, 1))


def test_example_root_factorization():
    f = find_roots(A)
    assert abs(f.leading - 0.5) < 1e-9
    assert f.degree_bound == 5
    assert f.multiplicity_at_infinity == 2
    assert match_multisets(f.roots, A_ROOTS, 1e-9)


def test_constant_has_no_roots():
    f = find_roots(BoundedPoly([3 - 1j]))
    assert f.roots == () and f.leading == 3 - 1j


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomialError, match="no root factorization of 0"):
        find_roots(BoundedPoly.zero(3))


def test_planted_roots_recovered(rng):
    for _ in range(50):
        planted = [(r, 1) for r in separated_roots(rng, 6)]
        a = from_roots(RootFactorization(1.0, tuple(planted), 6))
        assert match_multisets(find_roots(a).roots, planted, 1e-7)


def test_multiple_roots_recovered(rng):
    for _ in range(50):
        rs = separated_roots(rng, 4, sep=0.3, lo=0.5, hi=2.0)
        planted = [(r, int(m)) for r, m in zip(rs, rng.integers(1, 4, size=4))]
        D = sum(m for _, m in planted)
        a = from_roots(RootFactorization(rng.standard_normal() + 1j, tuple(planted), D))
        assert match_multisets(find_roots(a).roots, planted, 1e-5)


def test_from_roots_example():
    f = RootFactorization(0.5, ((INFINITY, 2), (1, 1), (-2, 1), (0, 1)), 5)
    np.testing.assert_allclose(from_roots(f).coeffs, A.coeffs, atol=1e-15)


def test_from_roots_constant():
    np.testing.assert_array_equal(from_roots(RootFactorization(3, (), 0)).coeffs, [3])


def test_multiplicities_must_sum_to_bound():
    with pytest.raises(ValueError):
        RootFactorization(1, ((1, 2),), 3)


def test_conj_reflect_example():
    g = conj_reflect(find_roots(A))
    assert match_multisets(g.roots, ((0, 2), (-0.5, 1), (1, 1), (INFINITY, 1)), 1e-9)
    assert abs(g.leading - (-1)) < 1e-9
    np.testing.assert_allclose(from_roots(g).coeffs, conj_reverse(A).coeffs, atol=1e-12)


def test_conj_reflect_fixes_unit_circle():
    eps = np.exp(0.7j)
    g = conj_reflect(RootFactorization(1, ((eps, 1),), 1))
    assert abs(g.roots[0][0] - eps) < 1e-15


def test_riemann_reflection_examples():
    assert riemann_reflection(2) == 0.5
    assert riemann_reflection(INFINITY) == 0
    assert riemann_reflection(0) is INFINITY
    assert abs(riemann_reflection(1j) - 1j) < 1e-15


def test_aberth_reports_nonconvergence():
    with pytest.raises(RootFindingError) as err:
        aberth(np.array([1, 0, 0, 0, 1e-300 + 0j, 1]), max_iter=1)
    assert err.value.residuals is not None


def test_cluster_roots_merges_close_estimates():
    out = cluster_roots([1.0, 1.0 + 1e-8, 2.0])
    assert sorted(m for _, m in out) == [1, 2]


def test_backward_error_separates_double_root():
    c = np.convolve([-1.5, 1], [-1.5, 1])
    assert multiple_root_backward_error(c, 1.5, 2) < 1e-14
    assert multiple_root_backward_error(np.convolve([-1.5, 1], [-1.6, 1]), 1.55, 2) > 1e-4


def test_structural_infinity_count(rng):
    for k in range(4):
        c = np.concatenate([rng.standard_normal(4) + 1j, np.zeros(k)])
        c[-k - 1] = 1.0
        assert find_roots(BoundedPoly(c)).multiplicity_at_infinity == k


def _random_factorization(rng):
    n = int(rng.integers(1, 7))
    rs = separated_roots(rng, n, lo=0.2, hi=4.0)
    roots = [(r, int(rng.integers(1, 3))) for r in rs]
    if rng.random() < 0.3:
        roots.append((INFINITY, int(rng.integers(1, 3))))
    if rng.random() < 0.3:
        roots.append((0j, int(rng.integers(1, 3))))
    D = sum(m for _, m in roots)
    lead = rng.uniform(0.2, 3) * np.exp(2j * np.pi * rng.random())
    return RootFactorization(lead, tuple(roots), D)


def test_conj_reflection_property_500(rng):
    for _ in range(500):
        f = _random_factorization(rng)
        g = conj_reflect(f)
        expect = conj_reverse(from_roots(f)).coeffs
        got = from_roots(g).coeffs
        assert np.max(np.abs(got - expect)) <= 1e-9 * np.max(np.abs(expect))
        back = conj_reflect(g)
        assert abs(back.leading - f.leading) <= 1e-9 * abs(f.leading)
        assert match_multisets(back.roots, f.roots, 1e-9)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_find_roots_commutes_with_reflection(seed):
    rng = np.random.default_rng(seed)
    a = from_roots(_random_factorization(rng))
    lhs = find_roots(conj_reverse(a))
    rhs = conj_reflect(find_roots(a))
    assert match_multisets(lhs.roots, rhs.roots, 1e-5)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_round_trip(seed):
    rng = np.random.default_rng(seed)
    f = _random_factorization(rng)
    g = find_roots(from_roots(f))
    assert match_multisets(g.roots, f.roots, 1e-5)
    assert abs(g.leading - f.leading) <= 1e-8 * abs(f.leading)
