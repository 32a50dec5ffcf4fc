import numpy as np
import pytest
from hypothesis import given, settings

from helpers import signal_arrays
from paf.autocorr import (
    CorrMatrixPoly,
    DimensionError,
    SignalTuple,
    canonical_phase,
    correlate,
    palindromic_check,
    residual,
)
from paf.oracle import naive_correlate
from paf.synthetic import random_signals


def test_single_channel_example():
    g = correlate([[1, 1]])
    np.testing.assert_array_equal(g.coeffs[0, 0], [1, 2, 1])
    assert [g.lag(0, 0, n) for n in (-1, 0, 1)] == [1, 2, 1]


def test_length_one():
    c = 2 - 3j
    g = correlate([[c]])
    assert g.N == 1 and g.coeffs[0, 0, 0] == pytest.approx(abs(c) ** 2, rel=1e-15)


def test_center_is_energy(rng):
    x = random_signals(rng, 3, 7)
    g = correlate(x)
    np.testing.assert_allclose(np.diagonal(g.coeffs[:, :, g.center]).real, np.sum(np.abs(x.signals) ** 2, axis=1))


def test_lag_convention(rng):
    x = random_signals(rng, 2, 5).signals
    g = correlate(x)
    for n in range(5):
        expect = sum(x[0, m + n] * np.conj(x[1, m]) for m in range(5 - n))
        assert abs(g.lag(0, 1, n) - expect) < 1e-12


def test_residual_self_and_phase(rng):
    x = random_signals(rng, 3, 6)
    g = correlate(x)
    assert residual(g, x) < 1e-12
    assert residual(g, SignalTuple(np.exp(0.9j) * x.signals)) < 1e-12


def test_residual_grows_linearly(rng):
    x = random_signals(rng, 2, 6)
    g = correlate(x)
    d = rng.standard_normal(x.signals.shape)
    r = [residual(g, SignalTuple(x.signals + eps * d)) for eps in (1e-6, 1e-5, 1e-4)]
    assert 5 < r[1] / r[0] < 15 and 5 < r[2] / r[1] < 15


def test_residual_dimension_mismatch(rng):
    with pytest.raises(DimensionError):
        residual(correlate(random_signals(rng, 2, 4)), random_signals(rng, 2, 5))


def test_palindromic_examples(rng):
    g = correlate(random_signals(rng, 3, 5))
    assert palindromic_check(g)
    c = np.array(g.coeffs)
    c[0, 1, 2] += 1e-3
    assert not palindromic_check(CorrMatrixPoly(c))
    assert palindromic_check(CorrMatrixPoly([[[1, 2, 1]]]))
    assert not palindromic_check(CorrMatrixPoly([[[1, -2, 1]]]))


def test_bad_shapes():
    with pytest.raises(DimensionError):
        CorrMatrixPoly(np.zeros((2, 3, 5)))
    with pytest.raises(DimensionError):
        CorrMatrixPoly(np.zeros((2, 2, 4)))
    with pytest.raises(DimensionError):
        SignalTuple(np.zeros((0, 3)))


def test_canonical_phase():
    y = canonical_phase([[0, 1j, 2], [1, 1, 1]])
    np.testing.assert_allclose(y.signals, [[0, 1, -2j], [-1j, -1j, -1j]])
    z = canonical_phase(np.exp(0.3j) * y.signals)
    np.testing.assert_allclose(z.signals, y.signals, atol=1e-15)


def test_appendix_identity_1000(rng):
    worst = 0.0
    for _ in range(1000):
        x = random_signals(rng, int(rng.integers(1, 4)), int(rng.integers(1, 9)))
        a, b = correlate(x).coeffs, naive_correlate(x).coeffs
        worst = max(worst, np.max(np.abs(a - b)))
    assert worst < 1e-12


@given(signal_arrays())
@settings(max_examples=200, deadline=None)
def test_correlate_structure(x):
    g = correlate(x)
    assert palindromic_check(g)
    np.testing.assert_allclose(g.coeffs, correlate(np.exp(2.1j) * x).coeffs, atol=1e-9)
    np.testing.assert_allclose(g.coeffs, naive_correlate(x).coeffs, atol=1e-10)
