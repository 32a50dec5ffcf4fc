"""Forward model: multichannel signals to their correlation matrix polynomial.

For ``K`` signals of length ``N`` the entry ``(i, j)`` of the matrix
polynomial is ``X_i(z) * conj_reverse(X_j)(z)``, a polynomial of bound
``2(N-1)``.  Its coefficient at ``z**p`` is the cross-correlation
``gamma_ij[p - (N-1)]`` with

    gamma_ij[n] = sum_m x_i[m + n] * conj(x_j[m]).

So lag ``n`` sits at power ``n + N - 1`` and lag 0 is the center coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polyring import BoundedPoly

__all__ = [
    "SignalTuple",
    "CorrMatrixPoly",
    "DimensionError",
    "as_signals",
    "correlate",
    "residual",
    "palindromic_check",
    "canonical_phase",
    "TOL_PALINDROMIC",
]

TOL_PALINDROMIC = 1e-9


class DimensionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SignalTuple:
    """``K`` complex signals of common length ``N`` stored as a ``(K, N)`` array."""

    signals: np.ndarray

    def __post_init__(self):
        x = np.array(self.signals, dtype=complex)
        if x.ndim == 1:
            x = x[None, :]
        if x.ndim != 2 or x.shape[0] == 0 or x.shape[1] == 0:
            raise DimensionError(f"signals must form a nonempty K x N array, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("signals must be finite")
        x.flags.writeable = False
        object.__setattr__(self, "signals", x)

    @property
    def K(self) -> int:
        return self.signals.shape[0]

    @property
    def N(self) -> int:
        return self.signals.shape[1]

    @property
    def polys(self) -> list:
        return [BoundedPoly(row) for row in self.signals]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.signals, dtype=dtype)

    def __repr__(self):
        return f"SignalTuple(K={self.K}, N={self.N})"


def as_signals(x) -> SignalTuple:
    if isinstance(x, SignalTuple):
        return x
    if isinstance(x, (list, tuple)) and x and isinstance(x[0], BoundedPoly):
        return SignalTuple(np.array([p.coeffs for p in x]))
    return SignalTuple(np.asarray(x))


@dataclass(frozen=True, eq=False)
class CorrMatrixPoly:
    """``K x K`` matrix polynomial with entries of bound ``2(N-1)``.

    ``coeffs[i, j, p]`` is the coefficient of ``z**p`` in entry ``(i, j)``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[2] % 2 != 1:
            raise DimensionError(
                f"expected a K x K x (2N-1) coefficient array, got shape {c.shape}"
            )
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_entries(cls, entries) -> "CorrMatrixPoly":
        return cls(np.array([[np.asarray(e.coeffs) for e in row] for row in entries]))

    @property
    def K(self) -> int:
        return self.coeffs.shape[0]

    @property
    def N(self) -> int:
        return (self.coeffs.shape[2] + 1) // 2

    @property
    def center(self) -> int:
        """Power of ``z`` carrying lag 0."""
        return self.N - 1

    def entry(self, i: int, j: int) -> BoundedPoly:
        return BoundedPoly(self.coeffs[i, j])

    @property
    def entries(self) -> list:
        return [[self.entry(i, j) for j in range(self.K)] for i in range(self.K)]

    def lag(self, i: int, j: int, n: int) -> complex:
        """``gamma_ij[n]`` for ``-N < n < N``."""
        return complex(self.coeffs[i, j, n + self.N - 1])

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __repr__(self):
        return f"CorrMatrixPoly(K={self.K}, N={self.N})"


def correlate(x) -> CorrMatrixPoly:
    """Correlation matrix polynomial of a signal tuple.

    Entry ``(i, j)`` is the full convolution of ``x_i`` with the conjugated,
    reversed ``x_j``.
    """
    x = as_signals(x).signals
    K, N = x.shape
    rev = np.conj(x[:, ::-1])
    out = np.empty((K, K, 2 * N - 1), dtype=complex)
    for i in range(K):
        for j in range(K):
            out[i, j] = np.convolve(x[i], rev[j])
    return CorrMatrixPoly(out)


def residual(gamma: CorrMatrixPoly, y) -> float:
    """Relative max-norm mismatch between ``gamma`` and ``correlate(y)``."""
    y = as_signals(y)
    if y.K != gamma.K or y.N != gamma.N:
        raise DimensionError(
            f"gamma has K={gamma.K}, N={gamma.N} but signals have K={y.K}, N={y.N}"
        )
    scale = np.max(np.abs(gamma.coeffs))
    diff = np.max(np.abs(gamma.coeffs - correlate(y).coeffs))
    return float(diff / scale) if scale > 0 else float(diff)


def palindromic_check(gamma: CorrMatrixPoly, tol: float = TOL_PALINDROMIC) -> bool:
    """Structural test a correlation matrix polynomial must pass.

    Checks ``entry(j, i) == conj_reverse(entry(i, j))`` and that every
    diagonal center coefficient is real and nonnegative, all relative to the
    largest coefficient modulus.
    """
    c = gamma.coeffs
    scale = np.max(np.abs(c))
    if scale == 0:
        return True
    mirrored = np.conj(np.transpose(c, (1, 0, 2))[:, :, ::-1])
    if np.max(np.abs(c - mirrored)) > tol * scale:
        return False
    centers = np.diagonal(c[:, :, gamma.center])
    if np.any(np.abs(centers.imag) > tol * scale) or np.any(centers.real < -tol * scale):
        return False
    return True


def canonical_phase(y, tol: float = 1e-6) -> SignalTuple:
    """Representative of ``{beta * y : |beta| = 1}``.

    The first coefficient (channel by channel, then by index) with modulus
    above ``tol * max|y|`` is made real positive.
    """
    y = as_signals(y)
    flat = y.signals.reshape(-1)
    scale = np.max(np.abs(flat))
    if scale == 0:
        return y
    k = np.flatnonzero(np.abs(flat) > tol * scale)[0]
    beta = np.conj(flat[k]) / abs(flat[k])
    out = beta * y.signals
    out.reshape(-1)[k] = abs(flat[k])
    return SignalTuple(out)
