"""Bounded-degree complex polynomials.

A polynomial of :math:`\\mathbb{C}_{\\le D}[z]` is stored as its coefficient
vector ``a[0], ..., a[D]`` in ascending powers.  The degree bound ``D`` is part
of the value: zero leading coefficients are never trimmed, since they encode
roots at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BoundedPoly",
    "IncompatibleSpacesError",
    "mul",
    "conj_reverse",
    "mult_matrix",
    "inner_product",
    "evaluate",
    "RTOL",
    "ATOL",
]

RTOL = 1e-9
ATOL = 1e-12


class IncompatibleSpacesError(ValueError):
    """Raised when two polynomials live in spaces of different degree bound."""


@dataclass(frozen=True, eq=False)
class BoundedPoly:
    """Element of :math:`\\mathbb{C}_{\\le D}[z]`.

    Parameters
    ----------
    coeffs : array_like
        Coefficients in ascending powers; ``coeffs[n]`` multiplies ``z**n``.
        The degree bound is ``len(coeffs) - 1``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ValueError("a bounded polynomial needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, bound: int) -> "BoundedPoly":
        return cls(np.zeros(bound + 1))

    @classmethod
    def one(cls) -> "BoundedPoly":
        return cls([1.0])

    @property
    def degree_bound(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.coeffs, dtype=dtype)

    def is_zero(self, atol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= atol))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def scale(self, c: complex) -> "BoundedPoly":
        return BoundedPoly(c * self.coeffs)

    def __add__(self, other: "BoundedPoly") -> "BoundedPoly":
        _check_same_space(self, other)
        return BoundedPoly(self.coeffs + other.coeffs)

    def __sub__(self, other: "BoundedPoly") -> "BoundedPoly":
        _check_same_space(self, other)
        return BoundedPoly(self.coeffs - other.coeffs)

    def __mul__(self, other):
        if isinstance(other, BoundedPoly):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def isclose(self, other: "BoundedPoly", rtol: float = RTOL, atol: float = ATOL) -> bool:
        """Equality within ``max|a - b| <= max(atol, rtol * max(|a|, |b|))``."""
        if not isinstance(other, BoundedPoly) or other.degree_bound != self.degree_bound:
            return False
        diff = np.max(np.abs(self.coeffs - other.coeffs))
        scale = max(np.max(np.abs(self.coeffs)), np.max(np.abs(other.coeffs)))
        return bool(diff <= max(atol, rtol * scale))

    def __eq__(self, other):
        if not isinstance(other, BoundedPoly):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None

    def __repr__(self):
        return f"BoundedPoly(D={self.degree_bound}, coeffs={np.array2string(self.coeffs, precision=6)})"


def _check_same_space(a: BoundedPoly, b: BoundedPoly):
    if a.degree_bound != b.degree_bound:
        raise IncompatibleSpacesError(
            f"polynomials live in C_<={a.degree_bound}[z] and C_<={b.degree_bound}[z]"
        )


def mul(a: BoundedPoly, b: BoundedPoly) -> BoundedPoly:
    """Product as a map C_<=D1 x C_<=D2 -> C_<=(D1+D2) (full convolution)."""
    return BoundedPoly(np.convolve(a.coeffs, b.coeffs))


def conj_reverse(a: BoundedPoly) -> BoundedPoly:
    """Conjugate reversal within the same space: ``result[n] = conj(a[D - n])``."""
    return BoundedPoly(np.conj(a.coeffs[::-1]))


def mult_matrix(a: BoundedPoly, L: int) -> np.ndarray:
    """Multiplication matrix of shape ``(D + L + 1, L + 1)``.

    Column ``l`` holds the coefficients of ``a`` shifted down by ``l``, so that
    ``mult_matrix(a, L) @ b.coeffs == mul(a, b).coeffs`` for ``b`` of bound ``L``.
    """
    if L < 0:
        raise ValueError("L must be nonnegative")
    D = a.degree_bound
    M = np.zeros((D + L + 1, L + 1), dtype=complex)
    for col in range(L + 1):
        M[col:col + D + 1, col] = a.coeffs
    return M


def inner_product(x: BoundedPoly, y: BoundedPoly) -> complex:
    """Coefficient inner product ``sum x[n] * conj(y[n])``."""
    _check_same_space(x, y)
    return complex(np.vdot(y.coeffs, x.coeffs))


def evaluate(a: BoundedPoly, z: complex) -> complex:
    """Evaluate by Horner's rule."""
    acc = 0j
    for c in a.coeffs[::-1]:
        acc = acc * z + c
    return complex(acc)

