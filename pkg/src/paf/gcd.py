"""Divisibility and greatest common divisors of bounded-degree polynomials.

Divisibility is taken in the bounded-degree sense: ``b`` of bound ``Db``
divides ``a`` of bound ``Da`` when ``a = b * c`` for some ``c`` of bound
``Da - Db``.  So a divisor may not carry more roots at infinity than ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _linalg
from ._linalg import TOL_RANK
from .polyring import BoundedPoly, mult_matrix
from .roots import (
    INFINITY,
    TOL_CLUSTER,
    TOL_INF,
    RootFactorization,
    find_roots,
    from_roots,
    root_distance,
)

__all__ = [
    "GcdResult",
    "DivisionByZeroError",
    "divides",
    "divides_by_roots",
    "divide",
    "gcd_many",
    "normalize_gcd",
    "sylvester_matrix",
    "sylvester_coprime",
    "coprime_by_roots",
    "TOL_RANK",
    "TOL_DIVIDE",
]

TOL_DIVIDE = 1e-8


class DivisionByZeroError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class GcdResult:
    """GCD together with the quotients of every input.

    Attributes
    ----------
    gcd : BoundedPoly
        Monic in its finite part, preceded by the common roots at infinity.
    cofactors : list of BoundedPoly
        ``cofactors[k]`` has bound ``bound(input k) - bound(gcd)`` and
        ``mul(gcd, cofactors[k])`` reproduces input ``k``.
    residual : float
        Largest relative reconstruction error over the inputs.
    """

    gcd: BoundedPoly
    cofactors: list
    residual: float


def divide(a: BoundedPoly, b: BoundedPoly) -> tuple[BoundedPoly, float]:
    """Least-squares quotient of ``a`` by ``b`` and its relative residual."""
    if b.is_zero():
        raise DivisionByZeroError("division by zero polynomial")
    if b.degree_bound > a.degree_bound:
        raise ValueError("divisor lives in a larger space than the dividend")
    c, res = _linalg.lstsq_divide(np.asarray(a.coeffs), np.asarray(b.coeffs))
    return BoundedPoly(c), res


def divides(b: BoundedPoly, a: BoundedPoly, tol: float = TOL_DIVIDE) -> bool:
    """True if ``b`` divides ``a`` with relative least-squares residual ``<= tol``."""
    if b.is_zero():
        raise DivisionByZeroError("division by zero polynomial")
    if b.degree_bound > a.degree_bound:
        return False
    if a.is_zero():
        return True
    _, res = divide(a, b)
    return res <= tol


def divides_by_roots(b: BoundedPoly, a: BoundedPoly, tol: float = TOL_CLUSTER) -> bool:
    """Root-multiset form of :func:`divides`.

    Every root of ``b`` (infinity included) must be a root of ``a`` with at
    least the same multiplicity.
    """
    if b.is_zero():
        raise DivisionByZeroError("division by zero polynomial")
    if b.degree_bound > a.degree_bound:
        return False
    if a.is_zero():
        return True
    fa = list(find_roots(a).roots)
    for r, m in find_roots(b).roots:
        j = _closest(r, fa, tol)
        if j is None or fa[j][1] < m:
            return False
        s, n = fa[j]
        fa[j] = (s, n - m)
    return True


def _closest(r, pool, tol):
    best, best_d = None, tol
    for j, (s, n) in enumerate(pool):
        if n <= 0:
            continue
        d = root_distance(r, s)
        if d <= best_d:
            best, best_d = j, d
    return best


def normalize_gcd(h: BoundedPoly, tol_inf: float = TOL_INF) -> BoundedPoly:
    """Scale so the highest coefficient above ``tol_inf * max|h|`` equals 1."""
    c = np.asarray(h.coeffs)
    scale = np.max(np.abs(c))
    if scale == 0:
        return h
    top = np.flatnonzero(np.abs(c) > tol_inf * scale)[-1]
    c = c / c[top]
    c[top + 1:] = 0
    return BoundedPoly(c)


def gcd_many(
    polys: Sequence[BoundedPoly],
    tol: float = TOL_RANK,
    method: str = "sylvester",
    tol_inf: float = TOL_INF,
    tol_cluster: float = TOL_CLUSTER,
) -> GcdResult:
    """Greatest common divisor of several bounded-degree polynomials.

    Parameters
    ----------
    polys : sequence of BoundedPoly
        Inputs, possibly of different degree bounds.  Zero inputs are ignored
        (``gcd{A, 0} = A``); if every input is zero the result is ``0`` in
        ``C_<=0``.
    tol : float
        Relative singular-value threshold for the numerical rank decision
        (``method="sylvester"``).
    method : {"sylvester", "roots"}
        ``"sylvester"`` reads the GCD bound off the nullity of the stacked
        Sylvester matrix and the divisor off its kernel; ``"roots"``
        intersects the clustered root multisets of the inputs.
    tol_inf : float
        Threshold for zero leading coefficients.
    tol_cluster : float
        Root matching tolerance (``method="roots"``).

    Returns
    -------
    GcdResult
    """
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty list")
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        return GcdResult(
            BoundedPoly.zero(0),
            [BoundedPoly.zero(p.degree_bound) for p in polys],
            0.0,
        )
    n_inf = min(_linalg.leading_zeros(np.asarray(p.coeffs), tol_inf) for p in nonzero)
    if method == "sylvester":
        arrays = [np.asarray(p.coeffs) for p in nonzero]
        d = _linalg.gcd_degree(arrays, tol)
        d = max(d, n_inf)
        h, _ = _linalg.common_divisor(arrays, d, n_inf)
        g = normalize_gcd(BoundedPoly(h), tol_inf)
    elif method == "roots":
        g = _gcd_by_roots(nonzero, n_inf, tol_cluster)
    else:
        raise ValueError(f"unknown gcd method {method!r}")

    cofactors, residual = [], 0.0
    for p in polys:
        if p.is_zero():
            if p.degree_bound < g.degree_bound:
                raise ValueError(
                    f"zero input of bound {p.degree_bound} lies below the gcd bound {g.degree_bound}"
                )
            cofactors.append(BoundedPoly.zero(p.degree_bound - g.degree_bound))
            continue
        q, res = divide(p, g)
        cofactors.append(q)
        residual = max(residual, res)
    return GcdResult(g, cofactors, residual)


def _gcd_by_roots(polys, n_inf: int, tol_cluster: float) -> BoundedPoly:
    common = None
    for p in polys:
        fin = [(r, m) for r, m in find_roots(p, tol_cluster=tol_cluster).roots if r is not INFINITY]
        if common is None:
            common = [[r, m, [r] * m] for r, m in fin]
            continue
        pool = list(fin)
        nxt = []
        for r, m, seen in common:
            j = _closest(r, pool, max(tol_cluster, 1e-6))
            if j is None:
                continue
            s, n = pool[j]
            k = min(m, n)
            nxt.append([r, k, seen + [s] * k])
            pool[j] = (s, 0)
        common = nxt
    roots = [(complex(np.mean(seen)), m) for r, m, seen in common if m > 0]
    if n_inf:
        roots.append((INFINITY, n_inf))
    D = sum(m for _, m in roots)
    return from_roots(RootFactorization(1.0, tuple(roots), D))


def sylvester_matrix(x1: BoundedPoly, x2: BoundedPoly) -> np.ndarray:
    """Square Sylvester matrix ``[M(x1, N-2) | M(x2, N-2)]`` of size ``2N-2``."""
    if x1.degree_bound != x2.degree_bound:
        raise ValueError("Sylvester matrix needs equal degree bounds")
    n = x1.degree_bound
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    return np.hstack([mult_matrix(x1, n - 1), mult_matrix(x2, n - 1)])


def sylvester_coprime(x1: BoundedPoly, x2: BoundedPoly, tol_rank: float = TOL_RANK) -> bool:
    """Coprimeness (infinity included) from the smallest singular value.

    Returns ``sigma_min > tol_rank * sigma_max`` of :func:`sylvester_matrix`.
    Each input is scaled to unit norm first, which leaves the singularity
    unchanged.
    """
    if x1.degree_bound == 0:
        return not (x1.is_zero() and x2.is_zero())
    if x1.is_zero() or x2.is_zero():
        return False
    S = sylvester_matrix(x1.scale(1 / x1.norm()), x2.scale(1 / x2.norm()))
    sv = np.linalg.svd(S, compute_uv=False)
    return bool(sv[-1] > tol_rank * sv[0])


def coprime_by_roots(x1: BoundedPoly, x2: BoundedPoly, tol: float = 1e-6) -> bool:
    """Coprimeness from root multisets: no shared root, infinity included."""
    if x1.is_zero() or x2.is_zero():
        return x1.degree_bound == 0 and not (x1.is_zero() and x2.is_zero())
    r2 = find_roots(x2).roots
    for r, _ in find_roots(x1).roots:
        if any(root_distance(r, s) <= tol for s, _ in r2):
            return False
    return True
