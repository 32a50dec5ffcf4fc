"""Roots of bounded-degree polynomials, including roots at infinity.

A polynomial of bound ``D`` always has ``D`` roots in the extended plane:
every zero leading coefficient counts as one root at :data:`INFINITY`.
Finite roots come from an Aberth-Ehrlich simultaneous iteration.  A multiple
root comes back from any floating-point root finder as a small cluster, so the
estimates are clustered by distance and then merged further wherever a tiny
relative change of the coefficients makes the merged point an exact multiple
root.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

from .polyring import BoundedPoly

__all__ = [
    "INFINITY",
    "ExtRoot",
    "RootFactorization",
    "RootFindingError",
    "ZeroPolynomialError",
    "find_roots",
    "from_roots",
    "conj_reflect",
    "riemann_reflection",
    "aberth",
    "cluster_roots",
    "match_multisets",
    "TOL_CLUSTER",
    "TOL_INF",
    "TOL_MULT",
    "multiple_root_backward_error",
]

TOL_CLUSTER = 1e-6
TOL_INF = 1e-10
MAX_ITER = 200
TOL_RESIDUAL = 1e-13
TOL_MULT = 1e-9


class _Infinity:
    """The point at infinity of the extended complex plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __abs__(self):
        return float("inf")

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

ExtRoot = Union[complex, _Infinity]


def is_infinite(r) -> bool:
    return r is INFINITY


class ZeroPolynomialError(ValueError):
    """The zero polynomial has no root factorization."""


class RootFindingError(RuntimeError):
    """The simultaneous iteration did not converge.

    Attributes
    ----------
    residuals : ndarray
        Relative backward error of each root estimate at termination.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


@dataclass(frozen=True)
class RootFactorization:
    """``leading * prod (z - root) ** mult`` in the space of bound ``degree_bound``.

    ``roots`` is a tuple of ``(root, multiplicity)`` pairs with distinct
    roots; a root may be :data:`INFINITY`.  ``leading`` is the highest
    nonzero coefficient of the polynomial.
    """

    leading: complex
    roots: tuple = field(default_factory=tuple)
    degree_bound: int = 0

    def __post_init__(self):
        roots = tuple(
            (r if r is INFINITY else complex(r), int(m)) for r, m in self.roots
        )
        if any(m <= 0 for _, m in roots):
            raise ValueError("multiplicities must be positive")
        total = sum(m for _, m in roots)
        if total != self.degree_bound:
            raise ValueError(
                f"multiplicities sum to {total}, expected degree bound {self.degree_bound}"
            )
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "leading", complex(self.leading))

    @property
    def multiplicity_at_infinity(self) -> int:
        return sum(m for r, m in self.roots if r is INFINITY)

    def multiset(self) -> list:
        """Flat list of roots, each repeated by its multiplicity."""
        out = []
        for r, m in self.roots:
            out.extend([r] * m)
        return out

    def finite(self) -> list:
        return [(r, m) for r, m in self.roots if r is not INFINITY]


def _newton_polygon_start(c: np.ndarray, offset: float = 0.4) -> np.ndarray:
    # initial guesses on circles read off the upper convex hull of (k, log|c_k|)
    m = c.size - 1
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(c))
    pts = [k for k in range(m + 1) if np.isfinite(logs[k])]
    hull = []
    for k in pts:
        while len(hull) >= 2:
            k1, k2 = hull[-2], hull[-1]
            # drop k2 if it lies below the segment k1 -> k
            if (logs[k2] - logs[k1]) * (k - k1) <= (logs[k] - logs[k1]) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append(k)
    z = []
    for a, b in zip(hull[:-1], hull[1:]):
        n = b - a
        radius = np.exp((logs[a] - logs[b]) / n)
        angles = 2 * np.pi * np.arange(n) / n + 2 * np.pi * a / m + offset
        z.extend(radius * np.exp(1j * angles))
    return np.asarray(z, dtype=complex)


def _horner(c: np.ndarray, z: np.ndarray):
    p = np.full(z.shape, c[-1], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    for ck in c[-2::-1]:
        dp = dp * z + p
        p = p * z + ck
    return p, dp


def aberth(c: Sequence[complex], max_iter: int = MAX_ITER, tol: float = TOL_RESIDUAL) -> np.ndarray:
    """Roots of a polynomial with nonzero leading and constant coefficients.

    Parameters
    ----------
    c : array_like
        Coefficients in ascending powers, ``c[0] != 0`` and ``c[-1] != 0``.
    max_iter : int
        Iteration cap.
    tol : float
        A root estimate is accepted once ``|p(z)| <= tol * sum |c_k| |z|**k``.

    Returns
    -------
    ndarray
        The ``len(c) - 1`` root estimates.

    Raises
    ------
    RootFindingError
        If some estimate has not met the residual test after ``max_iter`` sweeps.
    """
    c = np.asarray(c, dtype=complex)
    m = c.size - 1
    if m == 0:
        return np.zeros(0, dtype=complex)
    if m == 1:
        return np.array([-c[0] / c[1]])
    z = _newton_polygon_start(c)
    absc = np.abs(c)
    active = np.ones(m, dtype=bool)
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        zi = z[idx]
        p, dp = _horner(c, zi)
        bound = np.polyval(absc[::-1], np.abs(zi))
        done = np.abs(p) <= tol * bound
        active[idx[done]] = False
        upd = idx[~done]
        if upd.size == 0:
            break
        p, dp, zu = p[~done], dp[~done], z[upd]
        diff = zu[:, None] - z[None, :]
        diff[np.arange(upd.size), upd] = 1.0
        inv = 1.0 / diff
        inv[np.arange(upd.size), upd] = 0.0
        with np.errstate(divide="ignore", invalid="ignore"):
            w = p / dp
            step = w / (1.0 - w * inv.sum(axis=1))
        bad = ~np.isfinite(step)
        step[bad] = 1e-8 * (1 + np.abs(zu[bad]))
        z[upd] = zu - step
    else:
        p, _ = _horner(c, z)
        res = np.abs(p) / np.polyval(absc[::-1], np.abs(z))
        if np.any(res > tol):
            raise RootFindingError(
                f"Aberth iteration did not converge in {max_iter} sweeps "
                f"(max relative residual {res.max():.3e})",
                residuals=res,
            )
    return z


def _link_distance(z1: complex, z2: complex) -> float:
    return abs(z1 - z2) / max(1.0, abs(z1), abs(z2))


def cluster_roots(z: Sequence[complex], tol: float = TOL_CLUSTER) -> list:
    """Single-linkage clustering of root estimates.

    Two estimates are linked when ``|z1 - z2| <= tol * max(1, |z1|, |z2|)``.
    Returns ``(centroid, size)`` pairs.
    """
    z = np.asarray(z, dtype=complex)
    groups = _single_linkage(z, tol)
    return [(complex(np.mean(z[g])), len(g)) for g in groups]


def _single_linkage(z: np.ndarray, tol: float) -> list:
    n = z.size
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if _link_distance(z[i], z[j]) <= tol:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _taylor_matrix(z: complex, n: int, m: int) -> np.ndarray:
    # row k holds d^k/dz^k of the monomials z^0..z^n evaluated at z
    V = np.zeros((m, n + 1), dtype=complex)
    powers = np.array([z ** j for j in range(n + 1)], dtype=complex)
    for k in range(m):
        fall = np.ones(n + 1)
        for t in range(k):
            fall *= np.arange(n + 1) - t
        shifted = np.zeros(n + 1, dtype=complex)
        shifted[k:] = powers[: n + 1 - k]
        V[k] = fall * shifted
    return V


def multiple_root_backward_error(c: np.ndarray, z: complex, m: int) -> float:
    """Smallest relative coefficient perturbation making ``z`` an ``m``-fold root."""
    c = np.asarray(c, dtype=complex)
    V = _taylor_matrix(z, c.size - 1, m)
    delta, *_ = np.linalg.lstsq(V, -(V @ c), rcond=None)
    return float(np.linalg.norm(delta) / np.linalg.norm(c))


def _polish_multiple(c: np.ndarray, r: complex, m: int) -> complex:
    # an m-fold root is a simple root of the (m-1)-th derivative
    g = P.polyder(c, m - 1)
    dg = P.polyder(g)
    z = r
    for _ in range(10):
        der = P.polyval(z, dg)
        if der == 0:
            break
        step = P.polyval(z, g) / der
        z = z - step
        if not np.isfinite(z):
            return r
        if abs(step) <= 4e-16 * max(1.0, abs(z)):
            break
    return complex(z)


def _merge_multiple_roots(c: np.ndarray, z: np.ndarray, tol_cluster: float, tol_mult, max_gap: float = 1e-2) -> list:
    groups = _single_linkage(z, tol_cluster)
    centers = []
    for g in groups:
        r = complex(np.mean(z[g]))
        if len(g) > 1:
            r = _polish_multiple(c, r, len(g))
        centers.append(r)
    if tol_mult is None:
        return list(zip(centers, map(len, groups)))
    while len(groups) > 1:
        candidates = []
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                d = min(_link_distance(z[i], z[j]) for i in groups[a] for j in groups[b])
                if d <= max_gap:
                    candidates.append((d, a, b))
        merged = False
        for _, a, b in sorted(candidates):
            members = groups[a] + groups[b]
            r = _polish_multiple(c, complex(np.mean(z[members])), len(members))
            if multiple_root_backward_error(c, r, len(members)) <= tol_mult:
                groups[a] = members
                centers[a] = r
                del groups[b], centers[b]
                merged = True
                break
        if not merged:
            break
    return list(zip(centers, map(len, groups)))


def find_roots(
    a: BoundedPoly,
    tol_cluster: float = TOL_CLUSTER,
    tol_inf: float = TOL_INF,
    max_iter: int = MAX_ITER,
    tol_mult: float | None = TOL_MULT,
) -> RootFactorization:
    """Root factorization of ``a`` in its own space, roots at infinity included.

    Parameters
    ----------
    a : BoundedPoly
        Nonzero polynomial.
    tol_cluster : float
        Relative distance under which root estimates merge into one root.
    tol_inf : float
        A leading (trailing) coefficient with ``|a[k]| < tol_inf * max|a|``
        counts as a structural root at infinity (at zero).
    tol_mult : float or None
        Two clusters further apart than ``tol_cluster`` still merge into one
        multiple root when a relative coefficient perturbation of at most
        ``tol_mult`` turns the merged, Newton-polished point into an exact
        root of that multiplicity.  ``None`` clusters by distance only.

    Raises
    ------
    ZeroPolynomialError
        If ``a`` is the zero polynomial.
    RootFindingError
        If the iteration fails to converge.
    """
    c = np.asarray(a.coeffs)
    D = c.size - 1
    scale = np.max(np.abs(c))
    if scale == 0:
        raise ZeroPolynomialError("no root factorization of 0")
    small = np.abs(c) < tol_inf * scale
    n_inf = 0
    while small[D - n_inf]:
        n_inf += 1
    n_zero = 0
    while small[n_zero]:
        n_zero += 1
    core = c[n_zero:D + 1 - n_inf]
    leading = complex(core[-1])
    estimates = aberth(core, max_iter=max_iter)
    clusters = _merge_multiple_roots(core, estimates, tol_cluster, tol_mult)
    clusters.sort(key=lambda rm: (-abs(rm[0]), cmath.phase(rm[0])))

    roots = []
    if n_inf:
        roots.append((INFINITY, n_inf))
    zero_mult = n_zero
    for r, m in clusters:
        if abs(r) <= tol_cluster:
            zero_mult += m
        else:
            roots.append((r, m))
    if zero_mult:
        roots.append((0j, zero_mult))
    return RootFactorization(leading, tuple(roots), D)


def from_roots(f: RootFactorization) -> BoundedPoly:
    """Expand ``leading * prod (z - root) ** mult``.

    Every factor ``(z - INFINITY)`` appends one zero leading coefficient.
    """
    c = np.array([f.leading], dtype=complex)
    n_inf = 0
    for r, m in f.roots:
        if r is INFINITY:
            n_inf += m
            continue
        for _ in range(m):
            c = np.convolve(c, [-r, 1.0])
    return BoundedPoly(np.concatenate([c, np.zeros(n_inf)]))


def riemann_reflection(z: ExtRoot) -> ExtRoot:
    """``1 / conj(z)``, exchanging 0 and infinity."""
    if z is INFINITY:
        return 0j
    z = complex(z)
    if z == 0:
        return INFINITY
    return 1.0 / z.conjugate()


def conj_reflect(f: RootFactorization) -> RootFactorization:
    """Root factorization of the conjugate reversal of ``from_roots(f)``.

    Roots are reflected through the unit circle; the new leading scalar is
    ``conj(leading) * prod (-conj(root)) ** mult`` over the finite nonzero
    roots.  A root at 0 reflects to a zero leading coefficient and
    contributes no factor, and likewise for a root at infinity.
    """
    lead = f.leading.conjugate()
    roots = []
    for r, m in f.roots:
        if r is not INFINITY and r != 0:
            lead *= (-r.conjugate()) ** m
        roots.append((riemann_reflection(r), m))
    return RootFactorization(lead, tuple(roots), f.degree_bound)


def root_distance(r1: ExtRoot, r2: ExtRoot) -> float:
    """Relative distance; infinity is only close to itself."""
    if r1 is INFINITY or r2 is INFINITY:
        return 0.0 if r1 is r2 else float("inf")
    return abs(r1 - r2) / max(1.0, abs(r1), abs(r2))


def match_multisets(f: Sequence, g: Sequence, tol: float = TOL_CLUSTER) -> bool:
    """True if two ``(root, multiplicity)`` collections agree within ``tol``."""
    f = [(r, m) for r, m in f]
    g = [(r, m) for r, m in g]
    if sum(m for _, m in f) != sum(m for _, m in g):
        return False
    used = [False] * len(g)
    for r, m in f:
        best, best_d = None, tol
        for j, (s, n) in enumerate(g):
            if used[j]:
                continue
            d = root_distance(r, s)
            if d <= best_d:
                best, best_d = j, d
        if best is None or g[best][1] != m:
            return False
        used[best] = True
    return all(used)
