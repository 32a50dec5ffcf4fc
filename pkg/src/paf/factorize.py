"""Rank-one factorizations of correlation matrix polynomials.

Given ``Gamma`` with entries ``Gamma_ij = Y_i * conj_reverse(Y_j)``, recover
every tuple ``Y`` (up to one global unit-modulus scalar) that reproduces it.

The common GCD ``H`` of all entries equals ``Q * conj_reverse(Q)`` where ``Q``
is the GCD of the channels.  Its roots come in pairs ``(delta, 1/conj(delta))``
plus unit-circle roots of even multiplicity.  Dividing ``H`` out leaves a
coprime matrix whose factorization is essentially unique and can be read off
row GCDs.  Every solution is ``S * R_k`` with ``S`` a spectral factor of
``H``: for a pair of multiplicity ``mu``, ``S`` takes ``delta`` with some
multiplicity ``0 <= l <= mu`` and the reflected root ``mu - l`` times.
"""
from __future__ import annotations

import cmath
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _linalg
from .autocorr import (
    TOL_PALINDROMIC,
    CorrMatrixPoly,
    SignalTuple,
    canonical_phase,
    palindromic_check,
    residual,
)
from .gcd import TOL_DIVIDE, TOL_RANK, divide, gcd_many
from .polyring import BoundedPoly, conj_reverse, mul
from .roots import (
    INFINITY,
    TOL_CLUSTER,
    RootFactorization,
    find_roots,
    from_roots,
    root_distance,
)

__all__ = [
    "FactorizationError",
    "NotCoprimeError",
    "InconsistentDataError",
    "InvalidGcdError",
    "InconsistentSpectralFactorError",
    "ZeroChannelError",
    "PreconditionError",
    "Tolerances",
    "RootPairStructure",
    "SolutionSet",
    "row_gcd",
    "is_coprime",
    "coprime_recover",
    "common_gcd",
    "root_pairs",
    "pair_roots",
    "is_unique",
    "enumerate_all",
    "count_solutions",
    "k2_explicit",
    "k2_explicit_for",
    "validate",
]


class FactorizationError(ValueError):
    """Base class for mathematically inconsistent inputs."""


class NotCoprimeError(FactorizationError):
    pass


class InconsistentDataError(FactorizationError):
    pass


class InvalidGcdError(FactorizationError):
    pass


class InconsistentSpectralFactorError(FactorizationError):
    pass


class ZeroChannelError(FactorizationError):
    pass


class PreconditionError(FactorizationError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by the factorization routines.

    Attributes
    ----------
    rank : float
        Relative singular-value threshold for GCD degrees.
    circle : float
        Roots with ``||r| - 1| < circle`` are snapped onto the unit circle.
    pair : float
        Relative distance for matching ``delta`` with ``1/conj(delta)``.
    residual : float
        Maximum relative residual accepted for a factorization.
    divide : float
        Maximum relative residual of an exact polynomial division.
    cluster : float
        Root clustering distance passed to :func:`paf.roots.find_roots`.
    """

    rank: float = TOL_RANK
    circle: float = 1e-6
    pair: float = 1e-6
    residual: float = 1e-8
    divide: float = TOL_DIVIDE
    cluster: float = TOL_CLUSTER


DEFAULT = Tolerances()


def _tols(tol):
    return DEFAULT if tol is None else tol


@dataclass(frozen=True)
class RootPairStructure:
    """Root structure of a palindromic GCD ``H``.

    Attributes
    ----------
    offcircle_pairs : tuple of (delta, reflected, mu)
        ``|delta| > 1`` or ``delta`` is INFINITY; ``reflected = 1/conj(delta)``.
    circle_roots : tuple of (epsilon, nu)
        Unit-modulus roots with their (even) multiplicity.
    leading : complex
        Highest nonzero coefficient of ``H``.
    """

    offcircle_pairs: tuple = ()
    circle_roots: tuple = ()
    leading: complex = 1.0

    @property
    def degree_bound(self) -> int:
        return sum(2 * mu for _, _, mu in self.offcircle_pairs) + sum(
            nu for _, nu in self.circle_roots
        )

    @property
    def multiplicities(self) -> list:
        return [mu for _, _, mu in self.offcircle_pairs]

    @property
    def count(self) -> int:
        return math.prod(mu + 1 for mu in self.multiplicities)


def validate(gamma: CorrMatrixPoly, tol: float = TOL_PALINDROMIC) -> None:
    """Raise :class:`InconsistentDataError` unless ``gamma`` passes :func:`palindromic_check`."""
    if not palindromic_check(gamma, tol):
        raise InconsistentDataError(
            "failed palindromic check: gamma is not a valid correlation matrix polynomial"
        )


def _all_entries(gamma: CorrMatrixPoly):
    return [gamma.entry(i, j) for i in range(gamma.K) for j in range(gamma.K)]


def row_gcd(gamma: CorrMatrixPoly, j: int, tol: Tolerances | None = None) -> BoundedPoly:
    """GCD of row ``j`` (0-based) of ``gamma``."""
    t = _tols(tol)
    row = [gamma.entry(j, k) for k in range(gamma.K)]
    if all(p.is_zero() for p in row):
        raise ZeroChannelError(f"channel {j} identically zero")
    return gcd_many(row, t.rank).gcd


def is_coprime(gamma: CorrMatrixPoly, tol: Tolerances | None = None) -> bool:
    """True if the entries of ``gamma`` have a constant GCD."""
    t = _tols(tol)
    arrays = [np.asarray(p.coeffs) for p in _all_entries(gamma) if not p.is_zero()]
    if not arrays:
        return False
    return _linalg.gcd_degree(arrays, t.rank) == 0


def _reference_channel(gamma: CorrMatrixPoly) -> int:
    centers = np.real(np.diagonal(gamma.coeffs[:, :, gamma.center]))
    return int(np.argmax(centers))


def coprime_recover(
    gamma: CorrMatrixPoly,
    j: int | None = None,
    tol: Tolerances | None = None,
    check: bool = True,
    canonical: bool = True,
) -> SignalTuple:
    """Factor a coprime correlation matrix polynomial.

    With ``A_j`` the GCD of row ``j``, the channels are
    ``Y_k = c_j * Gamma_kj / conj_reverse(A_j)`` where
    ``c_j = ||A_j|| / sqrt(Gamma_jj[center])``.

    Parameters
    ----------
    gamma : CorrMatrixPoly
        Correlation matrix whose entries have a constant GCD.
    j : int, optional
        Reference channel (0-based); defaults to the channel of largest energy.
    tol : Tolerances, optional
    check : bool
        Validate the palindromic structure and coprimeness first.
    canonical : bool
        Return the phase-canonical representative.

    Raises
    ------
    NotCoprimeError
        If the entries share a nonconstant divisor; use :func:`enumerate_all`.
    InconsistentDataError
        If the reconstruction does not reproduce ``gamma``.
    """
    t = _tols(tol)
    if gamma.is_zero():
        raise ZeroChannelError("gamma is identically zero")
    if check:
        validate(gamma)
    if check and not is_coprime(gamma, t):
        raise NotCoprimeError(
            "correlation entries share a nonconstant divisor; use enumerate_all"
        )
    if j is None:
        j = _reference_channel(gamma)
    A = row_gcd(gamma, j, t)
    N = gamma.N
    if A.degree_bound != N - 1:
        raise InconsistentDataError(
            f"row gcd of channel {j} has bound {A.degree_bound}, expected {N - 1}"
        )
    energy = gamma.coeffs[j, j, gamma.center].real
    if energy <= 0:
        raise InconsistentDataError(f"channel {j} has nonpositive energy")
    At = conj_reverse(A)
    c = A.norm() / math.sqrt(energy)
    rows = []
    for k in range(gamma.K):
        q, res = divide(gamma.entry(k, j), At)
        if res > t.divide:
            raise InconsistentDataError(
                f"inconsistent correlation data: entry ({k}, {j}) not divisible (residual {res:.2e})"
            )
        rows.append(c * q.coeffs)
    y = SignalTuple(np.array(rows))
    res = residual(gamma, y)
    if res > t.residual:
        raise InconsistentDataError(f"inconsistent correlation data: residual {res:.2e}")
    return canonical_phase(y) if canonical else y


def common_gcd(gamma: CorrMatrixPoly, tol: Tolerances | None = None) -> BoundedPoly:
    """GCD ``H`` of all entries, scaled so its center coefficient is 1.

    For valid data ``H`` has bound ``2D`` and is a positive multiple of
    ``Q * conj_reverse(Q)``; the center coefficient is then real positive.
    The zero matrix gives the zero polynomial of bound 0.
    """
    t = _tols(tol)
    if gamma.is_zero():
        return BoundedPoly.zero(0)
    h = gcd_many(_all_entries(gamma), t.rank).gcd
    if h.degree_bound % 2 == 0:
        mid = h.coeffs[h.degree_bound // 2]
        if abs(mid) > 1e-12 * np.max(np.abs(h.coeffs)):
            h = h.scale(1 / mid)
    return h


def root_pairs(h: BoundedPoly, tol: Tolerances | None = None) -> RootPairStructure:
    """Pair the roots of ``h`` under reflection through the unit circle.

    Raises
    ------
    InvalidGcdError
        If an off-circle root has no partner of equal multiplicity, or a
        unit-circle root has odd multiplicity.
    """
    t = _tols(tol)
    if h.degree_bound == 0:
        return RootPairStructure((), (), complex(h.coeffs[0]))
    return pair_roots(find_roots(h, tol_cluster=t.cluster), t)


def pair_roots(f: RootFactorization, tol: Tolerances | None = None) -> RootPairStructure:
    """Pairing step of :func:`root_pairs` on an existing root factorization."""
    t = _tols(tol)
    m_inf = sum(m for r, m in f.roots if r is INFINITY)
    m_zero = sum(m for r, m in f.roots if r is not INFINITY and r == 0)
    if m_inf != m_zero:
        raise InvalidGcdError(
            f"not a valid autocorrelation gcd: root at infinity has multiplicity "
            f"{m_inf} but root 0 has {m_zero}"
        )
    pairs = [(INFINITY, 0j, m_inf)] if m_inf else []
    circle, outside, inside = [], [], []
    for r, m in f.roots:
        if r is INFINITY or r == 0:
            continue
        if abs(abs(r) - 1) < t.circle:
            eps = r / abs(r)
            for c in circle:
                if root_distance(c[0], eps) <= t.pair:
                    c[1] += m
                    break
            else:
                circle.append([eps, m])
        elif abs(r) > 1:
            outside.append((r, m))
        else:
            inside.append([r, m, False])
    for eps, nu in circle:
        if nu % 2:
            raise InvalidGcdError(
                f"not a valid autocorrelation gcd: unit-circle root {eps:.6g} has odd multiplicity {nu}"
            )
    for r, m in outside:
        target = 1 / r.conjugate()
        best, best_d = None, t.pair
        for entry in inside:
            if entry[2]:
                continue
            d = root_distance(entry[0], target)
            if d <= best_d:
                best, best_d = entry, d
        if best is None or best[1] != m:
            raise InvalidGcdError(
                f"not a valid autocorrelation gcd: root {r:.6g} (multiplicity {m}) has no reflected partner"
            )
        best[2] = True
        delta = 0.5 * (r + 1 / best[0].conjugate())
        pairs.append((delta, 1 / delta.conjugate(), m))
    leftover = [e for e in inside if not e[2]]
    if leftover:
        raise InvalidGcdError(
            f"not a valid autocorrelation gcd: root {leftover[0][0]:.6g} has no reflected partner"
        )
    pairs.sort(key=lambda p: (0, 0.0, 0.0) if p[0] is INFINITY else (1, -abs(p[0]), cmath.phase(p[0])))
    circle.sort(key=lambda c: cmath.phase(c[0]))
    return RootPairStructure(
        tuple(pairs), tuple((complex(e), int(n)) for e, n in circle), f.leading
    )


def _h_and_pairs(gamma, t):
    h = common_gcd(gamma, t)
    if h.degree_bound % 2:
        raise InvalidGcdError(
            f"not a valid autocorrelation gcd: odd degree bound {h.degree_bound}"
        )
    return h, root_pairs(h, t)


def is_unique(gamma: CorrMatrixPoly, tol: Tolerances | None = None) -> bool:
    """Essential uniqueness: ``H`` is constant or has only unit-circle roots."""
    t = _tols(tol)
    validate(gamma)
    h = common_gcd(gamma, t)
    if h.degree_bound == 0:
        return True
    _, pairs = _h_and_pairs(gamma, t)
    return not pairs.offcircle_pairs


def count_solutions(gamma: CorrMatrixPoly, tol: Tolerances | None = None) -> int:
    """Number of essentially different factorizations, ``prod (mu_i + 1)``."""
    t = _tols(tol)
    validate(gamma)
    h = common_gcd(gamma, t)
    if h.degree_bound == 0:
        return 1
    return _h_and_pairs(gamma, t)[1].count


@dataclass(frozen=True, eq=False)
class SolutionSet:
    """All factorizations of one correlation matrix polynomial.

    Solutions are indexed by tuples ``(l_1, ..., l_P)`` with
    ``0 <= l_i <= mu_i``: ``l_i`` is the multiplicity of ``delta_i`` in the
    spectral factor.  Iterating yields ``(index, SignalTuple)`` pairs in
    lexicographic index order; every solution is phase-canonical.
    """

    gamma: CorrMatrixPoly
    H: BoundedPoly
    pairs: RootPairStructure
    quotients: list
    tol: Tolerances = field(default=DEFAULT)

    @property
    def base_count(self) -> int:
        return self.pairs.count

    def __len__(self):
        return self.base_count

    def indices(self):
        return itertools.product(*(range(mu + 1) for mu in self.pairs.multiplicities))

    def spectral_roots(self, index) -> RootFactorization:
        """Monic root factorization of the spectral factor for ``index``."""
        index = tuple(index)
        if len(index) != len(self.pairs.offcircle_pairs):
            raise IndexError(f"expected {len(self.pairs.offcircle_pairs)} indices, got {len(index)}")
        roots = []
        for (delta, refl, mu), l in zip(self.pairs.offcircle_pairs, index):
            if not 0 <= l <= mu:
                raise IndexError(f"index {l} outside 0..{mu}")
            if l:
                roots.append((delta, l))
            if mu - l:
                roots.append((refl, mu - l))
        for eps, nu in self.pairs.circle_roots:
            roots.append((eps, nu // 2))
        D = sum(m for _, m in roots)
        return RootFactorization(1.0, tuple(roots), D)

    def spectral_factor(self, index) -> BoundedPoly:
        """``S = lambda * S0`` with ``S * conj_reverse(S) == H`` and ``lambda > 0``."""
        s0 = from_roots(self.spectral_roots(index))
        prod = mul(s0, conj_reverse(s0)).coeffs
        h = self.H.coeffs
        k = int(np.argmax(np.abs(h)))
        ratio = h[k] / prod[k]
        if ratio.real <= 0 or abs(ratio.imag) > 1e-6 * abs(ratio):
            raise InconsistentSpectralFactorError(
                f"inconsistent spectral factor: coefficient ratio {ratio:.6g} is not real positive"
            )
        return s0.scale(math.sqrt(ratio.real))

    def solution(self, index) -> SignalTuple:
        s = self.spectral_factor(index)
        y = SignalTuple(np.array([mul(s, r).coeffs for r in self.quotients]))
        res = residual(self.gamma, y)
        if res > self.tol.residual:
            raise InconsistentDataError(
                f"solution {tuple(index)} has residual {res:.2e} against gamma"
            )
        return canonical_phase(y)

    def __iter__(self):
        for index in self.indices():
            yield index, self.solution(index)

    def materialize(self, threads: int | None = None) -> list:
        """All ``(index, solution)`` pairs in index order."""
        idx = list(self.indices())
        if threads is None or threads <= 1 or len(idx) == 1:
            return [(i, self.solution(i)) for i in idx]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(zip(idx, pool.map(self.solution, idx)))


def enumerate_all(gamma: CorrMatrixPoly, tol: Tolerances | None = None) -> SolutionSet:
    """Every rank-one factorization of ``gamma`` up to a global phase.

    Raises
    ------
    InvalidGcdError
        If the GCD of the entries lacks the reflected-pair structure.
    InconsistentDataError
        If an entry is not divisible by the GCD, or the quotient matrix
        cannot be factored.
    """
    t = _tols(tol)
    if gamma.is_zero():
        raise ZeroChannelError("gamma is identically zero")
    validate(gamma)
    h, pairs = _h_and_pairs(gamma, t)
    D = h.degree_bound // 2
    if D > gamma.N - 1:
        raise InvalidGcdError(f"gcd bound {2 * D} exceeds 2(N-1) = {2 * gamma.N - 2}")
    quotient = np.empty((gamma.K, gamma.K, 2 * (gamma.N - D) - 1), dtype=complex)
    for i in range(gamma.K):
        for j in range(gamma.K):
            q, res = divide(gamma.entry(i, j), h)
            if res > t.divide:
                raise InconsistentDataError(
                    f"gcd/entry inconsistency: entry ({i}, {j}) residual {res:.2e}"
                )
            quotient[i, j] = q.coeffs
    G = CorrMatrixPoly(quotient)
    r = coprime_recover(G, tol=t, check=False, canonical=False)
    return SolutionSet(gamma, h, pairs, r.polys, t)


def _unit(z: complex) -> complex:
    return z / abs(z)


def k2_explicit(
    gamma: CorrMatrixPoly,
    betas,
    alphas1,
    alphas2,
) -> SignalTuple:
    """Closed-form two-channel factorization for a chosen spectral factor.

    ``betas`` are the roots of the chosen spectral factor of ``H`` and
    ``alphas1``, ``alphas2`` the roots of the two quotients.  Returns the pair
    with ``lambda_1 > 0``:

    * ``|lambda_k| = sqrt(|gamma_kk[N-1]| / (prod|beta| prod|alpha_k|))``
    * ``arg lambda_2 = -(pi (N-1) + arg gamma_12[N-1] + sum arg beta + sum arg alpha_2)``

    Raises
    ------
    PreconditionError
        If ``K != 2``, any root is 0 or infinite, or the root counts do not
        add up to ``N - 1``.
    """
    if gamma.K != 2:
        raise PreconditionError("k2_explicit needs K = 2")
    N = gamma.N
    groups = [list(betas), list(alphas1), list(alphas2)]
    for g in groups:
        for r in g:
            if r is INFINITY or not np.isfinite(r):
                raise PreconditionError("roots at infinity are excluded (x[N-1] must be nonzero)")
            if abs(r) == 0:
                raise PreconditionError("roots at 0 are excluded (x[0] must be nonzero)")
    betas, a1, a2 = (np.array(g, dtype=complex) for g in groups)
    if betas.size + a1.size != N - 1 or betas.size + a2.size != N - 1:
        raise PreconditionError(
            f"expected N-1 = {N - 1} roots per channel, got {betas.size + a1.size} and {betas.size + a2.size}"
        )
    g11, g22, g12 = gamma.lag(0, 0, N - 1), gamma.lag(1, 1, N - 1), gamma.lag(0, 1, N - 1)
    pb = np.prod(np.abs(betas))
    lam1 = math.sqrt(abs(g11) / (pb * np.prod(np.abs(a1))))
    mod2 = math.sqrt(abs(g22) / (pb * np.prod(np.abs(a2))))
    delta = (
        math.pi * (N - 1)
        + cmath.phase(g12)
        + float(np.sum(np.angle(betas)))
        + float(np.sum(np.angle(a2)))
    )
    lam2 = cmath.exp(-1j * delta) * mod2
    x1 = lam1 * np.poly(np.concatenate([betas, a1]))[::-1]
    x2 = lam2 * np.poly(np.concatenate([betas, a2]))[::-1]
    return SignalTuple(np.array([x1, x2]))


def k2_explicit_for(solutions: SolutionSet, index, tol: Tolerances | None = None) -> SignalTuple:
    """:func:`k2_explicit` with the roots taken from an enumerated solution set."""
    t = _tols(tol)
    betas = solutions.spectral_roots(index).multiset()
    alphas = [
        find_roots(r, tol_cluster=t.cluster).multiset() if r.degree_bound else []
        for r in solutions.quotients
    ]
    return k2_explicit(solutions.gamma, betas, alphas[0], alphas[1])
