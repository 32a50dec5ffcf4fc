"""Brute-force reference implementations for cross-checking.

Nothing here touches the GCD or pairing machinery of :mod:`paf.factorize`.
The exhaustive search uses numpy's companion-matrix root finder and plain
loops: every solution ``Y`` has ``Y_j * conj_reverse(Y_j) = Gamma_jj`` for a
reference channel ``j``, so ``Y_j`` is built from some sub-multiset of the
roots of ``Gamma_jj``.  Each sub-multiset of the right size is tried, the
other channels follow by exact division, and survivors are filtered by their
residual against the whole matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .autocorr import CorrMatrixPoly, SignalTuple, as_signals, canonical_phase
from .polyring import BoundedPoly, mult_matrix

__all__ = [
    "OracleReport",
    "BudgetExceededError",
    "brute_force_factorizations",
    "naive_correlate",
    "naive_convolve",
    "BUDGET",
]

BUDGET = 100_000


class BudgetExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleReport:
    candidate_count: int
    accepted: list = field(default_factory=list)
    max_residual: float = 0.0


def naive_convolve(a, b) -> np.ndarray:
    """Double-loop convolution."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    out = np.zeros(a.size + b.size - 1, dtype=complex)
    for i in range(a.size):
        for j in range(b.size):
            out[i + j] += a[i] * b[j]
    return out


def naive_correlate(x) -> CorrMatrixPoly:
    """Correlation sequences by direct summation over lags.

    Nonnegative lags use ``gamma_ij[n] = sum_m x_i[m + n] conj(x_j[m])``;
    negative lags use ``gamma_ij[-n] = conj(gamma_ji[n])``.
    """
    x = as_signals(x).signals
    K, N = x.shape
    pos = np.zeros((K, K, N), dtype=complex)
    for i in range(K):
        for j in range(K):
            for n in range(N):
                s = 0j
                for m in range(N - n):
                    s += x[i, m + n] * np.conj(x[j, m])
                pos[i, j, n] = s
    out = np.zeros((K, K, 2 * N - 1), dtype=complex)
    for i in range(K):
        for j in range(K):
            for n in range(N):
                out[i, j, n + N - 1] = pos[i, j, n]
                out[i, j, N - 1 - n] = np.conj(pos[j, i, n])
    return CorrMatrixPoly(out)


def _roots_with_multiplicity(c: np.ndarray, group_tol: float, zero_tol: float = 1e-10):
    # (root, multiplicity) list; None stands for the root at infinity
    scale = np.max(np.abs(c))
    D = c.size - 1
    n_inf = 0
    while n_inf <= D and abs(c[D - n_inf]) <= zero_tol * scale:
        n_inf += 1
    n_zero = 0
    while abs(c[n_zero]) <= zero_tol * scale:
        n_zero += 1
    core = c[n_zero:D + 1 - n_inf]
    est = np.roots(core[::-1]) if core.size > 1 else np.zeros(0, dtype=complex)
    groups = []
    for z in est:
        for g in groups:
            if any(abs(z - w) <= group_tol * max(1.0, abs(w)) for w in g):
                g.append(z)
                break
        else:
            groups.append([z])
    desc = core[::-1]
    out = []
    for g in groups:
        r = complex(np.mean(g))
        m = len(g)
        if m > 1:
            p = np.polyder(desc, m - 1)
            dp = np.polyder(p)
            for _ in range(10):
                d = np.polyval(dp, r)
                if d == 0:
                    break
                r = r - np.polyval(p, r) / d
        out.append((r, m))
    if n_zero:
        out.append((0j, n_zero))
    if n_inf:
        out.append((None, n_inf))
    return out


def _selections(mults, total):
    if not mults:
        if total == 0:
            yield ()
        return
    head, rest = mults[0], mults[1:]
    for k in range(min(head, total) + 1):
        for tail in _selections(rest, total - k):
            yield (k,) + tail


def _count_selections(mults, total):
    ways = np.zeros(total + 1, dtype=object)
    ways[0] = 1
    for m in mults:
        nxt = np.zeros(total + 1, dtype=object)
        for s in range(total + 1):
            if ways[s]:
                for k in range(min(m, total - s) + 1):
                    nxt[s + k] += ways[s]
        ways = nxt
    return int(ways[total])


def brute_force_factorizations(
    gamma: CorrMatrixPoly,
    tol: float = 1e-8,
    budget: int = BUDGET,
    group_tol: float = 1e-3,
) -> OracleReport:
    """Every factorization of ``gamma`` by exhaustive search.

    Parameters
    ----------
    gamma : CorrMatrixPoly
    tol : float
        Residual a candidate must meet in every entry, each relative to the
        max-norm of that entry of ``gamma``.
    budget : int
        Maximum number of candidate root selections.
    group_tol : float
        Relative distance grouping root estimates of ``Gamma_jj`` into
        multiple roots; the instances must have roots separated well beyond it.

    Raises
    ------
    BudgetExceededError
        If the number of candidate selections exceeds ``budget``.
    """
    K, N = gamma.K, gamma.N
    c = gamma.coeffs
    centers = np.real(np.diagonal(c[:, :, N - 1]))
    j = int(np.argmax(centers))
    gjj = c[j, j]
    roots = _roots_with_multiplicity(gjj, group_tol)
    mults = [m for _, m in roots]
    n_cand = _count_selections(mults, N - 1)
    if n_cand > budget:
        raise BudgetExceededError(
            f"{n_cand} candidate selections exceed the budget of {budget}"
        )
    kmax = int(np.argmax(np.abs(gjj)))
    gscale = np.max(np.abs(c))
    accepted, worst = [], 0.0
    for sel in _selections(mults, N - 1):
        finite = []
        n_inf = 0
        for (r, _), k in zip(roots, sel):
            if r is None:
                n_inf += k
            else:
                finite.extend([r] * k)
        s0 = np.poly(finite)[::-1] if finite else np.ones(1, dtype=complex)
        s0 = np.concatenate([s0, np.zeros(n_inf)])
        prod = np.convolve(s0, np.conj(s0[::-1]))
        ratio = gjj[kmax] / prod[kmax]
        if ratio.real <= 0 or abs(ratio.imag) > 1e-6 * abs(ratio):
            continue
        yj = np.sqrt(ratio.real) * s0
        if np.max(np.abs(np.convolve(yj, np.conj(yj[::-1])) - gjj)) > tol * gscale:
            continue
        M = mult_matrix(BoundedPoly(np.conj(yj[::-1])), N - 1)
        y = np.empty((K, N), dtype=complex)
        for k in range(K):
            y[k], *_ = np.linalg.lstsq(M, c[k, j], rcond=None)
        rebuilt = np.array([[naive_convolve(y[a], np.conj(y[b][::-1])) for b in range(K)] for a in range(K)])
        err = np.max(np.abs(rebuilt - c), axis=2)
        # each entry against its own scale: a global scale hides wrong weak channels
        entry_scale = np.maximum(np.max(np.abs(c), axis=2), 1e-300)
        if np.max(err / entry_scale) > tol:
            continue
        res = float(np.max(err) / gscale)
        cand = canonical_phase(SignalTuple(y))
        if any(np.max(np.abs(cand.signals - other.signals)) <= 1e-6 * np.max(np.abs(cand.signals)) for other in accepted):
            continue
        accepted.append(cand)
        worst = max(worst, res)
    return OracleReport(n_cand, accepted, worst)
