"""Matrix kernels shared by the GCD and root modules.

Everything here works on raw coefficient vectors (ascending powers) in
bounded-degree spaces, so zero leading coefficients behave as roots at
infinity throughout.
"""
from __future__ import annotations

import numpy as np

TOL_RANK = 1e-8


def mult_matrix(a: np.ndarray, L: int) -> np.ndarray:
    D = a.size - 1
    M = np.zeros((D + L + 1, L + 1), dtype=complex)
    for col in range(L + 1):
        M[col:col + D + 1, col] = a
    return M


def sylvester_stack(polys, k: int, pivot: int = 0) -> np.ndarray:
    """Generalized Sylvester matrix for common divisors of bound ``k``.

    Unknowns are cofactors ``u_i`` of bound ``n_i - k`` stacked in input
    order; each block row encodes ``p_pivot * u_i - p_i * u_pivot = 0``.  The
    kernel dimension is ``d - k + 1`` where ``d`` is the bound of the GCD.
    """
    bounds = [p.size - 1 for p in polys]
    widths = [n - k + 1 for n in bounds]
    offsets = np.concatenate([[0], np.cumsum(widths)])
    p0, n0 = polys[pivot], bounds[pivot]
    blocks = []
    for i, (p, n) in enumerate(zip(polys, bounds)):
        if i == pivot:
            continue
        rows = np.zeros((n0 + n - k + 1, offsets[-1]), dtype=complex)
        rows[:, offsets[i]:offsets[i + 1]] = mult_matrix(p0, n - k)
        rows[:, offsets[pivot]:offsets[pivot + 1]] = -mult_matrix(p, n0 - k)
        blocks.append(rows)
    if not blocks:
        return np.zeros((0, offsets[-1]), dtype=complex)
    return np.vstack(blocks)


def _singular_values(S: np.ndarray) -> np.ndarray:
    rows, cols = S.shape
    if rows == 0:
        return np.zeros(cols)
    sv = np.linalg.svd(S, compute_uv=False)
    return np.concatenate([sv, np.zeros(max(0, cols - rows))])


def numerical_nullity(S: np.ndarray, tol: float = TOL_RANK) -> int:
    sv = _singular_values(S)
    if sv.size == 0:
        return 0
    top = sv.max()
    if top == 0:
        return sv.size
    return int(np.sum(sv <= tol * top))


def _prepare(polys):
    polys = [np.asarray(p, dtype=complex) for p in polys]
    normed = [p / np.linalg.norm(p) for p in polys]
    pivot = int(np.argmin([p.size for p in normed]))
    return normed, pivot


def gcd_degree(polys, tol: float = TOL_RANK) -> int:
    """Bound of the GCD of nonzero coefficient vectors (numerical rank test)."""
    normed, pivot = _prepare(polys)
    kmax = min(p.size - 1 for p in normed)
    if kmax == 0:
        return 0
    return min(kmax, numerical_nullity(sylvester_stack(normed, 1, pivot), tol))


def leading_zeros(p: np.ndarray, tol: float) -> int:
    scale = np.max(np.abs(p))
    n = 0
    while n < p.size and abs(p[p.size - 1 - n]) <= tol * scale:
        n += 1
    return n


def lstsq_divide(a: np.ndarray, b: np.ndarray):
    """Quotient ``c`` of bound ``Da - Db`` minimizing ``||b * c - a||``.

    Returns ``(c, relative_residual)``.
    """
    L = a.size - b.size
    if L < 0:
        raise ValueError("divisor has larger degree bound than dividend")
    M = mult_matrix(b, L)
    c, *_ = np.linalg.lstsq(M, a, rcond=None)
    na = np.linalg.norm(a)
    res = np.linalg.norm(M @ c - a) / (na if na > 0 else 1.0)
    return c, float(res)


def common_divisor(polys, d: int, n_inf: int = 0, refine: int = 2):
    """Common divisor of bound ``d`` of nonzero coefficient vectors.

    The top ``n_inf`` coefficients of the divisor are held at exactly zero.
    Returns ``(h, cofactors)`` with ``h`` of unit norm.
    """
    polys = [np.asarray(p, dtype=complex) for p in polys]
    norms = [np.linalg.norm(p) for p in polys]
    normed = [p / s for p, s in zip(polys, norms)]
    pivot = int(np.argmin([p.size for p in normed]))
    S = sylvester_stack(normed, d, pivot)
    widths = [p.size - d for p in normed]
    if S.shape[0] == 0:
        v = np.zeros(S.shape[1], dtype=complex)
        v[0] = 1.0
    else:
        _, _, vh = np.linalg.svd(S)
        v = vh[-1].conj()
    offsets = np.concatenate([[0], np.cumsum(widths)])
    cof = [v[offsets[i]:offsets[i + 1]] for i in range(len(normed))]
    if len(normed) == 1:
        h = normed[0].copy()
        cof = [np.ones(1, dtype=complex)]
    else:
        for _ in range(refine + 1):
            h = _joint_divisor(normed, cof, d, n_inf)
            cof = [lstsq_divide(p, h)[0] for p in normed]
    scale = np.linalg.norm(h)
    h = h / scale
    cof = [c * scale * s for c, s in zip(cof, norms)]
    return h, cof


def _joint_divisor(polys, cof, d: int, n_inf: int) -> np.ndarray:
    # least squares for h in  p_i = u_i * h  over all i, top n_inf coefficients of h zero
    free = d + 1 - n_inf
    A = np.vstack([mult_matrix(u, d)[:, :free] for u in cof])
    rhs = np.concatenate(polys)
    h, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    return np.concatenate([h, np.zeros(n_inf, dtype=complex)])
