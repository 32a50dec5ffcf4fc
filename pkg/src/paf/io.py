"""JSON documents for signals, correlation matrices, polynomials and results.

Complex numbers are ``[re, im]`` pairs.  Floats are written with Python's
shortest round-trip representation, so ``load(dump(x))`` reproduces every
coefficient bit for bit.

Signals::

    {"K": 2, "N": 3, "signals": [[[re, im], [re, im], [re, im]], [...]]}

Gamma::

    {"K": 2, "N": 3, "entries": [e_00, e_01, e_10, e_11]}

``entries`` is row-major over ``(i, j)``; each ``e_ij`` lists ``2N-1`` pairs in
ascending powers ``z**0 .. z**(2N-2)``.  Power ``p`` holds lag ``n = p - (N-1)``
of the cross-correlation ``gamma_ij[n] = sum_m x_i[m+n] conj(x_j[m])``.

Polynomial::

    {"degree_bound": D, "coeffs": [[re, im], ...]}      # D + 1 pairs, ascending

Roots use ``"inf"`` for the root at infinity.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .autocorr import CorrMatrixPoly, SignalTuple
from .polyring import BoundedPoly
from .roots import INFINITY, RootFactorization

__all__ = [
    "ParseError",
    "LAG_CONVENTION",
    "parse_json",
    "complex_to_json",
    "complex_from_json",
    "array_to_json",
    "array_from_json",
    "signals_to_doc",
    "signals_from_doc",
    "gamma_to_doc",
    "gamma_from_doc",
    "poly_to_doc",
    "poly_from_doc",
    "root_to_json",
    "factorization_to_doc",
    "dumps",
    "get_field",
]

LAG_CONVENTION = "entries[i*K + j][p] = gamma_ij[p - (N - 1)], powers ascending"


class ParseError(ValueError):
    """Malformed document; ``where`` names the offending field or line."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)


def parse_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"{source} line {e.lineno} column {e.colno}") from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=1, allow_nan=False)


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v, where: str) -> complex:
    if (
        not isinstance(v, list)
        or len(v) != 2
        or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v)
    ):
        raise ParseError("expected a [re, im] pair of numbers", where)
    re_, im_ = float(v[0]), float(v[1])
    if not (math.isfinite(re_) and math.isfinite(im_)):
        raise ParseError("non-finite number", where)
    return complex(re_, im_)


def array_to_json(a) -> list:
    return [complex_to_json(z) for z in np.asarray(a).reshape(-1)]


def array_from_json(v, where: str, length: int | None = None) -> np.ndarray:
    if not isinstance(v, list):
        raise ParseError("expected a list of [re, im] pairs", where)
    if length is not None and len(v) != length:
        raise ParseError(f"expected {length} coefficients, got {len(v)}", where)
    return np.array([complex_from_json(z, f"{where}[{k}]") for k, z in enumerate(v)], dtype=complex)


def get_field(doc, name: str, where: str = ""):
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object", where or "document")
    if name not in doc:
        raise ParseError("missing field", f"{where}.{name}" if where else name)
    return doc[name]


def _int_field(doc, name: str, where: str = "", minimum: int = 1) -> int:
    v = get_field(doc, name, where)
    if not isinstance(v, int) or isinstance(v, bool) or v < minimum:
        raise ParseError(f"expected an integer >= {minimum}", f"{where}.{name}" if where else name)
    return v


def signals_to_doc(x: SignalTuple) -> dict:
    return {"K": x.K, "N": x.N, "signals": [array_to_json(row) for row in x.signals]}


def signals_from_doc(doc, where: str = "") -> SignalTuple:
    K = _int_field(doc, "K", where)
    N = _int_field(doc, "N", where)
    rows = get_field(doc, "signals", where)
    name = f"{where}.signals" if where else "signals"
    if not isinstance(rows, list) or len(rows) != K:
        raise ParseError(f"expected K = {K} rows", name)
    return SignalTuple(np.array([array_from_json(r, f"{name}[{k}]", N) for k, r in enumerate(rows)]))


def gamma_to_doc(gamma: CorrMatrixPoly) -> dict:
    K = gamma.K
    return {
        "K": K,
        "N": gamma.N,
        "lag_convention": LAG_CONVENTION,
        "entries": [array_to_json(gamma.coeffs[i, j]) for i in range(K) for j in range(K)],
    }


def gamma_from_doc(doc, where: str = "") -> CorrMatrixPoly:
    K = _int_field(doc, "K", where)
    N = _int_field(doc, "N", where)
    entries = get_field(doc, "entries", where)
    name = f"{where}.entries" if where else "entries"
    if not isinstance(entries, list) or len(entries) != K * K:
        raise ParseError(f"expected K*K = {K * K} entries", name)
    arr = np.array(
        [array_from_json(e, f"{name}[{k}]", 2 * N - 1) for k, e in enumerate(entries)]
    )
    return CorrMatrixPoly(arr.reshape(K, K, 2 * N - 1))


def poly_to_doc(p: BoundedPoly) -> dict:
    return {"degree_bound": p.degree_bound, "coeffs": array_to_json(p.coeffs)}


def poly_from_doc(doc, where: str = "") -> BoundedPoly:
    D = _int_field(doc, "degree_bound", where, minimum=0)
    name = f"{where}.coeffs" if where else "coeffs"
    return BoundedPoly(array_from_json(get_field(doc, "coeffs", where), name, D + 1))


def root_to_json(r):
    return "inf" if r is INFINITY else complex_to_json(r)


def factorization_to_doc(f: RootFactorization) -> dict:
    return {
        "degree_bound": f.degree_bound,
        "leading": complex_to_json(f.leading),
        "roots": [{"root": root_to_json(r), "multiplicity": m} for r, m in f.roots],
    }
