"""Rank-one factorization of multichannel correlation matrix polynomials.

Build ``Gamma = correlate(x)`` from ``K`` signals of length ``N``, then recover
``x`` up to a global phase with :func:`coprime_recover`, decide uniqueness with
:func:`is_unique`, and list every solution with :func:`enumerate_all`.
"""
from .autocorr import (
    CorrMatrixPoly,
    SignalTuple,
    canonical_phase,
    correlate,
    palindromic_check,
    residual,
)
from .factorize import (
    RootPairStructure,
    SolutionSet,
    Tolerances,
    common_gcd,
    coprime_recover,
    count_solutions,
    enumerate_all,
    is_coprime,
    is_unique,
    k2_explicit,
    k2_explicit_for,
    root_pairs,
    row_gcd,
)
from .gcd import divides, gcd_many, sylvester_coprime
from .polyring import BoundedPoly, conj_reverse, evaluate, inner_product, mul, mult_matrix
from .roots import INFINITY, RootFactorization, conj_reflect, find_roots, from_roots

__version__ = "0.1.0"

__all__ = [
    "BoundedPoly",
    "CorrMatrixPoly",
    "INFINITY",
    "RootFactorization",
    "RootPairStructure",
    "SignalTuple",
    "SolutionSet",
    "Tolerances",
    "canonical_phase",
    "common_gcd",
    "conj_reflect",
    "conj_reverse",
    "coprime_recover",
    "correlate",
    "count_solutions",
    "divides",
    "enumerate_all",
    "evaluate",
    "find_roots",
    "from_roots",
    "gcd_many",
    "inner_product",
    "is_coprime",
    "is_unique",
    "k2_explicit",
    "k2_explicit_for",
    "mul",
    "mult_matrix",
    "palindromic_check",
    "residual",
    "root_pairs",
    "row_gcd",
    "sylvester_coprime",
]
