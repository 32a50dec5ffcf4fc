"""Random and planted test instances.

Planted instances share a common factor ``Q`` with prescribed root-pair
structure.  All roots are drawn away from the unit circle (except the
deliberate circle roots) and kept apart from each other and from each
other's reflections, so that the instances are well conditioned.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .autocorr import SignalTuple
from .polyring import BoundedPoly, mul
from .roots import INFINITY, RootFactorization, from_roots

__all__ = ["random_signals", "PlantedInstance", "planted_instance", "worked_example_signals"]


def random_signals(rng: np.random.Generator, K: int, N: int) -> SignalTuple:
    """``K`` unit-variance circular complex Gaussian signals of length ``N``."""
    return SignalTuple((rng.standard_normal((K, N)) + 1j * rng.standard_normal((K, N))) / np.sqrt(2))


@dataclass(frozen=True)
class PlantedInstance:
    x: SignalTuple
    Q: BoundedPoly
    quotients: list
    pairs: list          # (delta, mu) with |delta| > 1 or INFINITY
    circle: list         # (epsilon, nu) with nu the multiplicity in H

    @property
    def count(self) -> int:
        return int(np.prod([mu + 1 for _, mu in self.pairs]))


class _Sampler:
    def __init__(self, rng, sep):
        self.rng = rng
        self.sep = sep
        self.taken = []

    def _free(self, z):
        pts = [z, 1 / np.conj(z)]
        return all(abs(p - q) > self.sep * max(1.0, abs(q)) for p in pts for q in self.taken)

    def draw(self, lo, hi, inside=None):
        for _ in range(10_000):
            mod = self.rng.uniform(lo, hi)
            if inside is True or (inside is None and self.rng.random() < 0.5):
                mod = 1 / mod
            z = mod * np.exp(2j * np.pi * self.rng.random())
            if self._free(z):
                self.take(z)
                return complex(z)
        raise RuntimeError("could not place a separated root")

    def draw_circle(self):
        for _ in range(10_000):
            z = np.exp(2j * np.pi * self.rng.random())
            if all(abs(z - q) > self.sep for q in self.taken):
                self.taken.append(z)
                return complex(z)
        raise RuntimeError("could not place a separated root")

    def take(self, z):
        self.taken += [z, 1 / np.conj(z)]


def planted_instance(
    rng: np.random.Generator,
    K: int,
    multiplicities,
    quotient_bound: int,
    n_circle: int = 0,
    infinity_pair: bool = False,
    sep: float = 0.2,
) -> PlantedInstance:
    """Signals ``x_k = Q * R_k`` with a planted common factor ``Q``.

    Parameters
    ----------
    rng : numpy.random.Generator
    K : int
        Number of channels.
    multiplicities : sequence of int
        ``mu_i`` of each off-circle root pair of ``H = Q * conj_reverse(Q)``.
        ``Q`` carries ``delta_i`` with a random multiplicity ``0..mu_i`` and
        ``1/conj(delta_i)`` with the rest.
    quotient_bound : int
        Degree bound of the quotients ``R_k``.
    n_circle : int
        Number of simple unit-circle roots of ``Q`` (double roots of ``H``).
    infinity_pair : bool
        Use the pair ``(infinity, 0)`` for the first multiplicity.
    sep : float
        Minimal relative distance between any two roots or reflections.
    """
    s = _Sampler(rng, sep)
    q_roots, pairs = [], []
    for i, mu in enumerate(multiplicities):
        nu1 = int(rng.integers(0, mu + 1))
        if i == 0 and infinity_pair:
            delta, refl = INFINITY, 0j
            s.taken.append(0j)
        else:
            delta = s.draw(1.6, 2.6, inside=False)
            refl = 1 / np.conj(delta)
        if nu1:
            q_roots.append((delta, nu1))
        if mu - nu1:
            q_roots.append((refl, mu - nu1))
        pairs.append((delta, mu))
    circle = []
    for _ in range(n_circle):
        eps = s.draw_circle()
        q_roots.append((eps, 1))
        circle.append((eps, 2))
    D = sum(m for _, m in q_roots)
    phase = np.exp(2j * np.pi * rng.random())
    Q = from_roots(RootFactorization(phase * rng.uniform(0.5, 2.0), tuple(q_roots), D))
    quotients = []
    for _ in range(K):
        rr = tuple((s.draw(1.4, 2.4), 1) for _ in range(quotient_bound))
        lead = rng.uniform(0.5, 2.0) * np.exp(2j * np.pi * rng.random())
        quotients.append(from_roots(RootFactorization(lead, rr, quotient_bound)))
    x = SignalTuple(np.array([mul(Q, r).coeffs for r in quotients]))
    return PlantedInstance(x, Q, quotients, pairs, circle)


def worked_example_signals() -> SignalTuple:
    """Two channels sharing ``A(z) = z**3/2 + z**2/2 - z`` in ``C_<=5``.

    Their common GCD is ``A * conj_reverse(A)`` with eight factorizations.
    """
    a = BoundedPoly([0, -1, 0.5, 0.5, 0, 0])
    r1 = BoundedPoly([1, 0.5j])
    r2 = BoundedPoly([2, -1 + 1j])
    return SignalTuple(np.array([mul(a, r1).coeffs, mul(a, r2).coeffs]))
