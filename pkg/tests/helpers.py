from importlib import resources

import numpy as np
from hypothesis import strategies as st

# magnitudes below 1e-100 would underflow when squared
finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False).map(lambda v: v if abs(v) > 1e-100 else 0.0)
scalars = st.builds(complex, finite, finite)


def coeffs(min_size=1, max_size=8):
    return st.lists(scalars, min_size=min_size, max_size=max_size).map(lambda v: np.array(v, dtype=complex))


def signal_arrays(max_k=3, max_n=6):
    return st.tuples(st.integers(1, max_k), st.integers(1, max_n)).flatmap(
        lambda kn: st.lists(scalars, min_size=kn[0] * kn[1], max_size=kn[0] * kn[1]).map(
            lambda v: np.array(v, dtype=complex).reshape(kn)
        )
    )


def fixture_path(name):
    return str(resources.files("paf") / "fixtures" / name)


def separated_roots(rng, n, sep=0.2, lo=0.3, hi=3.0):
    """``n`` random complex roots with pairwise relative distance above ``sep``."""
    out = []
    while len(out) < n:
        z = rng.uniform(lo, hi) * np.exp(2j * np.pi * rng.random())
        if all(abs(z - w) > sep * max(1.0, abs(w)) for w in out):
            out.append(complex(z))
    return out
