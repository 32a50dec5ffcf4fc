# %% [markdown]
# # Recovery and enumeration
#
# Generic signals are determined by their correlations up to a global phase.
# A planted common factor with off-circle roots breaks uniqueness, and
# ``enumerate_all`` lists every alternative.

# %%
import numpy as np

from paf import canonical_phase, coprime_recover, correlate, enumerate_all, is_unique, residual
from paf.synthetic import planted_instance, random_signals

rng = np.random.default_rng(0)
x = random_signals(rng, 3, 8)
g = correlate(x)
y = coprime_recover(g)
xc = canonical_phase(x).signals
print("unique:", is_unique(g))
print("relative error:", np.linalg.norm(y.signals - xc) / np.linalg.norm(xc))

# %% [markdown]
# Plant a common factor with one double pair and one simple pair: ``3 * 2 = 6``
# solutions, each a different spectral factor of the common GCD times the
# same quotients.

# %%
inst = planted_instance(rng, 2, [2, 1], quotient_bound=2, n_circle=1)
g = correlate(inst.x)
sols = enumerate_all(g)
print("expected", inst.count, "found", len(sols))
planted = canonical_phase(inst.x).signals
for idx, y in sols:
    hit = np.max(np.abs(y.signals - planted)) < 1e-7 * np.max(np.abs(planted))
    print(idx, f"residual {residual(g, y):.1e}", "planted" if hit else "")

# %% [markdown]
# Each index stands for the family ``beta * Y`` with ``|beta| = 1``; the
# canonical representative makes the largest coefficient real positive.
