# %% [markdown]
# # Roots at infinity and the count of solutions
#
# ``A(z) = z**3/2 + z**2/2 - z`` lives in the space of polynomials of degree at
# most 5, so two of its roots sit at infinity.  Two channels sharing ``A`` as a
# common factor produce a correlation matrix with 8 rank-one factorizations.

# %%
import numpy as np

from paf import BoundedPoly, conj_reverse, correlate, count_solutions, find_roots, mul, root_pairs

A = BoundedPoly([0, -1, 0.5, 0.5, 0, 0])
f = find_roots(A)
print("leading", f.leading)
for r, m in f.roots:
    print(r, m)

# %% [markdown]
# Conjugate reversal maps a root ``r`` to ``1/conj(r)``; infinity and zero swap.

# %%
print(conj_reverse(A).coeffs.real)
print(find_roots(conj_reverse(A)).roots)

# %% [markdown]
# ``H = A * conj_reverse(A)`` pairs each root with its reflection.  Each
# off-circle pair of multiplicity ``mu`` contributes a factor ``mu + 1``.

# %%
H = mul(A, conj_reverse(A))
p = root_pairs(H)
print("off-circle pairs", p.offcircle_pairs)
print("circle roots", p.circle_roots)
print("count", p.count)

# %%
x = np.array([mul(A, BoundedPoly([1, 0.5j])).coeffs, mul(A, BoundedPoly([2, -1 + 1j])).coeffs])
print("solutions of correlate(x):", count_solutions(correlate(x)))
