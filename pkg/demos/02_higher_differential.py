"""The degree-raising differential and its vanishing power.

At order 2 the differential is the classical exterior derivative. At
higher order it mixes symmetrization and antisymmetrization and only the
N-th power vanishes. Everything below is exact rational arithmetic.
"""

import random

from ncomplex import PolyTensorField, d_power, n_diff, random_field, scalar_field

# order 2: the exterior derivative, textbook normalization
f = scalar_field(2, 2, {(1, 1): 1})  # the polynomial x1 x2
df = n_diff(f)
print("d(x1 x2) components:", {idx: str(v) for (idx, e), v in df.full_components().items()})

w = PolyTensorField(2, 2, 1, 1, "co", {(((2,),), (1, 0)): 1})  # x1 dx2
print("d(x1 dx2) slot data:", {k: str(v) for k, v in n_diff(w).data.items()})
print("d^2 of anything at order 2 vanishes:", d_power(w, 2).is_zero)

# order 3: a metric-like symmetric field with one squared entry
h = PolyTensorField.from_components(3, 3, 2, 2, "co", {((1, 1), (0, 2, 0)): 1})
r = d_power(h, 2)
print("\norder 3, h_11 = (x2)^2:")
print("  d h is nonzero:", not n_diff(h).is_zero)
print("  d^2 h is the curvature-type tensor, nonzero:", not r.is_zero)
print("  d^3 h vanishes identically:", d_power(h, 3).is_zero)

# the same holds on random fields in every block
rng = random.Random(7)
ok = True
for N in (2, 3, 4):
    for p in range(0, 2 * (N - 1) + 1):
        F = random_field(N, 2, p, 3, rng)
        ok = ok and d_power(F, N).is_zero
print("\nrandom fields, orders 2..4, all blocks: d^N = 0 exactly:", ok)

# the bigrading: one derivative trades a polynomial degree for a tensor one
F = random_field(3, 2, 1, 3, rng)
G = n_diff(F)
print(f"block ({F.p}, {F.q}) maps to block ({G.p}, {G.q})")
