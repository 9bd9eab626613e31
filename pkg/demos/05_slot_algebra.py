"""The anticommuting slot algebra behind the higher differential.

N - 1 families of anticommuting generators carry N - 1 square-zero
differentials. The fields of the complex sit inside as the image of a
projection, one slot per column, and the higher differential is one slot
differential followed by that projection. The splitting statements that
power the vanishing theorem are finite rank checks here.
"""

import random

from ncomplex import (
    Multiform,
    d_slot,
    embed_field,
    green_factor,
    lemma4_check,
    n_diff,
    order,
    project_pi,
    random_field,
    relative_cohomology_check,
    theorem2_check,
)

rng = random.Random(3)

# anticommutation of the slot differentials
w = Multiform(3, 2, {(((), ()), (2, 1)): 1})  # the polynomial (x1)^2 x2
s = d_slot(1, d_slot(2, w)) + d_slot(2, d_slot(1, w))
print("slot differentials anticommute:", s.is_zero)
print("order of the coefficient polynomial:", order(w))

# the embedded field picture
F = random_field(3, 2, 2, 2, rng)
print("\nprojecting an embedded field returns it:", project_pi(embed_field(F)) == F)
print("slot 1 then projection equals the differential:",
      project_pi(d_slot(1, embed_field(F))) == n_diff(F))
print("slot constant on this block:", green_factor(F))

# a non-filled block has a genuinely nontrivial projection
G = random_field(3, 2, 1, 2, rng)
w2 = d_slot(2, embed_field(G))
print("\nslot derivative of a covector differs from its projection:",
      embed_field(project_pi(w2)) != w2)
print("slot constant still exists and is nonzero:", green_factor(G))

# filled blocks: powers of d match simultaneous slot products
print("\nfilled-degree equivalence of power and slot-product kernels:",
      lemma4_check(3, 2, 1, 2))

# the two splitting statements, as rank checks
print("simultaneous cocycles split:", theorem2_check(3, 2, (1, 2), 1, (1, 1), 3).ok)
print("relative single-slot cohomology vanishes:",
      relative_cohomology_check(3, 2, (2,), 1, 3).ok)
