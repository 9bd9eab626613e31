"""Generalized cohomology: where it vanishes and where it does not.

The filled tensor degrees carry no cohomology at all, and the solver can
produce an exact potential for any power-closed field there. Away from
the filled degrees the cohomology is nontrivial, and an explicit family
of cocycles built from two-forms witnesses it.
"""

import random
from fractions import Fraction

from ncomplex import (
    PolyTensorField,
    cocycle_from_two_form,
    cohomology_dim,
    compute_table,
    d_power,
    killing_dim,
    n_diff,
    poincare_suite,
    random_field,
    solve_preimage,
    two_form_cocycle_is_trivial,
)

print("cohomology table, order 3 over the plane, polynomial degrees <= 2:")
print(compute_table(3, 2, 2).to_csv())

rep = poincare_suite(3, 2, 2, 4)
print("vanishing suite at the filled degrees:", "PASS" if rep.ok else "FAIL")

# an exact potential: build a closed field and solve for its preimage
rng = random.Random(1)
h = random_field(3, 3, 2, 3, rng)
F = d_power(h, 2)
alpha = solve_preimage(F, 1)
print("preimage residual is identically zero:", d_power(alpha, 2) == F)

# degree-one blocks carry the isometry counts
print("\ndegree-one cocycles over three dimensions, by polynomial degree:")
print("  constants :", cohomology_dim(3, 3, 1, 1, 0), "(translations)")
print("  linear    :", cohomology_dim(3, 3, 1, 1, 1), "(rotations)")
print("  quadratic :", cohomology_dim(3, 3, 1, 1, 2))
print("symmetric two-tensor solutions:", [killing_dim(3, 2, 1, q) for q in range(4)])

# a nontrivial degree-3 class from a quadratic two-form
om = PolyTensorField(2, 3, 2, 2, "co", {(((1, 2),), (0, 0, 2)): Fraction(1)})
t = cocycle_from_two_form(om)
print("\ntwo-form with one quadratic component gives a cocycle:", n_diff(t).is_zero)
print("the class is nontrivial:", not two_form_cocycle_is_trivial(t))

# gradient two-forms give trivial classes
X = random_field(2, 3, 1, 3, rng)
t2 = cocycle_from_two_form(n_diff(X))
print("gradient two-forms give trivial classes:", two_form_cocycle_is_trivial(t2))
