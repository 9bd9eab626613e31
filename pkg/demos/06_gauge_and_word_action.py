"""Gauge chains, conserved tensors, and the associative word action.

The order-3 complex hosts the rank-2 gauge operators: symmetrized
gradient, curvature, and the cyclic identity. Conserved symmetric
tensors acquire curvature-symmetry potentials by dualizing, solving and
dualizing back. Separately, words of base vectors act on the graded
space, and their relations are verified as exact kernel statements.
"""

import random
from fractions import Fraction

from ncomplex import (
    PolyTensorField,
    act,
    kernel_dim,
    random_field,
    relation_checks,
    spin2_constants,
    spin2_d1,
    spin2_d2,
    spin2_d3,
    stress_potential,
    unit_element,
)
from ncomplex.gauge import _double_divergence

rng = random.Random(4)

X = random_field(3, 3, 1, 3, rng)
h = spin2_d1(X)
print("curvature of a pure-gauge metric vanishes:", spin2_d2(h).is_zero)

h2 = random_field(3, 3, 2, 4, rng)
R = spin2_d2(h2)
print("cyclic identity of the curvature holds:", spin2_d3(R).is_zero)
c1, c2, c3 = spin2_constants(3)
print(f"operator constants against powers of d: {c1}, {c2}, {c3}")

# potential of a conserved tensor
seed = random_field(3, 3, 4, 3, rng, "contra")
T = PolyTensorField.from_components(3, 3, 2, 1, "contra", _double_divergence(seed))
R = stress_potential(T)
print("double divergence of the potential reproduces the input exactly:",
      _double_divergence(R) == T.full_components())

# the word action
u = unit_element(3, 2)
X1, Y1, Z1 = (tuple(Fraction(rng.randint(-2, 2)) for _ in range(2)) for _ in range(3))
cyc = act(3, u, [X1, Y1, Z1]) + act(3, u, [Z1, X1, Y1]) + act(3, u, [Y1, Z1, X1])
print("\ncyclic three-letter sums act as zero:", cyc.is_zero)
print("kernel of the word action, degrees 0..4 over the plane:",
      [kernel_dim(3, 2, n) for n in range(5)])

rep = relation_checks(3, 2)
print("\nrelation report (the top-degree entry records a boundary finding):")
print(rep)
