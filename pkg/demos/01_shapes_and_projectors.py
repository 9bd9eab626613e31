"""Shapes, symmetrizers and dimension counts.

Walks through the diagram combinatorics and the projector machinery:
conjugation, the maximally filled family, strong inclusion, contraction
of shapes, and the two independent ways of counting the dimension of a
symmetry type.
"""

import random
from fractions import Fraction

from ncomplex import (
    Diagram,
    Tensor,
    conjugate,
    contract_shape,
    max_diagram,
    projector_rank,
    schur_basis,
    schur_conditions_ok,
    schur_dim,
    standard_count,
    strongly_includes,
    young_project,
)

Y = Diagram((3, 1))
print(f"shape {Y} has columns {Y.columns()} and conjugate {conjugate(Y)}")

print("\nmaximally filled shapes of order 3 (at most two columns):")
for p in range(0, 7):
    print(f"  degree {p}: {max_diagram(3, p)}")

A, B = Diagram((2, 2)), Diagram((2, 1))
print(f"\n{B} strongly included in {A}? {strongly_includes(A, B)}")
print(f"contracting: C({A}|{B}) = {contract_shape(A, B)}")
print(f"and back: C({A}|C({A}|{B})) = {contract_shape(A, contract_shape(A, B))}")

print("\ndimension of the (2,1) type over a three-dimensional base:")
print(f"  hook content formula : {schur_dim((2, 1), 3)}")
print(f"  projector rank oracle: {projector_rank((2, 1), 3)}")
print(f"  standard fillings    : {standard_count((2, 1))}")

rng = random.Random(0)
T = Tensor(3, 3, "co", {(1, 2, 3): Fraction(1), (2, 2, 1): Fraction(1, 2)})
P = young_project(Diagram((2, 1)), T)
print("\nprojecting a random degree-3 tensor onto the (2,1) type:")
print(f"  projected twice equals projected once: {young_project(Diagram((2, 1)), P) == P}")
print(f"  output satisfies both symmetry conditions: {schur_conditions_ok(Diagram((2, 1)), P)}")

basis = schur_basis(Diagram((2, 2)), 2)
print(f"\nthe square shape over a plane is {len(basis)}-dimensional,")
print(f"matching the formula value {schur_dim((2, 2), 2)}")
