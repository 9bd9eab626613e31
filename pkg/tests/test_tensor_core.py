import random
from fractions import Fraction

import pytest

from ncomplex.diagrams import Diagram, partitions, schur_dim
from ncomplex.errors import ShapeError
from ncomplex.tensor_core import (
    Tensor,
    contract_tensor,
    dual_star,
    epsilon,
    epsilon_power,
    projector_rank,
    schur_basis,
    schur_conditions_ok,
    tensor_to_wedge,
    wedge_keys,
    young_project,
)


def random_tensor(Y, D, rng, variance="co", entries=4):
    comps = {}
    for _ in range(entries):
        idx = tuple(rng.randint(1, D) for _ in range(Y.size))
        comps[idx] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Tensor(D, Y.size, variance, comps)


def test_tensor_construction_and_json():
    T = Tensor(2, 2, "co", {(1, 2): Fraction(3, 7), (2, 2): 0})
    assert T[(1, 2)] == Fraction(3, 7)
    assert (2, 2) not in T.components
    assert Tensor.from_json(T.to_json()) == T
    with pytest.raises(ShapeError):
        Tensor(2, 2, "co", {(1, 2, 3): 1})
    with pytest.raises(ShapeError):
        Tensor(2, 2, "middle", {})


def test_single_column_projector_is_antisymmetrizer():
    rng = random.Random(0)
    Y = Diagram((1, 1, 1))
    T = random_tensor(Y, 3, rng)
    P = young_project(Y, T)
    expected = {}
    import itertools

    for I, v in T.components.items():
        for perm in itertools.permutations(range(3)):
            sign = 1
            seen = list(perm)
            # inline parity
            par = 0
            for i in range(3):
                for j in range(i + 1, 3):
                    if seen[i] > seen[j]:
                        par += 1
            sign = -1 if par % 2 else 1
            K = tuple(I[p] for p in perm)
            expected[K] = expected.get(K, Fraction(0)) + sign * v
    expected = {k: v / 6 for k, v in expected.items() if v}
    assert P.components == expected


def test_idempotency_certifies_normalization():
    # exact projector identity on random tensors for every shape up to six
    # cells; this simultaneously certifies the factorial-over-count scalar
    rng = random.Random(1)
    for n in range(0, 7):
        for Y in partitions(n):
            for D in (2, 3):
                T = random_tensor(Y, D, rng)
                P = young_project(Y, T)
                assert young_project(Y, P) == P, (Y.rows, D)
                assert schur_conditions_ok(Y, P), (Y.rows, D)


def test_checker_passers_are_fixed_points():
    for n in range(0, 6):
        for Y in partitions(n):
            for D in (2, 3):
                for T in schur_basis(Y, D):
                    assert schur_conditions_ok(Y, T)
                    assert young_project(Y, T) == T


def test_checker_rejects_wrong_symmetry():
    Y = Diagram((1, 1))
    sym = Tensor(2, 2, "co", {(1, 2): 1, (2, 1): 1})
    assert not schur_conditions_ok(Y, sym)
    anti = Tensor(2, 2, "co", {(1, 2): 1, (2, 1): -1})
    assert schur_conditions_ok(Y, anti)
    assert not schur_conditions_ok(Diagram((2,)), anti)


def test_projector_rank_small_shapes():
    for n in range(0, 5):
        for Y in partitions(n):
            for D in (2, 3):
                assert projector_rank(Y, D) == schur_dim(Y, D), (Y.rows, D)


def test_schur_basis_sizes():
    assert len(schur_basis(Diagram((1, 1)), 2)) == 1
    assert len(schur_basis(Diagram((2, 1)), 3)) == 8
    assert schur_basis(Diagram((1, 1, 1)), 2) == []


def test_degree_mismatch_raises():
    with pytest.raises(ShapeError):
        young_project(Diagram((2, 1)), Tensor(2, 2, "co", {(1, 2): 1}))


def test_tall_column_projects_to_zero():
    rng = random.Random(2)
    Y = Diagram((1, 1, 1))
    T = random_tensor(Y, 2, rng)
    assert young_project(Y, T).is_zero


def test_contraction_epsilon_covector():
    eps = epsilon(2)
    dx1 = Tensor(2, 1, "co", {(1,): 1}, Diagram((1,)))
    v = contract_tensor(eps, dx1)
    assert v.components == {(2,): Fraction(-1)}
    assert v.variance == "contra"


def test_contraction_with_scalar_is_identity():
    eps = epsilon(3)
    one = Tensor(3, 0, "co", {(): 1}, Diagram(()))
    assert contract_tensor(eps, one) == eps


def test_contraction_preserves_symmetry_type():
    # contracting one column of a square-shape tensor with an antisymmetric
    # pair leaves the other antisymmetric column; a symmetric pair removes
    # one cell from each column and lands in the symmetric type
    rng = random.Random(3)
    D = 2
    Ysq = Diagram((2, 2))
    T = young_project(Ysq, random_tensor(Ysq, D, rng, "contra"))
    a = {(1,): Fraction(2), (2,): Fraction(-1)}
    b = {(1,): Fraction(1), (2,): Fraction(3)}
    anti, sym = {}, {}
    for i, ai in a.items():
        for j, bj in b.items():
            anti[i + j] = anti.get(i + j, Fraction(0)) + ai * bj
            anti[j + i] = anti.get(j + i, Fraction(0)) - ai * bj
            sym[i + j] = sym.get(i + j, Fraction(0)) + ai * bj
            sym[j + i] = sym.get(j + i, Fraction(0)) + ai * bj
    Tp = Tensor(D, 2, "co", {k: v for k, v in anti.items() if v}, Diagram((1, 1)))
    assert schur_conditions_ok(Diagram((1, 1)), Tp)
    out = contract_tensor(T, Tp)
    assert out.shape == Diagram((1, 1))
    assert schur_conditions_ok(Diagram((1, 1)), out)

    Ts = Tensor(D, 2, "co", {k: v for k, v in sym.items() if v}, Diagram((2,)))
    assert schur_conditions_ok(Diagram((2,)), Ts)
    out2 = contract_tensor(T, Ts)
    assert out2.shape == Diagram((2,))
    assert schur_conditions_ok(Diagram((2,)), out2)


def test_contraction_requires_opposite_variance_and_shapes():
    eps = epsilon(2)
    with pytest.raises(ShapeError):
        contract_tensor(eps, epsilon(2))
    with pytest.raises(ShapeError):
        contract_tensor(eps, Tensor(2, 1, "co", {(1,): 1}))  # untagged


def test_dual_star_scalar_gives_epsilon_power():
    one = Tensor(2, 0, "co", {(): 1}, Diagram(()))
    assert dual_star(3, one) == epsilon_power(3, 2)


def test_dual_star_shape_guard():
    rng = random.Random(4)
    T = young_project(Diagram((1, 1)), random_tensor(Diagram((1, 1)), 3, rng))
    with pytest.raises(ShapeError):
        dual_star(3, T)  # (1,1) is not the filled two-cell type at order 3


def test_wedge_round_trip():
    rng = random.Random(5)
    for rows in ((2, 1), (2, 2), (3, 1)):
        Y = Diagram(rows)
        T = young_project(Y, random_tensor(Y, 3, rng))
        w = tensor_to_wedge(Y, T)
        from ncomplex.tensor_core import tensor_from_wedge

        assert tensor_from_wedge(Y, 3, w) == T


def test_wedge_keys_shape():
    assert wedge_keys((1, 1), 2) == (((1, 2),),)
    assert len(wedge_keys((2,), 2)) == 4
    assert wedge_keys((1, 1, 1), 2) == ()
