"""Root data, sl2 tensor invariants and conformal block dimensions."""

from fractions import Fraction

import pytest

from aomoto_lab import linalg
from aomoto_lab.errors import (
    DuplicatePoints,
    LevelViolation,
    UnsupportedAlgebra,
    WeightMismatch,
)
from aomoto_lab.liealg import (
    RootData,
    TensorSpace,
    conformal_block_dim,
    coinvariants_quotient,
    dual_weights,
    invariant_functionals,
    invariants_dim,
    sl2,
)

F = Fraction


def test_sl2_pairings():
    g = sl2()
    omega = (F(1),)
    alpha = g.simple_root_fund(0)
    assert alpha == (F(2),)
    assert g.weight_pairing(omega, omega) == F(1, 2)
    assert g.weight_pairing(alpha, alpha) == F(2)
    assert g.weight_pairing(omega, alpha) == F(1)


def test_highest_root_norm_is_two_across_types():
    for letter, rank in [("A", 1), ("A", 3), ("B", 3), ("C", 3),
                         ("D", 4), ("E", 6), ("F", 4), ("G", 2)]:
        g = RootData(letter, rank)
        theta = g.theta_fund()
        assert g.weight_pairing(theta, theta) == F(2), (letter, rank)


def test_root_coords_inverts_simple_roots():
    g = RootData("B", 3)
    for j in range(3):
        coords = g.root_coords(g.simple_root_fund(j))
        assert coords == tuple(F(1) if i == j else F(0) for i in range(3))


def test_weight_pairing_symmetric():
    g = RootData("C", 3)
    lam = (F(1), F(0), F(2))
    mu = (F(0), F(3), F(1))
    assert g.weight_pairing(lam, mu) == g.weight_pairing(mu, lam)


def test_dual_weights():
    a2 = RootData("A", 2)
    assert dual_weights(a2, [(1, 0)]) == (((F(0), F(1)),))
    assert dual_weights(sl2(), [(1,), 2]) == ((F(1),), (F(2),))
    e6 = RootData("E", 6)
    assert dual_weights(e6, [(1, 0, 0, 0, 0, 0)]) == ((F(0),) * 5 + (F(1),),)


def test_sl2_commutation_relations():
    for m in (1, 2, 3):
        space = TensorSpace((m,))
        e = space.total_action("e")
        f = space.total_action("f")
        h = space.total_action("h")
        ef = linalg.matmul(e, f)
        fe = linalg.matmul(f, e)
        comm = [[ef[r][c] - fe[r][c] for c in range(m + 1)] for r in range(m + 1)]
        assert comm == h
        he = linalg.matmul(h, e)
        eh = linalg.matmul(e, h)
        assert [[he[r][c] - eh[r][c] for c in range(m + 1)] for r in range(m + 1)] == [
            [2 * x for x in row] for row in e
        ]


def test_tensor_space_weights_and_zero_weight_basis():
    space = TensorSpace((1, 1))
    assert space.dim == 4
    assert space.weight((0, 0)) == 2
    assert space.weight((1, 1)) == -2
    assert space.zero_weight_indices() == [space.index[(0, 1)], space.index[(1, 0)]]


def test_total_action_is_sum_of_factors():
    space = TensorSpace((1, 2))
    e = space.total_action("e")
    parts = [space.op_on_factor("e", 0), space.op_on_factor("e", 1)]
    for r in range(space.dim):
        for c in range(space.dim):
            assert e[r][c] == parts[0][r][c] + parts[1][r][c]


def test_invariants_dim_examples():
    g = sl2()
    assert invariants_dim(g, [(1,), (1,)]) == 1
    assert invariants_dim(g, [1, 1, 1, 1]) == 2
    assert invariants_dim(g, [2, 2, 2]) == 1
    assert invariants_dim(g, [1]) == 0
    assert invariants_dim(g, [1, 1, 1]) == 0
    assert invariants_dim(g, [3, 1]) == 0
    assert invariants_dim(g, [2, 2]) == 1


def test_invariants_dim_matches_invariant_vector_count():
    # independent route: the multiplicity of the trivial rep equals the
    # dimension of the simultaneous kernel of e, f and h on the product
    g = sl2()
    for ms in [(1, 1), (1, 1, 1, 1), (2, 2, 2), (2, 1, 1), (3, 3)]:
        space = TensorSpace(ms)
        rows = []
        for op in ("e", "f", "h"):
            rows.extend(space.total_action(op))
        kernel = linalg.nullspace(rows, space.dim)
        assert len(kernel) == invariants_dim(g, list(ms)), ms


def test_invariant_functionals_kill_lowering_and_raising():
    for ms in [(1, 1), (1, 1, 1, 1), (2, 2, 2)]:
        space = TensorSpace(ms)
        zero = space.zero_weight_indices()
        funcs = invariant_functionals(space)
        assert len(funcs) == invariants_dim(sl2(), list(ms))
        e = space.total_action("e")
        f = space.total_action("f")
        for psi in funcs:
            full = [F(0)] * space.dim
            for z, c in zip(zero, psi):
                full[z] = c
            for col in range(space.dim):
                assert sum(full[r] * e[r][col] for r in range(space.dim)) == 0
                assert sum(full[r] * f[r][col] for r in range(space.dim)) == 0


def test_coinvariants_match_invariants_dim():
    for ms in [(1, 1), (1, 1, 1, 1), (2, 2)]:
        space = TensorSpace(ms)
        chosen, projection = coinvariants_quotient(space)
        assert len(chosen) == invariants_dim(sl2(), list(ms))
        # the projection annihilates every vector in g V
        e = space.total_action("e")
        for col in range(space.dim):
            vec = [e[r][col] for r in range(space.dim)]
            coords = [
                sum(projection[k][r] * vec[r] for r in range(space.dim))
                for k in range(len(chosen))
            ]
            assert all(c == 0 for c in coords)
        # and restricts to the identity on the chosen representatives
        for k, idx in enumerate(chosen):
            unit = [F(0)] * space.dim
            unit[idx] = F(1)
            coords = [
                sum(projection[j][r] * unit[r] for r in range(space.dim))
                for j in range(len(chosen))
            ]
            assert coords == [F(1) if j == k else F(0) for j in range(len(chosen))]


def test_conformal_block_dims_four_points():
    g = sl2()
    points = (F(-1, 2), F(0), F(1, 2), F(1))
    weights = [1, 1, 1, 1]
    assert conformal_block_dim(g, weights, 1, points) == 1
    assert conformal_block_dim(g, weights, 2, points) == 2
    assert conformal_block_dim(g, weights, 5, points) == 2


def test_conformal_block_errors():
    g = sl2()
    with pytest.raises(LevelViolation):
        conformal_block_dim(g, [2, 2], 1, (0, 1))
    with pytest.raises(LevelViolation):
        conformal_block_dim(g, [1, 1], 0, (0, 1))
    with pytest.raises(DuplicatePoints):
        conformal_block_dim(g, [1, 1], 1, (3, 3))
    with pytest.raises(WeightMismatch):
        conformal_block_dim(g, [1, 1, 1], 1, (0, 1))


def test_sl2_only_guards():
    a2 = RootData("A", 2)
    with pytest.raises(UnsupportedAlgebra):
        invariants_dim(a2, [(1, 0), (0, 1)])
    with pytest.raises(UnsupportedAlgebra):
        conformal_block_dim(a2, [(1, 0)], 1, (0,))
    with pytest.raises(WeightMismatch):
        invariants_dim(sl2(), [(1, 0)])
    with pytest.raises(WeightMismatch):
        invariants_dim(sl2(), [-1])
