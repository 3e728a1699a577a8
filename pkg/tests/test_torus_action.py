from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niltorus.algebra_core import from_brackets, from_pair
from niltorus.exact_linalg import Matrix
from niltorus.torus_action import (
    TorusError,
    TorusWeights,
    apply_basis_change,
    block_constraints,
    check_torus_derivation,
    derivation_matrix,
    exp_automorphism_check,
    normalize_weights,
    partial0,
    plane_permutation_matrix,
    solve_all_derivations,
    solve_derivations_null_on_center,
    validate_block_support,
    weight_blocks,
)

EXAMPLE_RELATIONS = [(1, 3, 1, 0), (1, 4, 0, -1), (2, 3, 0, 1), (2, 4, 1, 0)]
FIVE_DIM_RELATIONS = [(1, 2, 1, 0), (1, 3, 0, 1)]

F = Fraction


def example_algebra():
    return from_brackets(4, EXAMPLE_RELATIONS)


def five_dim():
    return from_brackets(3, FIVE_DIM_RELATIONS)


def test_weights_shape():
    w = TorusWeights((F(1), F(2)), F(1), odd=True)
    assert w.n == 5
    assert w.planes() == [(0, 1, F(0)), (1, 2, F(1)), (3, 2, F(2))]
    with pytest.raises(TorusError):
        TorusWeights((F(-1),), F(0))


def test_derivation_matrix_blocks():
    w = TorusWeights((F(2),), F(3))
    D = derivation_matrix(w, F(1, 2))
    assert D.rows == 4
    assert D.block(0, 0, 2, 2) == Matrix.from_rows([[0, 1], [-1, 0]])
    assert D.block(2, 2, 2, 2) == Matrix.from_rows([[0, "3/2"], ["-3/2", 0]])


def test_example_carries_fixed_center_action():
    alg = example_algebra()
    w = TorusWeights((F(1), F(1)), F(0))
    assert check_torus_derivation(alg, w)
    assert validate_block_support(alg, w) == []
    # wrong center speed fails
    assert not check_torus_derivation(alg, TorusWeights((F(1), F(1)), F(2)))


def test_five_dim_torus():
    alg = five_dim()
    w = TorusWeights((F(1),), F(1), odd=True)
    assert check_torus_derivation(alg, w)
    assert validate_block_support(alg, w) == []
    assert not check_torus_derivation(alg, TorusWeights((F(1),), F(0), odd=True))


def test_derivation_identity_quadratic_consequence():
    # beta^2 T1 = -(d0'^2 T1 + 2 d0' T1 d0 + T1 d0^2) whenever the
    # first-order identities hold
    for alg, w in [
        (example_algebra(), TorusWeights((F(1), F(1)), F(0))),
        (five_dim(), TorusWeights((F(1),), F(1), odd=True)),
    ]:
        assert check_torus_derivation(alg, w)
        d0 = partial0(w)
        d0t = d0.T
        lhs = alg.T1.scale(w.beta * w.beta)
        rhs = -(d0t * d0t * alg.T1 + (d0t * alg.T1 * d0).scale(2) + alg.T1 * d0 * d0)
        assert lhs == rhs


def test_block_constraints_table():
    b = F(1)
    assert block_constraints(F(0), F(1), b) == block_constraints(F(1), F(0), b)
    # weight 0 against weight 1: difference and sum both hit beta, so the
    # coupling block is an unconstrained real matrix
    c = block_constraints(F(0), F(1), b)
    assert c.z1_allowed and c.z2_allowed
    c = block_constraints(F(1), F(2), b)
    assert c.z1_allowed and not c.z2_allowed
    c = block_constraints(F(1, 2), F(1, 2), b)
    assert not c.z1_allowed and c.z2_allowed
    c = block_constraints(F(1, 3), F(2, 3), b)
    assert not c.z1_allowed and c.z2_allowed
    c = block_constraints(F(3), F(4), b)
    assert c.z1_allowed and not c.z2_allowed
    # fixed center: only the complex half survives, blocks are complex-linear
    c = block_constraints(F(1), F(1), F(0))
    assert c.z1_allowed and not c.z2_allowed


def test_validate_block_support_reports_violation():
    alg = example_algebra()
    # weights that forbid every nonzero block of the example
    w = TorusWeights((F(1), F(3)), F(1))
    bad = validate_block_support(alg, w)
    assert bad
    kinds = {v.which for v in bad}
    assert kinds <= {"z1", "z2", "odd"}


def test_null_on_center_dimensions():
    # frozen: 6 + 8 for the 4-dim example, 3 + 6 for the 5-dim algebra
    assert solve_derivations_null_on_center(example_algebra()).dim == 14
    assert solve_derivations_null_on_center(five_dim()).dim == 9


def test_all_derivations_contains_torus_generator():
    alg = example_algebra()
    space = solve_all_derivations(alg)
    assert space.dim == 16
    w = TorusWeights((F(1), F(1)), F(0))
    D = derivation_matrix(w)
    # solve for coordinates of D in the basis
    cols = [Matrix.column([b.data[k] for k in range(36)]) for b in space.basis]
    A = Matrix.from_blocks([cols])
    from niltorus.exact_linalg import solve_linear

    target = Matrix.column([D.data[k] for k in range(36)])
    assert solve_linear(A, target).solvable


def test_derivations_are_derivations():
    from niltorus.algebra_core import bracket

    alg = five_dim()
    space = solve_all_derivations(alg)
    n = alg.n
    for D in space.basis:
        E = D.block(0, 0, n, n)
        M = D.block(n, n, 2, 2)
        # E' Tk + Tk E == M[k,0] T1 + M[k,1] T2 for the bracket forms
        for k, T in ((0, alg.T1), (1, alg.T2)):
            lhs = E.T * T + T * E
            rhs = alg.T1.scale(M[k, 0]) + alg.T2.scale(M[k, 1])
            assert lhs == rhs


def test_exp_automorphism_check_numeric():
    alg = example_algebra()
    w = TorusWeights((F(1), F(1)), F(0))
    res = exp_automorphism_check(alg, w, 0.37, tol=1e-10)
    assert res.ok
    alg5 = five_dim()
    w5 = TorusWeights((F(1),), F(1), odd=True)
    assert exp_automorphism_check(alg5, w5, 2.1, tol=1e-10).ok
    # breaking the weights breaks the check
    wbad = TorusWeights((F(1), F(2)), F(0))
    assert not exp_automorphism_check(alg, wbad, 0.37, tol=1e-10).ok


def test_normalize_weights():
    w = TorusWeights((F(4), F(2)), F(2))
    nw = normalize_weights(w)
    assert nw.rescale == F(1, 2)
    assert nw.weights.alphas == (F(1), F(2))
    assert nw.weights.beta == 1
    assert nw.permutation == (1, 0)

    w0 = TorusWeights((F(6), F(3)), F(0))
    nw0 = normalize_weights(w0)
    assert nw0.weights.alphas == (F(1), F(2))
    assert nw0.weights.beta == 0

    with pytest.raises(TorusError):
        normalize_weights(TorusWeights((F(0),), F(0)))


def test_plane_permutation_matrix_consistency():
    alg = example_algebra()
    w = TorusWeights((F(1), F(1)), F(0))
    X = plane_permutation_matrix(w, (1, 0))
    moved = apply_basis_change(alg, X)
    # still a valid torus algebra with the same weights (both planes equal)
    assert check_torus_derivation(moved, w)


def test_weight_blocks_grouping():
    w = TorusWeights((F(0), F(1), F(1), F(2)), F(1), odd=True)
    blocks = weight_blocks(w)
    assert [(b.alpha, b.offset, b.size) for b in blocks] == [
        (F(0), 0, 3),
        (F(1), 3, 4),
        (F(2), 7, 2),
    ]
    with pytest.raises(TorusError):
        weight_blocks(TorusWeights((F(2), F(1)), F(1)))


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_derivation_identities_random_basis_change(data):
    # the identities are basis-dependent; a plane-respecting rotation of a
    # valid instance stays valid
    alg = example_algebra()
    w = TorusWeights((F(1), F(1)), F(0))
    # random block-diagonal complex-linear change: preserves the action
    vals = st.integers(-3, 3)
    from niltorus.exact_linalg import GaussianRational
    from niltorus.realform import real_form

    entries = []
    for _ in range(4):
        entries.append(GaussianRational(data.draw(vals), data.draw(vals)))
    Z = Matrix(2, 2, entries)
    if Z.rank() != 2:
        return
    X = real_form(Z)
    moved = apply_basis_change(alg, X)
    assert check_torus_derivation(moved, w)
