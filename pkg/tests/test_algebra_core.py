from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niltorus.algebra_core import (
    StructureError,
    bracket,
    center_equals_commutator,
    commutator_dimension,
    direct_sum,
    from_brackets,
    from_pair,
    is_type_n2,
)
from niltorus.exact_linalg import Matrix

EXAMPLE_RELATIONS = [(1, 3, 1, 0), (1, 4, 0, -1), (2, 3, 0, 1), (2, 4, 1, 0)]
FIVE_DIM_RELATIONS = [(1, 2, 1, 0), (1, 3, 0, 1)]


def test_example_fixture_matrices():
    alg = from_brackets(4, EXAMPLE_RELATIONS)
    assert alg.T1.tolist() == Matrix.from_rows(
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    ).tolist()
    assert alg.T2.tolist() == Matrix.from_rows(
        [[0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]
    ).tolist()
    assert alg.dim == 6


def test_example_is_type_n2():
    alg = from_brackets(4, EXAMPLE_RELATIONS)
    assert commutator_dimension(alg) == 2
    assert center_equals_commutator(alg)
    assert is_type_n2(alg)


def test_five_dim_fixture():
    alg = from_brackets(3, FIVE_DIM_RELATIONS)
    assert is_type_n2(alg)
    assert alg.dim == 5


def test_bracket_values():
    alg = from_brackets(4, EXAMPLE_RELATIONS)
    e1 = [1, 0, 0, 0]
    e3 = [0, 0, 1, 0]
    e4 = [0, 0, 0, 1]
    assert bracket(alg, e1, e3) == (1, 0)
    assert bracket(alg, e3, e1) == (-1, 0)
    assert bracket(alg, e1, e4) == (0, -1)
    assert bracket(alg, e1, e1) == (0, 0)


def test_bracket_bilinear():
    alg = from_brackets(4, EXAMPLE_RELATIONS)
    u = [1, 2, 0, -1]
    v = [0, 1, 1, 3]
    w = [2, 0, 0, 1]
    a1, b1 = bracket(alg, u, w)
    a2, b2 = bracket(alg, v, w)
    uv = [x + y for x, y in zip(u, v)]
    assert bracket(alg, uv, w) == (a1 + a2, b1 + b2)


def test_commutator_dimension_degenerate_cases():
    # abelian: everything brackets to zero
    abelian = from_pair(Matrix.zeros(3, 3), Matrix.zeros(3, 3))
    assert commutator_dimension(abelian) == 0
    # one-dimensional commutator: T2 a multiple of T1
    J = Matrix.from_rows([[0, 1], [-1, 0]])
    thin = from_pair(J, J.scale(Fraction(2)))
    assert commutator_dimension(thin) == 1
    assert not is_type_n2(thin)


def test_center_strictly_larger():
    # e3 kills both forms: center is bigger than the commutator
    T1 = Matrix.from_rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    T2 = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 0, 0]])
    T2.data[0 * 3 + 1] = Fraction(2)
    T2.data[1 * 3 + 0] = Fraction(-2)
    alg = from_pair(T1, T2)
    assert not center_equals_commutator(alg)
    assert not is_type_n2(alg)


def test_from_brackets_input_validation():
    with pytest.raises(StructureError):
        from_brackets(3, [(2, 1, 1, 0)])
    with pytest.raises(StructureError):
        from_brackets(3, [(1, 4, 1, 0)])
    with pytest.raises(StructureError):
        from_brackets(3, [(1, 2, 1, 0), (1, 2, 0, 1)])


def test_from_pair_rejects_non_alternating():
    with pytest.raises(StructureError):
        from_pair(Matrix.identity(2), Matrix.zeros(2, 2))


def test_direct_sum_block_structure():
    a = from_brackets(4, EXAMPLE_RELATIONS)
    b = from_brackets(3, FIVE_DIM_RELATIONS)
    s = direct_sum(a, b)
    assert s.n == 7
    assert s.T1.block(0, 0, 4, 4) == a.T1
    assert s.T1.block(4, 4, 3, 3) == b.T1
    assert s.T1.block(0, 4, 4, 3).is_zero()
    assert is_type_n2(s)


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_bracket_antisymmetry(data):
    alg = from_brackets(4, EXAMPLE_RELATIONS)
    vals = st.integers(-5, 5)
    u = [data.draw(vals) for _ in range(4)]
    v = [data.draw(vals) for _ in range(4)]
    a, b = bracket(alg, u, v)
    a2, b2 = bracket(alg, v, u)
    assert (a, b) == (-a2, -b2)
