from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niltorus.exact_linalg import (
    GaussianRational,
    Matrix,
    conj,
    solve_linear,
)


def test_gaussian_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(3, -1)
    assert a + b == GaussianRational(4, 1)
    assert a * b == GaussianRational(5, 5)
    assert (a / b) * b == a
    assert -a == GaussianRational(-1, -2)
    assert a.conjugate() == GaussianRational(1, -2)
    assert a * a.conjugate() == Fraction(5)
    assert GaussianRational(7, 0) == Fraction(7)
    assert GaussianRational(0, 0) == 0
    assert conj(Fraction(3, 2)) == Fraction(3, 2)


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


def test_matrix_basics():
    m = Matrix.from_rows([[1, 2], [3, 4]])
    assert m[1, 0] == 3
    assert m.T == Matrix.from_rows([[1, 3], [2, 4]])
    assert (m * Matrix.identity(2)) == m
    assert m.trace() == 5
    assert not m.is_alternating()
    j = Matrix.from_rows([[0, 1], [-1, 0]])
    assert j.is_alternating()


def test_rank_example_fixture():
    # frozen: the 4x4 form of the running example has full rank
    T1 = Matrix.from_rows(
        [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    )
    assert T1.rank() == 4
    assert Matrix.zeros(3, 3).rank() == 0
    assert Matrix.identity(5).rank() == 5


def test_rref_pivot_determinism():
    m = Matrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 1, 1]])
    R, pivots = m.rref()
    assert pivots == [0, 1]
    assert R.row(0) == [1, 0, -1]
    assert R.row(1) == [0, 1, 2]


def test_nullspace_membership():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    ns = m.nullspace()
    assert len(ns) == 2
    for v in ns:
        assert (m * v).is_zero()


def test_solve_linear_roundtrip():
    A = Matrix.from_rows([[2, 1], [1, 3]])
    b = Matrix.column([1, 2])
    sol = solve_linear(A, b)
    assert sol.solvable
    assert A * sol.particular == b
    assert sol.dim == 0


def test_solve_linear_inconsistent():
    A = Matrix.from_rows([[1, 1], [1, 1]])
    b = Matrix.column([0, 1])
    sol = solve_linear(A, b)
    assert not sol.solvable
    assert sol.dim == 1


def test_inverse():
    A = Matrix.from_rows([[2, 1], [1, 1]])
    assert A * A.inverse() == Matrix.identity(2)
    with pytest.raises(ValueError):
        Matrix.from_rows([[1, 1], [1, 1]]).inverse()


def test_block_assembly():
    a = Matrix.identity(2)
    b = Matrix.from_rows([[5], [6]])
    m = Matrix.from_blocks([[a, b]])
    assert m.rows == 2 and m.cols == 3
    assert m.col(2) == [Fraction(5), Fraction(6)]
    d = Matrix.diag([a, Matrix.from_rows([[7]])])
    assert d[2, 2] == 7 and d[0, 2] == 0
    assert d.block(0, 0, 2, 2) == a


def test_permutation_matrix():
    P = Matrix.permutation([2, 0, 1])
    v = Matrix.column([10, 20, 30])
    assert (P * v).col(0) == [Fraction(20), Fraction(30), Fraction(10)]


def test_complex_elimination():
    i = GaussianRational(0, 1)
    A = Matrix.from_rows([[GaussianRational(1), i], [i, GaussianRational(1)]])
    assert A.rank() == 2
    inv = A.inverse()
    assert A * inv == Matrix.identity(2, gaussian=True)
    B = Matrix.from_rows([[GaussianRational(1), i], [i, GaussianRational(-1)]])
    assert B.rank() == 1
    ns = B.nullspace()
    assert len(ns) == 1 and (B * ns[0]).is_zero()


def test_dagger():
    i = GaussianRational(0, 1)
    A = Matrix.from_rows([[GaussianRational(1, 2), i]])
    D = A.dagger()
    assert D.rows == 2 and D.cols == 1
    assert D[0, 0] == GaussianRational(1, -2)
    assert D[1, 0] == GaussianRational(0, -1)


small_fracs = st.integers(-4, 4).map(Fraction)


@st.composite
def rational_matrices(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_n))
    data = draw(
        st.lists(small_fracs, min_size=n * m, max_size=n * m)
    )
    return Matrix(n, m, data)


@st.composite
def invertible_matrices(draw, n):
    # product of a unit lower and unit upper triangular plus a permutation
    lo = Matrix.identity(n)
    up = Matrix.identity(n)
    for i in range(n):
        for j in range(i):
            lo.data[i * n + j] = draw(small_fracs)
            up.data[j * n + i] = draw(small_fracs)
    perm = draw(st.permutations(range(n)))
    return lo * up * Matrix.permutation(list(perm))


@given(rational_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_transpose_invariant(m):
    assert m.rank() == m.T.rank()


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_congruence_preserves_rank_and_alternation(data):
    n = data.draw(st.integers(1, 5))
    entries = data.draw(
        st.lists(small_fracs, min_size=n * n, max_size=n * n)
    )
    A = Matrix(n, n, entries)
    A = A - A.T  # alternating
    X = data.draw(invertible_matrices(n))
    B = A.congruence(X)
    assert B.is_alternating()
    assert B.rank() == A.rank()


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_nullspace_dimension_theorem(data):
    m = data.draw(rational_matrices())
    assert m.rank() + len(m.nullspace()) == m.cols
