from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niltorus._poly import Poly, poly_smith_diagonal
from niltorus.algebra_core import direct_sum, from_brackets, is_type_n2
from niltorus.canonical_pairs import (
    INF,
    DivisorEntry,
    build_IJ_complex_nabla,
    build_IJ_nabla,
    build_LR_nabla,
    invariants_equal,
    nabla,
    pencil_invariants,
    swapped_invariants,
)
from niltorus.exact_linalg import GaussianRational, Matrix

F = Fraction


def test_poly_arithmetic():
    p = Poly([1, 2, 1])  # (x+1)^2
    q = Poly([1, 1])
    quo, rem = divmod(p, q)
    assert quo == Poly([1, 1]) and rem.is_zero()
    assert p.gcd(q) == Poly([1, 1])
    assert Poly([2, 4]).monic() == Poly([F(1, 2), 1])
    assert p.eval(F(2)) == 9


def test_poly_smith_simple():
    x = Poly.x()
    one = Poly([1])
    zero = Poly()
    # diag(1, x, x^2) stays put
    grid = [[one, zero, zero], [zero, x, zero], [zero, zero, x * x]]
    assert poly_smith_diagonal(grid) == [one, x.monic(), (x * x).monic()]
    # antidiagonal needs sorting into a divisibility chain
    grid = [[zero, x * x], [x, zero]]
    d = poly_smith_diagonal(grid)
    assert [p.degree for p in d] == [1, 2]


def test_nabla_shapes_and_alternation():
    A = Matrix.from_rows([[1, 2], [3, 4]])
    B = Matrix.from_rows([[0, 1], [1, 0]])
    T1, T2 = nabla(A, B)
    assert T1.rows == 4 and T1.is_alternating() and T2.is_alternating()
    assert T1.block(0, 2, 2, 2) == -A


def test_builders_give_type_n2():
    assert is_type_n2(build_LR_nabla(2))
    assert is_type_n2(build_IJ_nabla(2, 3))
    assert is_type_n2(build_IJ_complex_nabla(1, GaussianRational(0, 1)))


def test_builder_validation():
    with pytest.raises(ValueError):
        build_LR_nabla(-1)
    with pytest.raises(ValueError):
        build_IJ_complex_nabla(1, GaussianRational(2, 0))


def test_lr_zero_is_the_dead_generator():
    a = build_LR_nabla(0)
    assert a.n == 1 and a.T1.is_zero() and a.T2.is_zero()
    inv = pencil_invariants(a)
    assert inv.minimal_indices == (0,) and inv.divisors == ()


def test_invariants_IJ_rational():
    # frozen: two copies of (lam - 3)^2
    inv = pencil_invariants(build_IJ_nabla(2, 3))
    assert inv.minimal_indices == ()
    assert inv.divisors == (
        DivisorEntry(F(3), 2),
        DivisorEntry(F(3), 2),
    )


def test_invariants_LR():
    # frozen: a single minimal index t, no divisors
    inv = pencil_invariants(build_LR_nabla(1))
    assert inv.minimal_indices == (1,)
    assert inv.divisors == ()
    inv2 = pencil_invariants(build_LR_nabla(3))
    assert inv2.minimal_indices == (3,)
    assert inv2.divisors == ()


def test_invariants_IJ_complex():
    inv = pencil_invariants(build_IJ_complex_nabla(1, GaussianRational(0, 1)))
    assert inv.minimal_indices == ()
    assert inv.divisors == (
        DivisorEntry(GaussianRational(0, 1), 1),
        DivisorEntry(GaussianRational(0, 1), 1),
    )
    inv2 = pencil_invariants(build_IJ_complex_nabla(2, GaussianRational(1, 2)))
    assert inv2.divisors == (
        DivisorEntry(GaussianRational(1, 2), 2),
        DivisorEntry(GaussianRational(1, 2), 2),
    )


def test_example_matches_complex_builder():
    alg = from_brackets(4, [(1, 3, 1, 0), (1, 4, 0, -1), (2, 3, 0, 1), (2, 4, 1, 0)])
    a = pencil_invariants(alg)
    b = pencil_invariants(build_IJ_complex_nabla(1, GaussianRational(0, 1)))
    assert invariants_equal(a, b)


def test_zero_pair_minimal_index_zero():
    z = Matrix.zeros(1, 1)
    inv = pencil_invariants(z, z)
    assert inv.minimal_indices == (0,)
    assert inv.divisors == ()


def test_divisors_at_infinity():
    alg = build_IJ_nabla(1, 0)
    swapped = pencil_invariants(alg.T2, alg.T1)
    assert swapped.divisors == (DivisorEntry(INF, 1), DivisorEntry(INF, 1))
    # the record-level swap agrees with recomputing from the swapped pair
    direct = swapped_invariants(pencil_invariants(alg))
    assert invariants_equal(direct, swapped)


def test_direct_sum_concatenates_invariants():
    a = build_IJ_nabla(1, 2)
    b = build_LR_nabla(1)
    s = direct_sum(a, b)
    inv = pencil_invariants(s)
    assert inv.minimal_indices == (1,)
    assert inv.divisors == (DivisorEntry(F(2), 1), DivisorEntry(F(2), 1))


def test_irrational_quadratic_stays_unfactored():
    # eigenvalue pair sqrt(2): divisor lam^2 - 2 has no rational or
    # gaussian-rational root and is kept as its coefficient tuple
    A = Matrix.identity(2)
    B = Matrix.from_rows([[0, 2], [1, 0]])
    T1, T2 = nabla(A, B)
    inv = pencil_invariants(T1, T2)
    assert all(isinstance(d.root, tuple) for d in inv.divisors)
    assert inv.divisors[0].root == (F(-2), F(0), F(1))


@st.composite
def invertible(draw, n):
    lo = Matrix.identity(n)
    up = Matrix.identity(n)
    vals = st.integers(-2, 2)
    for i in range(n):
        for j in range(i):
            lo.data[i * n + j] = F(draw(vals))
            up.data[j * n + i] = F(draw(vals))
    perm = draw(st.permutations(range(n)))
    return lo * up * Matrix.permutation(list(perm))


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_invariants_are_congruence_invariant(data):
    choice = data.draw(st.integers(0, 2))
    if choice == 0:
        alg = build_LR_nabla(data.draw(st.integers(1, 2)))
    elif choice == 1:
        alg = build_IJ_nabla(data.draw(st.integers(1, 2)), data.draw(st.integers(-3, 3)))
    else:
        alg = build_IJ_complex_nabla(1, GaussianRational(data.draw(st.integers(-2, 2)), 1))
    X = data.draw(invertible(alg.n))
    moved1 = alg.T1.congruence(X)
    moved2 = alg.T2.congruence(X)
    assert invariants_equal(
        pencil_invariants(alg), pencil_invariants(moved1, moved2)
    )


@given(st.data())
@settings(max_examples=15, deadline=None)
def test_accounting_identity_random_alternating(data):
    n = data.draw(st.integers(1, 5))
    vals = st.integers(-2, 2)
    A = Matrix.zeros(n, n)
    B = Matrix.zeros(n, n)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = F(data.draw(vals)), F(data.draw(vals))
            A.data[i * n + j], A.data[j * n + i] = a, -a
            B.data[i * n + j], B.data[j * n + i] = b, -b
    inv = pencil_invariants(A, B)  # raises internally if accounting fails
    assert inv.n == n
