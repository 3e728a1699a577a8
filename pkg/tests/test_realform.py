from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from niltorus.exact_linalg import GaussianRational, Matrix
from niltorus.realform import (
    J2,
    OMEGA2,
    SplitQuat,
    SplitQuatMatrix,
    decompose,
    omega_matrix,
    oplus_J,
    real_form,
    reconstruct,
    rotation_block,
    split_mul,
)


def gr(a, b=0):
    return GaussianRational(a, b)


def test_real_form_single_entry():
    A = real_form(Matrix.from_rows([[gr(1, 2)]]))
    assert A == Matrix.from_rows([[1, 2], [-2, 1]])


def test_real_form_of_i_is_rotation():
    assert real_form(Matrix.from_rows([[gr(0, 1)]])) == J2


def test_real_form_multiplicative():
    A = Matrix.from_rows([[gr(1, 2), gr(0, -1)], [gr(3), gr(2, 2)]])
    B = Matrix.from_rows([[gr(1, 1)], [gr(-2, 5)]])
    assert real_form(A * B) == real_form(A) * real_form(B)


def test_real_form_transpose_is_dagger():
    A = Matrix.from_rows([[gr(1, 2), gr(0, -1)]])
    assert real_form(A).T == real_form(A.dagger())


def test_omega_swap_identity():
    # Omega * rf(Z) = rf(conj Z) * Omega, entrywise Omega blocks
    Z = Matrix.from_rows([[gr(2, 3), gr(0, 1)], [gr(-1, 1), gr(4)]])
    lhs = omega_matrix(2) * real_form(Z)
    rhs = real_form(Z.conjugate()) * omega_matrix(2)
    assert lhs == rhs


def test_decompose_roundtrip():
    A1 = Matrix.from_rows([[gr(1, 2)], [gr(3, -1)]])
    A2 = Matrix.from_rows([[gr(0, 5)], [gr(-2)]])
    A = reconstruct(A1, A2)
    B1, B2 = decompose(A)
    assert B1 == A1
    assert B2 == A2


def test_decompose_pure_parts():
    Z = Matrix.from_rows([[gr(1, 1)]])
    z1, z2 = decompose(real_form(Z))
    assert z1 == Z and z2.is_zero()
    z1, z2 = decompose(real_form(Z) * OMEGA2)
    assert z1.is_zero() and z2 == Z


def test_split_mul_against_real_multiplication():
    p = SplitQuat.of(gr(1, 2), gr(0, 3))
    q = SplitQuat.of(gr(-1, 1), gr(2, -1))
    P = SplitQuatMatrix(1, 1, [p])
    Q = SplitQuatMatrix(1, 1, [q])
    assert (P * Q).to_real() == P.to_real() * Q.to_real()


@st.composite
def split_matrices(draw, r, c):
    vals = st.integers(-3, 3)
    data = []
    for _ in range(r * c):
        data.append(
            SplitQuat.of(
                gr(draw(vals), draw(vals)), gr(draw(vals), draw(vals))
            )
        )
    return SplitQuatMatrix(r, c, data)


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_split_matrix_product_matches_real(data):
    r = data.draw(st.integers(1, 3))
    k = data.draw(st.integers(1, 3))
    c = data.draw(st.integers(1, 3))
    P = data.draw(split_matrices(r, k))
    Q = data.draw(split_matrices(k, c))
    assert (P * Q).to_real() == P.to_real() * Q.to_real()


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_from_real_roundtrip(data):
    r = data.draw(st.integers(1, 3))
    c = data.draw(st.integers(1, 3))
    M = data.draw(split_matrices(r, c))
    assert SplitQuatMatrix.from_real(M.to_real()) == M


def test_alternating_iff_skew_hermitian():
    # rf(Z) alternating exactly when Z is skew-hermitian
    Z = Matrix.from_rows([[gr(0, 2), gr(1, 1)], [gr(-1, 1), gr(0, -3)]])
    assert Z.dagger() == -Z
    assert real_form(Z).is_alternating()
    W = Matrix.from_rows([[gr(1)]])
    assert not real_form(W).is_alternating()


def test_omega_wrapped_alternating_iff_skew_symmetric():
    # rf(H) * Omega alternating exactly when H' = -H (plain transpose)
    H = Matrix.from_rows([[gr(0), gr(2, 1)], [gr(-2, -1), gr(0)]])
    assert H.T == -H
    assert (real_form(H) * omega_matrix(2)).is_alternating()
    Hbad = Matrix.from_rows([[gr(0), gr(2, 1)], [gr(2, 1), gr(0)]])
    assert not (real_form(Hbad) * omega_matrix(2)).is_alternating()


def test_rotation_block():
    b = rotation_block(Fraction(3), Fraction(1, 2))
    assert b == Matrix.from_rows([[0, "3/2"], ["-3/2", 0]])


def test_oplus_J_squares_to_minus_one():
    m = oplus_J(3)
    assert m * m == -Matrix.identity(6)
