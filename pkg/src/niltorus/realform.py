"""Real 2x2-block encodings of complex and split-quaternion matrices.

A complex entry z = a + bi is stored as the real block [[a, b], [-b, a]].
A split-quaternion entry z1 + z2*w (w*w = 1, w*i = -i*w) is stored as
real_form(z1) + real_form(z2) * OMEGA with OMEGA = [[0, 1], [1, 0]].
All conversions are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .exact_linalg import Fraction as _F
from .exact_linalg import GaussianRational, Matrix, conj

OMEGA2 = Matrix.from_rows([[0, 1], [1, 0]])
J2 = Matrix.from_rows([[0, 1], [-1, 0]])


def real_form(Z: Matrix) -> Matrix:
    """Real 2r x 2c expansion of a complex matrix, blockwise [[a,b],[-b,a]]."""
    out = Matrix.zeros(2 * Z.rows, 2 * Z.cols)
    for i in range(Z.rows):
        for j in range(Z.cols):
            z = Z[i, j]
            if isinstance(z, GaussianRational):
                a, b = z.re, z.im
            else:
                a, b = Fraction(z), Fraction(0)
            base = (2 * i) * out.cols + 2 * j
            out.data[base] = a
            out.data[base + 1] = b
            out.data[base + out.cols] = -b
            out.data[base + out.cols + 1] = a
    return out


def omega_matrix(m: int) -> Matrix:
    """Block diagonal of m copies of [[0,1],[1,0]]."""
    return Matrix.diag([OMEGA2] * m) if m else Matrix.zeros(0, 0)


def oplus_J(m: int) -> Matrix:
    """Block diagonal of m copies of [[0,1],[-1,0]]."""
    return Matrix.diag([J2] * m) if m else Matrix.zeros(0, 0)


def decompose(A: Matrix) -> Tuple[Matrix, Matrix]:
    """Split a real matrix with even sides into (A1, A2) complex parts.

    A = real_form(A1) + real_form(A2) * omega_matrix(...), uniquely.
    Per 2x2 block [[a, b], [c, d]]:
        z1 = (a + d)/2 + i (b - c)/2
        z2 = (b + c)/2 + i (a - d)/2
    """
    if A.rows % 2 or A.cols % 2:
        raise ValueError("decompose needs even dimensions")
    r, c = A.rows // 2, A.cols // 2
    Z1 = Matrix.zeros(r, c, gaussian=True)
    Z2 = Matrix.zeros(r, c, gaussian=True)
    for i in range(r):
        for j in range(c):
            a = A[2 * i, 2 * j]
            b = A[2 * i, 2 * j + 1]
            cc = A[2 * i + 1, 2 * j]
            d = A[2 * i + 1, 2 * j + 1]
            Z1.data[i * c + j] = GaussianRational(
                Fraction(a + d, 2), Fraction(b - cc, 2)
            )
            Z2.data[i * c + j] = GaussianRational(
                Fraction(b + cc, 2), Fraction(a - d, 2)
            )
    return Z1, Z2


def reconstruct(Z1: Matrix, Z2: Matrix) -> Matrix:
    """Inverse of decompose."""
    return real_form(Z1) + real_form(Z2) * omega_matrix(Z2.cols)


@dataclass(frozen=True)
class SplitQuat:
    """z1 + z2*w with complex z1, z2 and w*w = 1, w*z = conj(z)*w."""

    z1: GaussianRational
    z2: GaussianRational

    @staticmethod
    def of(z1=0, z2=0) -> "SplitQuat":
        return SplitQuat(_gr(z1), _gr(z2))

    def __add__(self, other: "SplitQuat") -> "SplitQuat":
        return SplitQuat(self.z1 + other.z1, self.z2 + other.z2)

    def __sub__(self, other: "SplitQuat") -> "SplitQuat":
        return SplitQuat(self.z1 - other.z1, self.z2 - other.z2)

    def __neg__(self) -> "SplitQuat":
        return SplitQuat(-self.z1, -self.z2)

    def __bool__(self) -> bool:
        return bool(self.z1) or bool(self.z2)


def _gr(x) -> GaussianRational:
    return x if isinstance(x, GaussianRational) else GaussianRational(x)


def split_mul(p: SplitQuat, q: SplitQuat) -> SplitQuat:
    """(z1 + z2 w)(w1 + w2 w) = (z1 w1 + z2 conj(w2)) + (z1 w2 + z2 conj(w1)) w."""
    return SplitQuat(
        p.z1 * q.z1 + p.z2 * q.z2.conjugate(),
        p.z1 * q.z2 + p.z2 * q.z1.conjugate(),
    )


class SplitQuatMatrix:
    """Dense matrix of SplitQuat entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[SplitQuat]):
        if len(data) != rows * cols:
            raise ValueError("data length mismatch")
        self.rows = rows
        self.cols = cols
        self.data = list(data)

    @staticmethod
    def from_real(A: Matrix) -> "SplitQuatMatrix":
        Z1, Z2 = decompose(A)
        r, c = Z1.rows, Z1.cols
        return SplitQuatMatrix(
            r, c, [SplitQuat(Z1.data[k], Z2.data[k]) for k in range(r * c)]
        )

    def to_real(self) -> Matrix:
        Z1 = Matrix(
            self.rows, self.cols, [e.z1 for e in self.data]
        )
        Z2 = Matrix(
            self.rows, self.cols, [e.z2 for e in self.data]
        )
        return reconstruct(Z1, Z2)

    def __getitem__(self, key) -> SplitQuat:
        i, j = key
        return self.data[i * self.cols + j]

    def __mul__(self, other: "SplitQuatMatrix") -> "SplitQuatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = SplitQuat.of(0, 0)
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                s = zero
                for t in range(self.cols):
                    p = self[i, t]
                    if not p:
                        continue
                    s = s + split_mul(p, other[t, j])
                out.append(s)
        return SplitQuatMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, SplitQuatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def complex_part(self) -> Matrix:
        """The z1 entries, as a complex matrix; requires all z2 = 0."""
        if any(e.z2 for e in self.data):
            raise ValueError("matrix has nonzero omega part")
        return Matrix(self.rows, self.cols, [e.z1 for e in self.data])

    def omega_part(self) -> Matrix:
        """The z2 entries, as a complex matrix; requires all z1 = 0."""
        if any(e.z1 for e in self.data):
            raise ValueError("matrix has nonzero complex part")
        return Matrix(self.rows, self.cols, [e.z2 for e in self.data])


def rotation_block(alpha: Fraction, t: Fraction) -> Matrix:
    """The 2x2 block alpha*t*J describing an infinitesimal plane rotation."""
    at = Fraction(alpha) * Fraction(t)
    return Matrix.from_rows([[0, at], [-at, 0]])
