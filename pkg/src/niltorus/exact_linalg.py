"""Exact dense linear algebra over the rationals and Gaussian rationals.

Everything here is exact: entries are `fractions.Fraction` or
`GaussianRational`, and all eliminations use exact pivoting. No floats
enter except in the dedicated numeric helpers of other modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

Rational = Fraction

ScalarLike = Union[int, Fraction, "GaussianRational"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational scalar: {x!r}")


class GaussianRational:
    """A number a + b*i with rational a, b. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re: ScalarLike = 0, im: ScalarLike = 0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    # -- arithmetic -------------------------------------------------
    def _coerce(self, other) -> Optional["GaussianRational"]:
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- comparison / hashing --------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I_UNIT = GaussianRational(0, 1)


def conj(x):
    """Conjugate a scalar; rationals are their own conjugate."""
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def is_gaussian(x) -> bool:
    return isinstance(x, GaussianRational)


class Matrix:
    """Dense row-major exact matrix.

    Entries are Fractions or GaussianRationals (one field per matrix,
    mixing is the caller's responsibility to avoid). Treated as
    immutable by convention; mutating helpers return new matrices.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence):
        if len(data) != rows * cols:
            raise ValueError("data length does not match shape")
        self.rows = rows
        self.cols = cols
        self.data = list(data)

    # -- constructors -----------------------------------------------
    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            for x in row:
                flat.append(_coerce_entry(x))
        return Matrix(r, c, flat)

    @staticmethod
    def zeros(rows: int, cols: int, gaussian: bool = False) -> "Matrix":
        z = GaussianRational(0) if gaussian else Fraction(0)
        return Matrix(rows, cols, [z] * (rows * cols))

    @staticmethod
    def identity(n: int, gaussian: bool = False) -> "Matrix":
        m = Matrix.zeros(n, n, gaussian)
        one = GaussianRational(1) if gaussian else Fraction(1)
        for i in range(n):
            m.data[i * n + i] = one
        return m

    @staticmethod
    def from_blocks(grid: Sequence[Sequence[Optional["Matrix"]]]) -> "Matrix":
        """Assemble a block matrix; None blocks are zero, sizes inferred."""
        nbr = len(grid)
        nbc = len(grid[0])
        rh = [0] * nbr
        cw = [0] * nbc
        for i in range(nbr):
            for j in range(nbc):
                b = grid[i][j]
                if b is None:
                    continue
                if rh[i] and rh[i] != b.rows:
                    raise ValueError("inconsistent block row heights")
                if cw[j] and cw[j] != b.cols:
                    raise ValueError("inconsistent block col widths")
                rh[i] = b.rows
                cw[j] = b.cols
        if any(h == 0 for h in rh) or any(w == 0 for w in cw):
            raise ValueError("a full block row or column is None; sizes unknown")
        out = Matrix.zeros(sum(rh), sum(cw))
        r0 = 0
        for i in range(nbr):
            c0 = 0
            for j in range(nbc):
                b = grid[i][j]
                if b is not None:
                    for r in range(b.rows):
                        base = (r0 + r) * out.cols + c0
                        out.data[base : base + b.cols] = b.data[
                            r * b.cols : (r + 1) * b.cols
                        ]
                c0 += cw[j]
            r0 += rh[i]
        return out

    @staticmethod
    def diag(blocks: Sequence["Matrix"]) -> "Matrix":
        n = len(blocks)
        grid = [[blocks[i] if i == j else None for j in range(n)] for i in range(n)]
        # fill zero blocks explicitly so sizes are known
        for i in range(n):
            for j in range(n):
                if i != j:
                    grid[i][j] = Matrix.zeros(blocks[i].rows, blocks[j].cols)
        return Matrix.from_blocks(grid)

    @staticmethod
    def permutation(perm: Sequence[int]) -> "Matrix":
        """Matrix P with P[perm[j], j] = 1: maps basis vector j to perm[j]."""
        n = len(perm)
        m = Matrix.zeros(n, n)
        for j, i in enumerate(perm):
            m.data[i * n + j] = Fraction(1)
        return m

    @staticmethod
    def column(entries: Sequence) -> "Matrix":
        return Matrix(len(entries), 1, [_coerce_entry(x) for x in entries])

    # -- access -----------------------------------------------------
    def __getitem__(self, key) -> ScalarLike:
        i, j = key
        return self.data[i * self.cols + j]

    def row(self, i: int) -> List:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> List:
        return [self.data[i * self.cols + j] for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(
            len(rows),
            len(cols),
            [self.data[i * self.cols + j] for i in rows for j in cols],
        )

    def block(self, r0: int, c0: int, h: int, w: int) -> "Matrix":
        return self.submatrix(range(r0, r0 + h), range(c0, c0 + w))

    def with_block(self, r0: int, c0: int, b: "Matrix") -> "Matrix":
        out = self.copy()
        for r in range(b.rows):
            base = (r0 + r) * out.cols + c0
            out.data[base : base + b.cols] = b.data[r * b.cols : (r + 1) * b.cols]
        return out

    def copy(self) -> "Matrix":
        return Matrix(self.rows, self.cols, list(self.data))

    def tolist(self) -> List[List]:
        return [self.row(i) for i in range(self.rows)]

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_alternating(self) -> bool:
        """Skew-symmetric with zero diagonal (the two coincide over Q)."""
        if not self.is_square():
            return False
        for i in range(self.rows):
            if self[i, i] != 0:
                return False
            for j in range(i + 1, self.cols):
                if self[i, j] != -self[j, i]:
                    return False
        return True

    def is_gaussian_matrix(self) -> bool:
        return any(isinstance(x, GaussianRational) for x in self.data)

    # -- arithmetic ---------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(a == b for a, b in zip(self.data, other.data))

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(repr(x) for x in self.data)))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(
            self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(
            self.rows, self.cols, [a - b for a, b in zip(self.data, other.data)]
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [-a for a in self.data])

    def scale(self, c) -> "Matrix":
        return Matrix(self.rows, self.cols, [x * c for x in self.data])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        n, k, m = self.rows, self.cols, other.cols
        out = [None] * (n * m)
        a, b = self.data, other.data
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                s = None
                for t in range(k):
                    x = arow[t]
                    if x == 0:
                        continue
                    term = x * b[t * m + j]
                    s = term if s is None else s + term
                if s is None:
                    s = _zero_like(a[0] if a else Fraction(0))
                out[i * m + j] = s
        return Matrix(n, m, out)

    def _shape_check(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conjugate(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [conj(x) for x in self.data])

    def dagger(self) -> "Matrix":
        return self.transpose().conjugate()

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix.from_blocks([[self, other]])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("col mismatch in vstack")
        return Matrix.from_blocks([[self], [other]])

    # -- eliminations ---------------------------------------------------
    def rref(self) -> Tuple["Matrix", List[int]]:
        """Reduced row echelon form; pivot = first nonzero in column order.

        Returns (R, pivot_columns)."""
        m = self.copy()
        pivots: List[int] = []
        r = 0
        for c in range(m.cols):
            if r >= m.rows:
                break
            sel = None
            for i in range(r, m.rows):
                if m.data[i * m.cols + c] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            if sel != r:
                m._swap_rows(sel, r)
            p = m.data[r * m.cols + c]
            if p != 1:
                inv = _inv_scalar(p)
                for j in range(c, m.cols):
                    m.data[r * m.cols + j] = m.data[r * m.cols + j] * inv
            for i in range(m.rows):
                if i == r:
                    continue
                f = m.data[i * m.cols + c]
                if f == 0:
                    continue
                for j in range(c, m.cols):
                    m.data[i * m.cols + j] = (
                        m.data[i * m.cols + j] - f * m.data[r * m.cols + j]
                    )
            pivots.append(c)
            r += 1
        return m, pivots

    def _swap_rows(self, i, j):
        c = self.cols
        self.data[i * c : (i + 1) * c], self.data[j * c : (j + 1) * c] = (
            self.data[j * c : (j + 1) * c],
            self.data[i * c : (i + 1) * c],
        )

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> List["Matrix"]:
        """Basis of the right kernel, as column vectors."""
        R, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = []
        gaussian = self.is_gaussian_matrix()
        one = GaussianRational(1) if gaussian else Fraction(1)
        for f in free:
            v = [GaussianRational(0) if gaussian else Fraction(0)] * self.cols
            v[f] = one
            for r, p in enumerate(pivots):
                v[p] = -R.data[r * R.cols + f]
            basis.append(Matrix.column(v))
        return basis

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = self.hstack(Matrix.identity(n, self.is_gaussian_matrix()))
        R, pivots = aug.rref()
        if len(pivots) < n or pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return R.block(0, n, n, n)

    def congruence(self, X: "Matrix") -> "Matrix":
        """X' * self * X (plain transpose)."""
        return X.transpose() * self * X

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of non-square matrix")
        s = self.data[0] if self.rows else Fraction(0)
        s = _zero_like(s)
        for i in range(self.rows):
            s = s + self[i, i]
        return s

    def __repr__(self):
        body = ",\n ".join(str(self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols},\n {body})"


MatrixR = Matrix
MatrixC = Matrix


def _coerce_entry(x):
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, complex):
        raise TypeError("float complex not allowed; use GaussianRational")
    raise TypeError(f"bad matrix entry: {x!r}")


def _zero_like(x):
    return GaussianRational(0) if isinstance(x, GaussianRational) else Fraction(0)


def _inv_scalar(x):
    if isinstance(x, GaussianRational):
        return GaussianRational(1) / x
    return Fraction(1) / x


@dataclass
class LinearSolution:
    """Solution set of A v = b: one particular solution plus kernel basis."""

    particular: Optional[Matrix]
    kernel: List[Matrix]

    @property
    def solvable(self) -> bool:
        return self.particular is not None

    @property
    def dim(self) -> int:
        return len(self.kernel)


def solve_linear(A: Matrix, b: Matrix) -> LinearSolution:
    """Solve A v = b exactly. b is a column vector."""
    if b.cols != 1 or b.rows != A.rows:
        raise ValueError("b must be a column vector matching A's rows")
    aug = A.hstack(b)
    R, pivots = aug.rref()
    if A.cols in pivots:
        return LinearSolution(None, A.nullspace())
    gaussian = A.is_gaussian_matrix() or b.is_gaussian_matrix()
    zero = GaussianRational(0) if gaussian else Fraction(0)
    v = [zero] * A.cols
    for r, p in enumerate(pivots):
        v[p] = R.data[r * R.cols + A.cols]
    return LinearSolution(Matrix.column(v), A.nullspace())


def gaussian_to_real_entries(m: Matrix) -> Matrix:
    """Strip GaussianRational wrappers from a matrix with no imaginary part."""
    out = []
    for x in m.data:
        if isinstance(x, GaussianRational):
            if x.im != 0:
                raise ValueError("matrix has nonzero imaginary entries")
            out.append(x.re)
        else:
            out.append(x)
    return Matrix(m.rows, m.cols, out)


def real_to_gaussian_entries(m: Matrix) -> Matrix:
    out = [
        x if isinstance(x, GaussianRational) else GaussianRational(x) for x in m.data
    ]
    return Matrix(m.rows, m.cols, out)
