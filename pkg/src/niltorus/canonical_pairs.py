"""Canonical alternating pairs and their congruence invariants.

The invariants of a pair (T1, T2) are those of the one-parameter family
lam*T1 - T2: the minimal indices of its kernel and the elementary
divisors (finite and infinite). For alternating pairs these data
determine the pair up to simultaneous congruence, so equality of the
records decides isomorphism of the associated algebras.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from ._poly import Poly, poly_smith_diagonal
from .algebra_core import LieAlgebraN2, from_pair
from .exact_linalg import GaussianRational, Matrix
from .realform import real_form

INF = "inf"

RootKey = Union[Fraction, GaussianRational, str, Tuple[Fraction, ...]]


def nabla(A: Matrix, B: Matrix) -> Tuple[Matrix, Matrix]:
    """Embed a matrix pair as an alternating pair: M -> [[0, -M], [M', 0]]."""
    if A.rows != B.rows or A.cols != B.cols:
        raise ValueError("nabla needs equal shapes")
    if A.rows == 0:
        # degenerate embedding: no upper strip, just dead columns
        z = Matrix.zeros(A.cols, A.cols, gaussian=A.is_gaussian_matrix())
        return z, z.copy()
    z_r = Matrix.zeros(A.rows, A.rows)
    z_c = Matrix.zeros(A.cols, A.cols)
    T1 = Matrix.from_blocks([[z_r, -A], [A.T, z_c]])
    T2 = Matrix.from_blocks([[z_r, -B], [B.T, z_c]])
    return T1, T2


def _left_strip(t: int) -> Matrix:
    """t x (t+1): identity followed by a zero column."""
    m = Matrix.zeros(t, t + 1)
    for i in range(t):
        m.data[i * (t + 1) + i] = Fraction(1)
    return m


def _right_strip(t: int) -> Matrix:
    """t x (t+1): zero column followed by identity."""
    m = Matrix.zeros(t, t + 1)
    for i in range(t):
        m.data[i * (t + 1) + i + 1] = Fraction(1)
    return m


def _jordan(t: int, q) -> Matrix:
    """Upper bidiagonal Jordan cell of size t with eigenvalue q."""
    gaussian = isinstance(q, GaussianRational)
    m = Matrix.zeros(t, t, gaussian=gaussian)
    one = GaussianRational(1) if gaussian else Fraction(1)
    for i in range(t):
        m.data[i * t + i] = q if gaussian else Fraction(q)
        if i + 1 < t:
            m.data[i * t + i + 1] = one
    return m


def build_LR_nabla(t: int) -> LieAlgebraN2:
    """The singular canonical pair: strip pair of minimal index t, size 2t+1.

    t=0 gives the 1x1 zero pair (one dead generator), a valid direct
    summand even though it is not an algebra of the right type on its own.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    T1, T2 = nabla(_left_strip(t), _right_strip(t))
    return from_pair(T1, T2)


def build_IJ_nabla(t: int, q) -> LieAlgebraN2:
    """Regular canonical pair with rational eigenvalue q, size 2t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    T1, T2 = nabla(Matrix.identity(t), _jordan(t, Fraction(q)))
    return from_pair(T1, T2)


def build_IJ_complex_nabla(t: int, q: GaussianRational) -> LieAlgebraN2:
    """Real points of the complex regular pair: eigenvalue q off the real line."""
    if not isinstance(q, GaussianRational) or q.im == 0:
        raise ValueError("q must have nonzero imaginary part; use build_IJ_nabla for real q")
    return _ij_complex_nabla_any(t, q)


def _ij_complex_nabla_any(t: int, q: GaussianRational) -> LieAlgebraN2:
    if t < 1:
        raise ValueError("t must be >= 1")
    A = real_form(Matrix.identity(t, gaussian=True))
    B = real_form(_jordan(t, q))
    T1, T2 = nabla(A, B)
    return from_pair(T1, T2)


@dataclass(frozen=True)
class DivisorEntry:
    """One elementary divisor: a root (or marker) with its multiplicity.

    root is a Fraction for rational eigenvalues, a GaussianRational with
    positive imaginary part for complex-in-a-quadratic ones, the string
    "inf" for divisors at infinity, and a tuple of monic coefficients
    (ascending) for irreducible factors that do not split that way.
    """

    root: RootKey
    size: int

    def real_degree(self) -> int:
        if isinstance(self.root, tuple):
            return len(self.root) - 1
        if isinstance(self.root, GaussianRational):
            return 2
        return 1

    def sort_key(self):
        r = self.root
        if isinstance(r, Fraction):
            return (0, r, Fraction(0), self.size)
        if isinstance(r, GaussianRational):
            return (1, r.re, r.im, self.size)
        if isinstance(r, tuple):
            return (2, Fraction(len(r)), Fraction(0), self.size) + tuple(r)
        return (3, Fraction(0), Fraction(0), self.size)


@dataclass(frozen=True)
class KroneckerInvariants:
    """Complete congruence invariants of an alternating pair."""

    n: int
    minimal_indices: Tuple[int, ...]
    divisors: Tuple[DivisorEntry, ...]

    def counts(self) -> str:
        return (
            f"n={self.n}, indices={list(self.minimal_indices)}, "
            f"divisors={[(str(d.root), d.size) for d in self.divisors]}"
        )


def _pencil_grid(T1: Matrix, T2: Matrix, at_infinity: bool) -> List[List[Poly]]:
    """lam*T1 - T2, or T1 - mu*T2 for the divisors at infinity."""
    n = T1.rows
    grid = []
    for i in range(n):
        row = []
        for j in range(n):
            a, b = T1[i, j], T2[i, j]
            if at_infinity:
                row.append(Poly([a, -b]))
            else:
                row.append(Poly([-b, a]))
        grid.append(row)
    return grid


def _factor_rational(p: Poly) -> List[Tuple[Poly, int]]:
    """Irreducible factorization over the rationals, via sympy."""
    import sympy

    lam = sympy.Symbol("lam")
    sp = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)],
        lam,
        domain="QQ",
    )
    _, factors = sp.factor_list()
    out = []
    for f, k in factors:
        cs = [Fraction(c.p, c.q) for c in reversed(f.all_coeffs())]
        out.append((Poly(cs).monic(), int(k)))
    return out


def _root_of_irreducible(p: Poly) -> RootKey:
    """Rational root, Gaussian-rational root with positive imaginary part,
    or the coefficient tuple when neither applies."""
    p = p.monic()
    if p.degree == 1:
        return -p.coeffs[0]
    if p.degree == 2:
        b, c = p.coeffs[1], p.coeffs[0]
        disc = b * b - 4 * c
        if disc < 0:
            s = _rational_sqrt(-disc)
            if s is not None:
                return GaussianRational(-b / 2, s / 2)
    return tuple(p.coeffs)


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    pn = _isqrt_exact(x.numerator)
    pd = _isqrt_exact(x.denominator)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)


def _isqrt_exact(k: int) -> Optional[int]:
    import math

    r = math.isqrt(k)
    return r if r * r == k else None


def _kernel_dims_by_degree(T1: Matrix, T2: Matrix, count: int) -> List[int]:
    """Minimal indices of the kernel, via dimensions of bounded-degree
    polynomial solutions of (lam T1 - T2) v = 0.

    count is the total number of indices expected (kernel rank)."""
    n = T1.rows
    indices: List[int] = []
    prev_dim = 0
    prev_delta = 0
    d = 0
    while len(indices) < count:
        # coefficient matrix: rows = coefficients of lam^0..lam^{d+1},
        # unknowns v_0..v_d; coefficient of lam^k is T1 v_{k-1} - T2 v_k
        rows = n * (d + 2)
        cols = n * (d + 1)
        M = Matrix.zeros(rows, cols)
        for k in range(d + 2):
            for blk in range(d + 1):
                if blk == k - 1:
                    src = T1
                elif blk == k:
                    src = None  # placed below with sign
                else:
                    continue
                if src is not None:
                    for i in range(n):
                        for j in range(n):
                            v = src[i, j]
                            if v != 0:
                                M.data[(k * n + i) * cols + blk * n + j] = v
            if k <= d:
                for i in range(n):
                    for j in range(n):
                        v = T2[i, j]
                        if v != 0:
                            M.data[(k * n + i) * cols + k * n + j] -= v
        dim = cols - M.rank()
        delta = dim - prev_dim
        born = delta - prev_delta
        indices.extend([d] * born)
        prev_dim, prev_delta = dim, delta
        d += 1
        if d > n + 1:
            raise AssertionError("minimal index search exceeded the size bound")
    return indices


def pencil_invariants(alg_or_T1, T2: Optional[Matrix] = None) -> KroneckerInvariants:
    """Kronecker data of the family lam*T1 - T2."""
    if T2 is None:
        T1, T2 = alg_or_T1.T1, alg_or_T1.T2
    else:
        T1 = alg_or_T1
    n = T1.rows

    finite = poly_smith_diagonal(_pencil_grid(T1, T2, at_infinity=False))
    rank = len(finite)
    divisors: List[DivisorEntry] = []
    for d in finite:
        if d.degree == 0:
            continue
        for p, k in _factor_rational(d):
            if p.degree == 0:
                continue
            divisors.append(DivisorEntry(_root_of_irreducible(p), k))

    # divisors at infinity: mu-power part of the reversed family
    at_inf = poly_smith_diagonal(_pencil_grid(T1, T2, at_infinity=True))
    mu = Poly.x()
    for d in at_inf:
        k = 0
        while not d.is_zero() and (d % mu).is_zero():
            d = d // mu
            k += 1
        if k:
            divisors.append(DivisorEntry(INF, k))

    indices = tuple(sorted(_kernel_dims_by_degree(T1, T2, n - rank)))
    divisors.sort(key=lambda e: e.sort_key())

    total = sum(2 * e + 1 for e in indices) + sum(
        e.size * e.real_degree() for e in divisors
    )
    if total != n:
        raise AssertionError(
            f"invariant accounting failed: {total} != {n} "
            f"(indices {indices}, divisors {divisors})"
        )
    return KroneckerInvariants(n, indices, tuple(divisors))


def invariants_equal(a: KroneckerInvariants, b: KroneckerInvariants) -> bool:
    return a == b


def swapped_invariants(inv: KroneckerInvariants) -> KroneckerInvariants:
    """Invariants of the reversed family lam*T2 - T1, derived record-wise.

    Finite roots q != 0 become 1/q, zero roots swap with the divisors at
    infinity, minimal indices are unchanged. Coefficient-tuple entries
    become the (normalized) reversed polynomial.
    """
    out: List[DivisorEntry] = []
    for d in inv.divisors:
        r = d.root
        if r == INF:
            out.append(DivisorEntry(Fraction(0), d.size))
        elif isinstance(r, Fraction):
            out.append(DivisorEntry(INF if r == 0 else 1 / r, d.size))
        elif isinstance(r, GaussianRational):
            inv_r = GaussianRational(1) / r
            if inv_r.im < 0:
                inv_r = inv_r.conjugate()
            out.append(DivisorEntry(inv_r, d.size))
        else:
            rev = Poly(tuple(reversed(r))).monic()
            out.append(DivisorEntry(_root_of_irreducible(rev), d.size))
    out.sort(key=lambda e: e.sort_key())
    return KroneckerInvariants(inv.n, inv.minimal_indices, tuple(out))
