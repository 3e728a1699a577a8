"""Two-step nilpotent Lie algebras with two-dimensional commutator.

An algebra here is R^n + span(x, y) with the only nonzero brackets
    [u, v] = (u' T1 v) x + (u' T2 v) y
for alternating n x n rational matrices T1, T2. Basis vectors of R^n
are indexed 1..n in the public constructors; x and y are the two
distinguished central directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .exact_linalg import Fraction as _F
from .exact_linalg import Matrix


class StructureError(ValueError):
    """Raised when input data does not define a valid algebra."""


@dataclass(frozen=True)
class AlternatingPair:
    """An ordered pair of alternating n x n rational matrices."""

    T1: Matrix
    T2: Matrix

    def __post_init__(self):
        if not self.T1.is_square() or not self.T2.is_square():
            raise StructureError("T1, T2 must be square")
        if self.T1.rows != self.T2.rows:
            raise StructureError("T1, T2 must have equal size")
        if not self.T1.is_alternating() or not self.T2.is_alternating():
            raise StructureError("T1, T2 must be alternating")

    @property
    def n(self) -> int:
        return self.T1.rows


@dataclass(frozen=True)
class LieAlgebraN2:
    """The algebra determined by an alternating pair."""

    pair: AlternatingPair

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def dim(self) -> int:
        return self.pair.n + 2

    @property
    def T1(self) -> Matrix:
        return self.pair.T1

    @property
    def T2(self) -> Matrix:
        return self.pair.T2


BracketSpec = Tuple[int, int, Fraction, Fraction]


def from_brackets(n: int, relations: Iterable[Sequence]) -> LieAlgebraN2:
    """Build an algebra from relations (i, j, a, b): [e_i, e_j] = a x + b y.

    Indices are 1-based and must satisfy i < j. Unlisted brackets vanish.
    """
    T1 = Matrix.zeros(n, n)
    T2 = Matrix.zeros(n, n)
    for rel in relations:
        i, j, a, b = rel
        if not (1 <= i < j <= n):
            raise StructureError(f"bad bracket indices ({i}, {j}); need 1 <= i < j <= n")
        a = Fraction(a)
        b = Fraction(b)
        if T1[i - 1, j - 1] != 0 or T2[i - 1, j - 1] != 0:
            raise StructureError(f"duplicate bracket for ({i}, {j})")
        T1.data[(i - 1) * n + (j - 1)] = a
        T1.data[(j - 1) * n + (i - 1)] = -a
        T2.data[(i - 1) * n + (j - 1)] = b
        T2.data[(j - 1) * n + (i - 1)] = -b
    return LieAlgebraN2(AlternatingPair(T1, T2))


def from_pair(T1: Matrix, T2: Matrix) -> LieAlgebraN2:
    return LieAlgebraN2(AlternatingPair(T1, T2))


def bracket(alg: LieAlgebraN2, u: Sequence, v: Sequence) -> Tuple[Fraction, Fraction]:
    """Coefficients (a, b) of [u, v] = a x + b y for coordinate vectors u, v."""
    n = alg.n
    if len(u) != n or len(v) != n:
        raise ValueError("vectors must have length n")
    uc = Matrix.column(u)
    vc = Matrix.column(v)
    a = (uc.T * alg.T1 * vc)[0, 0]
    b = (uc.T * alg.T2 * vc)[0, 0]
    return a, b


def commutator_dimension(alg: LieAlgebraN2) -> int:
    """Dimension of the span of all bracket values inside span(x, y)."""
    n = alg.n
    rows = [[], []]
    for i in range(n):
        for j in range(i + 1, n):
            rows[0].append(alg.T1[i, j])
            rows[1].append(alg.T2[i, j])
    if not rows[0]:
        return 0
    return Matrix.from_rows(rows).rank()


def center_equals_commutator(alg: LieAlgebraN2) -> bool:
    """True iff no nonzero v in R^n kills both forms: ker T1 meet ker T2 = 0."""
    stacked = alg.T1.vstack(alg.T2)
    return stacked.rank() == alg.n


def is_type_n2(alg: LieAlgebraN2) -> bool:
    """Commutator is exactly span(x, y) and coincides with the center."""
    return commutator_dimension(alg) == 2 and center_equals_commutator(alg)


def direct_sum(a: LieAlgebraN2, b: LieAlgebraN2) -> LieAlgebraN2:
    """Amalgamated sum identifying the two central planes."""
    T1 = Matrix.diag([a.T1, b.T1])
    T2 = Matrix.diag([a.T2, b.T2])
    return from_pair(T1, T2)
