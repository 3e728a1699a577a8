"""Dense univariate polynomials over the rationals, plus the Smith form
for polynomial matrices. Internal helper for the pencil invariants."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple


class Poly:
    """Coefficients ascending; the zero polynomial has no coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):  # accepts ints/Fractions
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "Poly":
        return Poly([c])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        return Poly([Fraction(c) * a for a in self.coeffs])

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(r) - len(other.coeffs) + 1)
        d = other.degree
        lc = other.lead()
        while len(r) - 1 >= d and r:
            k = len(r) - 1 - d
            f = r[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[k + i] -= f * c
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead())

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def eval(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "Poly(" + " + ".join(terms) + ")"


def poly_smith_diagonal(grid: List[List[Poly]]) -> List[Poly]:
    """Invariant factors of a polynomial matrix, monic, with d1 | d2 | ...

    Zero factors (rank deficiency) are omitted from the result.
    """
    if not grid or not grid[0]:
        return []
    M = [[p for p in row] for row in grid]
    rows, cols = len(M), len(M[0])
    out: List[Poly] = []
    t = 0
    while t < min(rows, cols):
        # find the nonzero entry of least degree in the trailing submatrix
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if not M[i][j].is_zero():
                    if best is None or M[i][j].degree < M[best[0]][best[1]].degree:
                        best = (i, j)
        if best is None:
            break
        bi, bj = best
        M[t], M[bi] = M[bi], M[t]
        for row in M:
            row[t], row[bj] = row[bj], row[t]
        # clear row and column t by division; restart if a remainder with
        # smaller degree shows up (it becomes the new pivot candidate)
        while True:
            pivot = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t].is_zero():
                    continue
                q, r = divmod(M[i][t], pivot)
                for j in range(t, cols):
                    M[i][j] = M[i][j] - q * M[t][j]
                if not r.is_zero():
                    M[t], M[i] = M[i], M[t]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(t + 1, cols):
                if M[t][j].is_zero():
                    continue
                q, r = divmod(M[t][j], pivot)
                for i in range(t, rows):
                    M[i][j] = M[i][j] - M[i][t] * q
                if not r.is_zero():
                    for i in range(t, rows):
                        M[i][t], M[i][j] = M[i][j], M[i][t]
                    dirty = True
                    break
            if dirty:
                continue
            break
        # pivot must divide every remaining entry; if not, fold the
        # offending row into row t and redo the clearing
        pivot = M[t][t]
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if not (M[i][j] % pivot).is_zero():
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, cols):
                M[t][j] = M[t][j] + M[offender][j]
            continue
        out.append(pivot.monic())
        t += 1
    return out
