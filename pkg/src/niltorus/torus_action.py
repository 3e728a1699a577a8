"""Circle actions by automorphisms and their infinitesimal generators.

A weight assignment fixes a basis adapted to the action: an optional
single coordinate with weight zero, then m coordinate planes rotating
with speeds alpha_1..alpha_m, then the central plane rotating with
speed beta. The generator is block diagonal with 2x2 rotation blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra_core import LieAlgebraN2, StructureError, from_pair
from .exact_linalg import Matrix
from .realform import J2, rotation_block


class TorusError(ValueError):
    """Raised for weight data that cannot describe a circle action."""


@dataclass(frozen=True)
class TorusWeights:
    """Plane rotation speeds. alphas are per-plane, beta is the center speed.

    odd=True prepends a single fixed coordinate, giving n = 2*len(alphas)+1.
    Speeds must be non-negative; flip a plane's orientation to change sign.
    """

    alphas: Tuple[Fraction, ...]
    beta: Fraction
    odd: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(Fraction(a) for a in self.alphas))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if any(a < 0 for a in self.alphas) or self.beta < 0:
            raise TorusError("negative speeds; reorient the plane instead")

    @property
    def m(self) -> int:
        return len(self.alphas)

    @property
    def n(self) -> int:
        return 2 * self.m + (1 if self.odd else 0)

    def is_normalized(self) -> bool:
        if list(self.alphas) != sorted(self.alphas):
            return False
        if self.beta not in (0, 1):
            return False
        if self.beta == 0:
            pos = [a for a in self.alphas if a > 0]
            if pos and min(pos) != 1:
                return False
        return True

    def planes(self) -> List[Tuple[int, int, Fraction]]:
        """(offset, size, speed) per block, odd coordinate first if present."""
        out = []
        off = 0
        if self.odd:
            out.append((0, 1, Fraction(0)))
            off = 1
        for a in self.alphas:
            out.append((off, 2, a))
            off += 2
        return out


@dataclass(frozen=True)
class WeightBlock:
    """A maximal run of coordinates sharing one rotation speed."""

    alpha: Fraction
    offset: int
    size: int


def weight_blocks(w: TorusWeights) -> List[WeightBlock]:
    """Group the adapted basis into blocks of equal speed. Needs sorted alphas."""
    if list(w.alphas) != sorted(w.alphas):
        raise TorusError("weights must be sorted ascending; normalize first")
    blocks: List[WeightBlock] = []
    for off, size, a in w.planes():
        if blocks and blocks[-1].alpha == a:
            prev = blocks[-1]
            blocks[-1] = WeightBlock(a, prev.offset, prev.size + size)
        else:
            blocks.append(WeightBlock(a, off, size))
    return blocks


def derivation_matrix(w: TorusWeights, t: Fraction = Fraction(1)) -> Matrix:
    """Generator of the action on the full (n+2)-dimensional space at time t."""
    blocks = []
    if w.odd:
        blocks.append(Matrix.zeros(1, 1))
    for a in w.alphas:
        blocks.append(rotation_block(a, t))
    blocks.append(rotation_block(w.beta, t))
    return Matrix.diag(blocks)


def partial0(w: TorusWeights) -> Matrix:
    """Generator restricted to R^n at unit time."""
    full = derivation_matrix(w)
    return full.block(0, 0, w.n, w.n)


def check_torus_derivation(alg: LieAlgebraN2, w: TorusWeights) -> bool:
    """Exact test that the generator is a derivation rotating the center.

    beta*T2 == d0'*T1 + T1*d0  and  -beta*T1 == d0'*T2 + T2*d0.
    """
    if w.n != alg.n:
        raise TorusError("weight count does not match algebra dimension")
    d0 = partial0(w)
    d0t = d0.T
    lhs1 = alg.T2.scale(w.beta)
    rhs1 = d0t * alg.T1 + alg.T1 * d0
    if lhs1 != rhs1:
        return False
    lhs2 = alg.T1.scale(-w.beta)
    rhs2 = d0t * alg.T2 + alg.T2 * d0
    return lhs2 == rhs2


@dataclass(frozen=True)
class BlockConstraint:
    """Which halves of a 2x2 block may be nonzero between two planes."""

    z1_allowed: bool
    z2_allowed: bool


def block_constraints(alpha_h: Fraction, alpha_k: Fraction, beta: Fraction) -> BlockConstraint:
    """Support constraint for the block of T1 joining planes of speeds h, k.

    The complex half survives iff (alpha_h - alpha_k)^2 = beta^2; the
    twisted half iff (alpha_h + alpha_k)^2 = beta^2.
    """
    d = alpha_h - alpha_k
    s = alpha_h + alpha_k
    return BlockConstraint(d * d == beta * beta, s * s == beta * beta)


@dataclass(frozen=True)
class SupportViolation:
    row_plane: int
    col_plane: int
    which: str  # "z1", "z2", or "odd"
    detail: str


def validate_block_support(alg: LieAlgebraN2, w: TorusWeights) -> List[SupportViolation]:
    """List every block of (T1, T2) whose support the weights forbid.

    Planes are indexed as in w.planes(). Empty list means compatible.
    """
    from .realform import decompose

    if w.n != alg.n:
        raise TorusError("weight count does not match algebra dimension")
    planes = w.planes()
    bad: List[SupportViolation] = []
    for pi, (oi, si, ai) in enumerate(planes):
        for pj, (oj, sj, aj) in enumerate(planes):
            if pj < pi:
                continue
            for T, tag in ((alg.T1, "T1"), (alg.T2, "T2")):
                blockm = T.block(oi, oj, si, sj)
                if blockm.is_zero():
                    continue
                if si == 1 and sj == 1:
                    bad.append(
                        SupportViolation(pi, pj, "odd", f"{tag} has a nonzero fixed-fixed entry")
                    )
                elif si == 1 or sj == 1:
                    # a single fixed coordinate against a plane: allowed iff
                    # the plane speed equals beta
                    a = aj if si == 1 else ai
                    if a != w.beta:
                        bad.append(
                            SupportViolation(
                                pi, pj, "odd",
                                f"{tag} couples the fixed coordinate to a plane of speed {a} != beta",
                            )
                        )
                else:
                    c = block_constraints(ai, aj, w.beta)
                    z1, z2 = decompose(blockm)
                    if not c.z1_allowed and not z1.is_zero():
                        bad.append(
                            SupportViolation(
                                pi, pj, "z1",
                                f"{tag} block ({pi},{pj}) has a complex part but |{ai}-{aj}| != beta",
                            )
                        )
                    if not c.z2_allowed and not z2.is_zero():
                        bad.append(
                            SupportViolation(
                                pi, pj, "z2",
                                f"{tag} block ({pi},{pj}) has a twisted part but {ai}+{aj} != beta",
                            )
                        )
    return bad


@dataclass
class DerivationSpace:
    """A linear space of derivations of the ambient (n+2)-dim algebra."""

    ambient_dim: int
    basis: List[Matrix]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _derivation_system(alg: LieAlgebraN2, with_center: bool):
    """Rows of the linear system for E (and optionally the center block M)."""
    n = alg.n
    nE = n * n
    nunk = nE + (4 if with_center else 0)
    rows: List[List[Fraction]] = []
    for Tidx, T in ((0, alg.T1), (1, alg.T2)):
        for i in range(n):
            for j in range(i + 1, n):
                row = [Fraction(0)] * nunk
                # (E'T)_{ij} = sum_p E[p,i] T[p,j]
                for p in range(n):
                    if T[p, j] != 0:
                        row[p * n + i] += T[p, j]
                # (TE)_{ij} = sum_q T[i,q] E[q,j]
                for q in range(n):
                    if T[i, q] != 0:
                        row[q * n + j] += T[i, q]
                if with_center:
                    # minus (M row Tidx) dot (T1, T2) at entry (i, j)
                    row[nE + 2 * Tidx + 0] -= alg.T1[i, j]
                    row[nE + 2 * Tidx + 1] -= alg.T2[i, j]
                rows.append(row)
    return Matrix.from_rows(rows) if rows else Matrix.zeros(0, nunk)


def _assemble_derivation(alg: LieAlgebraN2, evec: Sequence[Fraction], M: Optional[Matrix]) -> Matrix:
    n = alg.n
    D = Matrix.zeros(n + 2, n + 2)
    for p in range(n):
        for q in range(n):
            D.data[p * (n + 2) + q] = evec[p * n + q]
    if M is not None:
        for a in range(2):
            for b in range(2):
                D.data[(n + a) * (n + 2) + (n + b)] = M[a, b]
    return D


def _bottom_left_basis(n: int) -> List[Matrix]:
    out = []
    for a in range(2):
        for q in range(n):
            D = Matrix.zeros(n + 2, n + 2)
            D.data[(n + a) * (n + 2) + q] = Fraction(1)
            out.append(D)
    return out


def solve_derivations_null_on_center(alg: LieAlgebraN2) -> DerivationSpace:
    """All derivations killing x and y. Always includes the 2n shifts into the center."""
    n = alg.n
    sys = _derivation_system(alg, with_center=False)
    kern = sys.nullspace()
    basis = [_assemble_derivation(alg, v.col(0), None) for v in kern]
    basis.extend(_bottom_left_basis(n))
    return DerivationSpace(n + 2, basis)


def solve_all_derivations(alg: LieAlgebraN2) -> DerivationSpace:
    """All derivations, center action included."""
    n = alg.n
    sys = _derivation_system(alg, with_center=True)
    kern = sys.nullspace()
    basis = []
    for v in kern:
        vec = v.col(0)
        M = Matrix.from_rows(
            [[vec[n * n + 0], vec[n * n + 1]], [vec[n * n + 2], vec[n * n + 3]]]
        )
        basis.append(_assemble_derivation(alg, vec[: n * n], M))
    basis.extend(_bottom_left_basis(n))
    return DerivationSpace(n + 2, basis)


@dataclass(frozen=True)
class ExpCheck:
    ok: bool
    max_error: float
    tol: float


def exp_automorphism_check(
    alg: LieAlgebraN2, w: TorusWeights, t: float, tol: float = 1e-10
) -> ExpCheck:
    """Numerically verify that exp of the generator acts by automorphisms.

    With g = exp of the R^n part and c = cos(beta t), s = sin(beta t):
        g' T1 g = c T1 + s T2,   g' T2 g = -s T1 + c T2.
    Floating point is confined to this check.
    """
    n = alg.n
    g = [[0.0] * n for _ in range(n)]
    for off, size, a in w.planes():
        th = float(a) * t
        if size == 1:
            g[off][off] = 1.0
        else:
            c, s = math.cos(th), math.sin(th)
            g[off][off] = c
            g[off][off + 1] = s
            g[off + 1][off] = -s
            g[off + 1][off + 1] = c
    T1f = [[float(alg.T1[i, j]) for j in range(n)] for i in range(n)]
    T2f = [[float(alg.T2[i, j]) for j in range(n)] for i in range(n)]

    def matmul(A, B):
        return [
            [sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    def transpose(A):
        return [[A[j][i] for j in range(n)] for i in range(n)]

    gt = transpose(g)
    cb, sb = math.cos(float(w.beta) * t), math.sin(float(w.beta) * t)
    err = 0.0
    for T, (c1, c2) in ((T1f, (cb, sb)), (T2f, (-sb, cb))):
        lhs = matmul(matmul(gt, T), g)
        for i in range(n):
            for j in range(n):
                want = c1 * T1f[i][j] + c2 * T2f[i][j]
                err = max(err, abs(lhs[i][j] - want))
    return ExpCheck(err <= tol, err, tol)


@dataclass(frozen=True)
class NormalizedWeights:
    weights: TorusWeights
    rescale: Fraction
    permutation: Tuple[int, ...]  # new plane p came from old plane permutation[p]


def normalize_weights(w: TorusWeights) -> NormalizedWeights:
    """Rescale time so beta (or the least positive speed) is 1; sort planes.

    Raises TorusError when every speed vanishes: the action is trivial
    and fixes no preferred scale.
    """
    if w.beta > 0:
        r = 1 / w.beta
    else:
        pos = [a for a in w.alphas if a > 0]
        if not pos:
            raise TorusError("trivial action: all speeds are zero")
        r = 1 / min(pos)
    order = sorted(range(w.m), key=lambda i: w.alphas[i])
    alphas = tuple(w.alphas[i] * r for i in order)
    return NormalizedWeights(
        TorusWeights(alphas, w.beta * r, w.odd), r, tuple(order)
    )


def plane_permutation_matrix(w: TorusWeights, perm: Sequence[int]) -> Matrix:
    """n x n matrix carrying old plane perm[p] onto new plane position p.

    Columns are indexed by the new adapted basis: column for new slot k
    has a 1 at the old slot it came from, so X' T X re-expresses the
    forms in the sorted basis.
    """
    n = w.n
    base = 1 if w.odd else 0
    X = Matrix.zeros(n, n)
    if w.odd:
        X.data[0] = Fraction(1)
    for newp, oldp in enumerate(perm):
        for k in range(2):
            old_i = base + 2 * oldp + k
            new_j = base + 2 * newp + k
            X.data[old_i * n + new_j] = Fraction(1)
    return X


def apply_basis_change(alg: LieAlgebraN2, X: Matrix) -> LieAlgebraN2:
    """Re-express the bracket forms in the basis given by the columns of X."""
    return from_pair(alg.T1.congruence(X), alg.T2.congruence(X))
