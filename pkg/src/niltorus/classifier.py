"""Canonical forms for the coupled-plane families and their classification.

The classification runs entirely over exact arithmetic. A record (one of
the TheoremFamily dataclasses below) pins down a canonical member; the
make_* constructors build records from abstract strand data, build_family
turns a record into the algebra together with its rotation weights, and
classify reduces any admissible algebra back to such a record while
accumulating the basis change that realizes the reduction.

Interval language used throughout: a strand is one complex basis thread
running through consecutive weight blocks; (a, b) means it is present in
blocks a..b inclusive. Couplings between neighbouring blocks are stored
as complex matrices whose real forms are blocks of the first bracket
form; canonical couplings are 0/1 partial permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra_core import LieAlgebraN2, StructureError, from_pair, is_type_n2
from .canonical_pairs import (
    INF,
    KroneckerInvariants,
    _jordan,
    _left_strip,
    _right_strip,
    invariants_equal,
    nabla,
    pencil_invariants,
)
from .exact_linalg import GaussianRational, Matrix
from .realform import decompose, omega_matrix, real_form
from .torus_action import (
    TorusError,
    TorusWeights,
    WeightBlock,
    apply_basis_change,
    check_torus_derivation,
    normalize_weights,
    partial0,
    plane_permutation_matrix,
    validate_block_support,
    weight_blocks,
)
from ._chain import ChainEngine, Step, _lower_echelon_transform

_G0 = GaussianRational(0)
_G1 = GaussianRational(1)

__all__ = [
    "TheoremFamily",
    "BetaZero",
    "AlphaZero",
    "AlphaGtHalf",
    "AlphaHalf",
    "AlphaLtHalf",
    "NotATheoremInstanceError",
    "DecomposableError",
    "EchelonReport",
    "ReducedH",
    "make_beta_zero",
    "make_alpha_zero",
    "make_alpha_gt_half",
    "make_alpha_half",
    "make_alpha_lt_half",
    "build_family",
    "second_form_from_first",
    "no_dead_columns_check",
    "detect_T_decomposable",
    "reduce_H",
    "echelon_reduce",
    "classify",
]


# --------------------------------------------------------------------------
# errors


class NotATheoremInstanceError(ValueError):
    """A genuine algebra with a circle action that no canonical family covers.

    diagnostics carries human-readable strings explaining what failed.
    """

    def __init__(self, message: str, diagnostics: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.diagnostics: List[str] = list(diagnostics or [])


class DecomposableError(ValueError):
    """The forms split into independent coordinate groups.

    partition lists the coordinate indices of each group; the algebra is
    the direct sum (with amalgamated center) of the parts.
    """

    def __init__(self, partition: Sequence[Sequence[int]]):
        self.partition: List[List[int]] = [list(p) for p in partition]
        super().__init__(
            "decomposable: independent coordinate groups %s"
            % ", ".join(str(p) for p in self.partition)
        )


# --------------------------------------------------------------------------
# family records


class TheoremFamily:
    """Marker base class for the canonical family records."""


@dataclass(frozen=True)
class BetaZero(TheoremFamily):
    """Fixed center, every plane at unit speed.

    kind "strip" is the singular pair of rectangular strips (size 4t+2);
    kind "jordan" is the regular pair with eigenvalue q (size 4t), where
    q is a Fraction or a GaussianRational with positive imaginary part.
    """

    alpha: Fraction
    kind: str
    t: int
    q: Optional[Union[Fraction, GaussianRational]] = None


@dataclass(frozen=True)
class AlphaZero(TheoremFamily):
    """Weights 0, 1, ..., l with a real weight-zero block.

    d are real dimensions per weight. W0 is the real coupling from the
    zero block into weight 1; W holds the complex couplings further up.
    """

    d: Tuple[int, ...]
    W0: Matrix
    W: Tuple[Matrix, ...]


@dataclass(frozen=True)
class AlphaGtHalf(TheoremFamily):
    """A single ladder alpha, alpha+1, ..., alpha+l with alpha > 1/2."""

    alpha: Fraction
    d: Tuple[int, ...]
    W: Tuple[Matrix, ...]


@dataclass(frozen=True)
class AlphaHalf(TheoremFamily):
    """Weights 1/2, 3/2, ..., l+1/2 with a self-pairing on the bottom block.

    The bottom block carries s chain slots and r fully dead slot pairs.
    H0 is the complex skew pairing among the s chain slots, kept
    verbatim: surviving slots cannot be mixed without disturbing the
    couplings above, so H0 is a modulus of the family, not a normal
    form. Records compare it by exact equality. The dead pairs carry
    the standard symplectic block.
    """

    d: Tuple[int, ...]
    s: int
    r: int
    H0: Matrix
    W: Tuple[Matrix, ...]


@dataclass(frozen=True)
class AlphaLtHalf(TheoremFamily):
    """Two ladders k - alpha and k + alpha joined by a twisted coupling.

    Display order runs down the first ladder and up the second:
    l1-alpha, ..., 1-alpha, alpha, 1+alpha, ..., l2+alpha. dV/V describe
    the descending half, dW/W the ascending half, S the junction (None
    when the descending half is empty).
    """

    alpha: Fraction
    dV: Tuple[int, ...]
    dW: Tuple[int, ...]
    V: Tuple[Matrix, ...]
    S: Optional[Matrix]
    W: Tuple[Matrix, ...]


@dataclass
class EchelonReport:
    """What the reduction did.

    transform maps the input basis onto the canonical one: X' T_i X are
    the canonical forms. transform_complete is False when only invariants
    were matched (fixed-center kinds), in which case transform holds just
    the plane sort.
    """

    weights: TorusWeights
    transform: Matrix
    transform_complete: bool
    steps: Tuple[Step, ...]


# --------------------------------------------------------------------------
# small helpers


def second_form_from_first(T1: Matrix, w: TorusWeights) -> Matrix:
    """The twisted form forced by the derivation identities at center speed 1."""
    if w.beta != 1:
        raise TorusError("the second form is determined only for center speed 1")
    d0 = partial0(w)
    return d0.T * T1 + T1 * d0


def no_dead_columns_check(alg: LieAlgebraN2, w: TorusWeights) -> List[int]:
    """Planes (or the fixed coordinate) on which the first form vanishes.

    Returns the offending plane indices as in w.planes(); empty is good.
    """
    bad = []
    for p, (off, size, _a) in enumerate(w.planes()):
        if alg.T1.block(0, off, alg.n, size).is_zero():
            bad.append(p)
    return bad


def detect_T_decomposable(
    alg: LieAlgebraN2, w: TorusWeights
) -> Optional[List[List[int]]]:
    """Partition of the coordinates into independent groups, or None.

    Two planes are linked when either form couples them (or a plane
    self-couples, which never links anything new). A disconnected linkage
    splits the algebra into a direct sum with shared center.
    """
    planes = w.planes()
    m = len(planes)
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i in range(m):
        oi, si, _ = planes[i]
        for j in range(i + 1, m):
            oj, sj, _ = planes[j]
            if not alg.T1.block(oi, oj, si, sj).is_zero():
                union(i, j)
            elif not alg.T2.block(oi, oj, si, sj).is_zero():
                union(i, j)
    groups: Dict[int, List[int]] = {}
    for p in range(m):
        groups.setdefault(find(p), []).append(p)
    if len(groups) <= 1:
        return None
    out = []
    for members in groups.values():
        coords: List[int] = []
        for p in members:
            off, size, _ = planes[p]
            coords.extend(range(off, off + size))
        out.append(sorted(coords))
    out.sort(key=lambda c: c[0])
    return out


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise StructureError(msg)


# --------------------------------------------------------------------------
# canonical layout shared by the constructors and the reduction


def _chain_layout(
    intervals: Sequence[Tuple[int, int]],
    nblocks: int,
    order0: Optional[Sequence[int]] = None,
) -> Tuple[List[int], List[Matrix], Dict[int, List[int]]]:
    """Slot tables and 0/1 couplings realizing the given strand intervals.

    Block b lists newborn strands first (latest death first, stable),
    then survivors in the order of the previous block; order0 overrides
    the slot order of block 0 (a list of strand ids, all born at 0).
    Returns (complex dims, couplings, slots per block).
    """
    ids = list(range(len(intervals)))
    for a, b in intervals:
        _require(0 <= a <= b < nblocks, "strand interval out of range")
    slots: Dict[int, List[int]] = {}
    for blk in range(nblocks):
        born = [i for i in ids if intervals[i][0] == blk]
        if blk == 0 and order0 is not None:
            _require(sorted(order0) == sorted(born), "order0 must list the block-0 strands")
            slots[0] = list(order0)
            continue
        born.sort(key=lambda i: (-intervals[i][1], i))
        cont = (
            [i for i in slots[blk - 1] if intervals[i][1] >= blk] if blk else []
        )
        slots[blk] = born + cont
    for blk in range(nblocks):
        _require(len(slots[blk]) > 0, "every weight block must be nonempty")
    dims = [len(slots[b]) for b in range(nblocks)]
    coups: List[Matrix] = []
    for blk in range(1, nblocks):
        prev, cur = slots[blk - 1], slots[blk]
        W = Matrix.zeros(len(prev), len(cur), gaussian=True)
        for r, i in enumerate(prev):
            if intervals[i][1] >= blk:
                W.data[r * len(cur) + cur.index(i)] = _G1
        coups.append(W)
    return dims, coups, slots


def make_beta_zero(kind: str, t: int, q=None) -> BetaZero:
    _require(kind in ("strip", "jordan"), "kind must be 'strip' or 'jordan'")
    _require(t >= 1, "t must be >= 1")
    if kind == "strip":
        _require(q is None, "strip kind takes no eigenvalue")
    else:
        if isinstance(q, GaussianRational):
            _require(q.im > 0, "complex eigenvalue must have positive imaginary part; pass a Fraction when real")
        else:
            q = Fraction(q)
            # a real eigenvalue with a 1x1 block makes the second form a
            # scalar multiple of the first: commutator dimension 1
            _require(t >= 2, "a real eigenvalue needs block size at least 2")
    return BetaZero(Fraction(1), kind, t, q)


def make_alpha_gt_half(alpha, spans: Sequence[Tuple[int, int]]) -> AlphaGtHalf:
    alpha = Fraction(alpha)
    _require(alpha > Fraction(1, 2), "alpha must exceed 1/2")
    _require(len(spans) > 0, "at least one strand")
    for a, b in spans:
        _require(a < b, "single ladders carry no one-block strands")
    l = max(b for _a, b in spans)
    _require(l >= 1, "the ladder needs at least two rungs")
    dims, coups, _ = _chain_layout(spans, l + 1)
    return AlphaGtHalf(alpha, tuple(2 * c for c in dims), tuple(coups))


def make_alpha_half(
    H0: Matrix,
    deaths: Sequence[int],
    r: int,
    later: Sequence[Tuple[int, int]] = (),
) -> AlphaHalf:
    """Canonical record for the half-integer regime.

    H0 is the complex skew pairing among the s surviving bottom slots,
    kept verbatim; deaths lists their last blocks, non-increasing; r
    counts the fully dead symplectic slot pairs; later holds strands
    born at weight >= 3/2.
    """
    deaths = list(deaths)
    s = len(deaths)
    _require(H0.rows == s and H0.cols == s, "H0 must be s x s")
    _require(s == 0 or H0.is_gaussian_matrix(), "H0 must have complex entries")
    _require(H0.T == -H0, "H0 must be skew-symmetric")
    for dd in deaths:
        _require(dd >= 1, "surviving slots must reach weight 3/2")
    _require(deaths == sorted(deaths, reverse=True), "slot deaths must be non-increasing")
    _require(r >= 0, "r must be >= 0")
    for a, b in later:
        _require(1 <= a < b, "later strands must be born at weight >= 3/2 and live on")
    c0 = s + 2 * r
    _require(c0 >= 1, "the bottom block must be nonempty")
    l = max(deaths + [b for _a, b in later] + [0])
    intervals = [(0, dd) for dd in deaths] + [(0, 0)] * (2 * r) + list(later)
    dims, coups, _ = _chain_layout(intervals, l + 1, order0=list(range(c0)))
    return AlphaHalf(tuple(2 * c for c in dims), s, r, H0, tuple(coups))


def make_alpha_zero(
    l_deaths: Sequence[int],
    s_pairs: Sequence[Tuple[int, int]],
    t_deaths: Sequence[int],
    z_deaths: Sequence[int],
    chain: Sequence[Tuple[int, int]] = (),
) -> AlphaZero:
    """Canonical record for the zero-weight regime from row and pair data.

    l_deaths: pinned single rows; s_pairs: (straight death, swapped
    death) row pairs, straight strictly longer; t_deaths: swapped-only
    row pairs; z_deaths: unpinned weight-1 pairs (must live to weight 2);
    chain: strands born at weight >= 2.
    """
    for dd in l_deaths:
        _require(dd >= 1, "pinned rows point at weight 1")
    for dI, dO in s_pairs:
        _require(dI > dO >= 1, "paired rows need a strictly longer straight branch")
    for dd in t_deaths:
        _require(dd >= 1, "swapped rows point at weight 1")
    for dd in z_deaths:
        _require(dd >= 2, "unpinned weight-1 pairs must live to weight 2")
    for a, b in chain:
        _require(2 <= a < b, "upper strands are born at weight >= 2 and live on")
    g, ns, nt = len(l_deaths), len(s_pairs), len(t_deaths)
    d0 = g + 2 * ns + 2 * nt
    _require(d0 >= 1, "the zero block must be nonempty")
    l_sorted = sorted(l_deaths, reverse=True)
    s_sorted = sorted(s_pairs, key=lambda p: (-p[0], -p[1]))
    t_sorted = sorted(t_deaths, reverse=True)
    z_sorted = sorted(z_deaths, reverse=True)
    # weight-1 pair bands: unpinned, pinned-single, straight, swapped-only,
    # swapped-of-pair; chain blocks are indexed 0..l-1 inside the layout
    intervals: List[Tuple[int, int]] = []
    intervals += [(0, dd - 1) for dd in z_sorted]
    intervals += [(0, dd - 1) for dd in l_sorted]
    intervals += [(0, dI - 1) for dI, _ in s_sorted]
    intervals += [(0, dd - 1) for dd in t_sorted]
    intervals += [(0, dO - 1) for _, dO in s_sorted]
    base_l = max([iv[1] for iv in intervals] + [b - 1 for _a, b in chain] + [0])
    l = base_l + 1
    _require(l >= 1, "at least the weight-1 block must exist")
    intervals += [(a - 1, b - 1) for a, b in chain]
    order0 = list(range(len(intervals) - len(chain)))
    dims, coups, _ = _chain_layout(intervals, l, order0=order0)
    c1 = dims[0]
    # the real coupling, banded rows against banded pairs
    W0 = Matrix.zeros(d0, 2 * c1)
    nz = len(z_sorted)
    row = 0
    for i in range(g):
        pair = nz + i
        W0.data[row * 2 * c1 + 2 * pair] = Fraction(1)
        row += 1
    for k in range(ns):
        pI = nz + g + k
        pO = nz + g + ns + nt + k
        W0.data[row * 2 * c1 + 2 * pI] = Fraction(1)
        W0.data[(row + 1) * 2 * c1 + 2 * pI + 1] = Fraction(1)
        W0.data[row * 2 * c1 + 2 * pO + 1] = Fraction(1)
        W0.data[(row + 1) * 2 * c1 + 2 * pO] = Fraction(1)
        row += 2
    for m in range(nt):
        pT = nz + g + ns + m
        W0.data[row * 2 * c1 + 2 * pT] = Fraction(1)
        W0.data[(row + 1) * 2 * c1 + 2 * pT + 1] = Fraction(1)
        row += 2
    d = (d0,) + tuple(2 * c for c in dims)
    return AlphaZero(d, W0, tuple(coups))


def make_alpha_lt_half(
    alpha, l1: int, spans: Sequence[Tuple[int, int]]
) -> AlphaLtHalf:
    alpha = Fraction(alpha)
    _require(Fraction(0) < alpha < Fraction(1, 2), "alpha must lie strictly between 0 and 1/2")
    _require(l1 >= 0, "l1 must be >= 0")
    _require(len(spans) > 0, "at least one strand")
    for a, b in spans:
        _require(a < b, "one-block strands are dead here")
    nblocks = max(b for _a, b in spans) + 1
    l2 = nblocks - 1 - l1
    _require(l2 >= 0, "the ascending half must contain the weight-alpha block")
    dims, coups, _ = _chain_layout(spans, nblocks)
    dV = tuple(2 * c for c in dims[:l1])
    dW = tuple(2 * c for c in dims[l1:])
    V = tuple(coups[: max(l1 - 1, 0)])
    S = coups[l1 - 1] if l1 >= 1 else None
    W = tuple(coups[l1:])
    return AlphaLtHalf(alpha, dV, dW, V, S, W)


# --------------------------------------------------------------------------
# building algebras from records


def _place_alternating(T: Matrix, r0: int, c0: int, blk: Matrix) -> Matrix:
    T = T.with_block(r0, c0, blk)
    if r0 != c0:
        T = T.with_block(c0, r0, -blk.T)
    return T


def _sigma(r: int) -> Matrix:
    m = Matrix.zeros(2 * r, 2 * r, gaussian=True)
    for i in range(r):
        m.data[i * 2 * r + r + i] = _G1
        m.data[(r + i) * 2 * r + i] = -_G1
    return m


def _coupling_shape_ok(W: Matrix, rows: int, cols: int) -> bool:
    return W.rows == rows and W.cols == cols


def _finish_build(T1: Matrix, w: TorusWeights) -> Tuple[LieAlgebraN2, TorusWeights]:
    T2 = second_form_from_first(T1, w)
    alg = from_pair(T1, T2)
    _require(is_type_n2(alg), "the record does not define forms of full commutator rank")
    if not check_torus_derivation(alg, w):
        raise AssertionError("built forms fail the derivation identities")
    if validate_block_support(alg, w):
        raise AssertionError("built forms violate the weight support rules")
    return alg, w


def build_family(fam: TheoremFamily) -> Tuple[LieAlgebraN2, TorusWeights]:
    """The canonical algebra and its weights for a family record.

    Records are accepted structurally; couplings need not be 0/1 (the
    classify output always is), but the result must satisfy the rank and
    derivation requirements or a StructureError is raised. Records for
    the mixed-ladder family with an empty ascending tail build the same
    algebras as plain ladders of speed 1 - alpha and will classify as
    such.
    """
    if isinstance(fam, BetaZero):
        return _build_beta_zero(fam)
    if isinstance(fam, AlphaZero):
        return _build_alpha_zero(fam)
    if isinstance(fam, AlphaGtHalf):
        return _build_alpha_gt_half(fam)
    if isinstance(fam, AlphaHalf):
        return _build_alpha_half(fam)
    if isinstance(fam, AlphaLtHalf):
        return _build_alpha_lt_half(fam)
    raise TypeError("not a family record: %r" % (fam,))


def _build_beta_zero(fam: BetaZero) -> Tuple[LieAlgebraN2, TorusWeights]:
    _require(fam.alpha == 1, "fixed-center records are normalized to unit plane speed")
    _require(fam.kind in ("strip", "jordan"), "unknown kind")
    _require(fam.t >= 1, "t must be >= 1")
    if fam.kind == "strip":
        _require(fam.q is None, "strip kind takes no eigenvalue")
        A, B = _left_strip(fam.t), _right_strip(fam.t)
    else:
        q = fam.q
        if isinstance(q, GaussianRational):
            _require(q.im > 0, "complex eigenvalue must have positive imaginary part")
        else:
            q = Fraction(q)
        A, B = Matrix.identity(fam.t, gaussian=True), _jordan(fam.t, q)
    T1, T2 = nabla(real_form(A), real_form(B))
    alg = from_pair(T1, T2)
    m = alg.n // 2
    w = TorusWeights((Fraction(1),) * m, Fraction(0))
    _require(is_type_n2(alg), "degenerate fixed-center record")
    if not check_torus_derivation(alg, w):
        raise AssertionError("fixed-center build fails invariance")
    return alg, w


def _build_alpha_zero(fam: AlphaZero) -> Tuple[LieAlgebraN2, TorusWeights]:
    d = fam.d
    _require(len(d) >= 2, "need weights 0 and 1 at least")
    _require(d[0] >= 1, "the zero block must be nonempty")
    for dj in d[1:]:
        _require(dj >= 2 and dj % 2 == 0, "upper blocks are even-dimensional and nonempty")
    _require(fam.W0.rows == d[0] and fam.W0.cols == d[1], "W0 shape mismatch")
    _require(not fam.W0.is_gaussian_matrix(), "W0 must be a real matrix")
    _require(len(fam.W) == len(d) - 2, "coupling count mismatch")
    offs = [sum(d[:j]) for j in range(len(d))]
    n = sum(d)
    T1 = Matrix.zeros(n, n)
    T1 = _place_alternating(T1, offs[0], offs[1], fam.W0)
    for i, Wj in enumerate(fam.W):
        _require(
            _coupling_shape_ok(Wj, d[i + 1] // 2, d[i + 2] // 2),
            "coupling %d shape mismatch" % (i + 2),
        )
        T1 = _place_alternating(T1, offs[i + 1], offs[i + 2], real_form(Wj))
    odd = d[0] % 2 == 1
    alphas: List[Fraction] = [Fraction(0)] * ((d[0] - (1 if odd else 0)) // 2)
    for j, dj in enumerate(d[1:], start=1):
        alphas += [Fraction(j)] * (dj // 2)
    w = TorusWeights(tuple(alphas), Fraction(1), odd)
    return _finish_build(T1, w)


def _build_alpha_gt_half(fam: AlphaGtHalf) -> Tuple[LieAlgebraN2, TorusWeights]:
    _require(fam.alpha > Fraction(1, 2), "alpha must exceed 1/2")
    d = fam.d
    _require(len(d) >= 2, "a single block cannot couple to anything")
    for dj in d:
        _require(dj >= 2 and dj % 2 == 0, "blocks are even-dimensional and nonempty")
    _require(len(fam.W) == len(d) - 1, "coupling count mismatch")
    offs = [sum(d[:j]) for j in range(len(d))]
    n = sum(d)
    T1 = Matrix.zeros(n, n)
    for i, Wj in enumerate(fam.W):
        _require(
            _coupling_shape_ok(Wj, d[i] // 2, d[i + 1] // 2),
            "coupling %d shape mismatch" % (i + 1),
        )
        T1 = _place_alternating(T1, offs[i], offs[i + 1], real_form(Wj))
    alphas: List[Fraction] = []
    for j, dj in enumerate(d):
        alphas += [fam.alpha + j] * (dj // 2)
    w = TorusWeights(tuple(alphas), Fraction(1))
    return _finish_build(T1, w)


def _build_alpha_half(fam: AlphaHalf) -> Tuple[LieAlgebraN2, TorusWeights]:
    d = fam.d
    _require(len(d) >= 1, "need at least the weight-1/2 block")
    for dj in d:
        _require(dj >= 2 and dj % 2 == 0, "blocks are even-dimensional and nonempty")
    c0 = d[0] // 2
    _require(fam.s >= 0 and fam.r >= 0 and fam.s + 2 * fam.r == c0, "s + 2r must fill the bottom block")
    _require(fam.H0.rows == fam.s and fam.H0.cols == fam.s, "H0 shape mismatch")
    _require(fam.H0.T == -fam.H0, "H0 must be skew-symmetric")
    _require(len(fam.W) == len(d) - 1, "coupling count mismatch")
    Hhat = Matrix.zeros(c0, c0, gaussian=True)
    if fam.s:
        Hhat = Hhat.with_block(0, 0, fam.H0)
    if fam.r:
        Hhat = Hhat.with_block(fam.s, fam.s, _sigma(fam.r))
    offs = [sum(d[:j]) for j in range(len(d))]
    n = sum(d)
    T1 = Matrix.zeros(n, n)
    A00 = omega_matrix(c0) * real_form(Hhat)
    if not A00.is_alternating():
        raise AssertionError("bottom pairing block failed to be alternating")
    T1 = T1.with_block(0, 0, A00)
    for i, Wj in enumerate(fam.W):
        _require(
            _coupling_shape_ok(Wj, d[i] // 2, d[i + 1] // 2),
            "coupling %d shape mismatch" % (i + 1),
        )
        T1 = _place_alternating(T1, offs[i], offs[i + 1], real_form(Wj))
    alphas: List[Fraction] = []
    for j, dj in enumerate(d):
        alphas += [Fraction(1, 2) + j] * (dj // 2)
    w = TorusWeights(tuple(alphas), Fraction(1))
    return _finish_build(T1, w)


def _build_alpha_lt_half(fam: AlphaLtHalf) -> Tuple[LieAlgebraN2, TorusWeights]:
    alpha = Fraction(fam.alpha)
    _require(Fraction(0) < alpha < Fraction(1, 2), "alpha must lie strictly between 0 and 1/2")
    dV, dW = fam.dV, fam.dW
    l1, l2 = len(dV), len(dW) - 1
    _require(len(dW) >= 1, "the weight-alpha block must exist")
    for dj in dV + dW:
        _require(dj >= 2 and dj % 2 == 0, "blocks are even-dimensional and nonempty")
    _require(len(fam.V) == max(l1 - 1, 0), "descending coupling count mismatch")
    _require(len(fam.W) == l2, "ascending coupling count mismatch")
    _require((fam.S is None) == (l1 == 0), "junction present iff the descending half is")
    dd = list(dV) + list(dW)
    offs = [sum(dd[:j]) for j in range(len(dd))]
    n = sum(dd)
    # display weights: descending then ascending
    disp_weights = [Fraction(k) - alpha for k in range(l1, 0, -1)] + [
        Fraction(k) + alpha for k in range(0, l2 + 1)
    ]
    T1d = Matrix.zeros(n, n)
    for i, Vj in enumerate(fam.V):
        _require(
            _coupling_shape_ok(Vj, dd[i] // 2, dd[i + 1] // 2),
            "descending coupling %d shape mismatch" % (i + 1),
        )
        T1d = _place_alternating(T1d, offs[i], offs[i + 1], real_form(Vj))
    if fam.S is not None:
        _require(
            _coupling_shape_ok(fam.S, dd[l1 - 1] // 2, dd[l1] // 2),
            "junction shape mismatch",
        )
        blk = omega_matrix(dd[l1 - 1] // 2) * real_form(fam.S)
        T1d = _place_alternating(T1d, offs[l1 - 1], offs[l1], blk)
    for i, Wj in enumerate(fam.W):
        _require(
            _coupling_shape_ok(Wj, dd[l1 + i] // 2, dd[l1 + i + 1] // 2),
            "ascending coupling %d shape mismatch" % (i + 1),
        )
        T1d = _place_alternating(T1d, offs[l1 + i], offs[l1 + i + 1], real_form(Wj))
    # sort the display planes by weight
    disp_plane_weights: List[Fraction] = []
    for k, dj in enumerate(dd):
        disp_plane_weights += [disp_weights[k]] * (dj // 2)
    order = sorted(range(len(disp_plane_weights)), key=lambda p: disp_plane_weights[p])
    coordperm: List[int] = []
    for p in order:
        coordperm += [2 * p, 2 * p + 1]
    Q = Matrix.permutation(coordperm)
    T1 = Q.T * T1d * Q
    alphas = tuple(disp_plane_weights[p] for p in order)
    w = TorusWeights(alphas, Fraction(1))
    return _finish_build(T1, w)


# --------------------------------------------------------------------------
# the bottom-block pairing reduction


@dataclass
class ReducedH:
    """Outcome of reduce_H: X' H X is block-diagonal (h0, symplectic)."""

    transform: Matrix
    h0: Matrix
    s: int
    r: int


def reduce_H(H: Matrix, W1: Optional[Matrix]) -> ReducedH:
    """Split the bottom self-pairing along the surviving/dead slots.

    The zero rows of the echelonized coupling W1 (all rows, when W1 is
    None) mark the dead slots; they must sit below the s surviving ones.
    The transform is unipotent lower block-triangular in that splitting,
    so it adds only dead slots into surviving ones and never disturbs
    the couplings above. It kills the cross pairing and brings the
    dead-dead part to the standard symplectic block; the surviving-slot
    corner h0 comes back as is, a modulus of the family.

    Raises NotATheoremInstanceError when the dead-dead part is
    degenerate: no pair with a linearly independent second form carries
    such a block, so the input was not one.
    """
    c = H.rows
    if H.cols != c:
        raise ValueError("H must be square")
    if H.T != -H:
        raise ValueError("H must be skew-symmetric")
    if W1 is None:
        s = 0
    else:
        if W1.rows != c:
            raise ValueError("coupling rows must match the pairing size")
        alive = [not W1.block(i, 0, 1, W1.cols).is_zero() for i in range(c)]
        s = sum(alive)
        if alive != [True] * s + [False] * (c - s):
            raise ValueError("dead slots must come after the surviving ones")
    k = c - s
    if k % 2:
        raise NotATheoremInstanceError(
            "the dead part of the bottom pairing has odd dimension and is degenerate"
        )
    r = k // 2
    X = Matrix.identity(c, gaussian=True)
    if k:
        H2 = H.block(s, s, k, k)
        if H2.rank() < k:
            raise NotATheoremInstanceError(
                "the pairing among dead bottom slots is degenerate; no canonical member covers this"
            )
        H1 = H.block(0, s, s, k)
        if s and not H1.is_zero():
            X = X.with_block(s, 0, H2.inverse() * H1.T)
        if H2 != _sigma(r):
            X = X.with_block(s, s, _symplectic_gs(H2))
    cur = X.T * H * X
    h0 = cur.block(0, 0, s, s)
    if h0.T != -h0:
        raise AssertionError("surviving-slot pairing lost skewness")
    if k:
        if not cur.block(0, s, s, k).is_zero():
            raise AssertionError("dead-slot cross terms survived the clearing")
        if cur.block(s, s, k, k) != _sigma(r):
            raise AssertionError("dead-slot pairing did not reach the symplectic block")
    return ReducedH(X, h0, s, r)


def _symplectic_gs(B: Matrix) -> Matrix:
    """D with D' B D the standard symplectic block, for B complex skew
    nondegenerate of even size."""
    k = B.rows
    cols = [Matrix.zeros(k, 1, gaussian=True) for _ in range(k)]
    for i in range(k):
        cols[i].data[i] = _G1
    remaining = list(range(k))
    us: List[Matrix] = []
    vs: List[Matrix] = []
    vecs = {i: cols[i] for i in remaining}

    def form(x: Matrix, y: Matrix):
        return (x.T * B * y)[0, 0]

    while remaining:
        iu = remaining.pop(0)
        u = vecs[iu]
        iw = None
        for j in remaining:
            if form(u, vecs[j]) != 0:
                iw = j
                break
        if iw is None:
            raise AssertionError("nondegenerate form produced an isotropic leftover")
        remaining.remove(iw)
        v = vecs[iw].scale(_G1 / form(u, vecs[iw]))
        us.append(u)
        vs.append(v)
        for j in remaining:
            x = vecs[j]
            x = x + u.scale(form(v, x)) - v.scale(form(u, x))
            vecs[j] = x
    r = len(us)
    D = Matrix.zeros(k, k, gaussian=True)
    for idx, u in enumerate(us):
        for i in range(k):
            D.data[i * k + idx] = u[i, 0]
    for idx, v in enumerate(vs):
        for i in range(k):
            D.data[i * k + r + idx] = v[i, 0]
    return D


# --------------------------------------------------------------------------
# classification: shared plumbing


def _complex_couplings(T1: Matrix, blocks: Sequence[WeightBlock]) -> List[Matrix]:
    """Straight couplings between consecutive blocks, as complex matrices."""
    coups = []
    for j in range(1, len(blocks)):
        bh, bk = blocks[j - 1], blocks[j]
        A = T1.block(bh.offset, bk.offset, bh.size, bk.size)
        Z1, Z2 = decompose(A)
        if not Z2.is_zero():
            raise AssertionError("straight coupling carries a twisted part")
        coups.append(Z1)
    return coups


def _twisted_block(T1: Matrix, bh: WeightBlock, bk: WeightBlock) -> Matrix:
    """Twisted coupling (or self pairing when bh is bk), as a complex matrix."""
    A = T1.block(bh.offset, bk.offset, bh.size, bk.size)
    Z1, Z2 = decompose(omega_matrix(bh.size // 2) * A)
    if not Z2.is_zero():
        raise AssertionError("twisted coupling carries a straight part")
    return Z1


def _strand_spans(strands, min_birth: int = 0) -> List[Tuple[int, int]]:
    return sorted((s.birth, s.death) for s in strands if s.birth >= min_birth)


def _check_couplings(eng: ChainEngine, expected: Sequence[Matrix], start: int = 1) -> None:
    for off, Wj in enumerate(expected):
        if eng.coup[start + off] != Wj:
            raise AssertionError(
                "reduced coupling %d differs from the canonical record" % (start + off)
            )


def _order_and_extract(eng: ChainEngine, override=None):
    strands = eng.extract_strands()
    eng.apply_canonical_orders(eng.canonical_orders(strands, override))
    return eng.extract_strands()


# --------------------------------------------------------------------------
# regime reductions


def _reduce_gt_half(alg: LieAlgebraN2, blocks: Sequence[WeightBlock]):
    coups = _complex_couplings(alg.T1, blocks)
    eng = ChainEngine(coups)
    eng.backward_echelon()
    eng.clear_all()
    strands = _order_and_extract(eng)
    fam = make_alpha_gt_half(blocks[0].alpha, _strand_spans(strands))
    _check_couplings(eng, fam.W)
    return fam, eng.real_transform(), eng.steps


def _reduce_half(alg: LieAlgebraN2, blocks: Sequence[WeightBlock]):
    c0 = blocks[0].size // 2
    Hhat = _twisted_block(alg.T1, blocks[0], blocks[0])
    if Hhat.T != -Hhat:
        raise AssertionError("bottom pairing is not skew")
    if len(blocks) == 1:
        rh = reduce_H(Hhat, None)
        fam = make_alpha_half(rh.h0, [], rh.r)
        steps = (Step("right", 0, rh.transform, "reduce the bottom pairing"),)
        return fam, real_form(rh.transform), steps
    coups = _complex_couplings(alg.T1, blocks)
    eng = ChainEngine(coups, H=Hhat)
    eng.backward_echelon()
    eng.clear_all()
    strands = _order_and_extract(eng)
    by0 = {s.slots[0]: s for s in strands if s.birth == 0}
    deaths = [by0[i].death if i in by0 else 0 for i in range(c0)]
    if deaths != sorted(deaths, reverse=True):
        raise AssertionError("bottom slots not in death order after layout")
    rh = reduce_H(eng.H, eng.coup[1])
    eng.apply(0, rh.transform, "reduce the bottom pairing")
    fam = make_alpha_half(
        rh.h0, [dd for dd in deaths if dd > 0], rh.r, _strand_spans(strands, 1)
    )
    cH = Matrix.zeros(c0, c0, gaussian=True)
    if fam.s:
        cH = cH.with_block(0, 0, fam.H0)
    if fam.r:
        cH = cH.with_block(fam.s, fam.s, _sigma(fam.r))
    if eng.H != cH:
        raise AssertionError("bottom pairing did not land on the canonical block")
    _check_couplings(eng, fam.W)
    return fam, eng.real_transform(), eng.steps


def _reduce_lt_half(alg: LieAlgebraN2, blocks: Sequence[WeightBlock]):
    a = blocks[0].alpha
    vset = sorted(
        (b for b in blocks if (b.alpha + a).denominator == 1), key=lambda b: -b.alpha
    )
    wset = sorted(
        (b for b in blocks if (b.alpha - a).denominator == 1), key=lambda b: b.alpha
    )
    disp = vset + wset
    l1 = len(vset)
    coups: List[Matrix] = []
    flags: List[bool] = []
    for j in range(1, len(disp)):
        if j == l1:
            coups.append(_twisted_block(alg.T1, disp[j - 1], disp[j]))
            flags.append(True)
        else:
            coups.append(_complex_couplings(alg.T1, disp[j - 1 : j + 1])[0])
            flags.append(False)
    eng = ChainEngine(coups, omega_flags=flags)
    eng.backward_echelon()
    eng.clear_all()
    strands = _order_and_extract(eng)
    fam = make_alpha_lt_half(a, l1, _strand_spans(strands))
    _check_couplings(eng, tuple(fam.V) + ((fam.S,) if fam.S is not None else ()) + tuple(fam.W))
    # the engine works in display order; rebuild the block transform in
    # the sorted coordinate order
    n = alg.n
    X = Matrix.zeros(n, n)
    for dj, blk in enumerate(disp):
        X = X.with_block(blk.offset, blk.offset, real_form(eng.X[dj]))
    return fam, X, eng.steps


# ----- the zero-weight regime and its real coupling ------------------------


@dataclass
class _Band:
    """One settled row group of the real coupling.

    kind "l": one row pinned at `pair`; kind "t": two rows whose covectors
    at `pair` read (i, 1); kind "s": the same two rows after a twisted
    leftover attached them to `mate`, where they read (1, i).
    """

    kind: str
    rows: Tuple[int, ...]
    pair: int
    mate: Optional[int] = None


def _kappa(d: int) -> Tuple[int, int]:
    """Order key of a lifetime class. Column donations of the real
    coupling only run toward later keys; equal keys are free both ways."""
    return (0, d) if d % 2 else (1, -d)


def _cov(W0: Matrix, r: int, p: int) -> GaussianRational:
    return GaussianRational(W0[r, 2 * p], W0[r, 2 * p + 1])


def _pair_block(W0: Matrix, rows: Sequence[int], pair: int) -> Matrix:
    cols = [2 * pair, 2 * pair + 1]
    return W0.submatrix(rows, cols)


def _diag_pair_op(c1: int, pair: int, z: GaussianRational) -> Matrix:
    Y = Matrix.identity(c1, gaussian=True)
    Y.data[pair * c1 + pair] = z
    return Y


def _entry_pair_op(c1: int, src: int, dst: int, z: GaussianRational) -> Matrix:
    Y = Matrix.identity(c1, gaussian=True)
    Y.data[src * c1 + dst] = z
    return Y


def _unit_col(M: Matrix, r: int, skip: Optional[int] = None) -> Optional[int]:
    hit = None
    for c in range(M.cols):
        if c != skip and M[r, c] != 0:
            if hit is not None:
                raise AssertionError("strand row carries two entries")
            hit = c
    return hit


def _entry_tube(
    eng: ChainEngine, src: int, dst: int, z: GaussianRational, note: str, start: int = 1
) -> None:
    """Slot donation dst += src*z at block `start`, chased upward.

    Each stage knocks one entry into the next coupling; the mirrored
    donation cancels it there, and the chase ends when the source thread
    dies. A receiver dying first would strand the knocked entry, which is
    exactly the forbidden direction between lifetime classes.
    """
    b, s, d, w = start, src, dst, z
    while True:
        eng.apply(b, _entry_pair_op(eng.dims[b], s, d, w), note)
        note = ""
        if b == eng.L:
            return
        nxt = eng.coup[b + 1]
        us = _unit_col(nxt, s)
        if us is None:
            return
        v = nxt[d, us]
        if v == 0:
            return
        ud = _unit_col(nxt, d, skip=us)
        if ud is None:
            raise AssertionError("entry donation stranded at coupling %d" % (b + 1))
        b, s, d, w = b + 1, ud, us, -v


def _tube_scale(eng: ChainEngine, strand, z: GaussianRational, note: str) -> None:
    """Scale one strand by z at its first block and compensate down its
    whole life so every coupling keeps its exact 0/1 entries."""
    cur = z
    first = min(strand.slots)
    for b in range(first, strand.death + 1):
        Y = _diag_pair_op(eng.dims[b], strand.slots[b], cur)
        eng.apply(b, Y, note if b == first else "")
        cur = GaussianRational(1) / cur.conjugate()


def _tube_pair(eng: ChainEngine, sA, sB, M2: Matrix, note: str) -> None:
    """Apply a 2x2 change on two equal-death strands along their whole
    parallel run, compensating so couplings stay 0/1."""
    if sA.death != sB.death:
        raise AssertionError("tube operation needs equal deaths")
    cur = M2
    first = max(min(sA.slots), min(sB.slots))
    for b in range(first, sA.death + 1):
        d = eng.dims[b]
        a, bb = sA.slots[b], sB.slots[b]
        Y = Matrix.identity(d, gaussian=True)
        Y.data[a * d + a] = cur[0, 0]
        Y.data[a * d + bb] = cur[0, 1]
        Y.data[bb * d + a] = cur[1, 0]
        Y.data[bb * d + bb] = cur[1, 1]
        eng.apply(b, Y, note if b == first else "")
        cur = cur.dagger().inverse()


def _zero_reduce(eng: ChainEngine) -> List[_Band]:
    """Settle the real coupling into bands, one lifetime class at a time.

    Classes are visited in donation order, so every clearing move either
    stays inside one class or donates from an already settled pair into
    the running class. Within a class the open rows are echelonized; lone
    pivots become pinned rows, double pivots become swapped pairs, and the
    junk right of the pivots is spent by the case table below. Twisted
    leftovers that no settled pair can absorb either split an
    equal-lifetime pair into two pinned rows or attach a longer thread as
    a mixed band.
    """
    strands = eng.extract_strands()
    by1 = {s.slots[1]: s for s in strands if 1 in s.slots}
    d0 = eng.dims[0]
    c1 = eng.dims[1]
    death = {p: by1[p].death for p in range(c1)}
    classes: Dict[int, List[int]] = {}
    for p in range(c1):
        classes.setdefault(death[p], []).append(p)
    bands: List[_Band] = []
    host: Dict[int, _Band] = {}
    pinned: set = set()
    i_ = GaussianRational(0, 1)
    half = GaussianRational(Fraction(1, 2))

    def row_junk(band: _Band, e: int) -> Tuple[GaussianRational, ...]:
        W0 = eng.coup[1]
        return tuple(_cov(W0, r, e) for r in band.rows)

    def rowop(adds, note: str) -> None:
        # adds: (target row, source row, real coefficient) triples
        Y = Matrix.identity(d0)
        for tr, sr, cf in adds:
            Y.data[sr * d0 + tr] = cf
        eng.apply_real0(Y, note)

    def kill_l(band: _Band, e: int) -> None:
        (u,) = row_junk(band, e)
        if u != 0:
            _entry_tube(eng, band.pair, e, -u, "clear pair %d of a pinned row" % e)

    def kill_s(band: _Band, e: int) -> None:
        u1, u2 = row_junk(band, e)
        if u1 == 0 and u2 == 0:
            return
        z = (i_ * u1 - u2) * half
        zp = (i_ * u2 - u1) * half
        if z != 0:
            _entry_tube(eng, band.pair, e, z, "clear pair %d through a mixed band" % e)
        if zp != 0:
            _entry_tube(eng, band.mate, e, zp, "clear pair %d through a mixed band" % e)

    def straight_kill_t(band: _Band, e: int) -> GaussianRational:
        # spend the donatable (i, 1) component; report the twisted rest
        u1, u2 = row_junk(band, e)
        cO = (u2 - i_ * u1) * half
        if cO != 0:
            _entry_tube(eng, band.pair, e, -cO, "clear the plain part at pair %d" % e)
        u1, u2 = row_junk(band, e)
        if u2 != i_ * u1:
            raise AssertionError("leftover junk at pair %d is not pure twisted" % e)
        return u1

    def kill_t_at_l(band: _Band, single: _Band, e: int) -> None:
        u1, u2 = row_junk(band, e)
        if u1 == 0 and u2 == 0:
            return
        h = single.rows[0]
        adds = []
        if -u1.re - u2.im:
            adds.append((band.rows[0], h, -u1.re - u2.im))
        if -u2.re + u1.im:
            adds.append((band.rows[1], h, -u2.re + u1.im))
        if adds:
            rowop(adds, "absorb pair %d through its pinned row" % e)
        z = GaussianRational(-u1.im, -u2.im)
        if z != 0:
            _entry_tube(eng, band.pair, e, z, "clear the leftover at pair %d" % e)

    def kill_t_at_t(band: _Band, other: _Band, e: int) -> None:
        hi, ho = other.rows
        adds = []
        for tr, u in zip(band.rows, row_junk(band, e)):
            if u.im:
                adds.append((tr, hi, -u.im))
            if u.re:
                adds.append((tr, ho, -u.re))
        if adds:
            rowop(adds, "absorb pair %d through its swapped pair" % e)

    def kill_t_at_s(band: _Band, sv: _Band, e: int) -> None:
        tau = straight_kill_t(band, e)
        if tau == 0:
            return
        ri, ro = sv.rows
        other = sv.pair if e == sv.mate else sv.mate
        adds = []
        for tr, u in ((band.rows[0], tau), (band.rows[1], i_ * tau)):
            if e == sv.mate:
                ca, cb = -u.re, -u.im
            else:
                ca, cb = -u.im, -u.re
            if ca:
                adds.append((tr, ri, ca))
            if cb:
                adds.append((tr, ro, cb))
        rowop(adds, "absorb pair %d through a mixed band" % e)
        _entry_tube(
            eng,
            band.pair,
            other,
            tau.conjugate(),
            "compensate the mixed absorption at pair %d" % other,
        )

    for dd in sorted(classes, key=_kappa):
        Cp = sorted(classes[dd])
        ccols = [c for p in Cp for c in (2 * p, 2 * p + 1)]
        # settled bands spend their junk on the running class first
        for band in bands:
            for e in Cp:
                if band.kind == "l":
                    kill_l(band, e)
                elif band.kind == "s":
                    kill_s(band, e)
                else:
                    straight_kill_t(band, e)
        # echelon over the open rows of this class's columns
        free_rows = [r for r in range(d0) if r not in pinned]
        if free_rows:
            sub = eng.coup[1].submatrix(free_rows, ccols)
            Lm = _lower_echelon_transform(sub)
            if Lm != Matrix.identity(len(free_rows)):
                Y = Matrix.identity(d0)
                for fi, ri in enumerate(free_rows):
                    for fj, rj in enumerate(free_rows):
                        Y.data[rj * d0 + ri] = Lm[fi, fj]
                eng.apply_real0(Y, "echelon over the open rows")
        W0 = eng.coup[1]
        pivots: Dict[int, List[Tuple[int, int]]] = {}
        for r in free_rows:
            hit = next((c for c in ccols if W0[r, c] != 0), None)
            if hit is not None:
                pivots.setdefault(hit // 2, []).append((hit % 2, r))
        for p in Cp:
            if p not in pivots:
                continue
            W0 = eng.coup[1]
            got = sorted(pivots[p])
            if len(got) == 2:
                (_x, r_one), (_y, r_i) = got
                if _pair_block(W0, [r_i, r_one], p) != Matrix.from_rows(
                    [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
                ):
                    raise AssertionError("double pivot block is not exact")
                band = _Band("t", (r_i, r_one), p)
            else:
                rem, r = got[0]
                if rem == 1:
                    _tube_scale(
                        eng,
                        by1[p],
                        GaussianRational(0, -1),
                        "turn the covector at pair %d upright" % p,
                    )
                else:
                    aval = W0[r, 2 * p + 1]
                    if aval != 0:
                        _tube_scale(
                            eng,
                            by1[p],
                            GaussianRational(1) / GaussianRational(1, aval),
                            "normalize the covector at pair %d" % p,
                        )
                if _cov(eng.coup[1], r, p) != GaussianRational(1):
                    raise AssertionError("single pivot covector did not normalize")
                band = _Band("l", (r,), p)
            pinned.update(band.rows)
            host[p] = band
            bands.append(band)
        W0 = eng.coup[1]
        for r in free_rows:
            if r not in pinned and any(W0[r, c] != 0 for c in ccols):
                raise AssertionError("open row keeps entries after the class echelon")
        # spend junk right of the pivots, receivers left to right
        for e in Cp:
            eh = host.get(e)
            for band in bands:
                if e == band.pair or e == band.mate:
                    continue
                if all(u == 0 for u in row_junk(band, e)):
                    continue
                if band.kind == "l":
                    kill_l(band, e)
                elif band.kind == "s":
                    kill_s(band, e)
                elif eh is None:
                    straight_kill_t(band, e)
                elif eh.kind == "l":
                    kill_t_at_l(band, eh, e)
                else:
                    kill_t_at_t(band, eh, e)
        # twisted leftovers: latest class first, so absorbing against an
        # already claimed pair always donates in the allowed direction
        tcands = [b for b in bands if b.kind == "t"]
        tcands.sort(key=lambda b: (_kappa(death[b.pair]), b.pair), reverse=True)
        for band in tcands:
            W0 = eng.coup[1]
            left = [
                e
                for e in Cp
                if e != band.pair and any(u != 0 for u in row_junk(band, e))
            ]
            for e in list(left):
                he = host.get(e)
                if he is None:
                    continue
                if he.kind == "s":
                    kill_t_at_s(band, he, e)
                elif he.kind == "l":
                    kill_t_at_l(band, he, e)
                else:
                    raise AssertionError("twisted leftover at a swapped pair")
                left.remove(e)
            if not left:
                continue
            cstar = left[0]
            for ck in left[1:]:
                W0 = eng.coup[1]
                z = -(_cov(W0, band.rows[0], ck) / _cov(W0, band.rows[0], cstar))
                _entry_tube(
                    eng, cstar, ck, z, "consolidate twisted leftovers at pair %d" % ck
                )
            tau = _cov(eng.coup[1], band.rows[0], cstar)
            if _cov(eng.coup[1], band.rows[1], cstar) != i_ * tau:
                raise AssertionError("consolidated leftover is not pure twisted")
            _tube_scale(
                eng,
                by1[cstar],
                GaussianRational(1) / tau,
                "normalize the twisted leftover at pair %d" % cstar,
            )
            if death[cstar] == death[band.pair]:
                M2 = Matrix.from_rows(
                    [
                        [GaussianRational(0, Fraction(1, 2)), half],
                        [half, GaussianRational(0, Fraction(1, 2))],
                    ]
                )
                _tube_pair(
                    eng, by1[cstar], by1[band.pair], M2, "split an equal-lifetime pair"
                )
                _tube_scale(eng, by1[cstar], GaussianRational(0, -1), "upright the split row")
                _tube_scale(eng, by1[band.pair], GaussianRational(0, -1), "upright the split row")
                W0 = eng.coup[1]
                if (
                    _cov(W0, band.rows[0], cstar) != GaussianRational(1)
                    or _cov(W0, band.rows[1], band.pair) != GaussianRational(1)
                    or _cov(W0, band.rows[0], band.pair) != 0
                    or _cov(W0, band.rows[1], cstar) != 0
                ):
                    raise AssertionError("split rows did not land upright")
                l1 = _Band("l", (band.rows[0],), cstar)
                l2 = _Band("l", (band.rows[1],), band.pair)
                idx = bands.index(band)
                bands[idx : idx + 1] = [l1, l2]
                host[cstar] = l1
                host[band.pair] = l2
            else:
                band.kind = "s"
                band.mate = cstar
                host[cstar] = band
    return bands


def _reduce_zero(alg: LieAlgebraN2, blocks: Sequence[WeightBlock]):
    d0 = blocks[0].size
    W0 = alg.T1.block(blocks[0].offset, blocks[1].offset, d0, blocks[1].size)
    coups = [W0] + _complex_couplings(alg.T1, blocks[1:])
    eng = ChainEngine(coups, real_block0=True)
    eng.backward_echelon()
    eng.clear_all()
    bands = _zero_reduce(eng)
    eng.steps.append(
        Step("case", 1, None, "real coupling reduced", eng.coup[1].copy())
    )
    # bands: deaths drive the slot and row orders
    strands = eng.extract_strands()
    by1 = {s.slots[1]: s for s in strands if 1 in s.slots}
    c1 = eng.dims[1]
    singles = [(b.rows[0], b.pair) for b in bands if b.kind == "l"]
    svs: List[Tuple[Tuple[int, int], int, int]] = []  # (rows, straight, swapped)
    for b in bands:
        if b.kind != "s":
            continue
        if by1[b.mate].death > by1[b.pair].death:
            svs.append(((b.rows[0], b.rows[1]), b.mate, b.pair))
        else:
            svs.append(((b.rows[1], b.rows[0]), b.pair, b.mate))
    ts = [((b.rows[1], b.rows[0]), b.pair) for b in bands if b.kind == "t"]
    claimed = (
        {p for _r, p in singles}
        | {a for _rr, a, _b in svs}
        | {b for _rr, _a, b in svs}
        | {p for _rr, p in ts}
    )
    zpairs = [q for q in range(c1) if q not in claimed]
    for q in zpairs:
        if by1[q].death < 2:
            raise AssertionError("unpinned weight-1 pair with no life upstairs")
    zorder = sorted(zpairs, key=lambda q: (-by1[q].death, q))
    lorder = sorted(singles, key=lambda t: (-by1[t[1]].death, t[0]))
    sorder = sorted(svs, key=lambda t: (-by1[t[1]].death, -by1[t[2]].death, t[0]))
    torder = sorted(ts, key=lambda t: (-by1[t[1]].death, t[0]))
    order1 = (
        zorder
        + [p for _r, p in lorder]
        + [a for _rr, a, _b in sorder]
        + [p for _rr, p in torder]
        + [b for _rr, _a, b in sorder]
    )
    strands = _order_and_extract(eng, {1: order1})
    # rows into band order
    row_target: List[int] = []
    for r, _p in lorder:
        row_target.append(r)
    for (r1, r2), _a, _b in sorder:
        row_target += [r1, r2]
    for (r1, r2), _p in torder:
        row_target += [r1, r2]
    if row_target != list(range(d0)):
        Y = Matrix.zeros(d0, d0)
        for new, old in enumerate(row_target):
            Y.data[old * d0 + new] = Fraction(1)
        eng.apply_real0(Y, "band order of the zero-block rows")
    by1 = {s.slots[1]: s for s in strands if 1 in s.slots}
    fam = make_alpha_zero(
        [by1[p].death for p in range(len(zorder), len(zorder) + len(lorder))],
        [
            (by1[len(zorder) + len(lorder) + k].death,
             by1[len(zorder) + len(lorder) + len(sorder) + len(torder) + k].death)
            for k in range(len(sorder))
        ],
        [by1[len(zorder) + len(lorder) + len(sorder) + m].death for m in range(len(torder))],
        [by1[q].death for q in range(len(zorder))],
        [(s.birth, s.death) for s in strands if s.birth >= 2],
    )
    if eng.coup[1] != fam.W0:
        raise AssertionError("reduced real coupling differs from the canonical record")
    _check_couplings(eng, fam.W, start=2)
    return fam, eng.real_transform(), eng.steps


# --------------------------------------------------------------------------
# the fixed-center kinds


def _classify_beta_zero(alg: LieAlgebraN2, w: TorusWeights) -> BetaZero:
    part = detect_T_decomposable(alg, w)
    if part is not None:
        raise DecomposableError(part)
    if any(a != 1 for a in w.alphas):
        raise AssertionError("connected fixed-center forms must share one speed")
    inv = pencil_invariants(alg)
    diag = ["minimal indices %s" % (sorted(inv.minimal_indices),)] + [
        "divisor (%s, %d)" % (d.root, d.size) for d in inv.divisors
    ]
    idx = sorted(inv.minimal_indices)
    divs = list(inv.divisors)
    fam: Optional[BetaZero] = None
    if idx and not divs:
        if len(idx) == 2 and idx[0] == idx[1] and idx[0] >= 1:
            fam = make_beta_zero("strip", idx[0])
    elif divs and not idx:
        roots = {d.root for d in divs}
        sizes = [d.size for d in divs]
        if len(roots) == 1 and len(set(sizes)) == 1:
            root = roots.pop()
            if root == INF or isinstance(root, tuple):
                raise NotATheoremInstanceError(
                    "the pencil eigenvalue is infinite or irrational; outside the "
                    "canonical list over the rationals",
                    diag,
                )
            if isinstance(root, GaussianRational):
                if len(divs) == 2:
                    fam = make_beta_zero("jordan", sizes[0], root)
            else:
                if len(divs) == 4:
                    fam = make_beta_zero("jordan", sizes[0], Fraction(root))
    if fam is None:
        raise NotATheoremInstanceError(
            "pencil invariants match no single canonical member; the pair likely "
            "decomposes only after a basis change",
            diag,
        )
    canon, _cw = build_family(fam)
    if canon.n != alg.n or not invariants_equal(pencil_invariants(canon), inv):
        raise NotATheoremInstanceError(
            "pencil invariants match no canonical member exactly", diag
        )
    return fam


# --------------------------------------------------------------------------
# dispatch and entry points


def _dispatch_regime(alphas: List[Fraction]) -> str:
    a0 = alphas[0]
    diag = ["block speeds %s" % (", ".join(str(a) for a in alphas),)]
    if a0 == 0:
        want = [Fraction(k) for k in range(len(alphas))]
        if alphas != want or len(alphas) < 2:
            raise NotATheoremInstanceError(
                "a zero-speed block demands the unbroken integer ladder 0..l", diag
            )
        return "zero"
    if a0 == Fraction(1, 2):
        want = [Fraction(1, 2) + k for k in range(len(alphas))]
        if alphas != want:
            raise NotATheoremInstanceError(
                "a speed-1/2 block demands the unbroken ladder 1/2..l+1/2", diag
            )
        return "half"
    if a0 > Fraction(1, 2):
        want = [a0 + k for k in range(len(alphas))]
        if alphas != want:
            raise NotATheoremInstanceError(
                "speeds above 1/2 must form a single unbroken ladder", diag
            )
        return "gt"
    wset = [a for a in alphas if (a - a0).denominator == 1]
    vset = [a for a in alphas if (a + a0).denominator == 1]
    if sorted(wset + vset) != alphas:
        raise NotATheoremInstanceError(
            "speeds must lie on the two ladders k+alpha and k-alpha", diag
        )
    if wset != [a0 + k for k in range(len(wset))]:
        raise NotATheoremInstanceError(
            "the ascending ladder must be unbroken from alpha", diag
        )
    if vset != [1 - a0 + k for k in range(len(vset))]:
        raise NotATheoremInstanceError(
            "the descending ladder must be unbroken from 1-alpha", diag
        )
    return "lt"


def _classify_full(alg: LieAlgebraN2, w: TorusWeights):
    if w.n != alg.n:
        raise TorusError("weight count does not match the algebra dimension")
    if not is_type_n2(alg):
        raise StructureError(
            "the forms do not span a two-dimensional center with trivial common kernel"
        )
    if not check_torus_derivation(alg, w):
        raise NotATheoremInstanceError(
            "the given speeds do not rotate this algebra",
            ["the derivation identities fail"],
        )
    alg0 = alg
    steps: List[Step] = []
    norm = normalize_weights(w)
    pre: Optional[Matrix] = None
    if norm.permutation != tuple(range(w.m)):
        pre = plane_permutation_matrix(w, norm.permutation)
        alg = apply_basis_change(alg, pre)
        steps.append(Step("permute", -1, pre, "sort planes by speed"))
    w = norm.weights
    if validate_block_support(alg, w):
        raise AssertionError("support violations despite valid derivation identities")
    if w.beta == 0:
        fam = _classify_beta_zero(alg, w)
        canon, _cw = build_family(fam)
        X = pre if pre is not None else Matrix.identity(alg.n)
        report = EchelonReport(w, X, False, tuple(steps))
        return fam, canon, report
    blocks = weight_blocks(w)
    regime = _dispatch_regime([b.alpha for b in blocks])
    if regime == "zero":
        fam, Xb, st = _reduce_zero(alg, blocks)
    elif regime == "half":
        fam, Xb, st = _reduce_half(alg, blocks)
    elif regime == "gt":
        fam, Xb, st = _reduce_gt_half(alg, blocks)
    else:
        fam, Xb, st = _reduce_lt_half(alg, blocks)
    steps.extend(st)
    X = pre * Xb if pre is not None else Xb
    canon, cw = build_family(fam)
    if cw != w:
        raise AssertionError("canonical weights disagree with the normalized input")
    if alg0.T1.congruence(X) != canon.T1 or alg0.T2.congruence(X) != canon.T2:
        raise AssertionError(
            "accumulated transform does not carry the forms onto the canonical member"
        )
    d0m = partial0(w)
    if d0m * Xb != Xb * d0m:
        raise AssertionError("block transform does not commute with the rotation")
    return fam, canon, EchelonReport(w, X, True, tuple(steps))


def classify(alg: LieAlgebraN2, w: TorusWeights) -> Tuple[TheoremFamily, EchelonReport]:
    """Identify the canonical family member of (alg, w).

    Returns the family record and a report with the accumulated basis
    change. Raises DecomposableError when the forms split, StructureError
    when the input is not of the right commutator type, TorusError when
    the weights are trivial or mismatched, and NotATheoremInstanceError
    when the data is genuine but matches no canonical member.
    """
    fam, _canon, report = _classify_full(alg, w)
    return fam, report


def echelon_reduce(
    alg: LieAlgebraN2, w: TorusWeights
) -> Tuple[LieAlgebraN2, EchelonReport]:
    """Reduce (alg, w) onto its canonical member by an explicit basis change.

    Works for a moving center; a fixed center is classified by invariants
    only and raises TorusError here."""
    fam, canon, report = _classify_full(alg, w)
    if not report.transform_complete:
        raise TorusError(
            "a fixed center is classified by pencil invariants; no echelon "
            "reduction is defined"
        )
    return canon, report
