"""Reduction engine for chains of coupled blocks.

A chain is a sequence of blocks 0..L with coupling matrices W_j joining
block j-1 to block j. Basis changes act per block; a change Y at block b
multiplies W_b on the right and hits W_{b+1} on the left, conjugated or
not depending on the coupling's type. The engine tracks couplings, an
optional bilinear block H on block 0, the accumulated transforms, and a
step log, and reduces every coupling to a 0/1 partial permutation.

Couplings are complex matrices; block 0 may instead be real, in which
case W_1 is a real matrix handled by the caller's own machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_linalg import GaussianRational, Matrix
from .realform import real_form


@dataclass
class Step:
    """One recorded operation of the reduction."""

    kind: str  # "left", "right", "permute", "scale", "case"
    block: int
    matrix: Optional[Matrix]
    note: str = ""
    snapshot: Optional[Matrix] = None


@dataclass
class Strand:
    """A single unit thread through consecutive couplings."""

    birth: int
    death: int
    slots: Dict[int, int] = field(default_factory=dict)  # block -> slot

    @property
    def interval(self) -> Tuple[int, int]:
        return (self.birth, self.death)


class ChainError(ValueError):
    pass


def _elementary(n: int, i: int, j: int, c) -> Matrix:
    m = Matrix.identity(n, gaussian=True)
    m.data[i * n + j] = m.data[i * n + j] + c
    return m


class ChainEngine:
    """Holds the chain state and applies block transforms consistently."""

    def __init__(
        self,
        couplings: List[Matrix],
        omega_flags: Optional[List[bool]] = None,
        real_block0: bool = False,
        H: Optional[Matrix] = None,
    ):
        # couplings[j-1] joins block j-1 to block j, j = 1..L
        self.L = len(couplings)
        self.coup: List[Optional[Matrix]] = [None] + list(couplings)
        self.omega: List[bool] = [False] + list(
            omega_flags or [False] * self.L
        )
        self.real0 = real_block0
        self.H = H  # complex, lives on block 0; real block 0 excludes H
        if real_block0 and H is not None:
            raise ChainError("H on a real block is not supported")
        self.steps: List[Step] = []
        # block dims (complex; block 0 real when real_block0)
        dims = []
        if self.L == 0:
            raise ChainError("empty chain")
        dims.append(self.coup[1].rows)
        for j in range(1, self.L + 1):
            w = self.coup[j].cols
            if j == 1 and real_block0:
                # the real coupling is written out in real coordinates
                if w % 2:
                    raise ChainError("real coupling must have even width")
                w //= 2
            dims.append(w)
        for j in range(2, self.L + 1):
            if self.coup[j].rows != dims[j - 1]:
                raise ChainError("coupling shapes do not chain")
        self.dims = dims
        if H is not None and (H.rows != dims[0] or H.cols != dims[0]):
            raise ChainError("H does not match block 0")
        # accumulated transforms
        self.X: List[Matrix] = []
        self.X.append(
            Matrix.identity(dims[0], gaussian=not real_block0)
        )
        for b in range(1, self.L + 1):
            self.X.append(Matrix.identity(dims[b], gaussian=True))

    # ---------------------------------------------------------- primitives
    def apply(self, b: int, Y: Matrix, note: str = "") -> None:
        """Basis change Y at block b (complex; use apply_real0 for a real 0)."""
        if b == 0 and self.real0:
            raise ChainError("block 0 is real; use apply_real0")
        if b >= 1:
            W = self.coup[b]
            if b == 1 and self.real0:
                self.coup[1] = W * real_form(Y)
            else:
                self.coup[b] = W * Y
        if b < self.L:
            Wn = self.coup[b + 1]
            if self.omega[b + 1]:
                self.coup[b + 1] = Y.T * Wn
            else:
                self.coup[b + 1] = Y.dagger() * Wn
        if b == 0 and self.H is not None:
            self.H = Y.T * self.H * Y
        self.X[b] = self.X[b] * Y
        if note:
            self.steps.append(Step("right" if b else "block0", b, Y, note))

    def apply_real0(self, Y: Matrix, note: str = "") -> None:
        """Real basis change at a real block 0: W_1 -> Y' W_1."""
        if not self.real0:
            raise ChainError("block 0 is complex; use apply")
        self.coup[1] = Y.T * self.coup[1]
        self.X[0] = self.X[0] * Y
        if note:
            self.steps.append(Step("left", 0, Y, note))

    def left_multiply(self, j: int, Lm: Matrix, note: str = "") -> None:
        """Row operation Lm on coupling j, realized at block j-1.

        For a twisted coupling the block transform is Lm', otherwise
        the conjugate transpose; either way coupling j becomes Lm*W_j."""
        if j == 1 and self.real0:
            self.apply_real0(Lm.T, note)
            return
        Y = Lm.T if self.omega[j] else Lm.dagger()
        self.apply(j - 1, Y, note)

    # ------------------------------------------------------ echelon passes
    def backward_echelon(self) -> None:
        """Bring every coupling to lower echelon form with cleared pivot
        columns, working from the last coupling to the first; damage
        flows into not-yet-processed couplings only."""
        for j in range(self.L, 0, -1):
            M = self.coup[j]
            Lm = _lower_echelon_transform(M)
            if not _is_identity(Lm):
                self.left_multiply(j, Lm, f"lower echelon of coupling {j}")

    def stage_clear(self, j: int) -> None:
        """Normalize pivots of coupling j and clear everything to the
        right of them by column operations at block j."""
        if j == 1 and self.real0:
            raise ChainError("coupling 1 is real; use the caller's machinery")
        M = self.coup[j]
        rows, cols = M.rows, M.cols
        # pivot = leftmost nonzero entry of each row
        pivot_of = {}
        for r in range(rows):
            for c in range(cols):
                if M[r, c] != 0:
                    pivot_of[r] = c
                    break
        # scale pivot columns so pivots are 1
        scale = Matrix.identity(cols, gaussian=True)
        dirty = False
        for r, c in pivot_of.items():
            p = M[r, c]
            if p != 1:
                scale.data[c * cols + c] = GaussianRational(1) / p
                dirty = True
        if dirty:
            self.apply(j, scale, f"normalize pivots of coupling {j}")
            M = self.coup[j]
        # Clear junk right of pivots, bottom row first. A donor column may
        # still hold junk belonging to a higher row; the op then smears it
        # further right in that row, and it is removed when its own row is
        # processed, so the sweep terminates with clean columns.
        for r in sorted(pivot_of, reverse=True):
            c = pivot_of[r]
            for cc in range(c + 1, cols):
                v = M[r, cc]
                if v == 0:
                    continue
                self.apply(
                    j,
                    _elementary(cols, c, cc, -v),
                    f"clear coupling {j} entry ({r},{cc})",
                )
                M = self.coup[j]
        for r, c in pivot_of.items():
            for rr in range(rows):
                expect = 1 if rr == r else 0
                if M[rr, c] != expect:
                    raise AssertionError(
                        f"pivot column {c} of coupling {j} is not clean"
                    )

    def clear_all(self, start: int = 1) -> None:
        for j in range(max(start, 2 if self.real0 else 1), self.L + 1):
            self.stage_clear(j)

    # ------------------------------------------------------------- strands
    def extract_strands(self) -> List[Strand]:
        """Read the strand structure off 0/1 partial-permutation couplings.

        With a real block 0 the strands live on blocks 1..L and births at
        block 1 are not distinguished by W_1 here (the caller interprets
        the real coupling separately)."""
        first = 1 if self.real0 else 0
        strands: List[Strand] = []
        owner: Dict[Tuple[int, int], Strand] = {}
        for b in range(first, self.L + 1):
            size = self.dims[b]
            for s in range(size):
                if (b, s) in owner:
                    continue
                st = Strand(birth=b, death=b, slots={b: s})
                strands.append(st)
                owner[(b, s)] = st
            if b == self.L:
                break
            W = self.coup[b + 1]
            for r in range(W.rows):
                target = None
                for c in range(W.cols):
                    v = W[r, c]
                    if v == 0:
                        continue
                    if v != 1 or target is not None:
                        raise ChainError(
                            f"coupling {b + 1} is not a 0/1 partial permutation"
                        )
                    target = c
                if target is not None:
                    st = owner[(b, r)]
                    st.death = b + 1
                    st.slots[b + 1] = target
                    owner[(b + 1, target)] = st
            # column sanity: each column hit at most once
            for c in range(W.cols):
                hits = sum(1 for r in range(W.rows) if W[r, c] != 0)
                if hits > 1:
                    raise ChainError(f"coupling {b + 1} has a doubled column")
        return strands

    # -------------------------------------------------------------- layout
    def canonical_orders(
        self,
        strands: List[Strand],
        override: Optional[Dict[int, List[int]]] = None,
    ) -> Dict[int, List[int]]:
        """Per block, the list of current slot indices in canonical order:
        newborn strands first (latest death first), then continuing
        strands in the order their parents appear in the previous block."""
        override = override or {}
        first = 1 if self.real0 else 0
        orders: Dict[int, List[int]] = {}
        by_slot: Dict[Tuple[int, int], Strand] = {}
        for st in strands:
            for b, s in st.slots.items():
                by_slot[(b, s)] = st
        for b in range(first, self.L + 1):
            if b in override:
                orders[b] = override[b]
                continue
            born = [
                s
                for s in range(self.dims[b])
                if by_slot[(b, s)].birth == b
            ]
            born.sort(key=lambda s: (-by_slot[(b, s)].death, s))
            cont = []
            if b > first:
                for parent in orders[b - 1]:
                    st = by_slot[(b - 1, parent)]
                    if st.death >= b:
                        cont.append(st.slots[b])
            orders[b] = born + cont
        return orders

    def apply_canonical_orders(self, orders: Dict[int, List[int]]) -> None:
        first = 1 if self.real0 else 0
        for b in range(first, self.L + 1):
            perm = orders[b]
            if perm == list(range(self.dims[b])):
                continue
            P = Matrix.zeros(self.dims[b], self.dims[b], gaussian=True)
            for new, old in enumerate(perm):
                P.data[old * self.dims[b] + new] = GaussianRational(1)
            self.apply(b, P, f"canonical slot order at block {b}")

    # ------------------------------------------------------------ assembly
    def real_transform(self) -> Matrix:
        """Block diagonal real matrix of the accumulated changes."""
        blocks = []
        if self.real0:
            blocks.append(self.X[0])
        else:
            blocks.append(real_form(self.X[0]))
        for b in range(1, self.L + 1):
            blocks.append(real_form(self.X[b]))
        return Matrix.diag(blocks)


def _lower_echelon_transform(M: Matrix) -> Matrix:
    """Left multiplier bringing M to lower echelon form with every pivot
    column cleared: reversed-row reduced echelon."""
    rows = M.rows
    gaussian = M.is_gaussian_matrix()
    rev = list(range(rows - 1, -1, -1))
    P = _perm_matrix(rev, gaussian=gaussian)
    flipped = M.submatrix(rev, range(M.cols))
    aug = flipped.hstack(Matrix.identity(rows, gaussian=gaussian))
    R, _ = aug.rref()
    Lrev = R.block(0, M.cols, rows, rows)
    # flip conjugation turns the reversed-row reduction into a lower one
    return P * Lrev * P


def _perm_matrix(perm: Sequence[int], gaussian: bool = False) -> Matrix:
    n = len(perm)
    m = Matrix.zeros(n, n, gaussian=gaussian)
    one = GaussianRational(1) if gaussian else Fraction(1)
    for j, i in enumerate(perm):
        m.data[i * n + j] = one
    return m


def _is_identity(m: Matrix) -> bool:
    if m.rows != m.cols:
        return False
    for i in range(m.rows):
        for j in range(m.cols):
            want = 1 if i == j else 0
            if m[i, j] != want:
                return False
    return True
