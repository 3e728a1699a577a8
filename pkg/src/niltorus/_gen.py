"""Seeded random canonical records and weight-preserving scrambles.

Everything here is deterministic in the supplied random.Random, so the
same seed reproduces the same instance byte for byte.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .algebra_core import LieAlgebraN2, StructureError
from .classifier import (
    TheoremFamily,
    build_family,
    make_alpha_gt_half,
    make_alpha_half,
    make_alpha_lt_half,
    make_alpha_zero,
    make_beta_zero,
)
from .exact_linalg import GaussianRational, Matrix
from .realform import real_form
from .torus_action import TorusWeights, apply_basis_change, weight_blocks

__all__ = ["KINDS", "RandomInstance", "random_record", "random_instance", "scramble_transform"]

KINDS = ("beta_zero", "alpha_zero", "alpha_gt_half", "alpha_half", "alpha_lt_half")

_LT_SPEEDS = (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5))
_GT_SPEEDS = (Fraction(2, 3), Fraction(3, 4), Fraction(1), Fraction(3, 2))


def _random_real_gl(rng: random.Random, k: int) -> Matrix:
    # P * L * U with unit triangular factors keeps entries small and the
    # product exactly invertible.
    perm = list(range(k))
    rng.shuffle(perm)
    P = Matrix.permutation(perm)
    L = Matrix.identity(k)
    U = Matrix.identity(k)
    for r in range(k):
        U.data[r * k + r] = Fraction(rng.choice([1, -1, 2]), rng.choice([1, 2]))
        for c in range(r):
            L.data[r * k + c] = Fraction(rng.randint(-2, 2))
            U.data[c * k + r] = Fraction(rng.randint(-2, 2))
    return P * L * U


def _rand_complex(rng: random.Random) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-1, 1)), Fraction(rng.randint(-1, 1)))


def _random_complex_gl(rng: random.Random, k: int) -> Matrix:
    perm = list(range(k))
    rng.shuffle(perm)
    P = Matrix.zeros(k, k, gaussian=True)
    for new, old in enumerate(perm):
        P.data[old * k + new] = GaussianRational(1)
    L = Matrix.identity(k, gaussian=True)
    U = Matrix.identity(k, gaussian=True)
    units = [
        GaussianRational(1),
        GaussianRational(-1),
        GaussianRational(0, 1),
        GaussianRational(1, 1),
        GaussianRational(Fraction(1, 2)),
    ]
    for r in range(k):
        U.data[r * k + r] = rng.choice(units)
        for c in range(r):
            L.data[r * k + c] = _rand_complex(rng)
            U.data[c * k + r] = _rand_complex(rng)
    return P * L * U


def _spans(rng: random.Random, count: int, lo: int, hi: int) -> List[Tuple[int, int]]:
    out = []
    for _ in range(count):
        a = rng.randint(lo, hi - 1)
        out.append((a, rng.randint(a + 1, hi)))
    return out


def _try_zero(rng: random.Random) -> TheoremFamily:
    l = rng.randint(1, 3)
    zd = [rng.randint(2, l) for _ in range(rng.randint(0, 2))] if l >= 2 else []
    ld = [rng.randint(1, l) for _ in range(rng.randint(0, 2))]
    sp = []
    if l >= 2 and rng.random() < 0.5:
        dO = rng.randint(1, l - 1)
        sp.append((rng.randint(dO + 1, l), dO))
    td = [rng.randint(1, l) for _ in range(rng.randint(0, 2))]
    ch = _spans(rng, rng.randint(0, 1), 2, l) if l >= 3 else []
    return make_alpha_zero(ld, sp, td, zd, ch)


def _rand_skew(rng: random.Random, s: int) -> Matrix:
    H0 = Matrix.zeros(s, s, gaussian=True)
    for i in range(s):
        for j in range(i + 1, s):
            if rng.random() < 0.4:
                continue
            z = _rand_complex(rng)
            H0.data[i * s + j] = z
            H0.data[j * s + i] = -z
    return H0


def _try_half(rng: random.Random) -> TheoremFamily:
    if rng.random() < 0.15:
        return make_alpha_half(Matrix.zeros(0, 0, gaussian=True), [], rng.randint(1, 2))
    top = rng.randint(1, 3)
    s = rng.randint(0, 4)
    deaths = sorted((rng.randint(1, top) for _ in range(s)), reverse=True)
    later = _spans(rng, rng.randint(0, 1), 1, top) if top >= 2 else []
    return make_alpha_half(_rand_skew(rng, s), deaths, rng.randint(0, 2), later)


def _try_lt(rng: random.Random) -> TheoremFamily:
    alpha = rng.choice(_LT_SPEEDS)
    nb = rng.randint(2, 4)
    l1 = rng.randint(0, nb - 1)
    spans = _spans(rng, rng.randint(max(1, nb - 1), nb + 1), 0, nb - 1)
    return make_alpha_lt_half(alpha, l1, spans)


def _try_gt(rng: random.Random) -> TheoremFamily:
    alpha = rng.choice(_GT_SPEEDS)
    l = rng.randint(1, 3)
    spans = _spans(rng, rng.randint(max(1, l), l + 2), 0, l)
    return make_alpha_gt_half(alpha, spans)


def _try_beta_zero(rng: random.Random) -> TheoremFamily:
    which = rng.randrange(3)
    if which == 0:
        return make_beta_zero("strip", rng.randint(1, 3))
    if which == 1:
        q = Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3]))
        return make_beta_zero("jordan", rng.randint(2, 3), q)
    q = GaussianRational(Fraction(rng.randint(-2, 2)), Fraction(rng.randint(1, 2)))
    return make_beta_zero("jordan", rng.randint(1, 2), q)


_MAKERS = {
    "beta_zero": _try_beta_zero,
    "alpha_zero": _try_zero,
    "alpha_gt_half": _try_gt,
    "alpha_half": _try_half,
    "alpha_lt_half": _try_lt,
}


def random_record(rng: random.Random, kind: Optional[str] = None) -> TheoremFamily:
    """A random valid canonical record, retrying shapes whose random
    lifetimes left a weight block empty."""
    name = kind if kind is not None else rng.choice(KINDS)
    maker = _MAKERS[name]
    for _ in range(200):
        try:
            return maker(rng)
        except StructureError:
            continue
    raise RuntimeError("no valid record found for kind %r" % name)


def scramble_transform(w: TorusWeights, rng: random.Random) -> Matrix:
    """A random basis change commuting with the rotation: a real change on
    the fixed block, a complex one on every moving block."""
    X = Matrix.identity(w.n)
    for b in weight_blocks(w):
        if b.alpha == 0:
            M = _random_real_gl(rng, b.size)
        else:
            M = real_form(_random_complex_gl(rng, b.size // 2))
        X = X.with_block(b.offset, b.offset, M)
    return X


@dataclass(frozen=True)
class RandomInstance:
    record: TheoremFamily
    algebra: LieAlgebraN2
    weights: TorusWeights
    scramble: Optional[Matrix]


def random_instance(
    rng: random.Random, kind: Optional[str] = None, scrambled: bool = True
) -> RandomInstance:
    fam = random_record(rng, kind)
    alg, w = build_family(fam)
    if not scrambled:
        return RandomInstance(fam, alg, w, None)
    X = scramble_transform(w, rng)
    return RandomInstance(fam, apply_basis_change(alg, X), w, X)
