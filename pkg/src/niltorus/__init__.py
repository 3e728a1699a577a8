"""Exact classification tools for 2-step nilpotent Lie algebras carrying
a circle of automorphisms.

The public surface re-exports the main types and operations; see the
individual modules for the machinery.
"""

from .exact_linalg import GaussianRational, Matrix, Rational, solve_linear
from .algebra_core import (
    AlternatingPair,
    LieAlgebraN2,
    StructureError,
    bracket,
    center_equals_commutator,
    commutator_dimension,
    direct_sum,
    from_brackets,
    from_pair,
    is_type_n2,
)
from .torus_action import (
    TorusError,
    TorusWeights,
    block_constraints,
    check_torus_derivation,
    derivation_matrix,
    exp_automorphism_check,
    normalize_weights,
    solve_all_derivations,
    solve_derivations_null_on_center,
    validate_block_support,
)

__version__ = "0.1.0"

__all__ = [
    "AlternatingPair",
    "GaussianRational",
    "LieAlgebraN2",
    "Matrix",
    "Rational",
    "StructureError",
    "TorusError",
    "TorusWeights",
    "block_constraints",
    "bracket",
    "center_equals_commutator",
    "check_torus_derivation",
    "commutator_dimension",
    "derivation_matrix",
    "direct_sum",
    "exp_automorphism_check",
    "from_brackets",
    "from_pair",
    "is_type_n2",
    "normalize_weights",
    "solve_all_derivations",
    "solve_derivations_null_on_center",
    "solve_linear",
    "validate_block_support",
]
