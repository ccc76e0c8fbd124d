"""Exact-arithmetic tools for totally positive matrices."""

from .compound import CompoundIndexMap, compound
from .condensation import CondensationSequence, condensation_sequence, condense, sylvester_check
from .errors import (
    ConsistencyError,
    DomainError,
    HypothesisError,
    InvalidIndex,
    InvalidOrder,
    ParseError,
    ShapeError,
    TpkitError,
    UsageError,
)
from .exact import ExactMatrix, IndexSet, complement, determinant, minor, submatrix
from .hankel import hankel_from_sequence, is_positive_definite, is_tp_hankel, shifted_hankel, verify_theorem_c
from .netfact import FactorizationParams, assemble, factorize, generate_tp, lindstrom_minor, network_from_params
from .positivity import (
    PositivityVerdict,
    is_tn_k,
    is_tp2c,
    is_tp_k,
    singular_perturbation,
    tp2c_threshold,
    verify_theorem_a,
    verify_theorem_b,
    verify_theorem_d,
)
from .verify import verify_paper

__version__ = "0.1.0"
