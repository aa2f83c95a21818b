"""Generic identifiability of dynamic networks under partial excitation and measurement."""

__version__ = "0.1.0"

from .emp import Emp, NecessaryViolation, ViolationKind, cardinality_bounds, full_emp, necessary_check
from .graph import NetworkPattern, NodeClassification, PatternError, classify, in_neighbors, out_neighbors, reverse
from .identifiability import (
    IdentVerdict,
    generic_identifiability,
    jacobian,
    theorem41_emp,
    theorem41_structural_check,
    theorem42_emp,
)
from .instancing import NumericInstance, check_identities, dependence_witness, sample_instance
from .search import OracleConfig, SearchResult, find_minimal_emp, validate_emp

__all__ = [
    "Emp",
    "IdentVerdict",
    "NecessaryViolation",
    "NetworkPattern",
    "NodeClassification",
    "NumericInstance",
    "OracleConfig",
    "PatternError",
    "SearchResult",
    "ViolationKind",
    "cardinality_bounds",
    "check_identities",
    "classify",
    "dependence_witness",
    "find_minimal_emp",
    "full_emp",
    "generic_identifiability",
    "in_neighbors",
    "jacobian",
    "necessary_check",
    "out_neighbors",
    "reverse",
    "sample_instance",
    "theorem41_emp",
    "theorem41_structural_check",
    "theorem42_emp",
    "validate_emp",
]
