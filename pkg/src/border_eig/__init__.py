"""Eigenvalue-based solving of border-form algebraic systems."""

from .errors import (
    BorderEigError,
    EigenConvergenceError,
    LowerSetError,
    SchemaError,
    SizeLimitError,
    UnisolvenceError,
    UnknownRelationError,
)
from .indexsets import (
    BorderSet,
    LowerSet,
    border,
    random_lower_set,
    total_degree_set,
    validate_lower_set,
)
from .interp import interpolate, poisedness, system_from_nodes, vandermonde
from .matrices import build_family, build_matrix, commutation_report
from .spectral import Config, SolutionSet, criterion, eigen, semisimplicity, solve
from .system import (
    BorderSystem,
    eval_relation,
    monomial_eval,
    parse_system,
    residual,
    serialize_system,
)

__all__ = [
    "BorderEigError",
    "BorderSet",
    "BorderSystem",
    "Config",
    "EigenConvergenceError",
    "LowerSet",
    "LowerSetError",
    "SchemaError",
    "SizeLimitError",
    "SolutionSet",
    "UnisolvenceError",
    "UnknownRelationError",
    "border",
    "build_family",
    "build_matrix",
    "commutation_report",
    "criterion",
    "eigen",
    "eval_relation",
    "interpolate",
    "monomial_eval",
    "parse_system",
    "poisedness",
    "random_lower_set",
    "residual",
    "semisimplicity",
    "serialize_system",
    "solve",
    "system_from_nodes",
    "total_degree_set",
    "validate_lower_set",
    "vandermonde",
]
