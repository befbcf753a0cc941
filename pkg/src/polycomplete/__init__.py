"""
polycomplete: Eigenstructure of Polynomial Matrices and Row Completions

Exact computation of the complete eigenstructure of a polynomial matrix
(invariant factors, partial multiplicities of infinity, column and row minimal
indices) and decision procedures for completing it with new rows so that the
result has prescribed invariants.

Key Features:

- Exact arithmetic over the rationals and GF(p), with the Index Sum checked on
  every extraction
- Feasibility predicates for ten combinations of prescribed invariants, each
  reporting every condition with both sides
- Chain constructions that turn a feasible partial prescription into a full one
- An exhaustive completion search over small finite fields that cross-checks
  every verdict
"""

import importlib
import typing
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("polycomplete")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

from .exceptions import (
    AssemblyMismatchError,
    BudgetExceededError,
    CallbackError,
    DimensionMismatchError,
    FieldObstructionError,
    GradeExceededError,
    IndexSumViolationError,
    InvalidInputError,
    InvalidPrescriptionError,
    LengthMismatchError,
    NotFeasibleError,
    PolyCompleteError,
    SentinelArithmeticError,
    ZeroPolynomialError,
)

__all__ = [
    "PolyCompleteError",
    "InvalidInputError",
    "InvalidPrescriptionError",
    "LengthMismatchError",
    "DimensionMismatchError",
    "GradeExceededError",
    "ZeroPolynomialError",
    "SentinelArithmeticError",
    "FieldObstructionError",
    "NotFeasibleError",
    "IndexSumViolationError",
    "AssemblyMismatchError",
    "BudgetExceededError",
    "CallbackError",
    "PolyMatrix",
    "Eigenstructure",
    "eigenstructure",
    "Prescription",
    "Variant",
    "check",
    "OracleConfig",
    "enumerate_completions",
    "verify_predicate",
]


# Map the public names to their sub-module locations
_LOOKUP = {
    "PolyMatrix": "polycomplete.structmat",
    "Eigenstructure": "polycomplete.structmat",
    "eigenstructure": "polycomplete.structmat",
    "Prescription": "polycomplete.completion",
    "Variant": "polycomplete.completion",
    "check": "polycomplete.completion",
    "OracleConfig": "polycomplete.oracle",
    "enumerate_completions": "polycomplete.oracle",
    "verify_predicate": "polycomplete.oracle",
}


def __getattr__(name: str) -> typing.Any:
    """Import public components from their sub-packages on first access.

    Raises:
        AttributeError: If the requested component is not found in _LOOKUP.
    """
    if name in _LOOKUP:
        module = importlib.import_module(_LOOKUP[name], __package__)
        return getattr(module, name)

    raise AttributeError(f"module {__name__} has no attribute {name}")


def __dir__():
    return sorted(list(globals().keys()) + list(_LOOKUP.keys()))
