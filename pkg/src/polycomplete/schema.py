"""
JSON models for problem files and command output.

Polynomials travel as ascending coefficient arrays: integers over GF(p),
integers or ``"num/den"`` strings over the rationals. Every model forbids
unknown keys, so a prescription carrying a field its variant does not use is
rejected before any predicate runs.
"""

import json
from pathlib import Path
from typing import Annotated, TypeAlias

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PositiveInt,
    ValidationError,
    model_validator,
)

from polycomplete.algebra.field import FieldSpec, PrimeField, RationalField
from polycomplete.algebra.homog import HomogFactor
from polycomplete.algebra.poly import make_poly
from polycomplete.common.validation import (
    NondecreasingTuple,
    NonNegInt,
    PartitionTuple,
    pretty_errors,
)
from polycomplete.completion.prescription import OPTIONAL_FIELDS, Prescription, Variant
from polycomplete.exceptions import InvalidInputError
from polycomplete.oracle.config import OracleConfig
from polycomplete.structmat.eigenstructure import Eigenstructure, eigenstructure
from polycomplete.structmat.matrix import PolyMatrix

Coefficients: TypeAlias = list[int | str]

Field_: TypeAlias = RationalField | PrimeField


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MatrixModel(_Strict):
    field: FieldSpec = Field(default_factory=RationalField)
    grade: NonNegInt
    rows: PositiveInt | None = None
    cols: PositiveInt | None = None
    entries: Annotated[list[list[Coefficients]], Field(min_length=1)]

    @model_validator(mode="after")
    def _shape(self) -> "MatrixModel":
        if self.rows is not None and self.rows != len(self.entries):
            raise ValueError(f"rows={self.rows} but {len(self.entries)} rows were given")
        if self.cols is not None and any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"every row must have cols={self.cols} entries")
        return self

    def to_matrix(self, field: Field_ | None = None) -> PolyMatrix:
        return PolyMatrix.from_coeffs(field or self.field, self.grade, self.entries)

    @classmethod
    def from_matrix(cls, P: PolyMatrix) -> "MatrixModel":
        return cls.model_validate(P.to_json())


class EigenstructureModel(_Strict):
    field: FieldSpec = Field(default_factory=RationalField)
    grade: NonNegInt
    alphas: list[Coefficients]
    es: NondecreasingTuple
    cmi: PartitionTuple = ()
    rmi: PartitionTuple = ()

    def to_eigenstructure(self, field: Field_ | None = None) -> Eigenstructure:
        field = field or self.field
        alphas = tuple(make_poly(field, a) for a in self.alphas)
        return Eigenstructure(field, self.grade, alphas, self.es, self.cmi, self.rmi)

    @classmethod
    def from_eigenstructure(cls, eig: Eigenstructure) -> "EigenstructureModel":
        return cls.model_validate(eig.to_json())


class HomogModel(_Strict):
    e: NonNegInt = 0
    alpha: Coefficients


class PrescriptionModel(_Strict):
    variant: Variant
    z: PositiveInt
    x: NonNegInt = 0
    f: NondecreasingTuple | None = None
    beta: list[Coefficients] | None = None
    gamma: list[HomogModel] | None = None
    d: PartitionTuple | None = None
    v: PartitionTuple | None = None

    @model_validator(mode="after")
    def _fields_match_variant(self) -> "PrescriptionModel":
        present = {name for name in OPTIONAL_FIELDS if getattr(self, name) is not None}
        if present != self.variant.required:
            raise ValueError(
                f"variant {self.variant.value} takes exactly {sorted(self.variant.required)}, "
                f"got {sorted(present)}"
            )
        return self

    def to_prescription(self, field: Field_) -> Prescription:
        beta = gamma = None
        if self.beta is not None:
            beta = tuple(make_poly(field, b) for b in self.beta)
        if self.gamma is not None:
            gamma = tuple(HomogFactor(g.e, make_poly(field, g.alpha)) for g in self.gamma)
        return Prescription(
            self.variant, self.z, self.x, f=self.f, beta=beta, gamma=gamma, d=self.d, v=self.v
        )

    @classmethod
    def from_prescription(cls, presc: Prescription) -> "PrescriptionModel":
        return cls.model_validate(presc.to_json())


class ProblemFile(_Strict):
    """
    A matrix (or its abstract eigenstructure), a prescription and search settings.

    Exactly one of ``matrix`` and ``eigenstructure`` must be given.
    """

    matrix: MatrixModel | None = None
    eigenstructure: EigenstructureModel | None = None
    prescription: PrescriptionModel | None = None
    oracle: OracleConfig | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "ProblemFile":
        if (self.matrix is None) == (self.eigenstructure is None):
            raise ValueError("give exactly one of 'matrix' and 'eigenstructure'")
        return self

    def field(self, override: Field_ | None = None) -> Field_:
        source = self.matrix if self.matrix is not None else self.eigenstructure
        return override or source.field

    def to_matrix(self, field: Field_ | None = None) -> PolyMatrix | None:
        return None if self.matrix is None else self.matrix.to_matrix(self.field(field))

    def base(self, field: Field_ | None = None, verbose: bool = False) -> Eigenstructure:
        """The eigenstructure being completed, extracted from the matrix when one is given."""
        if self.matrix is not None:
            return eigenstructure(self.to_matrix(field), verbose=verbose)
        return self.eigenstructure.to_eigenstructure(self.field(field))

    def to_prescription(self, field: Field_ | None = None) -> Prescription:
        """
        Raises:
            InvalidInputError: If the file has no prescription.
        """
        if self.prescription is None:
            raise InvalidInputError(
                "The problem file has no 'prescription'.\n"
                "💡 Hint: Add a prescription object with a 'variant' and the fields it needs."
            )
        return self.prescription.to_prescription(self.field(field))


def load_problem(path: str | Path) -> ProblemFile:
    """
    Read and validate a problem file.

    Raises:
        InvalidInputError: If the file cannot be read, is not JSON, or does
            not match the schema.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InvalidInputError(f"Cannot read problem file '{path}': {e}") from None
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"'{path}' is not valid JSON: {e}") from None
    try:
        return ProblemFile.model_validate(raw)
    except ValidationError as e:
        e.subtitle = f"problem file '{path.name}'"
        e.hint = "💡 Hint: See the files under samples/ for the expected layout."
        raise InvalidInputError(pretty_errors(e)) from None
