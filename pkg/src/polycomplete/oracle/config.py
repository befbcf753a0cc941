from typing import Any

from pydantic import BaseModel, ConfigDict, PositiveInt, field_validator

from polycomplete.common.validation import NonNegInt
from polycomplete.completion.prescription import Prescription
from polycomplete.structmat.matrix import PolyMatrix


class OracleConfig(BaseModel):
    """
    Settings of an exhaustive completion search.

    Attributes:
        z: Number of rows of the completion ``W``.
        degree_bound: Largest entry degree of ``W``; the grade of ``P`` when
            omitted. Only a search up to the grade decides sufficiency.
        budget: Largest number of enumerated coefficients, ``z * n * (bound + 1)``.
        override: Enumerate even when the budget is exceeded.
        n_jobs: Worker processes; ``1`` runs in-process and ``None`` uses
            every CPU.
        partitions: Number of disjoint index ranges the search space is cut into.
        show_progress: Display a progress bar while enumerating.
        target: Keep only the completions whose invariants project onto it.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    z: PositiveInt = 1
    degree_bound: NonNegInt | None = None
    budget: PositiveInt = 14
    override: bool = False
    n_jobs: PositiveInt | None = 1
    partitions: PositiveInt = 8
    show_progress: bool = False
    target: Any = None

    @field_validator("target")
    @classmethod
    def _check_target(cls, v: Any) -> Prescription | None:
        if v is not None and not isinstance(v, Prescription):
            raise ValueError(f"target must be a Prescription, got {type(v).__name__}")
        return v

    def bound_for(self, P: PolyMatrix) -> int:
        return P.grade if self.degree_bound is None else self.degree_bound
