"""
Result types shared by the feasibility predicates and chain constructions.

A :class:`FeasibilityReport` records every condition a predicate evaluated,
in the order it evaluated them, with both sides of each comparison. The
verdict is the conjunction of the recorded conditions and is checked on
construction.
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import Poly

from polycomplete.algebra.homog import HomogFactor
from polycomplete.algebra.poly import format_poly, poly_to_json
from polycomplete.completion.prescription import Variant
from polycomplete.seqcomb.majorization import gen_majorize, majorize

Side = int | tuple[int, ...] | None


class ConditionResult(BaseModel):
    """One evaluated condition of a predicate."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str
    holds: bool
    lhs: Side = None
    rhs: Side = None
    relation: str = ""
    trace: tuple[int, ...] = ()
    detail: str = ""

    def format(self) -> str:
        mark = "✓" if self.holds else "✗"
        if self.lhs is None:
            body = self.detail
        else:
            body = f"{_show(self.lhs)} {self.relation} {_show(self.rhs)}"
            if self.detail:
                body += f" ({self.detail})"
        return f"{mark} {self.id}: {body}"


class FeasibilityReport(BaseModel):
    """
    Verdict of a completion predicate.

    Attributes:
        variant: The predicate that produced the report.
        feasible: Whether every condition holds.
        field_caveat: The verdict is feasible but sufficiency was only shown
            over algebraically closed fields; the chain construction decides
            over the working field.
        condition_results: Conditions in evaluation order.
        constants: Excess constants computed on the way, by name.
        aux_sequences: The ``column`` and ``row`` bounding sequences used by
            the majorization conditions.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    variant: Variant
    feasible: bool
    field_caveat: bool = False
    condition_results: tuple[ConditionResult, ...] = Field(default_factory=tuple)
    constants: dict[str, int] = Field(default_factory=dict)
    aux_sequences: dict[str, tuple[int, ...]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _consistent(self) -> "FeasibilityReport":
        if self.feasible != all(c.holds for c in self.condition_results):
            raise ValueError("feasible must equal the conjunction of the conditions")
        if self.field_caveat and not (
            self.feasible and any(v > 0 for v in self.constants.values())
        ):
            raise ValueError("a field caveat needs a feasible verdict and a positive excess")
        return self

    @classmethod
    def from_conditions(
        cls,
        variant: Variant,
        conditions: Sequence[ConditionResult],
        constants: dict[str, int] | None = None,
        aux_sequences: dict[str, tuple[int, ...]] | None = None,
        caveat_on: str | None = None,
    ) -> "FeasibilityReport":
        """Build a report whose verdict is the conjunction of ``conditions``.

        ``caveat_on`` names the constant whose positivity makes a feasible
        verdict depend on an algebraically closed field.
        """
        constants = constants or {}
        feasible = all(c.holds for c in conditions)
        caveat = feasible and caveat_on is not None and constants[caveat_on] > 0
        return cls(
            variant=variant,
            feasible=feasible,
            field_caveat=caveat,
            condition_results=tuple(conditions),
            constants=constants,
            aux_sequences=aux_sequences or {},
        )

    def condition(self, condition_id: str) -> ConditionResult:
        """Look up a condition by id.

        Raises:
            KeyError: If the predicate did not evaluate that condition.
        """
        for c in self.condition_results:
            if c.id == condition_id:
                return c
        raise KeyError(condition_id)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.condition_results if not c.holds)

    def to_json(self) -> dict:
        return self.model_dump(mode="json")

    def format(self) -> str:
        verdict = "feasible" if self.feasible else "infeasible"
        if self.field_caveat:
            verdict += " (over an algebraically closed field)"
        lines = [f"{self.variant.value}: {verdict}"]
        lines += [f"  {c.format()}" for c in self.condition_results]
        for name, value in self.constants.items():
            lines.append(f"  {name} = {value}")
        for name, seq in self.aux_sequences.items():
            lines.append(f"  {name} sequence = {_show(seq)}")
        return "\n".join(lines)


@dataclass(frozen=True)
class ChainConstruction:
    """
    A chain built from the proof of a sufficiency direction.

    Attributes:
        kind: ``beta`` (invariant factors), ``f`` (partial multiplicities of
            infinity) or ``gamma`` (homogeneous invariant factors).
        branch: ``positive`` when the excess constant is positive and a
            factor of intermediate degree ``w`` was inserted, ``nonpositive``
            when the last factor was enlarged instead.
        chain: The ``r + x`` constructed entries.
        g: Number of trailing base factors needed to cover the excess.
        h: Position of the inserted factor, counted from the shift g.
        w: Degree of the inserted factor.
        tau: The inserted factor, or the multiplier of the last factor.
    """

    kind: Literal["beta", "f", "gamma"]
    branch: Literal["positive", "nonpositive"]
    chain: tuple
    g: int | None = None
    h: int | None = None
    w: int | None = None
    tau: Poly | HomogFactor | int | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "branch": self.branch,
            "chain": [_entry_json(c) for c in self.chain],
            "g": self.g,
            "h": self.h,
            "w": self.w,
            "tau": None if self.tau is None else _entry_json(self.tau),
        }

    def format(self) -> str:
        head = f"{self.kind}-chain ({self.branch} branch"
        if self.g is not None:
            head += f", g={self.g}, h={self.h}, w={self.w}"
        head += ")"
        return f"{head}: {_show(tuple(_entry_str(c) for c in self.chain))}"


def compare(condition_id: str, lhs: int, rhs: int, relation: str) -> ConditionResult:
    """Evaluate ``lhs <relation> rhs`` for one of ``<=``, ``>=`` or ``==``."""
    holds = {"<=": lhs <= rhs, ">=": lhs >= rhs, "==": lhs == rhs}[relation]
    return ConditionResult(id=condition_id, holds=holds, lhs=lhs, rhs=rhs, relation=relation)


def structural(condition_id: str, failure: str | None) -> ConditionResult:
    """A yes/no condition; ``failure`` describes the first violation, if any."""
    return ConditionResult(
        id=condition_id, holds=failure is None, detail=failure or "holds"
    )


def generalized_majorization(
    condition_id: str, g: Sequence[int], d: Sequence[int], a: Sequence[int]
) -> ConditionResult:
    holds, trace = gen_majorize(g, d, a)
    return ConditionResult(
        id=condition_id,
        holds=holds,
        lhs=tuple(g),
        rhs=tuple(d) + tuple(a),
        relation="≺′",
        trace=trace,
        detail=f"bounded by {_show(tuple(d))} and {_show(tuple(a))}",
    )


def ordinary_majorization(
    condition_id: str, g: Sequence[int], a: Sequence[int]
) -> ConditionResult:
    return ConditionResult(
        id=condition_id, holds=majorize(g, a), lhs=tuple(g), rhs=tuple(a), relation="≺"
    )


def _entry_json(c):
    if isinstance(c, Poly):
        return poly_to_json(c)
    if isinstance(c, HomogFactor):
        return c.to_json()
    return c


def _entry_str(c) -> str:
    return format_poly(c) if isinstance(c, Poly) else str(c)


def _show(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(str(v) for v in value) + ")" if value else "∅"
    return str(value)
