"""
Compare predicate verdicts against an exhaustive completion search.

Three claims are checked for every prescription:

1. Necessity: an infeasible verdict means no completion reaches the target.
   Holds over any field and is checked on every search.
2. Sufficiency: a feasible verdict without a field caveat means some
   completion reaches the target. Only checked when the search covered every
   completion of degree up to the grade.
3. Caveats: a feasible verdict with a field caveat is reached exactly when
   the chain construction succeeds over the searched field. A completion that
   is reached although the construction is obstructed only logs a warning,
   since some other chain may realize it.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum

from loguru import logger
from more_itertools import unique_everseen

from polycomplete.common.logging_utils import log_info
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.completion.registry import predicate_registry
from polycomplete.completion.report import FeasibilityReport
from polycomplete.completion.witness import assemble_full
from polycomplete.exceptions import (
    AssemblyMismatchError,
    FieldObstructionError,
    InvalidPrescriptionError,
)
from polycomplete.oracle.config import OracleConfig
from polycomplete.oracle.enumerate import enumerate_completions
from polycomplete.oracle.result import OracleResult, Witness
from polycomplete.oracle.targets import candidate_targets
from polycomplete.structmat.eigenstructure import Eigenstructure
from polycomplete.structmat.matrix import PolyMatrix


class MismatchKind(str, Enum):
    NECESSITY = "necessity"
    SUFFICIENCY = "sufficiency"
    CONSTRUCTION = "construction"


@dataclass(frozen=True)
class Mismatch:
    """A disagreement between a predicate and the completion search."""

    kind: MismatchKind
    prescription: Prescription
    detail: str
    witness: Witness | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "prescription": self.prescription.to_json(),
            "detail": self.detail,
            "witness": self.witness.to_json() if self.witness else None,
        }

    def format(self) -> str:
        lines = [f"{self.kind.value} mismatch for {self.prescription.format()}", f"  {self.detail}"]
        if self.witness is not None:
            lines.append(f"  witness #{self.witness.index}:")
            lines.extend("    " + row for row in self.witness.W.format().splitlines())
        return "\n".join(lines)


@dataclass(frozen=True)
class Verification:
    """
    Outcome of comparing one prescription against the search.

    Attributes:
        prescription: The target.
        predicate: Name of the predicate that decided it.
        report: The predicate's report.
        witness: The first completion reaching the target, if any.
        exhausted: Whether the search covered every completion up to the grade.
        obstruction: Message of the field obstruction met by the chain
            construction, for caveat verdicts.
        mismatch: The disagreement found, if any.
    """

    prescription: Prescription
    predicate: str
    report: FeasibilityReport
    witness: Witness | None
    exhausted: bool
    obstruction: str | None = None
    mismatch: Mismatch | None = None

    @property
    def consistent(self) -> bool:
        return self.mismatch is None

    def to_json(self) -> dict:
        return {
            "prescription": self.prescription.to_json(),
            "predicate": self.predicate,
            "feasible": self.report.feasible,
            "field_caveat": self.report.field_caveat,
            "achieved": self.witness is not None,
            "witness": self.witness.to_json() if self.witness else None,
            "exhausted": self.exhausted,
            "obstruction": self.obstruction,
            "consistent": self.consistent,
            "mismatch": self.mismatch.to_json() if self.mismatch else None,
        }

    def format(self) -> str:
        verdict = "feasible" if self.report.feasible else "infeasible"
        if self.report.field_caveat:
            verdict += " (field caveat)"
        reached = f"reached by #{self.witness.index}" if self.witness else "not reached"
        lines = [
            f"{self.prescription.format()}",
            f"  predicate {self.predicate}: {verdict}; search: {reached}"
            f"{'' if self.exhausted else ' (degree-bounded search)'}",
        ]
        if self.obstruction:
            lines.append(f"  construction obstructed: {self.obstruction.splitlines()[0]}")
        lines.append("  consistent" if self.consistent else self.mismatch.format())
        return "\n".join(lines)


def _verify(
    base: Eigenstructure,
    presc: Prescription,
    reached: dict[Prescription, Witness],
    exhausted: bool,
) -> Verification:
    presc.fit(base)
    report, name = predicate_registry.evaluate(base, presc)
    witness = reached.get(presc)
    obstruction = None
    mismatch = None

    if not report.feasible:
        if witness is not None:
            mismatch = Mismatch(
                MismatchKind.NECESSITY,
                presc,
                f"{', '.join(report.failed)} failed, yet a completion reaches the target.",
                witness,
            )
    elif exhausted and report.field_caveat:
        try:
            assemble_full(base, presc)
        except FieldObstructionError as e:
            obstruction = str(e)
        except AssemblyMismatchError as e:
            mismatch = Mismatch(MismatchKind.CONSTRUCTION, presc, str(e), witness)

        if obstruction and witness is not None:
            logger.warning(
                "{} is reached by completion #{} although its constructed chain is "
                "obstructed over {}.",
                presc.format(),
                witness.index,
                base.field.label,
            )
        elif mismatch is None and obstruction is None and witness is None:
            mismatch = Mismatch(
                MismatchKind.CONSTRUCTION,
                presc,
                f"The chains construct over {base.field.label}, yet no completion "
                "reaches the target.",
            )
    elif exhausted and witness is None:
        mismatch = Mismatch(
            MismatchKind.SUFFICIENCY,
            presc,
            "Feasible without a field caveat, yet no completion reaches the target.",
        )

    if mismatch is not None:
        logger.debug("{}", mismatch.format())
    return Verification(presc, name, report, witness, exhausted, obstruction, mismatch)


def verify_predicate(
    P: PolyMatrix,
    presc: Prescription,
    cfg: OracleConfig | None = None,
    result: OracleResult | None = None,
    verbose: bool = False,
) -> Verification:
    """
    Compare the predicate's verdict on ``presc`` with the completion search.

    Args:
        P: The matrix being completed, over GF(p).
        presc: The target prescription; its ``z`` sets the rows searched.
        cfg: Search settings, used when ``result`` is not given.
        result: A finished search to reuse.
        verbose: Whether to log progress at INFO level.

    Returns:
        The comparison record; ``mismatch`` is set when a claim fails.

    Raises:
        BudgetExceededError: If the search exceeds its budget.
        InvalidPrescriptionError: If ``presc`` does not fit ``P`` or the
            reused search has another row count.
    """
    if result is None:
        cfg = (cfg or OracleConfig()).model_copy(update={"z": presc.z})
        result = enumerate_completions(P, cfg, verbose)
    elif result.z != presc.z:
        raise InvalidPrescriptionError(
            f"The search added {result.z} rows, but the prescription adds {presc.z}."
        )
    return _verify(result.base, presc, result.project(presc.variant), result.exhausted)


@dataclass(frozen=True)
class SweepReport:
    """Every comparison made on one search."""

    result: OracleResult
    verifications: tuple[Verification, ...] = field(default_factory=tuple)

    @property
    def mismatches(self) -> list[Mismatch]:
        return [v.mismatch for v in self.verifications if v.mismatch is not None]

    @property
    def consistent(self) -> bool:
        return not self.mismatches

    def counts(self) -> dict[str, dict[str, int]]:
        """Per variant: comparisons, feasible verdicts, reached targets and mismatches."""
        out: dict[str, dict[str, int]] = {}
        for v in self.verifications:
            row = out.setdefault(
                v.prescription.variant.value,
                {"checked": 0, "feasible": 0, "reached": 0, "mismatches": 0},
            )
            row["checked"] += 1
            row["feasible"] += v.report.feasible
            row["reached"] += v.witness is not None
            row["mismatches"] += v.mismatch is not None
        return out

    def to_json(self) -> dict:
        return {
            "candidates": self.result.candidates,
            "achieved": len(self.result.achieved),
            "exhausted": self.result.exhausted,
            "counts": self.counts(),
            "mismatches": [m.to_json() for m in self.mismatches],
        }

    def format(self) -> str:
        lines = [
            f"{len(self.result.achieved)} eigenstructures reached by "
            f"{self.result.candidates} completions"
        ]
        for variant, row in self.counts().items():
            lines.append(
                f"  {variant:8} checked={row['checked']} feasible={row['feasible']} "
                f"reached={row['reached']} mismatches={row['mismatches']}"
            )
        lines.extend(m.format() for m in self.mismatches)
        return "\n".join(lines)


def sweep(
    P: PolyMatrix,
    cfg: OracleConfig | None = None,
    variants: Iterable[Variant] | None = None,
    limit: int = 2000,
    verbose: bool = False,
) -> SweepReport:
    """
    Search once and compare every variant on reached and candidate targets.

    Reached targets test necessity; candidates within Index Sum bounds test
    sufficiency.

    Args:
        P: The matrix being completed, over GF(p).
        cfg: Search settings; any target filter is ignored.
        variants: Variants to compare, all ten when omitted.
        limit: Largest number of candidate targets per variant.
        verbose: Whether to log progress at INFO level.
    """
    cfg = (cfg or OracleConfig()).model_copy(update={"target": None})
    result = enumerate_completions(P, cfg, verbose)
    verifications: list[Verification] = []
    for variant in variants or list(Variant):
        reached = result.project(variant)
        candidates = candidate_targets(result.base, variant, result.z, reached, limit)
        targets = list(unique_everseen([*reached, *candidates]))
        log_info(verbose, "Comparing {} {} targets.", len(targets), variant.value)
        verifications.extend(
            _verify(result.base, presc, reached, result.exhausted) for presc in targets
        )
    return SweepReport(result, tuple(verifications))
