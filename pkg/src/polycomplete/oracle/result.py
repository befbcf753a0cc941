from dataclasses import dataclass, field

from polycomplete.algebra.field import PrimeField
from polycomplete.completion.prescription import Prescription, Variant
from polycomplete.structmat.eigenstructure import Eigenstructure
from polycomplete.structmat.matrix import PolyMatrix


def project(
    eig: Eigenstructure, base: Eigenstructure, z: int, variant: Variant
) -> Prescription:
    """
    The prescription of ``variant`` that the completed eigenstructure meets.

    Args:
        eig: Eigenstructure of ``[P; W]``.
        base: Eigenstructure of ``P``.
        z: Number of rows of ``W``.
        variant: Which invariants to keep.
    """
    values = {
        "f": eig.es,
        "beta": eig.alphas,
        "gamma": eig.phis,
        "d": eig.cmi,
        "v": eig.rmi,
    }
    kept = {name: values[name] for name in variant.required}
    return Prescription(variant, z, eig.r - base.r, **kept)


@dataclass(frozen=True)
class Witness:
    """A completion found by the search, with its position in enumeration order."""

    index: int
    W: PolyMatrix

    def to_json(self) -> dict:
        return {"index": self.index, "W": self.W.to_json()}


@dataclass(frozen=True)
class OracleResult:
    """
    Every eigenstructure reached by a completion, each with its first witness.

    Attributes:
        base: Eigenstructure of ``P``.
        field: The finite field searched.
        z: Rows of each completion.
        degree_bound: Entry degree bound of the completions.
        grade: Grade of ``P``.
        candidates: Number of completions enumerated.
        achieved: Reached eigenstructures of ``[P; W]`` and their witnesses.
    """

    base: Eigenstructure
    field: PrimeField
    z: int
    degree_bound: int
    grade: int
    candidates: int
    achieved: dict[Eigenstructure, Witness] = field(default_factory=dict)

    @property
    def exhausted(self) -> bool:
        """Whether every completion allowed by the grade was tried."""
        return self.degree_bound == self.grade

    def project(self, variant: Variant) -> dict[Prescription, Witness]:
        """
        Achieved prescriptions of one variant.

        Several eigenstructures can share a projection; the witness with the
        smallest index is kept.
        """
        out: dict[Prescription, Witness] = {}
        for eig, witness in self.achieved.items():
            key = project(eig, self.base, self.z, variant)
            if key not in out or witness.index < out[key].index:
                out[key] = witness
        return out

    def to_json(self) -> dict:
        return {
            "field": self.field.model_dump(),
            "z": self.z,
            "degree_bound": self.degree_bound,
            "grade": self.grade,
            "candidates": self.candidates,
            "exhausted": self.exhausted,
            "base": self.base.to_json(),
            "achieved": [
                {"eigenstructure": eig.to_json(), "witness": w.to_json()}
                for eig, w in sorted(self.achieved.items(), key=lambda kv: kv[1].index)
            ],
        }

    def format(self) -> str:
        lines = [
            f"{len(self.achieved)} eigenstructures reached by {self.candidates} "
            f"completions over {self.field.label} (z={self.z}, "
            f"deg W <= {self.degree_bound}{', exhaustive' if self.exhausted else ''})"
        ]
        for eig, w in sorted(self.achieved.items(), key=lambda kv: kv[1].index):
            lines.append(f"  #{w.index}: {eig.format()}")
        return "\n".join(lines)
