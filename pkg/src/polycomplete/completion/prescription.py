from dataclasses import dataclass, replace
from enum import Enum

from sympy import Poly

from polycomplete.algebra.homog import HomogFactor
from polycomplete.algebra.poly import divides, format_poly, poly_to_json
from polycomplete.exceptions import InvalidInputError, InvalidPrescriptionError
from polycomplete.seqcomb.sequences import Partition
from polycomplete.structmat.eigenstructure import Eigenstructure


class Variant(str, Enum):
    """Which invariants of the completed matrix are prescribed."""

    FULL = "Full"
    INF_SING = "InfSing"
    INF_CMI = "InfCmi"
    INF_RMI = "InfRmi"
    FIN_SING = "FinSing"
    FIN_CMI = "FinCmi"
    FIN_RMI = "FinRmi"
    SING = "Sing"
    RMI = "Rmi"
    CMI = "Cmi"

    @property
    def required(self) -> frozenset[str]:
        return REQUIRED_FIELDS[self]

    @property
    def may_need_closed_field(self) -> bool:
        """Whether sufficiency can depend on an algebraically closed field."""
        return self in {Variant.INF_SING, Variant.INF_RMI, Variant.SING, Variant.RMI}


REQUIRED_FIELDS: dict[Variant, frozenset[str]] = {
    Variant.FULL: frozenset({"gamma", "d", "v"}),
    Variant.INF_SING: frozenset({"f", "d", "v"}),
    Variant.INF_CMI: frozenset({"f", "d"}),
    Variant.INF_RMI: frozenset({"f", "v"}),
    Variant.FIN_SING: frozenset({"beta", "d", "v"}),
    Variant.FIN_CMI: frozenset({"beta", "d"}),
    Variant.FIN_RMI: frozenset({"beta", "v"}),
    Variant.SING: frozenset({"d", "v"}),
    Variant.RMI: frozenset({"v"}),
    Variant.CMI: frozenset({"d"}),
}

OPTIONAL_FIELDS = ("f", "beta", "gamma", "d", "v")


@dataclass(frozen=True)
class Prescription:
    """
    Target invariants for the completed matrix ``[P; W]``.

    ``W`` has ``z`` rows and raises the rank by ``x``. Only the fields that
    the variant prescribes may be set; the others must stay ``None``.

    Attributes:
        variant: The prescribed combination of invariants.
        z: Number of added rows, at least 1.
        x: Rank increase.
        f: Partial multiplicities of infinity, nondecreasing, ``r + x`` of them.
        beta: Invariant factors, a monic divisibility chain of length ``r + x``.
        gamma: Homogeneous invariant factors, a chain of length ``r + x``.
        d: Column minimal indices, a partition of length ``n - r - x``.
        v: Row minimal indices, a partition of length ``m + z - r - x``.
    """

    variant: Variant
    z: int
    x: int
    f: tuple[int, ...] | None = None
    beta: tuple[Poly, ...] | None = None
    gamma: tuple[HomogFactor, ...] | None = None
    d: Partition | None = None
    v: Partition | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.z < 1:
            raise InvalidPrescriptionError(
                f"A completion adds at least one row.\n  Found: (z={self.z})"
            )
        if self.x < 0:
            raise InvalidPrescriptionError(
                f"The rank increase cannot be negative.\n  Found: (x={self.x})"
            )

        present = {name for name in OPTIONAL_FIELDS if getattr(self, name) is not None}
        missing = self.variant.required - present
        extra = present - self.variant.required
        if missing or extra:
            raise InvalidPrescriptionError(
                f"Variant {self.variant.value} prescribes exactly "
                f"{sorted(self.variant.required)}.\n"
                f"  Found: (missing={sorted(missing)}, unexpected={sorted(extra)})"
            )

        try:
            if self.d is not None:
                object.__setattr__(self, "d", Partition(self.d))
            if self.v is not None:
                object.__setattr__(self, "v", Partition(self.v))
        except InvalidInputError as e:
            raise InvalidPrescriptionError(str(e)) from None

        if self.f is not None:
            f = tuple(self.f)
            if any(v < 0 for v in f) or list(f) != sorted(f):
                raise InvalidPrescriptionError(
                    f"f must be nonnegative and nondecreasing.\n  Found: (f={f})"
                )
            object.__setattr__(self, "f", f)

        if self.beta is not None:
            beta = tuple(self.beta)
            for i, b in enumerate(beta, start=1):
                if b.is_zero or not b.is_monic:
                    raise InvalidPrescriptionError(
                        f"beta_{i} must be a nonzero monic polynomial, got {format_poly(b)}."
                    )
            for i in range(1, len(beta)):
                if not divides(beta[i - 1], beta[i]):
                    raise InvalidPrescriptionError(
                        f"beta must be a divisibility chain: beta_{i} = "
                        f"{format_poly(beta[i - 1])} does not divide beta_{i + 1} = "
                        f"{format_poly(beta[i])}."
                    )
            object.__setattr__(self, "beta", beta)

        if self.gamma is not None:
            gamma = tuple(self.gamma)
            for i in range(1, len(gamma)):
                if not gamma[i - 1].divides(gamma[i]):
                    raise InvalidPrescriptionError(
                        f"gamma must be a divisibility chain: gamma_{i} = {gamma[i - 1]} "
                        f"does not divide gamma_{i + 1} = {gamma[i]}."
                    )
            object.__setattr__(self, "gamma", gamma)

    @property
    def eta_bar(self) -> int:
        """Number of strictly positive prescribed row minimal indices."""
        if self.v is None:
            raise InvalidPrescriptionError(
                f"Variant {self.variant.value} does not prescribe row minimal indices."
            )
        return self.v.positive_count

    def require(self, *variants: Variant) -> "Prescription":
        """Reject a prescription handed to a predicate of another variant."""
        if self.variant not in variants:
            raise InvalidPrescriptionError(
                f"Expected a {' or '.join(v.value for v in variants)} prescription.\n"
                f"  Found: (variant={self.variant.value})"
            )
        return self

    def fit(self, base: Eigenstructure) -> "Prescription":
        """
        Check lengths and fields against the matrix being completed.

        Returns:
            The prescription itself, for chaining.

        Raises:
            InvalidPrescriptionError: If a prescribed sequence has the wrong
                length, ``x`` exceeds ``min(z, n - r)``, or a polynomial lives
                over another field.
        """
        r, x = base.r, self.x
        if x > min(self.z, base.n - r):
            raise InvalidPrescriptionError(
                f"The rank increase must satisfy x <= min(z, n - r) = "
                f"{min(self.z, base.n - r)}.\n  Found: (x={x})"
            )
        expected = {
            "f": r + x,
            "beta": r + x,
            "gamma": r + x,
            "d": base.n - r - x,
            "v": base.m + self.z - r - x,
        }
        for name, length in expected.items():
            value = getattr(self, name)
            if value is not None and len(value) != length:
                raise InvalidPrescriptionError(
                    f"Expected {length} entries in {name} for r={r}, x={x}, z={self.z}.\n"
                    f"  Found: ({name} has {len(value)} entries)"
                )

        polys = list(self.beta or ()) + [g.alpha for g in self.gamma or ()]
        for p in polys:
            if p.domain != base.field.domain:
                raise InvalidPrescriptionError(
                    f"Prescribed polynomial {format_poly(p)} lives over {p.domain}, "
                    f"but the matrix is over {base.field.label}."
                )
        return self

    def with_changes(self, **changes) -> "Prescription":
        return replace(self, **changes)

    def to_json(self) -> dict:
        out: dict = {"variant": self.variant.value, "z": self.z, "x": self.x}
        if self.f is not None:
            out["f"] = list(self.f)
        if self.beta is not None:
            out["beta"] = [poly_to_json(b) for b in self.beta]
        if self.gamma is not None:
            out["gamma"] = [g.to_json() for g in self.gamma]
        if self.d is not None:
            out["d"] = list(self.d)
        if self.v is not None:
            out["v"] = list(self.v)
        return out

    def format(self) -> str:
        parts = [f"{self.variant.value}: z={self.z}, x={self.x}"]
        if self.f is not None:
            parts.append(f"f={_show(self.f)}")
        if self.beta is not None:
            parts.append("β=" + _show([format_poly(b) for b in self.beta]))
        if self.gamma is not None:
            parts.append("γ=" + _show([str(g) for g in self.gamma]))
        if self.d is not None:
            parts.append(f"d={_show(self.d)}")
        if self.v is not None:
            parts.append(f"v={_show(self.v)}")
        return ", ".join(parts)


def _show(values) -> str:
    values = list(values)
    return "(" + ", ".join(str(v) for v in values) + ")" if values else "∅"
