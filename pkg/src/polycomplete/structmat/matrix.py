from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy import Poly

from polycomplete.algebra.field import PrimeField, RationalField, S
from polycomplete.algebra.poly import (
    NEG_INF,
    ascending_coeffs,
    format_poly,
    make_poly,
    poly_degree,
    poly_to_json,
    zero_poly,
)
from polycomplete.exceptions import (
    DimensionMismatchError,
    GradeExceededError,
    InvalidInputError,
)


@dataclass(frozen=True)
class PolyMatrix:
    """
    An m x n matrix of polynomials with a declared grade.

    The grade is an upper bound on every entry degree and is kept even when no
    entry reaches it: the infinite structure is measured relative to it.

    Attributes:
        field: The coefficient field.
        grade: Declared degree d.
        entries: Row-major grid of sympy polynomials over ``field.domain``.
    """

    field: RationalField | PrimeField
    grade: int
    entries: tuple[tuple[Poly, ...], ...]

    def __post_init__(self):
        if self.grade < 0:
            raise InvalidInputError(f"Grade must be nonnegative, got {self.grade}.")
        if not self.entries or not self.entries[0]:
            raise DimensionMismatchError("A matrix needs at least one row and column.")
        width = len(self.entries[0])
        for i, row in enumerate(self.entries):
            if len(row) != width:
                raise DimensionMismatchError(
                    f"Row {i} has {len(row)} entries, expected {width}."
                )
            for j, p in enumerate(row):
                if p.domain != self.field.domain:
                    raise InvalidInputError(
                        f"Entry ({i}, {j}) lives over {p.domain}, "
                        f"expected {self.field.domain}."
                    )
                if poly_degree(p) > self.grade:
                    raise GradeExceededError(
                        f"Entry ({i}, {j}) = {format_poly(p)} exceeds grade {self.grade}."
                    )

    @classmethod
    def from_coeffs(
        cls, field, grade: int, rows: Sequence[Sequence[Sequence[Any]]]
    ) -> "PolyMatrix":
        """Build from ascending coefficient arrays of raw scalars."""
        entries = tuple(tuple(make_poly(field, c) for c in row) for row in rows)
        return cls(field, grade, entries)

    @classmethod
    def zeros(cls, field, grade: int, rows: int, cols: int) -> "PolyMatrix":
        zero = zero_poly(field)
        return cls(field, grade, tuple((zero,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def degree(self):
        """Largest entry degree (``NEG_INF`` for the zero matrix)."""
        return max((poly_degree(p) for row in self.entries for p in row), default=NEG_INF)

    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.entries for p in row)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.field, self.grade, tuple(zip(*self.entries, strict=True)))

    def reversal(self) -> "PolyMatrix":
        """The grade-d reversal ``t^d P(1/t)``, written again in the variable s."""
        domain = self.field.domain

        def rev(p: Poly) -> Poly:
            coeffs = ascending_coeffs(p)
            coeffs += [domain.zero] * (self.grade + 1 - len(coeffs))
            # descending coefficients of the reversal = padded ascending ones of p
            return Poly.from_list(coeffs, S, domain=domain)

        return PolyMatrix(
            self.field, self.grade, tuple(tuple(rev(p) for p in row) for row in self.entries)
        )

    def coefficient_matrices(self) -> list[list[list]]:
        """Constant matrices ``P_0, ..., P_d`` with ``P(s) = sum P_k s^k``."""
        zero = self.field.domain.zero
        blocks = [[[zero] * self.cols for _ in range(self.rows)] for _ in range(self.grade + 1)]
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                for k, c in enumerate(ascending_coeffs(p)):
                    blocks[k][i][j] = c
        return blocks

    def to_json(self) -> dict:
        return {
            "field": self.field.model_dump(),
            "grade": self.grade,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[poly_to_json(p) for p in row] for row in self.entries],
        }

    def format(self) -> str:
        cells = [[format_poly(p) for p in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells)


def stack(P: PolyMatrix, W: PolyMatrix) -> PolyMatrix:
    """
    Stack ``W`` under ``P``; the result keeps the grade of ``P``.

    Raises:
        DimensionMismatchError: If the column counts or fields differ.
        GradeExceededError: If ``grade(W) > grade(P)``.
    """
    if P.cols != W.cols:
        raise DimensionMismatchError(
            f"Cannot stack a {W.rows}x{W.cols} block under a {P.rows}x{P.cols} matrix."
        )
    if P.field != W.field:
        raise DimensionMismatchError(
            f"Cannot stack matrices over {W.field.label} and {P.field.label}."
        )
    if W.grade > P.grade:
        raise GradeExceededError(
            f"The added rows have grade {W.grade}, above the grade {P.grade} of P."
        )
    return PolyMatrix(P.field, P.grade, P.entries + W.entries)
