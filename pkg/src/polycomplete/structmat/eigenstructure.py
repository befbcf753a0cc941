"""
Complete eigenstructure of a polynomial matrix.

The four invariant families are extracted independently: invariant factors
from the Smith form, partial multiplicities of infinity from the Smith form of
the grade reversal, and minimal indices from kernel dimensions of the block
convolution matrices. The Index Sum identity ties them together and is checked
before anything is returned.
"""

from dataclasses import dataclass, replace
from functools import cached_property

from loguru import logger
from sympy.polys.matrices import DomainMatrix

from polycomplete.algebra.field import PrimeField, RationalField
from polycomplete.algebra.homog import HomogFactor
from polycomplete.algebra.poly import (
    divides,
    format_poly,
    poly_degree,
    poly_to_json,
    poly_valuation,
)
from polycomplete.common.logging_utils import log_info
from polycomplete.exceptions import IndexSumViolationError, InvalidInputError
from polycomplete.structmat.matrix import PolyMatrix
from polycomplete.structmat.smith import rank, smith_form


@dataclass(frozen=True)
class Eigenstructure:
    """
    Invariants of a rank-r, grade-d polynomial matrix.

    Built either from a matrix by :func:`eigenstructure` or directly from
    abstract data, since every feasibility predicate depends on the invariants
    alone.

    Attributes:
        field: Coefficient field.
        grade: Declared degree d.
        alphas: Invariant factors ``alpha_1 | ... | alpha_r``, monic.
        es: Partial multiplicities of infinity ``e_1 <= ... <= e_r``.
        cmi: Column minimal indices, nonincreasing, ``n - r`` of them.
        rmi: Row minimal indices, nonincreasing, ``m - r`` of them.
    """

    field: RationalField | PrimeField
    grade: int
    alphas: tuple
    es: tuple[int, ...]
    cmi: tuple[int, ...]
    rmi: tuple[int, ...]

    def __post_init__(self):
        if self.grade < 0:
            raise InvalidInputError(f"Grade must be nonnegative, got {self.grade}.")
        if len(self.es) != len(self.alphas):
            raise InvalidInputError(
                f"Expected one partial multiplicity per invariant factor.\n"
                f"  Found: (factors={len(self.alphas)}, multiplicities={len(self.es)})"
            )
        for i, alpha in enumerate(self.alphas, start=1):
            if alpha.domain != self.field.domain:
                raise InvalidInputError(
                    f"Invariant factor {i} lives over {alpha.domain}, "
                    f"expected {self.field.domain}."
                )
            if alpha.is_zero or not alpha.is_monic:
                raise InvalidInputError(
                    f"Invariant factor {i} must be a nonzero monic polynomial, "
                    f"got {format_poly(alpha)}."
                )
        for i in range(1, len(self.alphas)):
            if not divides(self.alphas[i - 1], self.alphas[i]):
                raise InvalidInputError(
                    f"Invariant factors must form a divisibility chain: "
                    f"{format_poly(self.alphas[i - 1])} does not divide "
                    f"{format_poly(self.alphas[i])}."
                )
        if any(e < 0 for e in self.es) or list(self.es) != sorted(self.es):
            raise InvalidInputError(
                f"Partial multiplicities of infinity must be nonnegative and "
                f"nondecreasing.\n  Found: (es={self.es})"
            )
        for name, seq in (("cmi", self.cmi), ("rmi", self.rmi)):
            if any(c < 0 for c in seq) or list(seq) != sorted(seq, reverse=True):
                raise InvalidInputError(
                    f"{name} must be a partition (nonnegative, nonincreasing).\n"
                    f"  Found: ({name}={seq})"
                )
        lhs, rhs = self.index_sum()
        if lhs != rhs:
            raise InvalidInputError(
                f"The invariants break the Index Sum identity: {lhs} != {rhs}.\n"
                "💡 Hint: Degrees of the homogeneous factors plus all minimal "
                "indices must add up to rank * grade."
            )

    @property
    def r(self) -> int:
        return len(self.alphas)

    @property
    def n(self) -> int:
        return self.r + len(self.cmi)

    @property
    def m(self) -> int:
        return self.r + len(self.rmi)

    @property
    def eta(self) -> int:
        """Number of strictly positive row minimal indices."""
        return sum(1 for u in self.rmi if u > 0)

    @cached_property
    def phis(self) -> tuple[HomogFactor, ...]:
        """Homogeneous invariant factors ``(e_i, alpha_i)``."""
        return tuple(HomogFactor(e, a) for e, a in zip(self.es, self.alphas, strict=True))

    @property
    def alpha_degrees(self) -> tuple[int, ...]:
        return tuple(poly_degree(a) for a in self.alphas)

    def index_sum(self) -> tuple[int, int]:
        """Both sides of ``sum deg(phi_i) + sum c + sum u = r * d``."""
        lhs = sum(self.es) + sum(self.alpha_degrees) + sum(self.cmi) + sum(self.rmi)
        return lhs, self.r * self.grade

    def transpose(self) -> "Eigenstructure":
        """Eigenstructure of the transposed matrix: minimal indices swap sides."""
        return replace(self, cmi=self.rmi, rmi=self.cmi)

    def to_json(self) -> dict:
        return {
            "field": self.field.model_dump(),
            "grade": self.grade,
            "alphas": [poly_to_json(a) for a in self.alphas],
            "es": list(self.es),
            "cmi": list(self.cmi),
            "rmi": list(self.rmi),
        }

    def format(self) -> str:
        def seq(values) -> str:
            return "(" + ", ".join(str(v) for v in values) + ")" if values else "∅"

        alphas = "(" + ", ".join(format_poly(a) for a in self.alphas) + ")"
        lhs, rhs = self.index_sum()
        return (
            f"r={self.r}, α={alphas if self.alphas else '∅'}, e={seq(self.es)}, "
            f"c={seq(self.cmi)}, u={seq(self.rmi)}, ISD: {lhs}={rhs}"
        )


def infinite_multiplicities(P: PolyMatrix) -> tuple[int, ...]:
    """
    Partial multiplicities of infinity, relative to the grade of ``P``.

    They are the s-adic valuations of the invariant factors of the reversal
    ``s^d P(1/s)``; the Smith chain makes them nondecreasing.
    """
    return tuple(poly_valuation(f) for f in smith_form(P.reversal()))


def _convolution_matrix(blocks: list[list[list]], k: int, domain) -> DomainMatrix:
    """Constant matrix of ``x(s) -> P(s) x(s)`` on vectors of degree at most k."""
    d = len(blocks) - 1
    m, n = len(blocks[0]), len(blocks[0][0])
    rows = []
    for level in range(d + k + 1):
        for i in range(m):
            row = []
            for j in range(k + 1):
                shift = level - j
                if 0 <= shift <= d:
                    row.extend(blocks[shift][i])
                else:
                    row.extend([domain.zero] * n)
            rows.append(row)
    return DomainMatrix(rows, ((d + k + 1) * m, (k + 1) * n), domain)


def _right_minimal_indices(P: PolyMatrix, r: int) -> tuple[int, ...]:
    # kernel dimension at degree k is sum over indices c <= k of (k - c + 1)
    wanted = P.cols - r
    if wanted == 0:
        return ()
    blocks = P.coefficient_matrices()
    domain = P.field.domain
    found: list[int] = []
    prev_dim, prev_count = 0, 0
    k = 0
    while len(found) < wanted:
        T = _convolution_matrix(blocks, k, domain)
        dim = (k + 1) * P.cols - T.rank()
        count = dim - prev_dim
        logger.debug("Kernel of degree <= {}: dimension {}, {} indices <= {}", k, dim, count, k)
        found.extend([k] * (count - prev_count))
        prev_dim, prev_count = dim, count
        k += 1
    return tuple(sorted(found, reverse=True))


def minimal_indices(P: PolyMatrix) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Column and row minimal indices of ``P``, each nonincreasing.

    New kernel vectors are counted degree by degree on the block convolution
    matrices of ``P`` (for the column side) and of its transpose (row side).
    """
    r = rank(P)
    return _right_minimal_indices(P, r), _right_minimal_indices(P.transpose(), r)


def eigenstructure(P: PolyMatrix, verbose: bool = False) -> Eigenstructure:
    """
    Extract rank, invariant factors, infinite structure and minimal indices.

    Args:
        P: The polynomial matrix; its declared grade is used throughout.
        verbose: Whether to log progress at INFO level.

    Returns:
        The complete eigenstructure of ``P``.

    Raises:
        IndexSumViolationError: If the extracted invariants break the Index
            Sum identity. Never caused by valid input.
    """
    log_info(verbose, "Analyzing a {}x{} matrix of grade {} over {}.", *P.shape, P.grade, P.field.label)
    alphas = smith_form(P)
    es = infinite_multiplicities(P)
    cmi, rmi = minimal_indices(P)

    r = len(alphas)
    lhs = sum(es) + sum(poly_degree(a) for a in alphas) + sum(cmi) + sum(rmi)
    if len(es) != r or lhs != r * P.grade:
        raise IndexSumViolationError(
            f"Extracted invariants break the Index Sum identity: {lhs} != {r * P.grade}.\n"
            f"  Found: (alphas={[format_poly(a) for a in alphas]}, es={es}, "
            f"cmi={cmi}, rmi={rmi})"
        )
    log_info(verbose, "Rank {}, Index Sum {} = {}.", r, lhs, r * P.grade)
    return Eigenstructure(P.field, P.grade, alphas, es, cmi, rmi)
