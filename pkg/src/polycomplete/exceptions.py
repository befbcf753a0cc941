class PolyCompleteError(Exception):
    """Base exception for eigenstructure and completion
    operations."""

    pass


class InvalidInputError(PolyCompleteError):
    """Raised when one or multiple invalid input(s) are
    encountered."""

    pass


class InvalidPrescriptionError(InvalidInputError):
    """Raised when a prescription is malformed or does not fit
    the base eigenstructure (lengths, chains, variant fields)."""

    pass


class LengthMismatchError(InvalidInputError):
    """Raised when sequences compared by a majorization order
    have incompatible lengths."""

    pass


class DimensionMismatchError(InvalidInputError):
    """Raised when matrix shapes are incompatible."""

    pass


class GradeExceededError(InvalidInputError):
    """Raised when a matrix entry (or a stacked block) exceeds
    the declared grade."""

    pass


class ZeroPolynomialError(InvalidInputError):
    """Raised when gcd is asked for two zero polynomials or lcm
    receives a zero polynomial."""

    pass


class SentinelArithmeticError(PolyCompleteError):
    """Raised when the degree of the zero polynomial, or a factor
    index beyond the rank, enters a degree sum.

    Always an implementation bug: degree sums only ever touch
    indices up to the rank.
    """

    pass


class FieldObstructionError(PolyCompleteError):
    """Raised when a divisor of a required degree does not exist
    over the working field."""

    def __init__(self, msg: str = ""):
        self.msg = msg or (
            "No monic divisor of the required degree exists over this field.\n"
            "💡 Hint: The feasibility verdict relied on an algebraically closed field. "
            "Try a field where the polynomial splits."
        )
        super().__init__(self.msg)


class NotFeasibleError(PolyCompleteError):
    """Raised when a chain construction or witness assembly is
    requested for an infeasible prescription."""

    pass


class IndexSumViolationError(PolyCompleteError):
    """Raised when an extracted eigenstructure breaks the Index
    Sum identity. Signals a bug, never valid input."""

    pass


class AssemblyMismatchError(PolyCompleteError):
    """Raised when a feasible partial prescription assembles into a
    full prescription that the full predicate rejects."""

    pass


class BudgetExceededError(PolyCompleteError):
    """Raised when an oracle enumeration would exceed the configured
    coefficient budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        self.msg = (
            f"The completion space needs {required} enumerated coefficients, "
            f"but the budget is {budget}.\n"
            f"💡 Hint: Raise the budget to at least {required} (`--budget {required}`) "
            "or set `override=True`."
        )
        super().__init__(self.msg)


class CallbackError(PolyCompleteError):
    """Raised when a registered predicate override fails or returns
    something other than a feasibility report."""

    pass
