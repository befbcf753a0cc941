import reprlib
from collections.abc import Iterable, Iterator
from functools import wraps
from itertools import tee
from typing import Annotated, Any, TypeAlias

from more_itertools import ilen
from pydantic import AfterValidator, ConfigDict, Field, ValidationError, validate_call
from sympy import isprime

from polycomplete.exceptions import InvalidInputError


def _enforce_prime(v: int) -> int:
    if not isprime(v):
        raise ValueError(f"p must be a prime number.\n  Found: (input={v!r})")
    return v


def _enforce_nonincreasing(v: Any) -> Any:
    if any(a < b for a, b in zip(v, v[1:], strict=False)):
        raise ValueError(
            f"Sequence must be nonincreasing.\n  Found: (input={reprlib.repr(v)})"
        )
    return v


def _enforce_nondecreasing(v: Any) -> Any:
    if any(a > b for a, b in zip(v, v[1:], strict=False)):
        raise ValueError(
            f"Sequence must be nondecreasing.\n  Found: (input={reprlib.repr(v)})"
        )
    return v


PrimeInt: TypeAlias = Annotated[int, AfterValidator(_enforce_prime)]

NonNegInt: TypeAlias = Annotated[int, Field(ge=0)]

# Partitions are JSON arrays; tuples keep them hashable once validated
PartitionTuple: TypeAlias = Annotated[
    tuple[NonNegInt, ...], AfterValidator(_enforce_nonincreasing)
]

NondecreasingTuple: TypeAlias = Annotated[
    tuple[NonNegInt, ...], AfterValidator(_enforce_nondecreasing)
]


def pretty_errors(error: ValidationError) -> str:
    """Formats Pydantic validation errors into a human-readable string."""
    lines = [
        f"{error.error_count()} validation error for {getattr(error, 'subtitle', '') or error.title}."
    ]
    for ind, err in enumerate(error.errors(), start=1):
        msg = err["msg"]

        loc = err.get("loc", [])
        formatted_loc = ""
        if len(loc) >= 1:
            formatted_loc = str(loc[0]) + "".join(f"[{step!r}]" for step in loc[1:])
            formatted_loc = f"({formatted_loc})" if formatted_loc else ""

        input_value = err["input"]
        input_type = type(input_value).__name__

        # reprlib truncates nested coefficient arrays
        if not isinstance(input_value, str):
            input_value = reprlib.repr(input_value)
        else:
            input_value = (
                input_value if len(input_value) < 500 else input_value[:500] + "..."
            )

        lines.append(
            (
                f"{ind}) {formatted_loc} {msg}.\n"
                f"  Found: (input={input_value!r}, type={input_type})"
            )
        )

    lines.append("  " + getattr(error, "hint", ""))
    return "\n".join(lines)


def validate_input(fn):
    """
    A decorator that validates function inputs.

    A wrapper around Pydantic's `validate_call` that catches `ValidationError`
    and re-raises it as a more user-friendly `InvalidInputError`.
    """
    validated_fn = validate_call(fn, config=ConfigDict(arbitrary_types_allowed=True))

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return validated_fn(*args, **kwargs)
        except ValidationError as e:
            raise InvalidInputError(pretty_errors(e)) from None

    return wrapper


def safely_count_iterable(name: str, iterable: Iterable) -> tuple[int, Iterable]:
    """
    Counts elements in an iterable while preserving its state.

    If the input is an Iterator, it is duplicated using `itertools.tee` so that
    counting does not consume it.

    Args:
        name: Descriptive name for the iterable (used in error context).
        iterable: The iterable or iterator to count.

    Returns:
        The element count and the original (or preserved) iterable.

    Raises:
        InvalidInputError: If the object is not iterable.

    Examples:
        >>> count, ranges = safely_count_iterable("ranges", iter([(0, 5), (5, 9)]))
        >>> count
        2
        >>> list(ranges)
        [(0, 5), (5, 9)]
    """
    try:
        if isinstance(iterable, Iterator):
            iterable, copy_iterable = tee(iterable)
            count = ilen(copy_iterable)
        else:
            count = len(iterable)
    except TypeError as e:
        raise InvalidInputError(
            f"'{name}' must be a sized iterable or an iterator.\n  Details: {e}"
        ) from None

    return count, iterable
