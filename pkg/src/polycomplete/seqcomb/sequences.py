"""
Finite integer sequences stored in nonincreasing order.

Reads outside the stored range follow the usual convention for such
sequences: any index below 1 reads as ``+inf`` and any index past the end
reads as ``-inf``. Sentinels are never stored.

Examples:
    >>> g = IntSeq([3, 1, 2])
    Traceback (most recent call last):
        ...
    polycomplete.exceptions.InvalidInputError: Sequence must be nonincreasing.
      Found: (input=(3, 1, 2))
    >>> g = IntSeq([3, 2, 1])
    >>> g.at(1), g.at(0), g.at(4)
    (3, inf, -inf)
    >>> seq_union(Partition([2, 0]), Partition([1]))
    Partition((2, 1, 0))
"""

import heapq
import math
from collections.abc import Iterable

from polycomplete.exceptions import InvalidInputError


class IntSeq(tuple):
    """A nonincreasing tuple of integers with sentinel reads."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        items = tuple(values)
        for v in items:
            if isinstance(v, bool) or not isinstance(v, int):
                raise InvalidInputError(
                    f"Sequence entries must be integers.\n  Found: (input={v!r})"
                )
        if any(a < b for a, b in zip(items, items[1:], strict=False)):
            raise InvalidInputError(
                f"Sequence must be nonincreasing.\n  Found: (input={items})"
            )
        return super().__new__(cls, items)

    def at(self, i: int) -> float | int:
        """1-based read with ``+inf`` below the range and ``-inf`` above it."""
        if i < 1:
            return math.inf
        if i > len(self):
            return -math.inf
        return self[i - 1]

    def head(self, k: int) -> int:
        """Sum of the first ``k`` entries; ``k`` is clamped to ``[0, len]``."""
        return sum(self[: max(0, k)])

    def __repr__(self) -> str:
        return f"{type(self).__name__}({tuple(self)!r})"


class Partition(IntSeq):
    """A nonincreasing sequence of nonnegative integers."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        self = super().__new__(cls, values)
        if self and self[-1] < 0:
            raise InvalidInputError(
                f"Partition entries must be nonnegative.\n  Found: (input={tuple(self)})"
            )
        return self

    @property
    def positive_count(self) -> int:
        """Number of strictly positive parts."""
        return sum(1 for v in self if v > 0)


def seq_union(u: IntSeq, b: Iterable[int]) -> IntSeq:
    """The decreasingly ordered multiset union of two sequences.

    The result keeps the type of ``u``.

    >>> seq_union(IntSeq([1, 1]), [1])
    IntSeq((1, 1, 1))
    """
    merged = heapq.merge(u, sorted(b, reverse=True), reverse=True)
    return type(u)(merged)
