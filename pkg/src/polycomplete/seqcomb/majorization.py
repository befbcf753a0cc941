"""
Majorization orders on integer sequences.

``majorize(a, b)`` is the prefix-sum order on sequences of equal length.
``gen_majorize(g, d, a)`` decides whether ``g`` is majorized by the pair
``(d, a)``:

1. ``d_i >= g_{i+s}`` for every i (``s = len(a)``),
2. for every ``j <= s``, with ``h_j = min{i : d_{i-j+1} < g_i}``,
   ``sum(g[:h_j]) - sum(d[:h_j - j]) <= sum(a[:j])``,
3. ``sum(g) == sum(d) + sum(a)``.

Examples:
    >>> majorize([2, 1], [3, 0])
    True
    >>> majorize([3, 0], [2, 1])
    False
    >>> gen_majorize([3, 2, 1], [3, 1], [2])
    (True, (2,))
    >>> gen_majorize([2, 1], [], [3, 0])
    (True, (1, 2))
"""

from collections.abc import Sequence
from itertools import accumulate

from loguru import logger

from polycomplete.exceptions import LengthMismatchError
from polycomplete.seqcomb.sequences import IntSeq


def majorize(a: Sequence[int], b: Sequence[int]) -> bool:
    """
    Whether ``a`` is majorized by ``b``.

    Neither sequence has to be ordered; the comparison is on prefix sums as
    stored.

    Raises:
        LengthMismatchError: If the lengths differ.
    """
    if len(a) != len(b):
        raise LengthMismatchError(
            f"Majorization compares sequences of equal length.\n"
            f"  Found: (len(a)={len(a)}, len(b)={len(b)})"
        )
    if sum(a) != sum(b):
        return False
    return all(x <= y for x, y in zip(accumulate(a), accumulate(b), strict=True))


def gen_majorize(
    g: Sequence[int], d: Sequence[int], a: Sequence[int]
) -> tuple[bool, tuple[int, ...]]:
    """
    Whether ``g`` is majorized by ``d`` and ``a``, with the ``h_j`` trace.

    ``g`` and ``d`` must be nonincreasing; ``a`` may be any integer sequence.
    With ``a`` empty the order reduces to ``g == d``; with ``d`` empty it
    reduces to ``majorize(g, a)``.

    Args:
        g: The sequence being compared, of length ``len(d) + len(a)``.
        d: The first bounding sequence.
        a: The second bounding sequence.

    Returns:
        The verdict and the thresholds ``(h_1, ..., h_s)``. The trace stops at
        the first failing j.

    Raises:
        LengthMismatchError: If ``len(g) != len(d) + len(a)``.
    """
    g, d = IntSeq(g), IntSeq(d)
    m, s = len(d), len(a)
    if len(g) != m + s:
        raise LengthMismatchError(
            f"Generalized majorization needs len(g) = len(d) + len(a).\n"
            f"  Found: (len(g)={len(g)}, len(d)={m}, len(a)={s})"
        )

    if any(d[i] < g[i + s] for i in range(m)):
        return False, ()

    trace: list[int] = []
    a_sums = list(accumulate(a))
    for j in range(1, s + 1):
        # d_{m+1} = -inf, so the scan stops at i = m + j at the latest
        h = next(i for i in range(j, m + j + 1) if d.at(i - j + 1) < g.at(i))
        trace.append(h)
        if g.head(h) - d.head(h - j) > a_sums[j - 1]:
            logger.debug("Prefix bound fails at j={}, h_j={}", j, h)
            return False, tuple(trace)

    return sum(g) == sum(d) + sum(a), tuple(trace)
