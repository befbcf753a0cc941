import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polycomplete import InvalidInputError, LengthMismatchError
from polycomplete.seqcomb import IntSeq, Partition, gen_majorize, majorize, seq_union

# --- Strategies ---

partitions = st.lists(st.integers(min_value=0, max_value=9), max_size=6).map(
    lambda xs: Partition(sorted(xs, reverse=True))
)

same_length_pairs = st.integers(min_value=0, max_value=5).flatmap(
    lambda k: st.tuples(
        st.lists(st.integers(0, 6), min_size=k, max_size=k),
        st.lists(st.integers(0, 6), min_size=k, max_size=k),
    )
)


# --- Majorization Tests ---


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ([2, 1], [3, 0], True),
        ([3, 0], [2, 1], False),
        ([1, 1, 1], [3, 0, 0], True),
        ([2, 2], [3, 0], False),  # sums differ
        ([], [], True),
    ],
)
def test_majorize(a, b, expected):
    assert majorize(a, b) is expected


def test_majorize_length_mismatch():
    with pytest.raises(LengthMismatchError, match=re.escape("(len(a)=1, len(b)=2)")):
        majorize([1], [1, 0])


@pytest.mark.parametrize(
    "g, d, a, expected, trace",
    [
        ([3, 2, 1], [3, 1], [2], True, (2,)),
        ([2, 1], [], [3, 0], True, (1, 2)),
        ([2, 0], [3], [-1], True, (2,)),  # negative bound
        ([2, 0], [1], [1], False, (1,)),  # prefix bound fails at h=1
        ([2, 1], [0], [3], False, ()),  # d_1 < g_2 fails before any prefix
        ([2, 1], [2, 1], [], True, ()),
    ],
)
def test_gen_majorize(g, d, a, expected, trace):
    assert gen_majorize(g, d, a) == (expected, trace)


def test_gen_majorize_length_mismatch():
    with pytest.raises(LengthMismatchError, match="len\\(g\\) = len\\(d\\) \\+ len\\(a\\)"):
        gen_majorize([1, 1], [1], [1, 0])


def test_gen_majorize_rejects_unsorted_input():
    with pytest.raises(InvalidInputError, match="Sequence must be nonincreasing."):
        gen_majorize([1, 2], [2], [1])


# --- Sequence Tests ---


def test_sentinel_reads():
    u = IntSeq([4, 1])
    assert (u.at(0), u.at(2), u.at(3)) == (float("inf"), 1, float("-inf"))
    assert u.head(5) == 5
    assert u.head(-1) == 0


def test_partition_rejects_negative_parts():
    with pytest.raises(InvalidInputError, match="Partition entries must be nonnegative."):
        Partition([1, -1])


def test_union_keeps_the_left_type():
    merged = seq_union(Partition([3, 1]), [2, 0])
    assert isinstance(merged, Partition)
    assert merged == (3, 2, 1, 0)
    assert merged.positive_count == 3


# --- Properties ---


@given(partitions, partitions)
def test_union_is_majorized_by_its_parts(u, b):
    assert gen_majorize(seq_union(u, b), u, b)[0]


@given(same_length_pairs)
def test_empty_bound_reduces_to_equality(pair):
    g, d = (sorted(xs, reverse=True) for xs in pair)
    assert gen_majorize(g, d, ())[0] == (g == d)


@given(same_length_pairs)
def test_empty_first_bound_reduces_to_majorization(pair):
    g, a = (sorted(xs, reverse=True) for xs in pair)
    assert gen_majorize(g, (), a)[0] == majorize(g, a)
