from math import comb, factorial, prod

import pytest
from hypothesis import given

from conftest import partitions
from ppfn.partitions import (
    EMPTY,
    FrobeniusCoords,
    Partition,
    binom2,
    cell_stats,
    conjugate,
    contents,
    enumerate_in_box,
    format_partition,
    from_frobenius,
    hooks,
    interlaces,
    is_symmetric,
    n_stat,
    norm_sq,
    parse_partition,
    partitions_of,
    partitions_up_to,
    to_frobenius,
    vertical_strip,
)

PARTITION_COUNTS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_partition_normalizes_trailing_zeros():
    assert Partition([3, 1, 0, 0]) == Partition([3, 1])
    assert Partition() == EMPTY
    with pytest.raises(ValueError):
        Partition([1, 2])


@pytest.mark.parametrize("text,parts", [("5,4,4,1", (5, 4, 4, 1)), ("[]", ()), ("", ()), ("[2,1]", (2, 1)), ("0", ())])
def test_parse(text, parts):
    assert tuple(parse_partition(text)) == parts


@given(partitions())
def test_format_parse_roundtrip(p):
    assert parse_partition(format_partition(p)) == p


@given(partitions(max_size=10))
def test_conjugate_is_involution(p):
    assert conjugate(conjugate(p)) == p
    assert sum(conjugate(p)) == sum(p)


@given(partitions(max_size=10))
def test_frobenius_roundtrip(p):
    f = to_frobenius(p)
    assert from_frobenius(f) == p
    assert sum(f.arms) + sum(f.legs) + f.rank == sum(p)


def test_frobenius_rejects_bad_coordinates():
    with pytest.raises(ValueError):
        FrobeniusCoords((1, 1), (0, 0))
    with pytest.raises(ValueError):
        FrobeniusCoords((1,), ())


def _count_syt(p):
    # standard tableaux via removing a corner, independent of hooks
    if not p:
        return 1
    total = 0
    for i in range(len(p)):
        if i + 1 == len(p) or p[i + 1] < p[i]:
            total += _count_syt(Partition(p[:i] + (p[i] - 1,) + p[i + 1:]))
    return total


@given(partitions(max_size=9))
def test_hook_length_formula(p):
    assert factorial(sum(p)) // prod(hooks(p)) == _count_syt(p)


@given(partitions(max_size=10))
def test_content_sum_and_n_stat(p):
    assert sum(contents(p)) == n_stat(conjugate(p)) - n_stat(p)
    assert binom2(p) == n_stat(conjugate(p))
    assert norm_sq(p) == 2 * binom2(p) + sum(p)


def test_cell_stats_small():
    s = cell_stats(Partition([2, 1]))
    assert s[(1, 1)].hook == 3 and s[(1, 2)].content == 1 and s[(2, 1)].content == -1


@given(partitions(max_size=7), partitions(max_size=7))
def test_horizontal_strip_is_conjugate_vertical_strip(a, b):
    horizontal = a.contains(b) and interlaces(a, b)
    assert horizontal == vertical_strip(conjugate(a), conjugate(b))


def test_interlacing_examples():
    assert interlaces(Partition([3, 1]), Partition([2]))
    assert interlaces(Partition([3, 1]), Partition([1, 1]))
    assert not interlaces(Partition([3, 1]), Partition([2, 2]))
    assert not interlaces(Partition([2, 2, 1]), Partition([1]))


@pytest.mark.parametrize("n", range(len(PARTITION_COUNTS)))
def test_partition_counts(n):
    assert len(list(partitions_of(n))) == PARTITION_COUNTS[n]


@pytest.mark.parametrize("r,c", [(0, 3), (2, 2), (3, 2), (4, 3)])
def test_box_count(r, c):
    got = list(enumerate_in_box(r, c))
    assert len(got) == comb(r + c, r)
    assert len(set(got)) == len(got)
    assert all(len(p) <= r and p.part(1) <= c for p in got)


def test_symmetric_partitions():
    sym = [p for p in partitions_up_to(5) if is_symmetric(p)]
    assert sym == [EMPTY, Partition([1]), Partition([2, 1]), Partition([2, 2]), Partition([3, 1, 1])]
