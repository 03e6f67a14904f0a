import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import partitions
from ppfn.enumeration import (
    INF,
    GridRegion,
    enum_boxed,
    enum_diagonal,
    enum_perpendicular,
    enum_symmetric,
    enum_symmetric_full,
    grid_slices,
    iter_fillings,
)
from ppfn.partitions import EMPTY, Partition, conjugate, interlaces
from ppfn.qseries import HalfSeries, expand_inverse_factor


def macmahon_count(a, b, c):
    out = Fraction(1)
    for i, j, k in itertools.product(range(1, a + 1), range(1, b + 1), range(1, c + 1)):
        out *= Fraction(i + j + k - 1, i + j + k - 2)
    return out


def test_boxed_small_values():
    assert enum_boxed(1, 1, 1) == HalfSeries({0: 1, 2: 1})
    assert enum_boxed(1, 1, 3).q_coeffs(3) == [1, 1, 1, 1]
    assert enum_boxed(0, 4, 4) == HalfSeries.one()
    # two cells in a row with heights <= 1: empty, one, two
    assert enum_boxed(1, 2, 1).q_coeffs(2) == [1, 1, 1]


@pytest.mark.parametrize("a,b,c", [(1, 2, 3), (2, 2, 2), (2, 3, 2), (3, 3, 1)])
def test_boxed_total_and_symmetry(a, b, c):
    s = enum_boxed(a, b, c)
    assert sum(s.terms.values()) == macmahon_count(a, b, c)
    for perm in itertools.permutations((a, b, c)):
        assert enum_boxed(*perm) == s


@pytest.mark.parametrize("L,N,M", [(2, 2, 2), (2, 3, 3), (3, 2, 2), (3, 3, 2)])
def test_empty_boundaries_are_walls(L, N, M):
    assert enum_diagonal(L, N, M, EMPTY, EMPTY, EMPTY, 0) == enum_boxed(L - 1, M - 1, N - 1)
    assert enum_perpendicular(L, N, M, EMPTY, EMPTY, EMPTY, 0) == enum_boxed(L - 1, M - 1, N - 1)


def test_single_unbounded_column():
    got = enum_diagonal(2, INF, 2, EMPTY, EMPTY, EMPTY, 8)
    assert got.cutoff == 16 and got.agrees_with(expand_inverse_factor(2, 16))


@pytest.mark.parametrize("mu", [EMPTY, Partition([1]), Partition([2, 1])])
def test_budget_monotone(mu):
    small = enum_diagonal(3, INF, 3, EMPTY, mu, EMPTY, 5)
    big = enum_diagonal(3, INF, 3, EMPTY, mu, EMPTY, 8)
    assert small.cutoff < big.cutoff and small.agrees_with(big)


@given(st.integers(2, 3), st.integers(2, 3), st.integers(1, 3),
       partitions(max_size=2), partitions(max_size=2), partitions(max_size=2))
def test_reflection(L, M, N, lam, mu, nu):
    for f in (enum_diagonal, enum_perpendicular):
        a = f(L, N, M, lam, mu, nu, 0)
        b = f(M, N, L, conjugate(nu), conjugate(mu), conjugate(lam), 0)
        assert a == b


@pytest.mark.parametrize("N,mu", [(1, EMPTY), (1, Partition([1])), (2, EMPTY), (2, Partition([2, 1])), (3, Partition([1]))])
def test_symmetric_enumerators_agree(N, mu):
    assert enum_symmetric(N, mu, 8).agrees_with(enum_symmetric_full(N, mu, 8))


def test_symmetric_needs_symmetric_mu():
    with pytest.raises(ValueError):
        enum_symmetric_full(2, Partition([2]), 4)


def test_infinite_walls_rejected():
    with pytest.raises(ValueError):
        enum_diagonal(INF, 2, 2, EMPTY, EMPTY, EMPTY, 4)


def test_slices_of_fillings_interlace():
    region = GridRegion([(1, [None] * 3) for _ in range(3)], 2)
    seen = 0
    for grid, total in iter_fillings(region, 6):
        heights = {(i, j): h for i, row in enumerate(grid, 1) for j, h in enumerate(row, 1)}
        slices = grid_slices(heights, -3, 3)
        assert sum(map(sum, slices.values())) == total
        for k in range(-3, 3):
            big, small = (slices[k + 1], slices[k]) if k < 0 else (slices[k], slices[k + 1])
            assert interlaces(big, small)
        seen += 1
    assert seen == sum(c for d, c in enum_boxed(3, 3, 2).terms.items() if d <= 12)
