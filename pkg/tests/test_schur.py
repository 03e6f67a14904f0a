from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from conftest import partitions
from ppfn.partitions import EMPTY, Partition, conjugate, interlaces, partitions_up_to
from ppfn.qseries import HalfSeries
from ppfn.schur import (
    FINITE_RHO,
    INFINITE_RHO,
    NEGATED_FINITE_RHO,
    NEGATED_INFINITE_RHO,
    SpecializationTag,
    negated,
    principal_finite,
    principal_infinite,
    skew_single,
    specialize,
)


@lru_cache(maxsize=None)
def branching(p: Partition, n: int) -> HalfSeries:
    """s_p(x_1..x_n) at x_i = q^(i - 1/2) by peeling the last variable."""
    if n == 0:
        return HalfSeries.one() if not p else HalfSeries.zero()
    total = HalfSeries.zero()
    for m in partitions_up_to(sum(p)):
        if p.contains(m) and interlaces(p, m):
            total = total + branching(m, n - 1) * skew_single(p, m, 2 * n - 1)
    return total


@given(partitions(max_size=5), st.integers(0, 4))
def test_finite_principal_matches_branching(p, n):
    assert principal_finite(p, n).expand() == branching(p, n)


@pytest.mark.parametrize("p", [EMPTY, Partition([1]), Partition([2, 1]), Partition([3]), Partition([2, 2])])
def test_infinite_principal_is_limit(p):
    cut = 24
    assert principal_infinite(p).expand(cut).agrees_with(branching(p, 13).truncate(cut))


def test_skew_single_requires_strip():
    assert skew_single(Partition([2]), Partition([1, 1]), 3).is_zero()
    assert skew_single(Partition([3, 1]), Partition([1]), 3) == HalfSeries({9: 1})


@given(partitions(max_size=5), st.integers(0, 4))
def test_negation_sign(p, n):
    v = principal_finite(p, n)
    w = specialize(p, SpecializationTag(NEGATED_FINITE_RHO, n))
    assert w.equals(v.negate() if sum(p) % 2 else v)
    assert specialize(p, SpecializationTag(FINITE_RHO, n)).equals(v)
    assert specialize(p, SpecializationTag(INFINITE_RHO)).equals(principal_infinite(p))
    assert specialize(p, SpecializationTag(NEGATED_INFINITE_RHO)).equals(negated(principal_infinite(p), p))


def test_too_many_rows_vanish():
    assert principal_finite(Partition([1, 1, 1]), 2).zero


def test_tag_validation():
    with pytest.raises(ValueError):
        SpecializationTag("nope")
    with pytest.raises(ValueError):
        SpecializationTag(FINITE_RHO)


def test_dual_cauchy_at_small_size():
    # sum_p s_p(x) s_{p^t}(y) = prod (1 + x_i y_j) with two variables each
    cut = 40
    total = HalfSeries.zero(cut)
    for p in partitions_up_to(4):
        total = total + principal_finite(p, 2).expand() * principal_finite(conjugate(p), 2).expand()
    rhs = HalfSeries.one()
    for i in (1, 3):
        for j in (1, 3):
            rhs = rhs * HalfSeries({0: 1, i + j: 1})
    assert total.agrees_with(rhs.truncate(cut))
