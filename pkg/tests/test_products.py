import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import partitions
from ppfn import products
from ppfn.enumeration import INF, enum_boxed, enum_diagonal, enum_symmetric
from ppfn.partitions import EMPTY, Partition, partitions_up_to
from ppfn.qseries import HalfSeries, expand_inverse_factor

ONE = Partition([1])
SYMMETRIC_MU = [EMPTY, ONE, Partition([2, 1]), Partition([2, 2]), Partition([3, 1, 1])]


@pytest.mark.parametrize("a,b,c", [(1, 1, 1), (2, 1, 3), (2, 2, 2), (3, 2, 1), (0, 2, 2)])
def test_macmahon_boxed(a, b, c):
    f = products.macmahon_boxed(a, b, c)
    assert f.expand() == enum_boxed(a, b, c)
    for perm in itertools.permutations((a, b, c)):
        assert products.macmahon_boxed(*perm).equals(f)


def test_full_macmahon_is_boxed():
    assert products.full_macmahon(2, 3, 1).equals(products.macmahon_boxed(2, 3, 1))
    with pytest.raises(ValueError):
        products.full_macmahon(-1, 1, 1)


@pytest.mark.parametrize("N,L", [(1, 1), (2, 1), (2, 3)])
@pytest.mark.parametrize("mu", [EMPTY, ONE, Partition([2]), Partition([1, 1]), Partition([2, 1])])
def test_limit_shape_against_enumeration(N, L, mu):
    f = products.limit_shape_product(N, L, mu)
    e = enum_diagonal(N + 1, INF, L + 1, EMPTY, mu, EMPTY, 8)
    assert f.expand(16).agrees_with(e)


@pytest.mark.parametrize("mu", [Partition([2]), Partition([3, 1]), Partition([1, 1, 1, 1])])
def test_limit_shape_outside_walls_is_zero(mu):
    # a cell of content N (or -L) kills the product even without the explicit check
    assert products.limit_shape_product(1, 3, mu).zero
    assert products.limit_shape_product(1, 3, mu, ignore_delta=True).zero


@pytest.mark.parametrize("N,L", [(1, 1), (1, 3), (2, 2), (3, 1), (2, 4)])
def test_strip_product_is_the_infinite_product(N, L):
    cut = 30
    brute = HalfSeries.one()
    for i in range(1, cut + 1):
        for j in range(1, cut + 1 - i + 1):
            for shift, up in ((L, True), (N, True), (0, False), (L + N, False)):
                k = shift + i + j - 1
                if k > cut // 2:
                    continue
                if up:
                    brute = (brute * HalfSeries({0: 1, 2 * k: -1})).truncate(cut)
                else:
                    brute = brute * expand_inverse_factor(2 * k, cut)
    assert products.strip_product(N, L).expand(cut).agrees_with(brute)


@given(partitions(max_size=5), st.integers(1, 6), st.integers(1, 6))
def test_limit_shape_equals_amplitude(mu, L, N):
    assert products.corollary_check(mu, L, N, cutoff=20)


@given(partitions(max_size=8))
def test_exponent_identity(mu):
    assert products.exponent_identity(mu)


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("mu", SYMMETRIC_MU)
def test_symmetric_product(N, mu):
    if mu.part(1) > N:
        assert products.symmetric_product(N, mu).zero
        return
    assert products.symmetric_product(N, mu).expand(24).agrees_with(enum_symmetric(N, mu, 12))


def test_published_symmetric_formula_disagrees():
    """The variant with 1/(1 - q^h) on diagonal cells is off for every nonempty mu."""
    for N in (1, 2, 3):
        for mu in SYMMETRIC_MU:
            if mu.part(1) > N:
                continue
            truth = enum_symmetric(N, mu, 10)
            published = products.symmetric_product_published(N, mu).expand(20)
            assert published.agrees_with(truth) == (not mu)
    # walls two apart, one cell on top: the only filling is the top cell itself
    assert enum_symmetric(1, ONE, 10).agrees_with(HalfSeries.one(20))
    assert products.symmetric_product_published(1, ONE).equals(
        products.symmetric_product(1, ONE) * products.symmetric_product_published(1, ONE))


def test_symmetric_rejects_asymmetric():
    with pytest.raises(ValueError):
        products.symmetric_product(2, Partition([2]))


@pytest.mark.parametrize("M", [0, 1, 3])
@pytest.mark.parametrize("N,L", [(0, 2), (1, 1), (2, 3), (4, 4)])
def test_cauchy(M, N, L):
    assert products.cauchy_identity_check(M, N, L)


def test_cauchy_terms_skip_zeros():
    terms = products.cauchy_terms(1, 1, 2)
    assert all(len(mu) <= 2 and mu.part(1) <= 1 for mu, _ in terms)
    assert len(terms) == 3


@pytest.mark.parametrize("L,N,M", [(1, 1, 1), (2, 1, 2), (2, 2, 2), (3, 2, 1)])
def test_decomposition(L, N, M):
    full = products.full_macmahon(L, N, M).expand()
    deg = full.degree() // 2
    assert products.macmahon_via_decomposition(L, N, M, deg).agrees_with(full)
    terms = products.decomposition_terms(L, N, M)
    assert all(len(mu) <= L and mu.part(1) <= N for mu, _ in terms)


@pytest.mark.parametrize("N,L", [(1, 1), (2, 2), (3, 2), (4, 3)])
def test_induction_factor(N, L):
    for mu in partitions_up_to(5):
        if mu.part(1) > N or len(mu) > L:
            continue
        inner = products.peel_first_hook(mu)
        ratio = products.limit_shape_product(N, L, mu) / products.limit_shape_product(N, L, inner)
        assert products.induction_factor(N, L, mu).equals(ratio), mu


def test_peel_first_hook():
    assert products.peel_first_hook(Partition([4, 3, 1])) == Partition([2])
    assert products.peel_first_hook(EMPTY) == EMPTY
    assert products.peel_first_hook(Partition([3, 3, 2])) == Partition([2, 1])
