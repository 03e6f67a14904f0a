"""Closed product formulas, built exactly as :class:`ProductForm` values.

Exponents follow the package convention: a factor ``(1 - q^k)`` is stored
as the doubled exponent ``2k``.
"""

from __future__ import annotations

from .partitions import (
    EMPTY,
    Partition,
    cell_stats,
    conjugate,
    enumerate_in_box,
    n_stat,
    norm_sq,
    to_frobenius,
)
from .qseries import HalfSeries, ProductForm
from .schur import negated, principal_finite, principal_infinite


def _check_symmetric(mu: Partition) -> Partition:
    mu = Partition(mu)
    if conjugate(mu) != mu:
        raise ValueError(f"{mu} is not symmetric")
    return mu


def macmahon_boxed(a: int, b: int, c: int) -> ProductForm:
    """Plane partitions in an ``a x b x c`` box."""
    if min(a, b, c) < 0:
        raise ValueError("box dimensions must be nonnegative")
    numer = [2 * (i + j + c - 1) for i in range(1, a + 1) for j in range(1, b + 1)]
    denom = [2 * (i + j - 1) for i in range(1, a + 1) for j in range(1, b + 1)]
    return ProductForm.build(numer, denom)


def full_macmahon(L: int, N: int, M: int) -> ProductForm:
    """``prod_{l <= L, n <= N} (1 - q^(l+n+M-1)) / (1 - q^(l+n-1))``."""
    if min(L, N, M) < 0:
        raise ValueError("dimensions must be nonnegative")
    numer = [2 * (l + n + M - 1) for l in range(1, L + 1) for n in range(1, N + 1)]
    denom = [2 * (l + n - 1) for l in range(1, L + 1) for n in range(1, N + 1)]
    return ProductForm.build(numer, denom)


def box_inverse(N: int, L: int) -> ProductForm:
    """``prod_{n <= N, l <= L} (1 - q^(n+l-1))^(-1)``."""
    return ProductForm.build(denom=[2 * (n + l - 1) for n in range(1, N + 1) for l in range(1, L + 1)])


def cell_factor(N: int, L: int, mu: Partition) -> ProductForm:
    """``prod_cells (1 - q^(N-c)) (1 - q^(L+c)) / (1 - q^h)``; zero when a factor vanishes."""
    numer, denom = [], []
    for s in cell_stats(Partition(mu)).values():
        numer += [2 * (N - s.content), 2 * (L + s.content)]
        denom.append(2 * s.hook)
    return ProductForm.build(numer, denom)


def limit_shape_product(N: int, L: int, mu: Partition, ignore_delta: bool = False) -> ProductForm:
    """Walls ``N + 1`` and ``L + 1`` away, infinite height, top section ``mu``."""
    mu = Partition(mu)
    if not ignore_delta and (mu.part(1) > N or conjugate(mu).part(1) > L):
        return ProductForm.zero_form()
    return box_inverse(N, L) * cell_factor(N, L, mu)


def strip_product(N: int, L: int) -> ProductForm:
    """``prod_{i,j >= 1} (1-q^(L+i+j-1)) (1-q^(N+i+j-1)) / ((1-q^(i+j-1)) (1-q^(L+N+i+j-1)))``.

    Each factor ``(1 - q^k)`` occurs ``k - s`` times in a block shifted by ``s``;
    the four blocks cancel beyond ``k = L + N``, leaving a finite product.
    """
    def count(m):
        return max(m, 0)

    numer, denom = [], []
    for k in range(1, L + N + 1):
        net = count(k - L) + count(k - N) - count(k) - count(k - L - N)
        if net > 0:
            numer += [2 * k] * net
        elif net < 0:
            denom += [2 * k] * (-net)
    return ProductForm.build(numer, denom)


def double_p1_amplitude(mu: Partition, L: int, N: int) -> ProductForm:
    """Open-closed amplitude of the double-P1 geometry with one representation ``mu``.

    Kahler parameters ``Q1 = q^L`` and ``Q2 = q^N``, in its simplified form.
    """
    mu = Partition(mu)
    pre = 2 * n_stat(conjugate(mu)) + sum(mu)
    return cell_factor(N, L, mu).shift(pre) * strip_product(N, L)


def corollary_check(mu: Partition, L: int, N: int, cutoff: int | None = None) -> bool:
    """Limit-shape product (constraints ignored) against ``q^(-|mu|^2/2)`` times the amplitude.

    Compared as cancelled product forms; with a ``cutoff`` (in q-units) the
    series expansions must also agree.
    """
    mu = Partition(mu)
    lhs = limit_shape_product(N, L, mu, ignore_delta=True)
    rhs = double_p1_amplitude(mu, L, N).shift(-norm_sq(mu))
    if not lhs.equals(rhs):
        return False
    if cutoff is not None:
        return lhs.expand(2 * cutoff).agrees_with(rhs.expand(2 * cutoff))
    return True


def exponent_identity(mu: Partition) -> bool:
    """``n(mu^t) + |mu|/2 = |mu|^2 / 2``, in doubled units."""
    mu = Partition(mu)
    return 2 * n_stat(conjugate(mu)) + sum(mu) == norm_sq(mu)


def symmetric_product(N: int, mu: Partition) -> ProductForm:
    """Symmetric plane partitions between walls ``N + 1`` apart with top section ``mu``.

    The diagonal cells contribute ``1 / (1 + q^h)``: the factor
    ``(1 - q^h) / (1 - q^(2h))``.
    """
    mu = _check_symmetric(mu)
    if mu.part(1) > N:
        return ProductForm.zero_form()
    numer, denom = [], []
    for (i, j), s in cell_stats(mu).items():
        numer.append(2 * (2 * N + 2 * s.content))
        if i == j:
            numer.append(2 * s.hook)
            denom.append(4 * s.hook)
        elif i < j:
            denom.append(4 * s.hook)
    return _symmetric_base(N) * ProductForm.build(numer, denom)


def symmetric_product_published(N: int, mu: Partition) -> ProductForm:
    """The variant with ``1 / (1 - q^h)`` on the diagonal; it disagrees with enumeration for nonempty ``mu``."""
    mu = _check_symmetric(mu)
    if mu.part(1) > N:
        return ProductForm.zero_form()
    numer, denom = [], []
    for (i, j), s in cell_stats(mu).items():
        numer.append(2 * (2 * N + 2 * s.content))
        if i == j:
            denom.append(2 * s.hook)
        elif i < j:
            denom.append(4 * s.hook)
    return _symmetric_base(N) * ProductForm.build(numer, denom)


def _symmetric_base(N: int) -> ProductForm:
    denom = []
    for i in range(N):
        denom.append(2 * (2 * i + 1))
        denom += [4 * (i + j + 1) for j in range(i)]
    return ProductForm.build(denom=denom)


def cauchy_terms(M: int, N: int, L: int) -> list[tuple[Partition, ProductForm]]:
    """Nonzero terms ``s_mu(x|_L) q^(M|mu|) s_{mu^t}(-x|_N)`` of the finite Cauchy sum."""
    out = []
    for mu in enumerate_in_box(L, N):
        mu_t = conjugate(mu)
        term = principal_finite(mu, L) * negated(principal_finite(mu_t, N), mu_t).shift(2 * M * sum(mu))
        if not term.zero:
            out.append((mu, term))
    return out


def cauchy_identity_check(M: int, N: int, L: int) -> bool:
    """The finite Cauchy sum equals ``prod_{n <= N, l <= L} (1 - q^(n+l+M-1))`` exactly."""
    rhs = ProductForm.build([2 * (n + l + M - 1) for n in range(1, N + 1) for l in range(1, L + 1)])
    # every term is a polynomial in q^(1/2) of degree at most this
    top = 2 * N * L * (N + L + M)
    total = HalfSeries.zero(top)
    for _, term in cauchy_terms(M, N, L):
        total = total + term.expand(top)
    return total.agrees_with(rhs.expand().truncate(top))


def decomposition_terms(L: int, N: int, M: int) -> list[tuple[Partition, ProductForm]]:
    """Per-``mu`` terms of the box sum that rebuilds the full MacMahon formula.

    Each term is the limit-shape value with walls ``N + 1, L + 1`` shifted by
    ``q^(n(mu) + |mu|/2)``, times ``(-1)^|mu| q^(M|mu|) s_{mu^t}`` at the
    principal specialization.
    """
    out = []
    for mu in enumerate_in_box(L, N):
        first = limit_shape_product(N, L, mu).shift(2 * n_stat(mu) + sum(mu))
        mu_t = conjugate(mu)
        second = negated(principal_infinite(mu_t), mu_t).shift(2 * M * sum(mu))
        term = first * second
        if not term.zero:
            out.append((mu, term))
    return out


def macmahon_via_decomposition(L: int, N: int, M: int, cutoff: int, second_parts: dict | None = None) -> HalfSeries:
    """Sum of :func:`decomposition_terms` through ``q^cutoff``.

    ``second_parts`` may map ``mu`` to an independently computed value of
    ``(-1)^|mu| q^(M|mu|) s_{mu^t}`` (for instance an operator evaluation);
    it then replaces the closed form.
    """
    total = HalfSeries.zero(2 * cutoff)
    for mu in enumerate_in_box(L, N):
        first = limit_shape_product(N, L, mu).shift(2 * n_stat(mu) + sum(mu))
        if first.zero:
            continue
        if second_parts is not None and mu in second_parts:
            total = total + first.expand(2 * cutoff) * second_parts[mu]
        else:
            mu_t = conjugate(mu)
            second = negated(principal_infinite(mu_t), mu_t).shift(2 * M * sum(mu))
            total = total + (first * second).expand(2 * cutoff)
    return total.truncate(2 * cutoff)


def induction_factor(N: int, L: int, mu: Partition) -> ProductForm:
    """Ratio of limit-shape values for ``mu`` and ``mu`` with its first Frobenius hook removed.

    Built from the commutation factors of the outermost arm ``m1`` and leg
    ``n1``, independently of any hook or content bookkeeping.
    """
    f = to_frobenius(Partition(mu))
    if not f.arms:
        return ProductForm.one()
    m, n = f.arms, f.legs
    m1, n1, r = m[0], n[0], len(m)
    numer: list[int] = []
    denom: list[int] = []
    numer += [2 * (i + 1) for i in range(N - m1 - 1, N + n1)]
    numer += [2 * (i + 1) for i in range(L - n1 - 1, L + m1)]
    denom += [2 * (i + 1) for i in range(m1)]
    numer += [2 * (m1 - m[i]) for i in range(1, r)]
    denom += [2 * (m1 + n[i] + 1) for i in range(r)]
    denom += [2 * (i + 1) for i in range(n1)]
    numer += [2 * (n1 - n[i]) for i in range(1, r)]
    denom += [2 * (m[i] + n1 + 1) for i in range(1, r)]
    return ProductForm.build(numer, denom)


def peel_first_hook(mu: Partition) -> Partition:
    """``mu`` without its outermost Frobenius hook."""
    mu = Partition(mu)
    if not mu:
        return EMPTY
    return Partition([x - 1 for x in mu[1:] if x > 1])
