"""Schur-function evaluations needed for the plane-partition formulas.

Principal specializations use ``x_i = q^(i - 1/2)``; the finite variant keeps
only the first ``N`` variables.  Results are exact :class:`ProductForm` values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .partitions import Partition, cell_stats, interlaces, n_stat
from .qseries import HalfSeries, ProductForm

FINITE_RHO = "finite_rho"
INFINITE_RHO = "infinite_rho"
NEGATED_FINITE_RHO = "negated_finite_rho"
NEGATED_INFINITE_RHO = "negated_infinite_rho"


@dataclass(frozen=True)
class SpecializationTag:
    kind: str
    N: int | None = None

    def __post_init__(self):
        finite = self.kind in (FINITE_RHO, NEGATED_FINITE_RHO)
        if self.kind not in (FINITE_RHO, INFINITE_RHO, NEGATED_FINITE_RHO, NEGATED_INFINITE_RHO):
            raise ValueError(f"unknown specialization {self.kind!r}")
        if finite and (self.N is None or self.N < 0):
            raise ValueError("finite specializations need N >= 0")


def skew_single(a: Partition, b: Partition, z_exp: int) -> HalfSeries:
    """``s_{a/b}(z)`` for one variable ``z = q^(z_exp/2)``."""
    if not interlaces(a, b):
        return HalfSeries.zero()
    return HalfSeries.monomial(z_exp * (sum(a) - sum(b)))


def principal_finite(p: Partition, N: int) -> ProductForm:
    """``s_p(q^(1/2), q^(3/2), ..., q^(N-1/2))``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if len(p) > N:
        return ProductForm.zero_form()
    stats = cell_stats(p).values()
    return ProductForm.build(
        numer=[2 * (N + s.content) for s in stats],
        denom=[2 * s.hook for s in stats],
        prefactor=2 * n_stat(p) + sum(p),
    )


def principal_infinite(p: Partition) -> ProductForm:
    """``s_p(q^(1/2), q^(3/2), ...)``."""
    return ProductForm.build(
        denom=[2 * s.hook for s in cell_stats(p).values()],
        prefactor=2 * n_stat(p) + sum(p),
    )


def negated(value: ProductForm, p: Partition) -> ProductForm:
    """Evaluate at the negated variables: homogeneity gives a factor ``(-1)^|p|``."""
    return value.negate() if sum(p) % 2 else value


def specialize(p: Partition, tag: SpecializationTag) -> ProductForm:
    if tag.kind == FINITE_RHO:
        return principal_finite(p, tag.N)
    if tag.kind == INFINITE_RHO:
        return principal_infinite(p)
    if tag.kind == NEGATED_FINITE_RHO:
        return negated(principal_finite(p, tag.N), p)
    return negated(principal_infinite(p), p)

