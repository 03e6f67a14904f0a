"""Brute-force enumeration of plane partitions over explicit height grids.

These oracles work straight from the set definitions: a finite region of
cells, some heights pinned by boundary data, the rest free and subject to
weak decrease along rows and columns.  Nothing here touches the operator
machinery, so agreement with it is meaningful.

Cells are 1-based ``(i, j)``; ``i`` indexes rows (the x direction) and ``j``
columns (the y direction).  Diagonal slice ``k`` is the set ``j - i = k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .partitions import EMPTY, Partition, binom2, conjugate
from .qseries import HalfSeries

INF = math.inf
_TOP = 1 << 60  # stands in for an infinite height


def _finite(x) -> bool:
    return x is not None and x != INF


@dataclass
class GridRegion:
    """Rows of cells with fixed or free heights.

    ``rows[i]`` is ``(first_col, values)`` where ``values`` lists, per
    column, either an int (pinned height), ``None`` (free), or ``_TOP``
    (infinitely tall, contributes nothing to the weight).  ``cap`` bounds
    free heights from above (inclusive); ``None`` means unbounded.
    """

    rows: list[tuple[int, list]]
    cap: int | None
    weights: dict[tuple[int, int], int] = field(default_factory=dict)

    def weight_of(self, i: int, j: int) -> int:
        return self.weights.get((i, j), 1)


def _row_sequences(first, values, above_first, above, cap, budget, weight_row):
    """Weakly decreasing fillings of one row compatible with the row above.

    Yields ``(heights, weighted_sum)``.
    """
    n = len(values)
    out = [0] * n

    def upper(idx, left):
        j = first + idx
        bound = left
        if above is not None:
            a_idx = j - above_first
            if 0 <= a_idx < len(above):
                bound = min(bound, above[a_idx])
        if cap is not None:
            bound = min(bound, cap)
        return bound

    def rec(idx, left, total):
        if total > budget:
            return
        if idx == n:
            yield tuple(out), total
            return
        v = values[idx]
        w = weight_row[idx]
        j = first + idx
        if v is not None:
            # pinned heights must still respect the neighbours
            if v > left:
                return
            if above is not None:
                a_idx = j - above_first
                if 0 <= a_idx < len(above) and v > above[a_idx]:
                    return
            out[idx] = v
            yield from rec(idx + 1, v, total + (0 if v == _TOP else w * v))
            return
        hi = upper(idx, left)
        if hi == _TOP:
            hi = budget - total if w else 0
            if hi < 0:
                return
        for h in range(0, hi + 1):
            if total + w * h > budget:
                break
            out[idx] = h
            yield from rec(idx + 1, h, total + w * h)

    yield from rec(0, _TOP, 0)


def count_region(region: GridRegion, budget: int) -> dict[int, int]:
    """Generating polynomial ``{total: count}`` over all fillings, totals ``<= budget``."""
    rows = region.rows
    weight_rows = [
        [region.weight_of(i + 1, first + t) for t in range(len(values))]
        for i, (first, values) in enumerate(rows)
    ]

    @lru_cache(maxsize=None)
    def rest(i: int, prev: tuple | None, room: int) -> tuple:
        if i == len(rows):
            return ((0, 1),)
        first, values = rows[i]
        above_first = rows[i - 1][0] if i > 0 else 0
        acc: dict[int, int] = {}
        for seq, s in _row_sequences(first, values, above_first, prev, region.cap, room, weight_rows[i]):
            for t, c in rest(i + 1, seq, room - s):
                acc[s + t] = acc.get(s + t, 0) + c
        return tuple(sorted(acc.items()))

    return dict(rest(0, None, budget))


def iter_fillings(region: GridRegion, budget: int) -> Iterator[tuple[tuple, int]]:
    """Every filling as ``(rows_of_heights, weighted_total)``."""
    rows = region.rows

    def rec(i, prev, room, acc):
        if i == len(rows):
            yield tuple(acc), budget - room
            return
        first, values = rows[i]
        above_first = rows[i - 1][0] if i > 0 else 0
        weight_row = [region.weight_of(i + 1, first + t) for t in range(len(values))]
        for seq, s in _row_sequences(first, values, above_first, prev, region.cap, room, weight_row):
            acc.append(seq)
            yield from rec(i + 1, seq, room - s, acc)
            acc.pop()

    yield from rec(0, None, budget, [])


# region builders


def _height_cell(i, j, mu_t, N):
    """Pinned height forced by the top section ``mu^t``, or ``None`` when free."""
    if j <= mu_t.part(i):
        return _TOP if not _finite(N) else int(N)
    return None


def diagonal_region(L: int, N, M: int, lam: Partition, mu: Partition, nu: Partition) -> GridRegion | None:
    """Cells of a diagonal problem, or ``None`` when the set is empty."""
    lam_t, mu_t = conjugate(lam), conjugate(mu)
    # large enough to hold both boundary slices in full
    n_rows = max(len(lam_t) + L - 1, len(nu), len(mu_t), 1)
    n_cols = max(len(nu) + M - 1, len(lam_t))
    rows = []
    top_cells = set(mu_t.cells())
    seen_top = set()
    for i in range(1, n_rows + 1):
        first = max(1, i - L + 1)
        last = min(n_cols, i + M - 1)
        values = []
        for j in range(first, last + 1):
            k = j - i
            forced = _height_cell(i, j, mu_t, N)
            if k == -L + 1 == M - 1:
                if lam_t.part(j) != nu.part(i):
                    return None
                v = nu.part(i)
            elif k == -L + 1:
                v = lam_t.part(j)
            elif k == M - 1:
                v = nu.part(i)
            else:
                v = None
            if forced is not None:
                seen_top.add((i, j))
                if v is not None and v != forced:
                    return None
                v = forced
            elif v is not None and _finite(N) and v >= N:
                return None
            values.append(v)
        rows.append((first, values))
    if seen_top != top_cells:
        return None  # part of the top section falls outside the region
    cap = int(N) - 1 if _finite(N) else None
    return GridRegion(rows, cap)


def perpendicular_region(L: int, N, M: int, lam: Partition, mu: Partition, nu: Partition) -> GridRegion | None:
    lam_t, mu_t = conjugate(lam), conjugate(mu)
    if len(lam_t) > M or len(nu) > L:
        return None
    if len(mu_t) > L or mu_t.part(1) > M:
        return None
    rows = []
    for i in range(1, L + 1):
        values = []
        for j in range(1, M + 1):
            forced = _height_cell(i, j, mu_t, N)
            v = None
            if i == L:
                v = lam_t.part(j)
            if j == M:
                w = nu.part(i)
                if v is not None and v != w:
                    return None
                v = w
            if forced is not None:
                if v is not None and v != forced:
                    return None
                v = forced
            elif v is not None and _finite(N) and v >= N:
                return None
            values.append(v)
        rows.append((1, values))
    cap = int(N) - 1 if _finite(N) else None
    return GridRegion(rows, cap)


def symmetric_half_region(N: int, mu: Partition) -> GridRegion | None:
    """Upper triangle ``j >= i`` of the symmetric problem with walls ``N + 1`` apart.

    Off-diagonal cells carry weight 2 for their mirror images.
    """
    if conjugate(mu) != mu:
        raise ValueError(f"{mu} is not symmetric")
    if mu.part(1) > N:
        return None
    rows = []
    weights = {}
    for i in range(1, N + 1):
        values = []
        for j in range(i, i + N):
            values.append(_TOP if j <= mu.part(i) else None)
            if j > i:
                weights[(i, j)] = 2
        values.append(0)  # the empty boundary slice at distance N
        weights[(i, i + N)] = 2
        rows.append((i, values))
    return GridRegion(rows, None, weights)


def _check_dims(L, M):
    if not (_finite(L) and _finite(M)) or L < 1 or M < 1:
        raise ValueError("enumeration needs finite positive L and M")


def _to_series(counts: dict[int, int], shift: int, budget: int, exact: bool) -> HalfSeries:
    terms = {2 * (e + shift): c for e, c in counts.items()}
    return HalfSeries(terms, None if exact else 2 * (budget + shift))


def enum_boxed(a: int, b: int, c: int) -> HalfSeries:
    """Plane partitions in an ``a x b`` grid with heights ``<= c``; exact polynomial."""
    if min(a, b, c) < 0:
        raise ValueError("box dimensions must be nonnegative")
    if a == 0 or b == 0 or c == 0:
        return HalfSeries.one()
    region = GridRegion([(1, [None] * b) for _ in range(a)], c)
    return _to_series(count_region(region, a * b * c), 0, a * b * c, True)


def enum_diagonal(L: int, N, M: int, lam: Partition, mu: Partition, nu: Partition, size_budget: int) -> HalfSeries:
    """Diagonal-boundary partition function by enumeration.

    Finite ``N`` gives an exact Laurent polynomial (``size_budget`` is then
    only a floor on the reported range).  For ``N = inf`` the infinitely tall
    columns are dropped from the weight, and terms up to ``q^size_budget``
    are reported.
    """
    _check_dims(L, M)
    shift = -binom2(lam) - binom2(conjugate(nu))
    region = diagonal_region(L, N, M, lam, mu, nu)
    exact = _finite(N)
    if region is None:
        return HalfSeries.zero(None if exact else 2 * size_budget)
    if exact:
        cells = sum(len(v) for _, v in region.rows)
        return _to_series(count_region(region, cells * int(N)), shift, 0, True)
    return _to_series(count_region(region, size_budget - shift), shift, size_budget - shift, False)


def enum_perpendicular(L: int, N, M: int, lam: Partition, mu: Partition, nu: Partition, size_budget: int) -> HalfSeries:
    _check_dims(L, M)
    region = perpendicular_region(L, N, M, lam, mu, nu)
    exact = _finite(N)
    if region is None:
        return HalfSeries.zero(None if exact else 2 * size_budget)
    if exact:
        return _to_series(count_region(region, L * M * int(N)), 0, 0, True)
    return _to_series(count_region(region, size_budget), 0, size_budget, False)


def enum_symmetric(N: int, mu: Partition, size_budget: int) -> HalfSeries:
    """Symmetric plane partitions between walls ``N + 1`` apart with top section ``mu``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    region = symmetric_half_region(N, mu)
    if region is None:
        return HalfSeries.zero(2 * size_budget)
    return _to_series(count_region(region, size_budget), 0, size_budget, False)


def enum_symmetric_full(N: int, mu: Partition, size_budget: int) -> HalfSeries:
    """Same count, filtering the full diagonal-problem grid for symmetric fillings."""
    if conjugate(mu) != mu:
        raise ValueError(f"{mu} is not symmetric")
    region = diagonal_region(N + 1, INF, N + 1, EMPTY, mu, EMPTY)
    if region is None:
        return HalfSeries.zero(2 * size_budget)
    counts: dict[int, int] = {}
    for grid, total in iter_fillings(region, size_budget):
        heights = {}
        for i, ((first, _), seq) in enumerate(zip(region.rows, grid), start=1):
            for t, h in enumerate(seq):
                heights[(i, first + t)] = h
        if all(heights.get((j, i), 0) == h for (i, j), h in heights.items()):
            counts[total] = counts.get(total, 0) + 1
    return _to_series(counts, 0, size_budget, False)


def grid_slices(heights: dict[tuple[int, int], int], k_min: int, k_max: int) -> dict[int, Partition]:
    """Diagonal slices ``k -> partition`` of a height map."""
    out = {}
    for k in range(k_min, k_max + 1):
        parts = []
        t = 1
        while True:
            i, j = (t - k, t) if k < 0 else (t, t + k)
            h = heights.get((i, j), 0)
            if h == 0:
                break
            parts.append(h)
            t += 1
        out[k] = Partition(parts)
    return out
