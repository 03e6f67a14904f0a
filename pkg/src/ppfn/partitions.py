"""Integer partitions and Young-diagram statistics.

A :class:`Partition` is an immutable, hashable tuple of positive parts in
weakly decreasing order.  Cells are addressed 1-based as ``(row, col)``,
matching the usual Young-diagram conventions; the tuple itself is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is the empty one."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        return tuple.__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts: tuple) -> "Partition":
        # caller guarantees canonical form
        return tuple.__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return format_partition(self)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The 1-based part ``p_i``, zero past the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield (i, j)

    def contains(self, other: "Partition") -> bool:
        """True when the diagram of ``other`` fits inside this one."""
        if len(other) > len(self):
            return False
        return all(a >= b for a, b in zip(self, other))


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    """Parse ``"5,4,4,1"``; ``"[]"``, ``""`` and ``"0"`` give the empty partition."""
    text = text.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    text = text.strip()
    if not text:
        return EMPTY
    return Partition(int(t) for t in text.split(","))


def format_partition(p: Partition) -> str:
    return ",".join(str(x) for x in p) if p else "[]"


def conjugate(p: Partition) -> Partition:
    if not p:
        return EMPTY
    return Partition._trusted(tuple(sum(1 for x in p if x >= i) for i in range(1, p[0] + 1)))


@dataclass(frozen=True)
class FrobeniusCoords:
    """Arm lengths ``m_i = p_i - i`` and leg lengths ``n_j = p'_j - j`` along the diagonal."""

    arms: tuple[int, ...]
    legs: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.arms)

    def __post_init__(self):
        if len(self.arms) != len(self.legs):
            raise ValueError("arms and legs must have equal length")
        for seq in (self.arms, self.legs):
            if any(a <= b for a, b in zip(seq, seq[1:])) or any(x < 0 for x in seq):
                raise ValueError(f"Frobenius coordinates must strictly decrease to >= 0: {seq}")

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.arms)) + "|" + ",".join(map(str, self.legs)) + ")"


def frobenius_rank(p: Partition) -> int:
    return sum(1 for i, x in enumerate(p, start=1) if x >= i)


def to_frobenius(p: Partition) -> FrobeniusCoords:
    r = frobenius_rank(p)
    pt = conjugate(p)
    return FrobeniusCoords(
        tuple(p[i] - (i + 1) for i in range(r)),
        tuple(pt[i] - (i + 1) for i in range(r)),
    )


def from_frobenius(f: FrobeniusCoords) -> Partition:
    r = f.rank
    if r == 0:
        return EMPTY
    # rows 1..r come from the arms; rows below the diagonal from the legs
    rows = [f.arms[i] + i + 1 for i in range(r)]
    n_rows = f.legs[0] + 1
    for i in range(r, n_rows):
        rows.append(sum(1 for j in range(r) if f.legs[j] + j + 1 >= i + 1))
    return Partition(rows)


def content(i: int, j: int) -> int:
    return j - i


def hook(p: Partition, i: int, j: int, pt: Partition | None = None) -> int:
    if pt is None:
        pt = conjugate(p)
    return p[i - 1] + pt[j - 1] - i - j + 1


@dataclass(frozen=True)
class CellStats:
    content: int
    hook: int


def cell_stats(p: Partition) -> dict[tuple[int, int], CellStats]:
    pt = conjugate(p)
    return {(i, j): CellStats(j - i, p[i - 1] + pt[j - 1] - i - j + 1) for i, j in p.cells()}


def hooks(p: Partition) -> list[int]:
    pt = conjugate(p)
    return [p[i - 1] + pt[j - 1] - i - j + 1 for i, j in p.cells()]


def contents(p: Partition) -> list[int]:
    return [j - i for i, j in p.cells()]


def n_stat(p: Partition) -> int:
    """``sum (i-1) p_i``."""
    return sum(i * x for i, x in enumerate(p))


def binom2(p: Partition) -> int:
    """``sum C(p_i, 2)``."""
    return sum(x * (x - 1) // 2 for x in p)


def norm_sq(p: Partition) -> int:
    return sum(x * x for x in p)


def interlaces(a: Partition, b: Partition) -> bool:
    """``a`` interlaces ``b`` (written a > b): a_j >= b_j >= a_{j+1} for all j."""
    if len(b) > len(a) or len(a) > len(b) + 1:
        return False
    for j in range(len(a)):
        bj = b[j] if j < len(b) else 0
        if bj > a[j]:
            return False
        if j + 1 < len(a) and a[j + 1] > bj:
            return False
    return True


def vertical_strip(a: Partition, b: Partition) -> bool:
    """True when ``a / b`` is a vertical strip (at most one cell per row)."""
    if len(a) < len(b):
        return False
    for j in range(len(a)):
        bj = b[j] if j < len(b) else 0
        if not (bj <= a[j] <= bj + 1):
            return False
    return True


def is_symmetric(p: Partition) -> bool:
    return conjugate(p) == p


def enumerate_in_box(rows: int, cols: int) -> Iterator[Partition]:
    """Every partition with at most ``rows`` parts, each at most ``cols``.

    Yields in order of size, then lexicographically (largest first part first).
    """
    if rows < 0 or cols < 0:
        raise ValueError("box dimensions must be nonnegative")
    for n in range(rows * cols + 1):
        yield from _partitions_of(n, rows, cols)


def partitions_of(n: int, max_len: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` in reverse-lexicographic order."""
    yield from _partitions_of(n, n if max_len is None else max_len, n if max_part is None else max_part)


def _partitions_of(n: int, max_len: int, max_part: int) -> Iterator[Partition]:
    def rec(remaining, cap, slots, prefix):
        if remaining == 0:
            yield Partition._trusted(tuple(prefix))
            return
        if slots == 0:
            return
        for first in range(min(remaining, cap), 0, -1):
            if first * slots < remaining:
                break
            prefix.append(first)
            yield from rec(remaining - first, first, slots - 1, prefix)
            prefix.pop()

    yield from rec(n, max_part, max_len, [])


def partitions_up_to(max_size: int) -> Iterator[Partition]:
    for n in range(max_size + 1):
        yield from partitions_of(n)
