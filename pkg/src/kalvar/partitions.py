"""Partition combinatorics: shapes, boxes, Weyl dimensions, tableau counts.

Conventions used across the package: a partition is a weakly decreasing
tuple of positive integers with trailing zeros trimmed; a box (r, c)
constrains a partition to at most r parts, each at most c; dimension
counts are exact machine integers.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod
from typing import Iterable, NamedTuple, Sequence


class Box(NamedTuple):
    """Containment constraint: at most `rows` parts, each at most `cols`."""

    rows: int
    cols: int


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are trimmed on construction, so equality and hashing
    agree with the underlying shape.  Raises ValueError on a sequence that
    is not weakly decreasing or has a negative entry.
    """

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(int(a) for a in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts!r}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts!r}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """The i-th part, 0-based, zero beyond the length."""
        return self[i] if 0 <= i < len(self) else 0

    def conjugate(self) -> "Partition":
        """Transpose the Young diagram (columns become rows)."""
        if not self:
            return Partition()
        return Partition(sum(1 for a in self if a > j) for j in range(self[0]))

    def contains(self, other: "Partition") -> bool:
        """Diagram containment: other fits inside self row by row."""
        return all(self.part(i) >= other.part(i) for i in range(len(other)))

    def fits(self, box: Box) -> bool:
        return len(self) <= box.rows and (not self or self[0] <= box.cols)

    def padded(self, length: int) -> tuple[int, ...]:
        """Parts extended with zeros to exactly `length` entries."""
        if len(self) > length:
            raise ValueError(f"partition {self!r} longer than {length}")
        return tuple(self) + (0,) * (length - len(self))

    def __repr__(self) -> str:
        return f"Partition{tuple(self)!r}"


def conjugate(lam: Partition) -> Partition:
    return Partition(lam).conjugate()


class SkewShape(NamedTuple):
    """Skew diagram outer/inner; inner must be contained in outer."""

    outer: Partition
    inner: Partition

    @staticmethod
    def of(outer: Iterable[int], inner: Iterable[int] = ()) -> "SkewShape":
        outer_p, inner_p = Partition(outer), Partition(inner)
        if not outer_p.contains(inner_p):
            raise ValueError(f"inner {inner_p!r} not contained in outer {outer_p!r}")
        return SkewShape(outer_p, inner_p)

    @property
    def size(self) -> int:
        return self.outer.size - self.inner.size

    def column_heights(self) -> tuple[int, ...]:
        ot, it = self.outer.conjugate(), self.inner.conjugate()
        return tuple(ot.part(j) - it.part(j) for j in range(len(ot)))

    def is_horizontal_strip(self) -> bool:
        """At most one cell per column."""
        return all(h <= 1 for h in self.column_heights())


def partitions_in_box(
    box: Box | tuple[int, int],
    size: int | None = None,
    length: int | None = None,
) -> list[Partition]:
    """All partitions contained in the box, optionally filtered by exact
    size or exact number of parts.

    Order is deterministic: graded by size, then lexicographically
    descending within a size.
    """
    box = Box(*box)
    if box.rows < 0 or box.cols < 0:
        raise ValueError(f"box sides must be nonnegative: {box}")
    out: list[Partition] = []

    def extend(prefix: list[int], bound: int) -> None:
        out.append(Partition(prefix))
        if len(prefix) == box.rows:
            return
        for a in range(1, bound + 1):
            prefix.append(a)
            extend(prefix, a)
            prefix.pop()

    extend([], box.cols)
    if size is not None:
        out = [p for p in out if p.size == size]
    if length is not None:
        out = [p for p in out if p.length == length]
    out.sort(key=lambda p: (p.size, tuple(-a for a in p)))
    return out


def schur_dim(eta: Sequence[int], m: int) -> int:
    """Dimension of the irreducible GL(m) representation with highest
    weight eta, by the Weyl dimension product.

    eta must be weakly decreasing; entries may be negative.  A partition
    with more than m parts has dimension 0.  Exact integer arithmetic.
    """
    eta = tuple(int(a) for a in eta)
    for a, b in zip(eta, eta[1:]):
        if a < b:
            raise ValueError(f"weight must be weakly decreasing: {eta!r}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if len(eta) > m:
        tail = eta[m:]
        if all(a == 0 for a in tail):
            eta = eta[:m]
        elif tail[0] > 0 and eta[-1] >= 0:
            return 0
        else:
            raise ValueError(f"weight {eta!r} has negative entries beyond length {m}")
    if len(eta) < m:
        if eta and eta[-1] < 0:
            raise ValueError(f"cannot zero-pad {eta!r} to length {m}")
        eta = eta + (0,) * (m - len(eta))
    num = 1
    den = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= eta[i] - eta[j] + j - i
            den *= j - i
    assert num % den == 0
    return num // den


@lru_cache(maxsize=None)
def _skew_ssyt_count(outer: tuple[int, ...], inner: tuple[int, ...], m: int) -> int:
    """Count semistandard fillings of outer/inner with entries in 1..m.

    Rows weakly increase left to right, columns strictly increase top to
    bottom.  Direct backtracking over cells in row order.
    """
    nrows = len(outer)
    spans = [(inner[r] if r < len(inner) else 0, outer[r]) for r in range(nrows)]
    cells = [(r, c) for r, (a, b) in enumerate(spans) for c in range(a, b)]
    if not cells:
        return 1
    if m <= 0:
        return 0
    # a column taller than m admits no strictly increasing filling
    heights: dict[int, int] = {}
    for _, c in cells:
        heights[c] = heights.get(c, 0) + 1
    if max(heights.values()) > m:
        return 0

    ncells = len(cells)
    grid = [[0] * b for _, b in spans]
    total = 0

    def fill(k: int) -> None:
        nonlocal total
        if k == ncells:
            total += 1
            return
        r, c = cells[k]
        lo = 1
        if c > spans[r][0]:
            lo = grid[r][c - 1]
        if r > 0 and spans[r - 1][0] <= c < spans[r - 1][1]:
            above = grid[r - 1][c] + 1
            if above > lo:
                lo = above
        row = grid[r]
        for v in range(lo, m + 1):
            row[c] = v
            fill(k + 1)

    fill(0)
    return total


def skew_schur_dim(shape: SkewShape, m: int) -> int:
    """Number of semistandard tableaux of the skew shape with entries
    in 1..m (= dim of the skew Schur functor applied to an m-dim space)."""
    return _skew_ssyt_count(tuple(shape.outer), tuple(shape.inner), m)


def cauchy_terms(p: int, dim_e: int, dim_f: int) -> list[tuple[Partition, Partition]]:
    """Index the degree-p exterior power of a tensor product of spaces of
    dimensions dim_e and dim_f: pairs (lam, lam^T) with |lam| = p, at most
    dim_e rows and dim_f columns.  Deterministic graded order."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    return [
        (lam, lam.conjugate())
        for lam in partitions_in_box(Box(dim_e, dim_f), size=p)
    ]


def tilde_shift(lam: Partition, s: int) -> Partition:
    """Strip the first column of a partition with exactly s nonzero parts:
    (a_1, ..., a_s) becomes (a_1 - 1, ..., a_s - 1)."""
    lam = Partition(lam)
    if s < 1 or lam.length != s:
        raise ValueError(f"expected exactly {s} positive parts, got {lam!r}")
    return Partition(a - 1 for a in lam)
