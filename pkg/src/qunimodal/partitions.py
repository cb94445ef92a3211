"""Integer partitions and boxes.

A partition is a weakly decreasing tuple of positive parts; trailing
zeros are stripped on construction so that equal partitions compare and
hash equal.  A box is an ``rows x cols`` rectangle.  Everything else in
this package indexes its objects through these two types.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Iterator


@total_ordering
class Partition:
    """Weakly decreasing sequence of positive integer parts.

    ``Partition(())`` is the empty partition.  Parts are exposed as a
    plain tuple via ``.parts``; ``.size`` is the sum of the parts.
    """

    __slots__ = ("parts", "size")

    parts: tuple[int, ...]
    size: int

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(int(p) for p in parts)
        while ps and ps[-1] == 0:
            ps = ps[:-1]
        for i, p in enumerate(ps):
            if p < 1:
                raise ValueError(f"parts must be positive integers: {ps!r}")
            if i and ps[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {ps!r}")
        self.parts = ps
        self.size = sum(ps)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts == other.parts

    def __lt__(self, other: "Partition") -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts < other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __str__(self) -> str:
        return format_partition(self)

    def padded(self, length: int) -> tuple[int, ...]:
        """Parts padded with zeros up to ``length`` entries."""
        if length < len(self.parts):
            raise ValueError(f"cannot pad {self!r} down to length {length}")
        return self.parts + (0,) * (length - len(self.parts))

    def contains(self, other: "Partition") -> bool:
        """Containment of Young diagrams, part by part."""
        if len(other.parts) > len(self.parts):
            return False
        return all(o <= s for s, o in zip(self.parts, other.parts))

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram."""
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)


@dataclass(frozen=True)
class Box:
    """A rectangle with ``rows`` rows and ``cols`` columns, both >= 1."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"box sides must be >= 1: {self.rows} x {self.cols}")

    @property
    def cells(self) -> int:
        return self.rows * self.cols


def rectangle(box: Box) -> Partition:
    """The full rectangular partition filling ``box``."""
    return Partition((box.cols,) * box.rows)


def fits_in_box(p: Partition, box: Box) -> bool:
    """True when ``p`` has at most ``box.rows`` parts, each <= ``box.cols``."""
    if len(p.parts) > box.rows:
        return False
    return not p.parts or p.parts[0] <= box.cols


def complement_in_box(p: Partition, box: Box) -> Partition:
    """Complement of ``p`` inside ``box``: the 180-degree rotation of the
    unused cells.  Row ``i`` of the complement has ``cols - padded[rows-1-i]``
    cells."""
    if not fits_in_box(p, box):
        raise ValueError(f"{p!r} does not fit in {box!r}")
    padded = p.padded(box.rows)
    return Partition(box.cols - padded[box.rows - 1 - i] for i in range(box.rows))


def add(p: Partition, q: Partition) -> Partition:
    """Part-wise sum of two partitions."""
    n = max(len(p.parts), len(q.parts))
    return Partition(a + b for a, b in zip(p.padded(n), q.padded(n)))


def enumerate_in_box(box: Box, k: int) -> list[Partition]:
    """All partitions of ``k`` that fit in ``box``.

    The order is deterministic: lexicographically decreasing on the
    zero-padded part vectors, so e.g. (2) precedes (1,1).
    """
    if k < 0:
        raise ValueError(f"cannot partition a negative number: {k}")
    out: list[Partition] = []
    prefix: list[int] = []

    def rec(remaining: int, max_part: int, rows_left: int) -> None:
        if remaining == 0:
            out.append(Partition(prefix))
            return
        if rows_left == 0:
            return
        for part in range(min(max_part, remaining), 0, -1):
            if part * rows_left < remaining:
                break
            prefix.append(part)
            rec(remaining - part, part, rows_left - 1)
            prefix.pop()

    rec(k, box.cols, box.rows)
    return out


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n``, lexicographically decreasing."""
    if n == 0:
        return [Partition()]
    return enumerate_in_box(Box(n, n), n)


def parse_partition(text: str) -> Partition:
    """Parse the bracket syntax ``[4,2,1]``; ``[]`` is the empty partition."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"partition syntax is [a,b,...]: got {text!r}")
    inner = s[1:-1].strip()
    if not inner:
        return Partition()
    try:
        parts = [int(tok) for tok in inner.split(",")]
    except ValueError:
        raise ValueError(f"partition syntax is [a,b,...]: got {text!r}") from None
    return Partition(parts)


def format_partition(p: Partition) -> str:
    """Inverse of :func:`parse_partition`."""
    return "[" + ",".join(str(x) for x in p.parts) + "]"
