"""
Index combinatorics of a generic hypermatrix.
Points, switches, distances and the collapsed (t+1)-tuple encoding.
"""

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple

from src.errors import InvalidAxisError, InvalidPointError, InvalidShapeError, ParseError


Point = Tuple[int, ...]
AxisSet = FrozenSet[int]

_POINT_RE = re.compile(r"^\(\s*\d+(\s*,\s*\d+)*\s*\)$")


@dataclass(frozen=True)
class Shape:
    """
    Format of the hypermatrix: radices r_1..r_n and slice parameter t.

    Points are 1-based coordinate tuples; N is enumerated in lexicographic
    ascending order everywhere.
    """

    radices: Tuple[int, ...]
    t: int

    def __post_init__(self):
        object.__setattr__(self, "radices", tuple(int(r) for r in self.radices))
        if not self.radices:
            raise InvalidShapeError("Shape needs at least one axis")
        if any(r < 1 for r in self.radices):
            raise InvalidShapeError(f"Radices must be positive: {self.radices}")
        if not 1 <= self.t <= len(self.radices):
            raise InvalidShapeError(
                f"Slice parameter t={self.t} must satisfy 1 <= t <= {len(self.radices)}"
            )

    @classmethod
    def parse(cls, text: str, t: int) -> "Shape":
        """
        Parse a shape given as "r1,r2,...,rn".

        Raises:
            InvalidShapeError: If the text is not a comma-separated integer list
        """
        try:
            radices = tuple(int(part) for part in text.split(","))
        except ValueError:
            raise InvalidShapeError(f"Malformed shape: {text!r}") from None
        return cls(radices, t)

    @property
    def n(self) -> int:
        return len(self.radices)

    @property
    def size(self) -> int:
        return math.prod(self.radices)

    @property
    def head_axes(self) -> AxisSet:
        """The axes 1..t on which switches are allowed."""
        return frozenset(range(1, self.t + 1))

    @cached_property
    def point_list(self) -> Tuple[Point, ...]:
        return tuple(itertools.product(*(range(1, r + 1) for r in self.radices)))

    @cached_property
    def _index(self) -> Dict[Point, int]:
        return {p: i for i, p in enumerate(self.point_list)}

    def points(self) -> List[Point]:
        """All points of N in lexicographic order."""
        return list(self.point_list)

    def index(self, point: Point) -> int:
        """Lexicographic rank of a point, starting at 0."""
        try:
            return self._index[point]
        except KeyError:
            raise InvalidPointError(f"{point} is not a point of {self.radices}") from None

    def contains(self, point: Point) -> bool:
        return point in self._index

    def validate_point(self, point: Point) -> Point:
        """Return the point unchanged if it is valid for this shape."""
        if not self.contains(tuple(point)):
            raise InvalidPointError(f"{tuple(point)} is not a point of {self.radices}")
        return tuple(point)

    def validate_axes(self, axes: Iterable[int]) -> AxisSet:
        """Return the axes as a frozenset, checking each lies in [n]."""
        return _checked_axes(axes, self.n)

    def with_t(self, t: int) -> "Shape":
        return Shape(self.radices, t)

    def __str__(self) -> str:
        return ",".join(str(r) for r in self.radices)


@dataclass(frozen=True, order=True)
class CollapsedPoint:
    """A point seen as (a_1, .., a_t, rank of the trailing coordinates)."""

    head: Tuple[int, ...]
    tail: int

    def as_tuple(self) -> Tuple[int, ...]:
        return self.head + (self.tail,)


def _checked_axes(axes: Iterable[int], n: int) -> AxisSet:
    axes = frozenset(axes)
    for axis in axes:
        if not 1 <= axis <= n:
            raise InvalidAxisError(f"Axis {axis} is outside [1, {n}]")
    return axes


def switch(L: Iterable[int], a: Point, b: Point) -> Point:
    """
    The switch function s(L, a, b).

    Args:
        L: Axes (1-based) on which the result copies b
        a: Point supplying the remaining coordinates
        b: Point supplying the coordinates on L

    Returns:
        Point with b_i for i in L and a_i elsewhere

    Raises:
        InvalidAxisError: If an axis lies outside [n]
    """
    if len(a) != len(b):
        raise InvalidPointError(f"Arity mismatch between {a} and {b}")
    L = _checked_axes(L, len(a))
    return tuple(b[i] if i + 1 in L else a[i] for i in range(len(a)))


def diff_axes(a: Point, b: Point) -> AxisSet:
    """Axes (1-based) on which a and b differ."""
    if len(a) != len(b):
        raise InvalidPointError(f"Arity mismatch between {a} and {b}")
    return frozenset(i + 1 for i in range(len(a)) if a[i] != b[i])


def distance(a: Point, b: Point) -> int:
    """Number of axes on which a and b differ."""
    return len(diff_axes(a, b))


def t_distance(a: Point, b: Point, t: int) -> Tuple[int, AxisSet]:
    """Distance restricted to the first t axes, with the differing axes."""
    axes = frozenset(i for i in diff_axes(a, b) if i <= t)
    return len(axes), axes


def _tail_radices(shape: Shape) -> Tuple[int, ...]:
    return shape.radices[shape.t:]


def collapse(shape: Shape, a: Point) -> CollapsedPoint:
    """
    Encode a as its first t coordinates plus the lexicographic rank of the rest.

    The rank is 1-based and larger trailing tuples get larger numerals; for
    t = n the tail is empty and its rank is 1.
    """
    shape.validate_point(a)
    rank = 0
    for coord, radix in zip(a[shape.t:], _tail_radices(shape)):
        rank = rank * radix + (coord - 1)
    return CollapsedPoint(tuple(a[: shape.t]), rank + 1)


def uncollapse(shape: Shape, c: CollapsedPoint) -> Point:
    """Inverse of collapse."""
    tail_radices = _tail_radices(shape)
    if not 1 <= c.tail <= math.prod(tail_radices):
        raise InvalidPointError(f"Tail rank {c.tail} out of range for {shape}")
    rank = c.tail - 1
    trailing: List[int] = []
    for radix in reversed(tail_radices):
        rank, digit = divmod(rank, radix)
        trailing.append(digit + 1)
    return shape.validate_point(tuple(c.head) + tuple(reversed(trailing)))


def parse_point(text: str) -> Point:
    """Parse "(1,2,1)" into a tuple of ints."""
    text = text.strip()
    if not _POINT_RE.match(text):
        raise ParseError(f"Malformed point: {text!r}")
    return tuple(int(part) for part in text[1:-1].split(","))


def format_point(point: Point) -> str:
    return "(" + ",".join(str(c) for c in point) + ")"


def varname(point: Point) -> str:
    """Macaulay2-safe variable name, e.g. x_1_2_1."""
    return "x_" + "_".join(str(c) for c in point)
