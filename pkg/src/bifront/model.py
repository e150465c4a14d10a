"""Problem data and objective-space geometry for biobjective 0-1 programs.

Both objectives are handled internally in minimization form: an objective
declared as "max" is stored with negated coefficients, and only the readers
and writers in :mod:`bifront.io` translate back to the original sense.
All geometry is exact. Feasible images are integer points, while box
corners produced by scalarization may be rational, so corner coordinates
are kept as :class:`fractions.Fraction`.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

Rational = Union[int, Fraction]


class Rel(str, Enum):
    LE = "LE"
    EQ = "EQ"
    GE = "GE"


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


class Kind(str, Enum):
    KNAPSACK = "knapsack"
    ASSIGNMENT = "assignment"
    GENERIC = "generic"


class Point(NamedTuple):
    """An integer image point (z1, z2) in minimization space."""

    z1: int
    z2: int


def dominates(a: Point, b: Point) -> bool:
    """True if a is componentwise <= b and differs in at least one component."""
    return a.z1 <= b.z1 and a.z2 <= b.z2 and a != b


def weakly_dominates(a: Point, b: Point) -> bool:
    return a.z1 <= b.z1 and a.z2 <= b.z2


@dataclass(frozen=True)
class Objective:
    """Integer linear objective c.x + offset, always to be minimized."""

    coeffs: tuple[int, ...]
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        for c in self.coeffs:
            if not isinstance(c, int):
                raise ValueError("objective coefficients must be integers")

    def value(self, x: Sequence[int]) -> int:
        if len(x) != len(self.coeffs):
            raise ValueError(f"expected {len(self.coeffs)} variables, got {len(x)}")
        return sum(c * xi for c, xi in zip(self.coeffs, x)) + self.offset


@dataclass(frozen=True)
class Constraint:
    """Integer linear row a.x REL rhs over the binary variables."""

    coeffs: tuple[int, ...]
    rel: Rel
    rhs: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        object.__setattr__(self, "rel", Rel(self.rel))
        if not isinstance(self.rhs, int):
            raise ValueError("constraint rhs must be an integer")

    def holds(self, x: Sequence[int]) -> bool:
        lhs = sum(c * xi for c, xi in zip(self.coeffs, x))
        if self.rel is Rel.LE:
            return lhs <= self.rhs
        if self.rel is Rel.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class BoipInstance:
    """A biobjective 0-1 program over n binary variables.

    ``objectives`` are stored in minimization form. ``original_sense``
    remembers the declared sense of each objective so that serialized
    frontiers can be reported in the user's coordinates.
    """

    name: str
    kind: Kind
    n: int
    objectives: tuple[Objective, Objective]
    constraints: tuple[Constraint, ...]
    original_sense: tuple[Sense, Sense] = (Sense.MIN, Sense.MIN)

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(
            self, "original_sense", tuple(Sense(s) for s in self.original_sense)
        )
        if len(self.objectives) != 2:
            raise ValueError("exactly two objectives are required")
        for obj in self.objectives:
            if len(obj.coeffs) != self.n:
                raise ValueError("objective length does not match n")
        for row in self.constraints:
            if len(row.coeffs) != self.n:
                raise ValueError("constraint length does not match n")
        if self.n < 1:
            raise ValueError("instance must have at least one variable")


def evaluate_objectives(instance: BoipInstance, x: Sequence[int]) -> Point:
    """Image z(x) of a 0-1 vector in minimization space."""
    if len(x) != instance.n:
        raise ValueError(f"expected {instance.n} variables, got {len(x)}")
    if any(xi not in (0, 1) for xi in x):
        raise ValueError("x must be a 0-1 vector")
    return Point(instance.objectives[0].value(x), instance.objectives[1].value(x))


def is_feasible(instance: BoipInstance, x: Sequence[int]) -> bool:
    if len(x) != instance.n:
        raise ValueError(f"expected {instance.n} variables, got {len(x)}")
    if any(xi not in (0, 1) for xi in x):
        raise ValueError("x must be a 0-1 vector")
    return all(row.holds(x) for row in instance.constraints)


class Frontier:
    """A mutually nondominated point set kept sorted by z1 ascending.

    Along the frontier z1 increases strictly and z2 decreases strictly,
    which makes membership and insertion O(log n) plus local pruning.
    """

    __slots__ = ("_pts",)

    def __init__(self, points: Iterable[Point] = ()):
        self._pts: list[Point] = []
        for p in points:
            self.add(p)

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(self._pts)

    def __len__(self) -> int:
        return len(self._pts)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._pts)

    def __contains__(self, p: Point) -> bool:
        i = bisect.bisect_left(self._pts, p)
        return i < len(self._pts) and self._pts[i] == p

    def __eq__(self, other) -> bool:
        if isinstance(other, Frontier):
            return self._pts == other._pts
        return NotImplemented

    def __repr__(self) -> str:
        return f"Frontier({self._pts!r})"

    def add(self, p: Point) -> bool:
        """Insert p unless some stored point weakly dominates it.

        Returns True when p was inserted; stored points dominated by p
        are removed to keep the set mutually nondominated.
        """
        p = Point(int(p[0]), int(p[1]))
        pts = self._pts
        i = bisect.bisect_left(pts, (p.z1, p.z2))
        if i > 0 and pts[i - 1].z2 <= p.z2:
            return False  # left neighbor has z1 <= p.z1 and no worse z2
        if i < len(pts) and pts[i] == p:
            return False
        # points with z1 >= p.z1 and z2 >= p.z2 form a contiguous run at i
        j = i
        while j < len(pts) and pts[j].z2 >= p.z2:
            j += 1
        pts[i:j] = [p]
        return True

    def dominated_by_any(self, p: Point) -> bool:
        """True if some stored point weakly dominates p."""
        i = bisect.bisect_right(self._pts, (p.z1, p.z2))
        return i > 0 and self._pts[i - 1].z2 <= p.z2


def filter_nondominated(points: Iterable[Point]) -> Frontier:
    """Nondominated subset of an arbitrary finite point collection."""
    frontier = Frontier()
    for p in sorted(set((int(a), int(b)) for a, b in points)):
        frontier.add(Point(*p))
    return frontier


def corner_and_nadir(frontier: Frontier | Sequence[Point]) -> tuple[Point, Point]:
    """Ideal and nadir points of a nonempty nondominated set.

    The ideal takes the componentwise minimum and the nadir the
    componentwise maximum over the set.
    """
    pts = list(frontier)
    if not pts:
        raise ValueError("ideal and nadir are undefined for an empty set")
    ideal = Point(min(p.z1 for p in pts), min(p.z2 for p in pts))
    nadir = Point(max(p.z1 for p in pts), max(p.z2 for p in pts))
    return ideal, nadir


def _as_fraction_pair(v) -> tuple[Fraction, Fraction]:
    a, b = v
    return (Fraction(a), Fraction(b))


@dataclass(frozen=True)
class Box:
    """A search rectangle in objective space.

    ``p`` is the left/upper corner (largest z1 still inside), ``t`` the
    right/lower corner, and ``s = (t1, p2)`` the lower-left corner. The
    exploration contract keeps ``p1`` and ``t2`` integral because those
    bounds are tightened by one unit when a box is probed. Corners coming
    from direction-scaled points may be rational, and a split of a corner-
    touching region may produce an empty box (nonpositive extent); such
    boxes are valid values here and are discarded by the size test.
    """

    s: tuple[Fraction, Fraction]
    p: tuple[Fraction, Fraction]
    t: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "s", _as_fraction_pair(self.s))
        object.__setattr__(self, "p", _as_fraction_pair(self.p))
        object.__setattr__(self, "t", _as_fraction_pair(self.t))
        if self.s != (self.t[0], self.p[1]):
            raise ValueError("box corner s must equal (t1, p2)")
        if self.p[0].denominator != 1 or self.t[1].denominator != 1:
            raise ValueError("box bounds p1 and t2 must be integral")

    @property
    def width(self) -> Fraction:
        return self.p[0] - self.s[0]

    @property
    def height(self) -> Fraction:
        return self.t[1] - self.s[1]

    @property
    def area(self) -> Fraction:
        if self.width <= 0 or self.height <= 0:
            return Fraction(0)
        return self.width * self.height

    def __repr__(self) -> str:
        def fmt(c):
            return f"({c[0]}, {c[1]})"

        return f"Box(s={fmt(self.s)}, p={fmt(self.p)}, t={fmt(self.t)})"


def initial_box(t0: Point, p0: Point) -> Box:
    """Box spanned by the two lexicographic corner points."""
    return Box(s=(t0.z1, p0.z2), p=(p0.z1, p0.z2), t=(t0.z1, t0.z2))
