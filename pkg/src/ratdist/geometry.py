"""Points, vertex configurations, and the exact distance oracle.

"Rational distance" always means: the squared distance is a square in Q.
The oracle works on squared distances only, so no irrational number is ever
formed.  Vertex orders are fixed per configuration kind (documented on the
constructors) so that reports are comparable and serializable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import Rational, format_rational, is_rational_square


class DegenerateTetrahedron(ValueError):
    """Vertices do not span a tetrahedron of nonzero volume."""


@dataclass(frozen=True)
class Point3:
    x: Fraction
    y: Fraction
    z: Fraction

    def __init__(self, x, y, z=0):
        object.__setattr__(self, "x", Fraction(x))
        object.__setattr__(self, "y", Fraction(y))
        object.__setattr__(self, "z", Fraction(z))

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __sub__(self, other: "Point3") -> "Point3":
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __add__(self, other: "Point3") -> "Point3":
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)

    def scale(self, c) -> "Point3":
        c = Fraction(c)
        return Point3(c * self.x, c * self.y, c * self.z)

    def norm_sq(self) -> Fraction:
        return self.x * self.x + self.y * self.y + self.z * self.z

    def as_strings(self) -> list[str]:
        return [format_rational(c) for c in self]

    def __str__(self):
        return "(" + ", ".join(self.as_strings()) + ")"


def point2(x, y) -> Point3:
    """A planar point, embedded at z = 0."""
    return Point3(x, y, 0)


def squared_distance(p: Point3, q: Point3) -> Fraction:
    d = p - q
    return d.norm_sq()


ORIGIN = Point3(0, 0, 0)


@dataclass(frozen=True)
class VertexSet:
    """An ordered vertex configuration of one of the supported kinds."""

    kind: str
    vertices: tuple[Point3, ...]
    param: Fraction | None = None

    @classmethod
    def rectangle(cls, a) -> "VertexSet":
        """Rectangle a x 1: vertices (0,0), (0,1), (a,0), (a,1) in that order."""
        a = Fraction(a)
        if a == 0:
            raise ValueError("rectangle width must be nonzero")
        verts = (ORIGIN, Point3(0, 1, 0), Point3(a, 0, 0), Point3(a, 1, 0))
        return cls("rectangle", verts, a)

    @classmethod
    def unit_square_3d(cls) -> "VertexSet":
        """Unit square in the plane z=0: (0,0,0), (0,1,0), (1,0,0), (1,1,0)."""
        verts = (ORIGIN, Point3(0, 1, 0), Point3(1, 0, 0), Point3(1, 1, 0))
        return cls("unit_square_3d", verts)

    @classmethod
    def unit_cube(cls) -> "VertexSet":
        """All eight cube vertices (i,j,k), ordered lexicographically."""
        verts = tuple(Point3(i, j, k) for i, j, k in itertools.product((0, 1), repeat=3))
        return cls("unit_cube", verts)

    @classmethod
    def cube_six(cls) -> "VertexSet":
        """The six cube vertices of the three-equal-pairs system.

        Order: the four square vertices as in unit_square_3d, then
        (0,0,1), (1,0,1).
        """
        base = cls.unit_square_3d().vertices
        return cls("cube_six", base + (Point3(0, 0, 1), Point3(1, 0, 1)))

    @classmethod
    def cube_subset(cls, extra_vertices) -> "VertexSet":
        """The four square vertices plus explicit extra cube vertices, in order."""
        base = cls.unit_square_3d().vertices
        extra = tuple(v if isinstance(v, Point3) else Point3(*v) for v in extra_vertices)
        return cls("cube_subset", base + extra)

    @classmethod
    def tetrahedron(cls, p0, p1, p2, p3) -> "VertexSet":
        """Four vertices; the first must be the origin and the rest independent."""
        pts = tuple(p if isinstance(p, Point3) else Point3(*p) for p in (p0, p1, p2, p3))
        if pts[0] != ORIGIN:
            raise DegenerateTetrahedron("first vertex must be the origin")
        if det3(pts[1], pts[2], pts[3]) == 0:
            raise DegenerateTetrahedron("vertex matrix is singular")
        return cls("tetrahedron", pts)

    @classmethod
    def collinear(cls, direction, p, q) -> "VertexSet":
        """Four collinear points 0, P1, p*P1, q*P1 along a rational direction."""
        d = direction if isinstance(direction, Point3) else Point3(*direction)
        if d == ORIGIN:
            raise ValueError("zero direction")
        return cls("collinear", (ORIGIN, d, d.scale(p), d.scale(q)))

    def __str__(self):
        return f"{self.kind}[" + ", ".join(str(v) for v in self.vertices) + "]"


def det3(r1: Point3, r2: Point3, r3: Point3) -> Fraction:
    return (r1.x * (r2.y * r3.z - r2.z * r3.y)
            - r1.y * (r2.x * r3.z - r2.z * r3.x)
            + r1.z * (r2.x * r3.y - r2.y * r3.x))


@dataclass(frozen=True)
class DistanceEntry:
    vertex: Point3
    dist_sq: Fraction
    root: Fraction | None

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex.as_strings(),
            "dist2": format_rational(self.dist_sq),
            "root": None if self.root is None else format_rational(self.root),
        }


@dataclass(frozen=True)
class DistanceReport:
    """Squared distances from one point to every vertex of a configuration."""

    point: Point3
    target: VertexSet
    entries: tuple[DistanceEntry, ...]

    @property
    def all_rational(self) -> bool:
        return all(e.root is not None for e in self.entries)

    @property
    def count_rational(self) -> int:
        return sum(1 for e in self.entries if e.root is not None)

    def roots(self) -> tuple[Fraction | None, ...]:
        return tuple(e.root for e in self.entries)

    def to_json(self) -> dict:
        return {
            "point": self.point.as_strings(),
            "target": self.target.kind,
            "distances": [e.to_json() for e in self.entries],
            "all_rational": self.all_rational,
            "count_rational": self.count_rational,
        }


def distance_report(p: Point3, vs: VertexSet) -> DistanceReport:
    """The ground-truth oracle: exact squared distances plus square roots."""
    entries = []
    for v in vs.vertices:
        d2 = squared_distance(p, v)
        entries.append(DistanceEntry(v, d2, is_rational_square(d2)))
    return DistanceReport(p, vs, tuple(entries))


def heron_area_sq(a, b, c) -> Fraction:
    """Squared triangle area from side lengths: Heron without the square root."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a < 0 or b < 0 or c < 0:
        raise ValueError("side lengths must be nonnegative")
    return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c) / 16


def cayley_menger_volume_sq(points) -> Fraction:
    """Squared tetrahedron volume via the 5x5 Cayley-Menger determinant.

    Accepts any four points (no origin normalization needed); invariant under
    permutations and rigid motions since only squared distances enter.
    """
    pts = [p if isinstance(p, Point3) else Point3(*p) for p in points]
    if len(pts) != 4:
        raise ValueError("need exactly four points")
    n = 5
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n):
        m[0][i] = m[i][0] = Fraction(1)
    for i in range(4):
        for j in range(4):
            m[i + 1][j + 1] = squared_distance(pts[i], pts[j])
    return _det(m) / 288


def _det(m) -> Fraction:
    """Fraction-free-ish Gaussian elimination determinant."""
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return det


# ---------------------------------------------------------------------------
# rectangle-solution canonicalization
# ---------------------------------------------------------------------------

def rect_orbit(a, x, y) -> set:
    """Closure of (a,x,y) under the solution-preserving involutions.

    Generators: aspect swap (a,x,y) -> (1/a, y/a, x/a), the reflection
    x -> a - x, and y -> 1 - y.
    """
    a, x, y = Fraction(a), Fraction(x), Fraction(y)
    seen = {(a, x, y)}
    frontier = [(a, x, y)]
    while frontier:
        a0, x0, y0 = frontier.pop()
        images = [(a0, a0 - x0, y0), (a0, x0, 1 - y0)]
        if a0 != 0:
            images.append((1 / a0, y0 / a0, x0 / a0))
        for im in images:
            if im not in seen:
                seen.add(im)
                frontier.append(im)
    return seen


def canonical_rect_hit(a, x, y) -> tuple[Fraction, Fraction, Fraction]:
    """Canonical orbit representative of a rectangle solution.

    Prefers, in order and only when achievable within the orbit: a > 1,
    x <= a/2, y <= 1/2; ties broken by lexicographic order on (a, x, y).
    """
    orbit = rect_orbit(a, x, y)
    for pred in (lambda t: t[0] > 1,
                 lambda t: t[1] <= t[0] / 2,
                 lambda t: t[2] <= Fraction(1, 2)):
        filtered = {t for t in orbit if pred(t)}
        if filtered:
            orbit = filtered
    return min(orbit)
