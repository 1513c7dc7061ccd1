"""Exact geometric primitives for polyline curves.

Every coordinate is an int or a ``fractions.Fraction``; all predicates are
decided exactly, so two runs of any operation on the same input agree bit
for bit.  Curves are open, non-self-intersecting polygonal chains.  The kind
of each intersection point (proper crossing, tangential touching, endpoint
contact) is derived from the cyclic order of the incident branch directions
around the point, never from epsilon tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key, cached_property
from typing import NamedTuple, Optional, Sequence, Union

from .errors import DegeneracyError

Scalar = Union[int, Fraction]


class Color(str, Enum):
    RED = "red"
    BLUE = "blue"
    NEUTRAL = "neutral"


class Role(str, Enum):
    SHAPES = "shapes"
    CONNECTORS = "connectors"


class Point(NamedTuple):
    x: Scalar
    y: Scalar

    def translated(self, dx: Scalar, dy: Scalar) -> "Point":
        return Point(self.x + dx, self.y + dy)


def cross(ox: Scalar, oy: Scalar, ax: Scalar, ay: Scalar) -> Scalar:
    return ox * ay - oy * ax


def orient(a: Point, b: Point, c: Point) -> Scalar:
    """Twice the signed area of the triangle abc (>0 means counterclockwise)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _between(a: Scalar, m: Scalar, b: Scalar) -> bool:
    return (a <= m <= b) or (b <= m <= a)


def on_segment(a: Point, b: Point, p: Point) -> bool:
    """Exact test for p lying on the closed segment ab."""
    if orient(a, b, p) != 0:
        return False
    return _between(a.x, p.x, b.x) and _between(a.y, p.y, b.y)


class Overlap:
    """Sentinel result for a positive-length (collinear) segment overlap."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover
        return "OVERLAP"


OVERLAP = Overlap()


def segment_intersection(
    a0: Point, a1: Point, b0: Point, b1: Point
) -> Union[None, Point, Overlap]:
    """Intersect two closed segments exactly.

    Returns None when disjoint, the exact intersection Point when they meet
    in a single point, and the OVERLAP sentinel when the intersection is a
    positive-length segment.  Callers decide whether OVERLAP is an error.
    """
    d1 = orient(b0, b1, a0)
    d2 = orient(b0, b1, a1)
    d3 = orient(a0, a1, b0)
    d4 = orient(a0, a1, b1)

    if d1 == 0 and d2 == 0:
        # Collinear: compare 1-d intervals along the dominant axis.
        if a0.x != a1.x or b0.x != b1.x:
            key = 0
        else:
            key = 1
        alo, ahi = sorted((a0[key], a1[key]))
        blo, bhi = sorted((b0[key], b1[key]))
        lo, hi = max(alo, blo), min(ahi, bhi)
        if lo > hi:
            return None
        if lo < hi:
            return OVERLAP
        # Single shared point: it is an endpoint of at least one segment.
        for p in (a0, a1):
            if p[key] == lo:
                return p
        raise AssertionError("collinear single-point case must hit an endpoint")

    if ((d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0)
            or (d3 > 0 and d4 > 0) or (d3 < 0 and d4 < 0)):
        return None

    # An endpoint of one segment lying on the other.
    if d1 == 0:
        return a0 if on_segment(b0, b1, a0) else None
    if d2 == 0:
        return a1 if on_segment(b0, b1, a1) else None
    if d3 == 0:
        return b0 if on_segment(a0, a1, b0) else None
    if d4 == 0:
        return b1 if on_segment(a0, a1, b1) else None

    # Proper crossing: solve for the parameter along segment a.
    denom = (a1.x - a0.x) * (b1.y - b0.y) - (a1.y - a0.y) * (b1.x - b0.x)
    t = Fraction((b0.x - a0.x) * (b1.y - b0.y) - (b0.y - a0.y) * (b1.x - b0.x), denom)
    return Point(a0.x + t * (a1.x - a0.x), a0.y + t * (a1.y - a0.y))


def _bbox(points: Sequence[Point]):
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return (min(xs), min(ys), max(xs), max(ys))


def bbox_disjoint(a, b) -> bool:
    return a[2] < b[0] or b[2] < a[0] or a[3] < b[1] or b[3] < a[1]


class IntersectionKind(str, Enum):
    CROSSING = "crossing"
    TOUCHING = "touching"
    ENDPOINT_CONTACT = "endpoint-contact"


class IntersectionRecord(NamedTuple):
    point: Point
    kind: IntersectionKind
    owners: tuple[int, int]


@dataclass(frozen=True)
class Curve:
    """Open polygonal chain with a color tag.

    Invariants enforced at construction: at least two vertices, consecutive
    vertices distinct, no two segments of the chain intersect except at a
    shared joint, and a joint never doubles back collinearly.
    """

    vertices: tuple[Point, ...]
    color: Color = Color.NEUTRAL

    def __post_init__(self):
        vs = tuple(Point(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2:
            raise DegeneracyError("curve needs at least two vertices")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise DegeneracyError("consecutive curve vertices coincide")
        segs = list(zip(vs, vs[1:]))
        for i in range(len(segs) - 1):
            (a, b), (_, c) = segs[i], segs[i + 1]
            if orient(a, b, c) == 0:
                # Collinear joint: allowed only when the chain keeps going
                # forward; doubling back overlaps the previous segment.
                forward = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y)
                if forward <= 0:
                    raise DegeneracyError("curve doubles back over itself")
        if vs[0] == vs[-1]:
            raise DegeneracyError("closed chains are not supported")
        for i in range(len(segs)):
            for j in range(i + 2, len(segs)):
                if segment_intersection(*segs[i], *segs[j]) is not None:
                    raise DegeneracyError("curve is self-intersecting")

    @cached_property
    def segments(self) -> tuple[tuple[Point, Point], ...]:
        return tuple(zip(self.vertices, self.vertices[1:]))

    @cached_property
    def bbox(self):
        return _bbox(self.vertices)

    @property
    def first(self) -> Point:
        return self.vertices[0]

    @property
    def last(self) -> Point:
        return self.vertices[-1]

    @cached_property
    def endpoints(self) -> frozenset:
        return frozenset((self.first, self.last))

    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def is_axis_parallel_segment(self) -> bool:
        if not self.is_segment():
            return False
        (a, b) = self.vertices
        return a.x == b.x or a.y == b.y

    def contains_point(self, p: Point) -> bool:
        for a, b in self.segments:
            if on_segment(a, b, p):
                return True
        return False

    def translated(self, dx: Scalar, dy: Scalar) -> "Curve":
        return Curve(tuple(v.translated(dx, dy) for v in self.vertices), self.color)


@dataclass(frozen=True)
class LShape:
    """Axis-parallel 'L': a vertical drop from the top point to the corner,
    then a horizontal run to the right."""

    corner: Point
    height: Scalar
    width: Scalar

    def __post_init__(self):
        object.__setattr__(self, "corner", Point(*self.corner))
        if self.height <= 0 or self.width <= 0:
            raise DegeneracyError("L-shape needs positive height and width")

    @property
    def top(self) -> Point:
        return Point(self.corner.x, self.corner.y + self.height)

    @property
    def right_end(self) -> Point:
        return Point(self.corner.x + self.width, self.corner.y)

    def to_curve(self, color: Color = Color.NEUTRAL) -> Curve:
        return Curve((self.top, self.corner, self.right_end), color)


def lshapes_intersect(a: LShape, b: LShape) -> bool:
    """Exact pairwise test without building curves.

    In general position (all x and all horizontal-run y values distinct)
    two L-shapes meet in at most one point: one's vertical crossing the
    other's horizontal.
    """
    def vert_hits_horiz(v: LShape, h: LShape) -> bool:
        return (h.corner.x < v.corner.x < h.corner.x + h.width
                and v.corner.y < h.corner.y < v.corner.y + v.height)

    return vert_hits_horiz(a, b) or vert_hits_horiz(b, a)


@dataclass(frozen=True)
class CurveFamily:
    curves: tuple[Curve, ...]
    role: Role = Role.SHAPES

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __getitem__(self, i: int) -> Curve:
        return self.curves[i]

    def translated(self, dx: Scalar, dy: Scalar) -> "CurveFamily":
        return CurveFamily(tuple(c.translated(dx, dy) for c in self.curves), self.role)


def _branch_directions(curve: Curve, p: Point) -> list[tuple[Scalar, Scalar]]:
    """Directions in which the curve leaves p; two for interior points."""
    dirs: list[tuple[Scalar, Scalar]] = []
    for a, b in curve.segments:
        if not on_segment(a, b, p):
            continue
        if p == a:
            dirs.append((b.x - a.x, b.y - a.y))
        elif p == b:
            dirs.append((a.x - b.x, a.y - b.y))
        else:
            dirs.append((b.x - a.x, b.y - a.y))
            dirs.append((a.x - b.x, a.y - b.y))
    return dirs


def _direction_cmp(d1, d2) -> int:
    """Exact counterclockwise angular order starting at the +x axis."""
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = cross(d1[0], d1[1], d2[0], d2[1])
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def branches_alternate(dirs1, dirs2) -> bool:
    """Crossing test: around the point the four branch directions must
    alternate between the two owners."""
    labeled = [(d, 0) for d in dirs1] + [(d, 1) for d in dirs2]
    labeled.sort(key=cmp_to_key(lambda u, v: _direction_cmp(u[0], v[0])))
    for (d, _), (e, _) in zip(labeled, labeled[1:]):
        if _direction_cmp(d, e) == 0:
            raise DegeneracyError("coincident branch directions at a contact point")
    owners = [o for _, o in labeled]
    return owners[0] != owners[1] and owners[1] != owners[2] and owners[2] != owners[3]


def curve_intersections(
    c1: Curve, c2: Curve, owners: tuple[int, int] = (0, 1)
) -> list[IntersectionRecord]:
    """All intersection points of two curves, each classified exactly.

    Raises DegeneracyError on collinear overlaps, shared endpoints, and
    tangential contacts that are not the pair's unique intersection --
    configurations outside the model every other operation assumes.
    """
    if bbox_disjoint(c1.bbox, c2.bbox):
        return []
    pts: set[Point] = set()
    for a, b in c1.segments:
        sb = _bbox((a, b))
        for c, d in c2.segments:
            if bbox_disjoint(sb, _bbox((c, d))):
                continue
            r = segment_intersection(a, b, c, d)
            if r is OVERLAP:
                raise DegeneracyError("collinear overlap between two curves")
            if isinstance(r, Point):
                pts.add(r)
    if not pts:
        return []
    records = []
    unique = len(pts) == 1
    for p in sorted(pts):
        at_end1 = p in c1.endpoints
        at_end2 = p in c2.endpoints
        if at_end1 and at_end2:
            raise DegeneracyError(f"curves share the endpoint {p}")
        if at_end1 or at_end2:
            records.append(IntersectionRecord(p, IntersectionKind.ENDPOINT_CONTACT, owners))
            continue
        d1 = _branch_directions(c1, p)
        d2 = _branch_directions(c2, p)
        if len(d1) != 2 or len(d2) != 2:
            raise DegeneracyError(f"unexpected branch count at {p}")
        if branches_alternate(d1, d2):
            records.append(IntersectionRecord(p, IntersectionKind.CROSSING, owners))
        elif unique:
            records.append(IntersectionRecord(p, IntersectionKind.TOUCHING, owners))
        else:
            raise DegeneracyError(
                f"non-crossing contact at {p} is not the pair's unique intersection"
            )
    return records


def family_intersections(family: CurveFamily) -> list[IntersectionRecord]:
    """Intersection records over all unordered curve pairs of a family."""
    out: list[IntersectionRecord] = []
    curves = family.curves
    for i in range(len(curves)):
        bi = curves[i].bbox
        for j in range(i + 1, len(curves)):
            if bbox_disjoint(bi, curves[j].bbox):
                continue
            out.extend(curve_intersections(curves[i], curves[j], (i, j)))
    return out


def is_one_intersecting(family: CurveFamily) -> bool:
    """True iff every pair of curves meets in at most one point."""
    curves = family.curves
    for i in range(len(curves)):
        bi = curves[i].bbox
        for j in range(i + 1, len(curves)):
            if bbox_disjoint(bi, curves[j].bbox):
                continue
            if len(curve_intersections(curves[i], curves[j], (i, j))) > 1:
                return False
    return True


class Violation(NamedTuple):
    kind: str
    detail: str
    curves: tuple[int, ...]
    point: Optional[Point]


def validate_general_position(family: CurveFamily) -> list[Violation]:
    """Report everything that breaks the two-curves-per-point model.

    An empty list means every intersection point involves exactly two
    curves and is a proper crossing, an endpoint contact, or a (unique)
    tangential touching.  Degenerate pairs are reported, not raised.
    """
    violations: list[Violation] = []
    point_owners: dict[Point, set[int]] = {}
    curves = family.curves
    for i in range(len(curves)):
        bi = curves[i].bbox
        for j in range(i + 1, len(curves)):
            if bbox_disjoint(bi, curves[j].bbox):
                continue
            try:
                recs = curve_intersections(curves[i], curves[j], (i, j))
            except DegeneracyError as exc:
                violations.append(Violation("degenerate-pair", str(exc), (i, j), None))
                continue
            for r in recs:
                point_owners.setdefault(r.point, set()).update((i, j))
    for p in sorted(point_owners):
        owners = point_owners[p]
        if len(owners) > 2:
            violations.append(
                Violation("triple-point", f"{len(owners)} curves through one point",
                          tuple(sorted(owners)), p))
    return violations


def same_color_intersections(family: CurveFamily) -> list[tuple[int, int]]:
    """Pairs of same-color curves that intersect (must be empty for a valid
    red/blue shape family)."""
    bad = []
    curves = family.curves
    for i in range(len(curves)):
        bi = curves[i].bbox
        for j in range(i + 1, len(curves)):
            if curves[i].color != curves[j].color:
                continue
            if bbox_disjoint(bi, curves[j].bbox):
                continue
            if curve_intersections(curves[i], curves[j], (i, j)):
                bad.append((i, j))
    return bad
