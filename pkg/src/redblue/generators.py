"""Instance generators: grids, touching families, grounded L-shapes,
grounded connector instances, and the extremal constructions used by the
bound verifiers.  Every generator emits integer (or small-denominator
rational) coordinates in general position and is deterministic in its seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import Arrangement, build_arrangement
from .errors import DegeneracyError
from .geometry import (
    Color,
    Curve,
    CurveFamily,
    IntersectionKind,
    LShape,
    Point,
    Role,
    bbox_disjoint,
    curve_intersections,
)


def _rng(seed) -> random.Random:
    return random.Random(seed)


# -- grids ------------------------------------------------------------------

def gen_grid(h: int, v: int, seed=None) -> CurveFamily:
    """h red horizontal and v blue vertical segments realizing all h*v
    crossings, every coordinate distinct."""
    if h < 1 or v < 1:
        raise ValueError("need h, v >= 1")
    rng = _rng(seed)
    curves = []
    for i in range(h):
        y = 10 * (i + 1)
        x0 = -5 - 2 * i - (rng.randint(0, 1) if seed is not None else 0)
        x1 = 10 * v + 5 + 2 * i + (rng.randint(0, 1) if seed is not None else 0)
        curves.append(Curve((Point(x0, y), Point(x1, y)), Color.RED))
    for j in range(v):
        x = 10 * (j + 1)
        y0 = -5 - 2 * j - (rng.randint(0, 1) if seed is not None else 0)
        y1 = 10 * h + 5 + 2 * j + (rng.randint(0, 1) if seed is not None else 0)
        curves.append(Curve((Point(x, y0), Point(x, y1)), Color.BLUE))
    return CurveFamily(tuple(curves), Role.SHAPES)


def gen_tight_face(h: int, v: int) -> CurveFamily:
    """Grid-like family whose unbounded face has exactly 4(h+v)-4 distinct
    boundary edges."""
    if h < 2 or v < 2:
        raise ValueError("need h, v >= 2")
    return gen_grid(h, v)


def gen_crossing_connectors(grid: CurveFamily) -> CurveFamily:
    """One tiny connector per crossing of a grid, each meeting exactly its
    two owner segments; the connectors are pairwise disjoint."""
    horizontals = [(i, c) for i, c in enumerate(grid) if c.vertices[0].y == c.vertices[1].y]
    verticals = [(j, c) for j, c in enumerate(grid) if c.vertices[0].x == c.vertices[1].x]
    if len(horizontals) + len(verticals) != len(grid):
        raise ValueError("grid must consist of axis-parallel segments")
    ys = sorted(c.vertices[0].y for _, c in horizontals)
    xs = sorted(c.vertices[0].x for _, c in verticals)
    gaps = [b - a for a, b in zip(ys, ys[1:])] + [b - a for a, b in zip(xs, xs[1:])]
    for _, c in horizontals:
        gaps.extend(abs(v.x - x) for v in c.vertices for x in xs)
        gaps.extend(abs(v.y - y) for v in c.vertices for y in ys if v.y != y)
    for _, c in verticals:
        gaps.extend(abs(v.y - y) for v in c.vertices for y in ys)
    gap = min(g for g in gaps if g > 0)
    e = Fraction(gap, 4)
    connectors = []
    for i, hc in horizontals:
        y = hc.vertices[0].y
        hx0, hx1 = sorted((hc.vertices[0].x, hc.vertices[1].x))
        for j, vc in verticals:
            x = vc.vertices[0].x
            vy0, vy1 = sorted((vc.vertices[0].y, vc.vertices[1].y))
            if not (hx0 < x < hx1 and vy0 < y < vy1):
                raise DegeneracyError("grid pair without a crossing")
            conn = Curve((Point(x - e, y + e / 2), Point(x + e / 2, y - e)),
                         Color.NEUTRAL)
            hits = [k for k, s in enumerate(grid)
                    if curve_intersections(s, conn, (k, -1))]
            if hits != sorted((i, j)):
                raise DegeneracyError("connector placement failed its audit")
            connectors.append(conn)
    return CurveFamily(tuple(connectors), Role.CONNECTORS)


# -- touching families --------------------------------------------------------

def gen_touching_family(n: int, seed=None) -> CurveFamily:
    """1-intersecting red/blue family with floor(n/2) tangencies: disjoint
    red horizontal segments, each touched from above by one blue wedge."""
    if n < 2:
        raise ValueError("need n >= 2")
    rng = _rng(seed)
    reds = n - n // 2
    blues = n // 2
    curves: list[Curve] = []
    for i in range(reds):
        y = i
        curves.append(Curve((Point(100 * i, y), Point(100 * i + 60, y)), Color.RED))
    for j in range(blues):
        y = j
        vx = 100 * j + rng.randint(10, 50)
        la, ra = rng.randint(3, 8), rng.randint(3, 8)
        lh, rh = rng.randint(3, 9), rng.randint(3, 9)
        curves.append(Curve((Point(vx - la, y + lh), Point(vx, y), Point(vx + ra, y + rh)),
                            Color.BLUE))
    return CurveFamily(tuple(curves), Role.SHAPES)


def touchings_to_connectors(family: CurveFamily) -> tuple[CurveFamily, CurveFamily]:
    """Rewrite each tangency of a touching family into a short connector.

    The wedge is lifted off the segment it touches and a small connector is
    added that crosses exactly the formerly touching pair, so the Delaunay
    edge count of the result equals the tangency count of the input.
    """
    new_curves = list(family.curves)
    connectors = []
    curves = family.curves
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            if bbox_disjoint(curves[i].bbox, curves[j].bbox):
                continue
            recs = [r for r in curve_intersections(curves[i], curves[j], (i, j))
                    if r.kind == IntersectionKind.TOUCHING]
            if not recs:
                continue
            p = recs[0].point
            wedge_idx, seg_idx = (i, j) if p in curves[i].vertices else (j, i)
            wedge = curves[wedge_idx]
            left, mid, right = wedge.vertices
            if mid != p:
                raise DegeneracyError("rewrite expects the tangency at the wedge tip")
            delta = Fraction(1, 4)
            lifted = Curve((left, Point(mid.x, mid.y + delta), right), wedge.color)
            new_curves[wedge_idx] = lifted
            slope_den = right.x - mid.x
            slope_num = right.y - mid.y - delta
            eps = min(Fraction(1, 8), delta * slope_den / (2 * slope_num))
            conn = Curve((Point(mid.x + eps, mid.y - delta),
                          Point(mid.x + eps, mid.y + 2 * delta)), Color.NEUTRAL)
            connectors.append(conn)
    return (CurveFamily(tuple(new_curves), Role.SHAPES),
            CurveFamily(tuple(connectors), Role.CONNECTORS))


# -- axis-parallel random instances ------------------------------------------

def gen_axis_parallel(n: int, seed=None, span: Optional[int] = None) -> CurveFamily:
    """Random red horizontal / blue vertical segments in strict general
    position: distinct supporting lines, no endpoint on another segment.

    Coordinate classes keep everything exact: horizontal lines live on
    y = 0 (mod 4) with endpoints on x = 1 (mod 4); vertical lines on
    x = 2 (mod 4) with endpoints on y = 3 (mod 4).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = _rng(seed)
    span = span if span is not None else max(3, n)
    nh = rng.randint(1, n - 1)
    nv = n - nh
    curves = []
    for lane in rng.sample(range(span), nh):
        a, b = sorted(rng.sample(range(span + 1), 2))
        curves.append(Curve((Point(4 * a + 1, 4 * lane), Point(4 * b + 1, 4 * lane)),
                            Color.RED))
    for lane in rng.sample(range(span), nv):
        a, b = sorted(rng.sample(range(span + 1), 2))
        curves.append(Curve((Point(4 * lane + 2, 4 * a + 3), Point(4 * lane + 2, 4 * b + 3)),
                            Color.BLUE))
    return CurveFamily(tuple(curves), Role.SHAPES)


# -- grounded connector instances ----------------------------------------------

_QUADRANT_TEMPLATE = (Point(Fraction(-1, 2), 1), Point(1, Fraction(-1, 2)))


def _rotate_ccw(p: Point, times: int) -> Point:
    x, y = p
    for _ in range(times % 4):
        x, y = -y, x
    return Point(x, y)


def _corner_connector(v: Point, quadrant: int, e: Fraction) -> Curve:
    """Tiny segment crossing the two branches bounding the given quadrant
    (0=NE, 1=NW, 2=SW, 3=SE) of an axis-parallel crossing at v."""
    pts = []
    for t in _QUADRANT_TEMPLATE:
        r = _rotate_ccw(t, quadrant)
        pts.append(Point(v.x + r.x * e, v.y + r.y * e))
    return Curve(tuple(pts), Color.NEUTRAL)


def _linf_point_to_segment(p: Point, a: Point, b: Point):
    """Exact L-infinity distance from p to an axis-parallel segment."""
    def axis_gap(val, lo, hi):
        if lo > hi:
            lo, hi = hi, lo
        if lo <= val <= hi:
            return 0
        return min(abs(val - lo), abs(val - hi))

    if a.y == b.y:
        return max(axis_gap(p.x, a.x, b.x), abs(p.y - a.y))
    return max(axis_gap(p.y, a.y, b.y), abs(p.x - a.x))


def gen_grounded_connectors(shapes: CurveFamily,
                            arr: Optional[Arrangement] = None) -> CurveFamily:
    """Pairwise-disjoint connectors grounded in the unbounded face of an
    axis-parallel segment arrangement.

    At every crossing incident to the unbounded face a small connector is
    hooked around the free corner, crossing exactly the two segments that
    meet there; one connector is kept per segment pair.
    """
    if arr is None:
        arr = build_arrangement(shapes)
    curves = shapes.curves

    def he_head(h):
        e = arr.edges[h >> 1]
        return e.v_to if h % 2 == 0 else e.v_from

    def he_in_dir(h):
        pts = arr.edges[h >> 1].points
        a, b = (pts[-2], pts[-1]) if h % 2 == 0 else (pts[1], pts[0])
        return (b.x - a.x, b.y - a.y)

    def he_out_dir(h):
        pts = arr.edges[h >> 1].points
        a, b = (pts[0], pts[1]) if h % 2 == 0 else (pts[-1], pts[-2])
        return (b.x - a.x, b.y - a.y)

    seen_pairs = set()
    connectors = []
    for wid in arr.faces[0].walk_ids:
        walk = arr.walks[wid]
        steps = walk.steps
        for k, h in enumerate(steps):
            vtx = arr.vertices[he_head(h)]
            if vtx.is_tjunction or not vtx.is_intersection:
                continue
            pair = vtx.curves
            if pair in seen_pairs:
                continue
            h2 = steps[(k + 1) % len(steps)]
            din = he_in_dir(h)
            dout = he_out_dir(h2)
            sx = dout[0] - din[0]
            sy = dout[1] - din[1]
            quadrant = {(1, 1): 0, (-1, 1): 1, (-1, -1): 2, (1, -1): 3}.get(
                ((sx > 0) - (sx < 0), (sy > 0) - (sy < 0)))
            if quadrant is None:
                continue
            v = vtx.point
            gap = None
            for idx, s in enumerate(curves):
                a, b = s.vertices
                if idx in pair:
                    # keep the connector's crossings strictly inside the owners
                    d = min(max(abs(v.x - q.x), abs(v.y - q.y)) for q in (a, b))
                else:
                    d = _linf_point_to_segment(v, a, b)
                if d > 0 and (gap is None or d < gap):
                    gap = d
            e = Fraction(min(gap, 4), 4)
            conn = _corner_connector(v, quadrant, e)
            hits = [idx for idx, s in enumerate(curves)
                    if not bbox_disjoint(s.bbox, conn.bbox)
                    and curve_intersections(s, conn, (idx, -1))]
            if tuple(sorted(hits)) != pair:
                continue
            seen_pairs.add(pair)
            connectors.append(conn)
    return CurveFamily(tuple(connectors), Role.CONNECTORS)


def gen_grounded_random(n: int, seed=None) -> tuple[CurveFamily, CurveFamily]:
    """Random axis-parallel shapes plus connectors grounded in the
    unbounded face."""
    shapes = gen_axis_parallel(n, seed)
    arr = build_arrangement(shapes)
    return shapes, gen_grounded_connectors(shapes, arr)


def gen_comb(m: int) -> tuple[CurveFamily, CurveFamily]:
    """Deterministic grounded instance: m red teeth, m blue verticals, and m
    nested connectors routed through the unbounded face, one per pair."""
    if m < 1:
        raise ValueError("need m >= 1")
    shapes = []
    for i in range(1, m + 1):
        shapes.append(Curve((Point(0, 2 * i), Point(10, 2 * i)), Color.RED))
    for i in range(1, m + 1):
        shapes.append(Curve((Point(20 + 4 * i, -12 - 3 * i), Point(20 + 4 * i, -12)),
                            Color.BLUE))
    connectors = []
    for i in range(1, m + 1):
        t = Fraction(10 * i, m + 1)
        connectors.append(Curve((
            Point(t, 2 * i + 1),
            Point(t, 2 * i - 1),
            Point(-1 - i, 2 * i - 1),
            Point(-1 - i, -13 - 3 * i),
            Point(21 + 4 * i, -13 - 3 * i),
            Point(21 + 4 * i, -11 - 3 * i),
            Point(19 + 4 * i, -11 - 3 * i),
        ), Color.NEUTRAL))
    return (CurveFamily(tuple(shapes), Role.SHAPES),
            CurveFamily(tuple(connectors), Role.CONNECTORS))


def gen_wiggly_grounded(m: int, seed=None) -> tuple[CurveFamily, CurveFamily]:
    """Comb variant whose teeth are bent polylines, exercising the general
    red/blue (non-segment) branch of the grounded bound."""
    shapes_seg, connectors = gen_comb(m)
    rng = _rng(seed)
    bent = []
    for c in shapes_seg:
        if c.color is Color.RED:
            (a, b) = c.vertices
            mid_x = Fraction(a.x + b.x, 2) + Fraction(rng.randint(-10, 10), 7)
            bump = Fraction(rng.randint(1, 3), 5)
            bent.append(Curve((a, Point(mid_x, a.y + bump), b), Color.RED))
        else:
            bent.append(c)
    return CurveFamily(tuple(bent), Role.SHAPES), connectors


# -- grounded L-shapes ---------------------------------------------------------

def gen_grounded_lshapes(n: int, seed=None, span: Optional[int] = None,
                         max_width: Optional[int] = None,
                         max_height: Optional[int] = None) -> list[LShape]:
    """n L-shapes with tops on y=0, all x and all corner-depth coordinates
    distinct.  Default spread keeps the intersection graph around 1-2 edges
    per shape so large instances stay light."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = _rng(seed)
    span = span if span is not None else 8 * n
    max_width = max_width if max_width is not None else max(4, (26 * span) // (10 * max(n, 1)))
    max_height = max_height if max_height is not None else 6 * n
    xs = rng.sample(range(0, span * 2, 2), n)
    heights = rng.sample(range(1, max(max_height, n) + 1), n)
    used_x = set(xs)
    shapes = []
    for cx, hgt in zip(xs, heights):
        w = rng.randint(1, max_width) * 2 + 1
        while cx + w in used_x:
            w += 2
        used_x.add(cx + w)
        shapes.append(LShape(Point(cx, -hgt), hgt, w))
    return shapes


def gen_staircase_lshapes(n: int) -> list[LShape]:
    """n pairwise-intersecting grounded L-shapes."""
    shapes = []
    for i in range(n):
        shapes.append(LShape(Point(2 * i, -2 * (i + 1)), 2 * (i + 1), 4 * n - i))
    return shapes


# -- triangular grid -----------------------------------------------------------

def gen_triangular_grid(n: int) -> tuple[CurveFamily, CurveFamily]:
    """Three families of parallel segments whose former triple points are
    opened into small triangles, plus one connector per hexagonal face
    joining two non-neighboring, non-parallel edges.

    Returns (shapes, connectors); with m = n/3 segments per direction the
    connector count is at least (m-1)^2 while each connector meets exactly
    two segments.
    """
    if n % 3 != 0 or n < 9:
        raise ValueError("need n divisible by 3, n >= 9")
    m = n // 3
    third = Fraction(1, 3)
    # Sheared lattice: verticals x=2j, horizontals y=2t, diagonals x+y=2k+1/3.
    # The diagonal window K maximizes the number of lattice cells carrying a
    # corner cut, i.e. the number of connectable cell faces.
    def window_gain(k0: int) -> int:
        return sum((m - 1) - abs(k - (m - 2))
                   for k in range(k0, k0 + m) if 0 <= k <= 2 * m - 4)

    k_start = max(range(0, m), key=window_gain)
    lo, hi = -(2 * m + 3), 4 * m + 3
    lo = lo if lo % 2 else lo - 1
    hi = hi if hi % 2 else hi + 1
    curves: list[Curve] = []
    for j in range(m):
        curves.append(Curve((Point(2 * j, lo), Point(2 * j, hi)), Color.RED))
    for t in range(m):
        curves.append(Curve((Point(lo, 2 * t), Point(hi, 2 * t)), Color.BLUE))
    for k in range(k_start, k_start + m):
        c = 2 * k + third
        curves.append(Curve((Point(lo, c - lo), Point(hi, c - hi)), Color.NEUTRAL))
    shapes = CurveFamily(tuple(curves), Role.SHAPES)
    arr = build_arrangement(shapes)

    def direction_class(idx: int) -> int:
        a, b = shapes[idx].vertices
        if a.x == b.x:
            return 0
        return 1 if a.y == b.y else 2

    connectors = []
    for face in arr.faces[1:]:
        walk = arr.walks[face.walk_ids[0]]
        eids = [h >> 1 for h in walk.steps]
        k = len(eids)
        if k not in (5, 6) or len(set(eids)) != k:
            continue
        owners = [arr.edges[e].owner for e in eids]
        if len({direction_class(o) for o in owners}) < 2:
            continue
        pick = None
        for i in range(k):
            a, b = eids[i], eids[(i + 2) % k]
            if direction_class(arr.edges[a].owner) != direction_class(arr.edges[b].owner):
                pick = (a, b)
                break
        if pick is None:
            continue
        frac = Fraction(face.id % 5 + 3, 11)
        endpoints = []
        for eid in pick:
            pts = arr.edges[eid].points
            a, b = pts[0], pts[-1]
            endpoints.append(Point(a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)))
        conn = Curve(tuple(endpoints), Color.NEUTRAL)
        hits = []
        total = 0
        for idx, s in enumerate(shapes):
            if bbox_disjoint(s.bbox, conn.bbox):
                continue
            recs = curve_intersections(s, conn, (idx, -1))
            if recs:
                hits.append(idx)
                total += len(recs)
        if len(hits) == 2 and total == 2 and set(hits) == {arr.edges[pick[0]].owner,
                                                           arr.edges[pick[1]].owner}:
            connectors.append(conn)
    return shapes, CurveFamily(tuple(connectors), Role.CONNECTORS)
