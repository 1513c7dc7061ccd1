"""Planar arrangement of a curve family.

The arrangement splits every curve at its endpoints and at intersection
points; the pieces are edges (sub-polylines that may bend but contain no
vertex in their interior).  Faces are recovered combinatorially: half-edges
are walked with the face on the left, each closed walk with positive signed
area surrounds one bounded face, and every connected component contributes
exactly one non-positive walk, its outer contour, which is attached as a
hole of the face containing the component.  All of it is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

from .errors import DegeneracyError, OnBoundaryError
from .geometry import (
    Curve,
    CurveFamily,
    IntersectionKind,
    Point,
    _direction_cmp,
    bbox_disjoint,
    curve_intersections,
    on_segment,
)


@dataclass(frozen=True)
class ArrVertex:
    id: int
    point: Point
    curves: tuple[int, ...]          # curves through this point
    endpoint_of: tuple[int, ...]     # curves having an endpoint here
    is_intersection: bool            # meeting point of two curves

    @property
    def is_plain_endpoint(self) -> bool:
        return bool(self.endpoint_of) and not self.is_intersection

    @property
    def is_tjunction(self) -> bool:
        return bool(self.endpoint_of) and self.is_intersection


@dataclass(frozen=True)
class ArrEdge:
    id: int
    owner: int
    points: tuple[Point, ...]
    v_from: int
    v_to: int


@dataclass(frozen=True)
class Walk:
    id: int
    steps: tuple[int, ...]           # half-edge ids, face on the left
    area2: Fraction                  # twice the signed area of its polygon
    polygon: tuple[Point, ...]
    bbox: tuple

    @property
    def is_surrounding(self) -> bool:
        return self.area2 > 0


@dataclass(frozen=True)
class Face:
    id: int
    walk_ids: tuple[int, ...]        # surrounding walk first for bounded faces
    unbounded: bool


@dataclass(frozen=True)
class WalkAudit:
    face_id: int
    walk_id: int
    kind: str                        # "surrounding" | "hole"
    length: int
    crossings: int                   # appearances of pure crossing vertices
    endpoints: int                   # appearances of plain segment endpoints
    tjunctions: int                  # appearances of endpoint-on-interior vertices
    distinct_edges: int
    identity_checked: bool
    identity_ok: bool
    turn_total: int                  # degrees, must be +360 / -360


def _point_in_polygon(poly: Sequence[Point], p: Point) -> bool:
    """Exact parity test; p must not lie on the polygon itself."""
    inside = False
    n = len(poly)
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if (a.x <= p.x) == (b.x <= p.x):
            continue
        num = (a.y - p.y) * (b.x - a.x) + (b.y - a.y) * (p.x - a.x)
        if (num > 0) == (b.x > a.x):
            inside = not inside
    return inside


class Arrangement:
    """Immutable planar subdivision of a curve family."""

    def __init__(self, family: CurveFamily):
        self.family = family
        self._build()

    # -- construction -----------------------------------------------------

    def _build(self) -> None:
        curves = self.family.curves
        n = len(curves)

        cut_records: dict[int, dict[Point, bool]] = {i: {} for i in range(n)}
        endpoint_of: dict[Point, set[int]] = {}
        inter_owners: dict[Point, set[int]] = {}
        for i, c in enumerate(curves):
            for p in (c.first, c.last):
                cut_records[i][p] = True
                endpoint_of.setdefault(p, set()).add(i)
        for i in range(n):
            bi = curves[i].bbox
            for j in range(i + 1, n):
                if bbox_disjoint(bi, curves[j].bbox):
                    continue
                for rec in curve_intersections(curves[i], curves[j], (i, j)):
                    cut_records[i][rec.point] = True
                    cut_records[j][rec.point] = True
                    inter_owners.setdefault(rec.point, set()).update((i, j))

        vertex_id: dict[Point, int] = {}
        vertex_meta: list[Point] = []

        def vid(p: Point) -> int:
            if p not in vertex_id:
                vertex_id[p] = len(vertex_meta)
                vertex_meta.append(p)
            return vertex_id[p]

        edges: list[ArrEdge] = []
        for i, c in enumerate(curves):
            cuts = sorted(cut_records[i], key=lambda p: self._curve_position(c, p))
            pos = [self._curve_position(c, p) for p in cuts]
            for k in range(len(cuts) - 1):
                (sp, tp), (sq, tq) = pos[k], pos[k + 1]
                hi = sq if tq > 0 else sq - 1
                pts = [cuts[k]]
                pts.extend(c.vertices[sp + 1: hi + 1])
                pts.append(cuts[k + 1])
                edges.append(ArrEdge(len(edges), i, tuple(pts),
                                     vid(cuts[k]), vid(cuts[k + 1])))

        vertices: list[ArrVertex] = []
        owners_at: dict[int, set[int]] = {v: set() for v in range(len(vertex_meta))}
        for e in edges:
            owners_at[e.v_from].add(e.owner)
            owners_at[e.v_to].add(e.owner)
        for v, p in enumerate(vertex_meta):
            curves_here = tuple(sorted(owners_at[v]))
            if len(curves_here) > 2:
                raise DegeneracyError(f"three curves through {p}")
            vertices.append(ArrVertex(
                v, p, curves_here,
                tuple(sorted(endpoint_of.get(p, ()))),
                p in inter_owners,
            ))

        # Half-edge h = 2*edge + d; d=0 runs along edge.points, d=1 reverses.
        def he_head(h: int) -> int:
            e = edges[h >> 1]
            return e.v_to if h % 2 == 0 else e.v_from

        def he_tail(h: int) -> int:
            e = edges[h >> 1]
            return e.v_from if h % 2 == 0 else e.v_to

        def he_outdir(h: int):
            pts = edges[h >> 1].points
            a, b = (pts[0], pts[1]) if h % 2 == 0 else (pts[-1], pts[-2])
            return (b.x - a.x, b.y - a.y)

        out_at: dict[int, list[int]] = {v: [] for v in range(len(vertex_meta))}
        for e in edges:
            out_at[e.v_from].append(2 * e.id)
            out_at[e.v_to].append(2 * e.id + 1)
        rotations: dict[int, list[int]] = {}
        rot_index: dict[int, int] = {}
        for v, hs in out_at.items():
            hs.sort(key=cmp_to_key(
                lambda h1, h2: _direction_cmp(he_outdir(h1), he_outdir(h2))))
            for a, b in zip(hs, hs[1:]):
                if _direction_cmp(he_outdir(a), he_outdir(b)) == 0:
                    raise DegeneracyError(
                        f"coincident edge directions at {vertex_meta[v]}")
            rotations[v] = hs
            for idx, h in enumerate(hs):
                rot_index[h] = idx

        nhe = 2 * len(edges)
        next_he = [0] * nhe
        for h in range(nhe):
            v = he_head(h)
            rots = rotations[v]
            idx = rot_index[h ^ 1]
            next_he[h] = rots[idx - 1]

        walks: list[Walk] = []
        walk_of_he = [-1] * nhe
        for h0 in range(nhe):
            if walk_of_he[h0] != -1:
                continue
            steps = []
            h = h0
            while True:
                walk_of_he[h] = len(walks)
                steps.append(h)
                h = next_he[h]
                if h == h0:
                    break
            poly: list[Point] = []
            for h in steps:
                pts = edges[h >> 1].points
                if h % 2 == 1:
                    pts = pts[::-1]
                poly.extend(pts[:-1])
            area2 = Fraction(0)
            for i in range(len(poly)):
                a, b = poly[i], poly[(i + 1) % len(poly)]
                area2 += a.x * b.y - a.y * b.x
            xs = [p.x for p in poly]
            ys = [p.y for p in poly]
            walks.append(Walk(len(walks), tuple(steps), area2, tuple(poly),
                              (min(xs), min(ys), max(xs), max(ys))))

        # Connected components of the underlying plane graph.
        parent = list(range(len(vertex_meta)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for e in edges:
            ra, rb = find(e.v_from), find(e.v_to)
            if ra != rb:
                parent[ra] = rb
        components = len({find(v) for v in range(len(vertex_meta))})

        comp_of_walk = [find(he_tail(w.steps[0])) if w.steps else -1 for w in walks]
        contours: dict[int, int] = {}
        for w in walks:
            if w.area2 <= 0:
                comp = comp_of_walk[w.id]
                if comp in contours:
                    raise AssertionError("component with two outer contours")
                contours[comp] = w.id

        surrounding = [w for w in walks if w.area2 > 0]
        # Attach each component's contour to the face that contains it: the
        # innermost surrounding walk (of another component) around any of the
        # component's points.
        face_of_walk = [-1] * len(walks)
        faces: list[Face] = []
        holes_of: dict[int, list[int]] = {}
        top_level: list[int] = []
        for comp, wid in sorted(contours.items(), key=lambda kv: kv[1]):
            rep = walks[wid].polygon[0]
            best: Optional[Walk] = None
            for w in surrounding:
                if comp_of_walk[w.id] == comp:
                    continue
                bb = w.bbox
                if not (bb[0] < rep.x < bb[2] and bb[1] < rep.y < bb[3]):
                    continue
                if _point_in_polygon(w.polygon, rep):
                    if best is None or abs(w.area2) < abs(best.area2):
                        best = w
            if best is None:
                top_level.append(wid)
            else:
                holes_of.setdefault(best.id, []).append(wid)

        faces.append(Face(0, tuple(top_level), True))
        for wid in top_level:
            face_of_walk[wid] = 0
        for w in walks:
            if w.area2 > 0:
                fid = len(faces)
                ws = (w.id,) + tuple(holes_of.get(w.id, ()))
                faces.append(Face(fid, ws, False))
                for x in ws:
                    face_of_walk[x] = fid

        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.walks = tuple(walks)
        self.faces = tuple(faces)
        self.components = components
        self.next_he = next_he
        self.walk_of_he = walk_of_he
        self.face_of_walk = face_of_walk
        self._vertex_id = vertex_id

        if not (len(vertices) - len(edges) + len(faces) == 1 + components):
            raise AssertionError("Euler identity failed")
        if sum(self.face_size(f.id) for f in faces) != 2 * len(edges):
            raise AssertionError("face sizes do not sum to twice the edges")

    @staticmethod
    def _curve_position(curve: Curve, p: Point) -> tuple[int, Fraction]:
        """Normalized (segment index, parameter in [0,1)) of p along the curve."""
        for si, (a, b) in enumerate(curve.segments):
            if not on_segment(a, b, p):
                continue
            if b.x != a.x:
                t = Fraction(p.x - a.x, b.x - a.x)
            else:
                t = Fraction(p.y - a.y, b.y - a.y)
            if t == 1:
                return (si + 1, Fraction(0))
            return (si, t)
        raise ValueError(f"{p} is not on the curve")

    # -- queries -----------------------------------------------------------

    def face_size(self, face_id: int) -> int:
        """Number of bounding edges with cut-edges counted twice."""
        return sum(len(self.walks[w].steps) for w in self.faces[face_id].walk_ids)

    def boundary_edges(self, face_id: int) -> frozenset[int]:
        out = set()
        for w in self.faces[face_id].walk_ids:
            for h in self.walks[w].steps:
                out.add(h >> 1)
        return frozenset(out)

    def face_of_halfedge(self, h: int) -> int:
        return self.face_of_walk[self.walk_of_he[h]]

    def faces_of_edge(self, edge_id: int) -> tuple[int, int]:
        return (self.face_of_halfedge(2 * edge_id),
                self.face_of_halfedge(2 * edge_id + 1))

    def vertex_at(self, p: Point) -> Optional[ArrVertex]:
        i = self._vertex_id.get(p)
        return None if i is None else self.vertices[i]

    def edge_through(self, p: Point) -> Optional[ArrEdge]:
        """The edge whose interior or endpoint contains p, if any."""
        for e in self.edges:
            for a, b in zip(e.points, e.points[1:]):
                if on_segment(a, b, p):
                    return e
        return None

    def locate(self, p: Point) -> Face:
        """Face whose open region contains p; exact, no perturbation."""
        p = Point(*p)
        for e in self.edges:
            for a, b in zip(e.points, e.points[1:]):
                if on_segment(a, b, p):
                    raise OnBoundaryError(f"{p} lies on curve {e.owner}")
        best: Optional[Walk] = None
        for w in self.walks:
            if w.area2 <= 0:
                continue
            bb = w.bbox
            if not (bb[0] < p.x < bb[2] and bb[1] < p.y < bb[3]):
                continue
            if _point_in_polygon(w.polygon, p):
                if best is None or abs(w.area2) < abs(best.area2):
                    best = w
        if best is None:
            return self.faces[0]
        return self.faces[self.face_of_walk[best.id]]


def build_arrangement(family: CurveFamily) -> Arrangement:
    return Arrangement(family)


def face_size(arr: Arrangement, face: Face | int) -> int:
    fid = face.id if isinstance(face, Face) else face
    return arr.face_size(fid)


def boundary_edges(arr: Arrangement, face: Face | int) -> frozenset[int]:
    fid = face.id if isinstance(face, Face) else face
    return arr.boundary_edges(fid)


def _turn_degrees(d_in, d_out) -> int:
    """Exact turn angle for axis-parallel directions, in degrees."""
    c = d_in[0] * d_out[1] - d_in[1] * d_out[0]
    dot = d_in[0] * d_out[0] + d_in[1] * d_out[1]
    if c == 0:
        if dot > 0:
            return 0
        return -180          # U-turn around a tip keeps the face on the left
    return 90 if c > 0 else -90


def audit_walks(arr: Arrangement) -> list[WalkAudit]:
    """Per-walk vertex accounting for axis-parallel segment arrangements.

    Checks the two structural identities relating crossing and endpoint
    appearances on each walk (skipped when an endpoint-on-interior vertex
    is present), validates every walk's total turning, and checks that no
    face has more than 4n-4 distinct boundary edges.  Raises AssertionError
    naming the offending face on any failure.
    """
    n = len(arr.family)
    if n <= 1:
        raise ValueError("audit needs at least two curves")
    for c in arr.family:
        if not c.is_axis_parallel_segment():
            raise ValueError("audit is defined for axis-parallel segments only")

    def he_head(h: int) -> int:
        e = arr.edges[h >> 1]
        return e.v_to if h % 2 == 0 else e.v_from

    audits = []
    for face in arr.faces:
        if len(arr.boundary_edges(face.id)) > 4 * n - 4:
            raise AssertionError(f"face {face.id} exceeds the 4n-4 edge bound")
        for wid in face.walk_ids:
            walk = arr.walks[wid]
            x = y = t = 0
            for h in walk.steps:
                v = arr.vertices[he_head(h)]
                if v.is_tjunction:
                    t += 1
                elif v.is_plain_endpoint:
                    y += 1
                elif v.is_intersection:
                    x += 1
            kind = "surrounding" if walk.is_surrounding else "hole"
            poly = walk.polygon
            turn = 0
            for i in range(len(poly)):
                a = poly[i - 1]
                b = poly[i]
                c = poly[(i + 1) % len(poly)]
                turn += _turn_degrees((b.x - a.x, b.y - a.y), (c.x - b.x, c.y - b.y))
            expected_turn = 360 if kind == "surrounding" else -360
            if turn != expected_turn:
                raise AssertionError(f"face {face.id}: walk turning {turn}")
            checked = t == 0
            ok = True
            if checked:
                if kind == "surrounding":
                    ok = x == 2 * y + 4
                else:
                    ok = x == 2 * y - 4
                if not ok:
                    raise AssertionError(
                        f"face {face.id}: walk identity failed (x={x}, y={y}, {kind})")
            audits.append(WalkAudit(face.id, wid, kind, len(walk.steps), x, y, t,
                                    len({h >> 1 for h in walk.steps}), checked, ok, turn))
    return audits


def _subarc_samples(curve: Curve, cut_positions: list[tuple[int, Fraction]]) -> list[Point]:
    """One interior point per piece of the curve between consecutive cuts."""
    bounds = sorted(set(cut_positions) | {(0, Fraction(0)), (len(curve.segments), Fraction(0))})
    verts = curve.vertices

    def at(pos: tuple[int, Fraction]) -> Point:
        si, tv = pos
        if si == len(curve.segments):
            return verts[-1]
        a, b = curve.segments[si]
        return Point(a.x + tv * (b.x - a.x), a.y + tv * (b.y - a.y))

    samples = []
    for u, w in zip(bounds, bounds[1:]):
        pu = at(u)
        si = u[0]
        if si < len(curve.segments) and w > (si + 1, Fraction(0)):
            nxt = verts[si + 1]
        else:
            nxt = at(w)
        samples.append(Point(Fraction(pu.x + nxt.x, 2), Fraction(pu.y + nxt.y, 2)))
    return samples


def curve_face_set(arr: Arrangement, c: Curve, closure: bool = False) -> frozenset[int]:
    """Ids of arrangement faces met by the curve.

    With closure=False a face counts only when the curve passes through its
    open region; with closure=True faces adjacent to a touched boundary
    point count as well.
    """
    cuts = []
    cut_points = []
    for i, s in enumerate(arr.family):
        if bbox_disjoint(s.bbox, c.bbox):
            continue
        for rec in curve_intersections(s, c, (i, -1)):
            cuts.append(Arrangement._curve_position(c, rec.point))
            cut_points.append(rec.point)
    out: set[int] = set()
    for sample in _subarc_samples(c, cuts):
        out.add(arr.locate(sample).id)
    if closure:
        for p in cut_points:
            v = arr.vertex_at(p)
            if v is not None:
                for w in arr.walks:
                    for h in w.steps:
                        e = arr.edges[h >> 1]
                        if e.v_from == v.id or e.v_to == v.id:
                            out.add(arr.face_of_walk[w.id])
                            break
            else:
                e = arr.edge_through(p)
                if e is not None:
                    out.update(arr.faces_of_edge(e.id))
    return frozenset(out)


def grounded_witness(shapes: CurveFamily, connectors: CurveFamily,
                     arr: Optional[Arrangement] = None) -> Optional[Face]:
    """A face of the shape arrangement whose open region meets every
    connector, or None when no single face does."""
    if arr is None:
        arr = build_arrangement(shapes)
    common: Optional[frozenset[int]] = None
    for c in connectors:
        fs = curve_face_set(arr, c)
        common = fs if common is None else (common & fs)
        if not common:
            return None
    if common is None:
        return arr.faces[0]
    if 0 in common:
        return arr.faces[0]
    return arr.faces[min(common)]
