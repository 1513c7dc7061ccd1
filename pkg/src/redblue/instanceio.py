"""Text format for curve-family instances.

One curve per line: ``color;x1,y1 x2,y2 ...`` with each coordinate written
as ``p`` or ``p/q``.  A line of ``---`` separates the shape family (first)
from the optional connector family (second).  ``#`` starts a comment.
Printing is canonical, so parse(print(inst)) == inst and printing a parsed
canonical file reproduces it byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .geometry import Color, Curve, CurveFamily, Point, Role, Scalar


def format_scalar(v: Scalar) -> str:
    f = Fraction(v)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def parse_scalar(text: str) -> Scalar:
    try:
        if "/" in text:
            num, den = text.split("/")
            f = Fraction(int(num), int(den))
        else:
            return int(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}") from exc
    return f.numerator if f.denominator == 1 else f


def format_curve(curve: Curve) -> str:
    verts = " ".join(f"{format_scalar(p.x)},{format_scalar(p.y)}" for p in curve.vertices)
    return f"{curve.color.value};{verts}"


def parse_curve(line: str, lineno: int | None = None) -> Curve:
    if ";" not in line:
        raise ParseError("expected 'color;vertices'", lineno)
    color_text, _, rest = line.partition(";")
    try:
        color = Color(color_text.strip())
    except ValueError:
        raise ParseError(f"unknown color {color_text!r}", lineno)
    verts = []
    for tok in rest.split():
        if "," not in tok:
            raise ParseError(f"bad vertex {tok!r}", lineno)
        xs, ys = tok.split(",", 1)
        try:
            verts.append(Point(parse_scalar(xs), parse_scalar(ys)))
        except ValueError as exc:
            raise ParseError(str(exc), lineno)
    if len(verts) < 2:
        raise ParseError("curve needs at least two vertices", lineno)
    return Curve(tuple(verts), color)


def format_instance(shapes: CurveFamily, connectors: CurveFamily | None = None) -> str:
    lines = [format_curve(c) for c in shapes]
    if connectors is not None:
        lines.append("---")
        lines.extend(format_curve(c) for c in connectors)
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> tuple[CurveFamily, CurveFamily | None]:
    families: list[list[Curve]] = [[]]
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "---":
            if len(families) == 2:
                raise ParseError("more than two families", lineno)
            families.append([])
            continue
        families[-1].append(parse_curve(line, lineno))
    shapes = CurveFamily(tuple(families[0]), Role.SHAPES)
    if len(families) == 1:
        return shapes, None
    return shapes, CurveFamily(tuple(families[1]), Role.CONNECTORS)
