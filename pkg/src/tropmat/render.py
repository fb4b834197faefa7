"""SVG pictures for d = 3: mixed subdivisions of n·Δ² and tropical line arrangements.

This is the only module that uses floating point, and only for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape, quoteattr

from .errors import UnsupportedDimension
from .fm import LinearSystem, solve
from .mixsd import MixedSubdivision, cell_vertex_points, embed_tope
from .ndtype import format_type, popcount
from .realize import WeightMatrix, realizable_tom, type_system

SQRT3_2 = math.sqrt(3) / 2
PALETTE = ["#f4e3c1", "#c9e4de", "#d7d4f0", "#f2c6c2", "#cfe8b8", "#f6d6ad", "#bcd7ef"]
BASE_STYLES = {
    "outline": "fill:none;stroke:#222;stroke-width:2",
    "vertex": "fill:#222",
    "apex": "fill:#b22",
    "ray": "fill:none;stroke:#b22;stroke-width:1.5",
    "label": "font:10px sans-serif;text-anchor:middle;fill:#333",
}


@dataclass
class SvgPolygon:
    points: list[tuple[float, float]]
    cls: str
    title: str = ""


@dataclass
class SvgPolyline:
    points: list[tuple[float, float]]
    cls: str


@dataclass
class SvgCircle:
    center: tuple[float, float]
    cls: str
    r: float = 3.0


@dataclass
class SvgLabel:
    at: tuple[float, float]
    text: str
    cls: str = "label"


@dataclass
class SvgScene:
    width: float
    height: float
    polygons: list[SvgPolygon] = field(default_factory=list)
    polylines: list[SvgPolyline] = field(default_factory=list)
    circles: list[SvgCircle] = field(default_factory=list)
    labels: list[SvgLabel] = field(default_factory=list)
    styles: dict[str, str] = field(default_factory=dict)

    def used_classes(self) -> set[str]:
        items = [*self.polygons, *self.polylines, *self.circles, *self.labels]
        return {it.cls for it in items}

    def to_svg(self) -> str:
        def pts(ps):
            return " ".join(f"{x:.3f},{y:.3f}" for x, y in ps)

        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width:.0f}" '
            f'height="{self.height:.0f}" viewBox="0 0 {self.width:.3f} {self.height:.3f}">',
            "<style>",
        ]
        for cls in sorted(self.styles):
            out.append(f".{cls} {{ {self.styles[cls]} }}")
        out.append("</style>")
        for p in self.polygons:
            title = f"<title>{escape(p.title)}</title>" if p.title else ""
            out.append(f'<polygon class={quoteattr(p.cls)} points="{pts(p.points)}">{title}</polygon>')
        for line in self.polylines:
            out.append(f'<polyline class={quoteattr(line.cls)} points="{pts(line.points)}"/>')
        for c in self.circles:
            x, y = c.center
            out.append(f'<circle class={quoteattr(c.cls)} cx="{x:.3f}" cy="{y:.3f}" r="{c.r:g}"/>')
        for lab in self.labels:
            x, y = lab.at
            out.append(
                f'<text class={quoteattr(lab.cls)} x="{x:.3f}" y="{y:.3f}">{escape(lab.text)}</text>'
            )
        out.append("</svg>")
        return "\n".join(out) + "\n"


def project_lattice(p) -> tuple[float, float]:
    """e1 -> (0,0), e2 -> (1,0), e3 -> (1/2, sqrt(3)/2), extended linearly."""
    _, x2, x3 = (float(v) for v in p)
    return (x2 + x3 / 2, x3 * SQRT3_2)


def _fit(raw: list[tuple[float, float]], size: float, margin: float):
    xs = [p[0] for p in raw]
    ys = [p[1] for p in raw]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (size - 2 * margin) / span

    def to_canvas(p):
        # SVG y grows downwards
        return (margin + (p[0] - x0) * scale, size - margin - (p[1] - y0) * scale)

    return to_canvas


def _pattern_class(C) -> tuple[str, str]:
    sizes = sorted((popcount(m) for m in C.masks), reverse=True)
    name = "cell-" + "".join(str(s) for s in sizes)
    key = sum((s - 1) * (k + 1) for k, s in enumerate(sizes))
    return name, f"fill:{PALETTE[key % len(PALETTE)]};stroke:#444;stroke-width:1"


def _convex_order(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def render_subdivision(S: MixedSubdivision, size: float = 480, labels: bool = False) -> SvgScene:
    """One polygon per maximal cell, one dot per vertex tope."""
    if S.d != 3:
        raise UnsupportedDimension(f"rendering needs d = 3, got d = {S.d}")
    n = S.n
    corners = [project_lattice(p) for p in ((n, 0, 0), (0, n, 0), (0, 0, n))]
    to_canvas = _fit(corners, size, 24)
    scene = SvgScene(size, size, styles=dict(BASE_STYLES))
    for C in S.maximal_cells:
        cls, style = _pattern_class(C)
        scene.styles[cls] = style
        pts = _convex_order([project_lattice(p) for p in cell_vertex_points(C)])
        scene.polygons.append(SvgPolygon([to_canvas(p) for p in pts], cls, format_type(C)))
        if labels:
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            scene.labels.append(SvgLabel(to_canvas((cx, cy)), format_type(C)))
    scene.polylines.append(SvgPolyline([to_canvas(p) for p in corners + corners[:1]], "outline"))
    for v in S.vertex_topes():
        scene.circles.append(SvgCircle(to_canvas(project_lattice(embed_tope(v))), "vertex"))
    if not labels:
        del scene.styles["label"]
    return _prune_styles(scene)


def _prune_styles(scene: SvgScene) -> SvgScene:
    used = scene.used_classes()
    scene.styles = {k: v for k, v in scene.styles.items() if k in used}
    return scene


# directions of the three rays: towards the corners e1, e2, e3 of the triangle picture
_DIRS = [(-SQRT3_2, -0.5), (SQRT3_2, -0.5), (0.0, 1.0)]


def project_tropical(x) -> tuple[float, float]:
    """Map a point of tropical projective space to the plane; (1,1,1) goes to 0."""
    fx = [float(v) for v in x]
    return (
        sum(v * u[0] for v, u in zip(fx, _DIRS)),
        sum(v * u[1] for v, u in zip(fx, _DIRS)),
    )


def _region_point(W: WeightMatrix, tope, lo: Fraction, hi: Fraction):
    system = type_system(W, tope, strict=True)
    box = LinearSystem(system.nvars, list(system.inequalities), list(system.equalities))
    for k in range(system.nvars):
        unit = [0] * system.nvars
        unit[k] = 1
        box.add_le(unit, -hi, True)
        box.add_le([-c for c in unit], lo, True)
    x = solve(box)
    return None if x is None else tuple(x) + (Fraction(0),)


def render_arrangement(W: WeightMatrix, size: float = 480, labels: bool = True) -> SvgScene:
    """Each hyperplane as an apex with three rays; one type label per region."""
    if W.d != 3:
        raise UnsupportedDimension(f"rendering needs d = 3, got d = {W.d}")
    apexes = [tuple(-a + row[2] for a in row) for row in W.rows]
    coords = [v for ap in apexes for v in ap[:2]] + [Fraction(0)]
    lo, hi = min(coords) - 1, max(coords) + 1
    flat = [project_tropical(ap) for ap in apexes]
    reach = 3 * float(hi - lo) + 1
    extent = [(x + reach * u[0], y + reach * u[1]) for x, y in flat for u in _DIRS]
    to_canvas = _fit(flat + extent, size, 24)
    scene = SvgScene(size, size, styles=dict(BASE_STYLES))
    for (x, y) in flat:
        for u in _DIRS:
            end = (x + reach * u[0], y + reach * u[1])
            scene.polylines.append(SvgPolyline([to_canvas((x, y)), to_canvas(end)], "ray"))
        scene.circles.append(SvgCircle(to_canvas((x, y)), "apex"))
    if labels:
        for t in realizable_tom(W):
            if not t.is_total():
                continue
            pt = _region_point(W, t, lo, hi)
            if pt is None:
                raise AssertionError(f"region {t} misses the label box")
            scene.labels.append(SvgLabel(to_canvas(project_tropical(pt)), format_type(t)))
    return _prune_styles(scene)
