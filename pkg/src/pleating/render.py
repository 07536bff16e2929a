"""SVG figures of developed patches in the affine chart z = hom[0] / hom[1]."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .develop import PatchTriangle, normalized_bend
from .mobius import ProjectivePoint
from .surface import Triangulation


@dataclass(frozen=True)
class RenderConfig:
    size: int = 800
    chart_radius: float = 8.0
    margin: int = 20

    def __post_init__(self):
        if self.size <= 0 or self.chart_radius <= 0:
            raise ValueError("size and chart radius must be positive")


def chart_point(p: ProjectivePoint, radius: float) -> tuple[complex, bool]:
    """Affine value of ``p``, pulled back onto the circle |z| = radius if farther out.

    Returns (value, clipped).
    """
    if abs(p.w) * radius > abs(p.z):
        return p.z / p.w, False
    d = p.z * p.w.conjugate()
    if abs(d) == 0.0:
        d = p.z
    return radius * d / abs(d), True


def _color(bend: float | None) -> str:
    if bend is None:
        return "#888888"
    t = min(bend, 2 * math.pi - bend) / math.pi  # 0 (flat) .. 1 (folded)
    r = round(40 + 215 * t)
    b = round(255 - 215 * t)
    return f"#{r:02x}40{b:02x}"


def render(patch: list[PatchTriangle], tri: Triangulation, coords=None, config: RenderConfig = RenderConfig()) -> str:
    """One polygon and three coloured chords per patch triangle; returns SVG 1.1 text."""
    if not patch:
        raise ValueError("cannot render an empty patch")
    R = config.chart_radius
    half = config.size / 2
    scale = (half - config.margin) / R

    def xy(z: complex) -> tuple[str, str]:
        return f"{half + scale * z.real:.4f}", f"{half - scale * z.imag:.4f}"

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(config.size),
            "height": str(config.size),
            "viewBox": f"0 0 {config.size} {config.size}",
        },
    )
    ET.SubElement(svg, "circle", {"class": "chart", "cx": f"{half:.4f}", "cy": f"{half:.4f}", "r": f"{scale * R:.4f}", "fill": "none", "stroke": "#dddddd"})
    ET.SubElement(svg, "line", {"class": "axis", "x1": f"{half - scale * R:.4f}", "y1": f"{half:.4f}", "x2": f"{half + scale * R:.4f}", "y2": f"{half:.4f}", "stroke": "#eeeeee"})
    g_tri = ET.SubElement(svg, "g", {"class": "triangles"})
    g_chord = ET.SubElement(svg, "g", {"class": "chords"})
    g_vert = ET.SubElement(svg, "g", {"class": "vertices"})

    dots = {}
    for node in patch:
        pts = [chart_point(p, R) for p in node.flags]
        coords_xy = [xy(z) for z, _ in pts]
        ET.SubElement(
            g_tri,
            "polygon",
            {
                "class": "triangle",
                "data-triangle": str(node.triangle),
                "data-word": " ".join(map(str, node.word)),
                "points": " ".join(f"{x},{y}" for x, y in coords_xy),
                "fill": "#4060ff",
                "fill-opacity": "0.06",
                "stroke": "none",
            },
        )
        for s, h in enumerate(tri.triangles[node.triangle]):
            a = tri.arc_of(h)
            bend = normalized_bend(coords[a]) if (a is not None and coords is not None) else None
            (x1, y1), (x2, y2) = coords_xy[s], coords_xy[(s + 1) % 3]
            ET.SubElement(
                g_chord,
                "line",
                {
                    "class": "boundary" if a is None else "arc",
                    "x1": x1, "y1": y1, "x2": x2, "y2": y2,
                    "stroke": _color(bend if a is not None else None),
                    "stroke-width": "1",
                },
            )
        for (x, y), (_, clipped) in zip(coords_xy, pts):
            dots[(x, y)] = dots.get((x, y), False) or clipped
    for (x, y), clipped in sorted(dots.items()):
        attrs = {"cx": x, "cy": y, "r": "2.5" if clipped else "1.5", "fill": "#000000"}
        attrs["class"] = "vertex clipped" if clipped else "vertex"
        ET.SubElement(g_vert, "circle", attrs)
    return ET.tostring(svg, encoding="unicode")
