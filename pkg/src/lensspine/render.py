"""SVG drawings of a triangulated point polygon with its Voronoi diagram."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np
from scipy.spatial import Voronoi

from .triangulation import Triangulation

SVG_NS = "http://www.w3.org/2000/svg"


def _clip(p0, p1, lo, hi):
    """Liang-Barsky clipping of segment p0-p1 to the box [lo, hi]^2; None if outside."""
    t0, t1 = 0.0, 1.0
    d = p1 - p0
    for axis in range(2):
        for edge, sign in ((lo, -1.0), (hi, 1.0)):
            num = sign * (edge - p0[axis])
            den = sign * d[axis]
            if den == 0:
                if num < 0:
                    return None
                continue
            t = num / den
            if den < 0:
                t0 = max(t0, t)
            else:
                t1 = min(t1, t)
    if t0 > t1:
        return None
    return p0 + t0 * d, p0 + t1 * d


def voronoi_segments(points: np.ndarray, box: float) -> list[tuple[np.ndarray, np.ndarray]]:
    """Voronoi edges clipped to [-box, box]^2; unbounded edges are extended past the box."""
    vor = Voronoi(points)
    center = points.mean(axis=0)
    far = 4 * box
    out = []
    for (i, j), ridge in zip(vor.ridge_points, vor.ridge_vertices):
        ridge = np.asarray(ridge)
        if np.all(ridge >= 0):
            a, b = vor.vertices[ridge[0]], vor.vertices[ridge[1]]
        else:
            finite = vor.vertices[ridge[ridge >= 0][0]]
            tangent = points[j] - points[i]
            normal = np.array([-tangent[1], tangent[0]]) / np.linalg.norm(tangent)
            mid = (points[i] + points[j]) / 2
            direction = normal if np.dot(mid - center, normal) > 0 else -normal
            a, b = finite, finite + direction * far
        seg = _clip(np.asarray(a, float), np.asarray(b, float), -box, box)
        if seg is not None:
            out.append(seg)
    return out


def triangulation_svg(points, t: Triangulation, voronoi: bool = True, size: int = 600, title: str | None = None) -> str:
    pts = np.asarray(points, dtype=float)
    if pts.shape != (t.p, 2):
        raise ValueError(f"need {t.p} planar points, got shape {pts.shape}")
    box = 1.25 * float(np.abs(pts).max())
    scale = size / (2 * box)

    def xy(v):
        return f"{(v[0] + box) * scale:.3f}", f"{(box - v[1]) * scale:.3f}"

    ET.register_namespace("", SVG_NS)
    root = ET.Element("svg", xmlns=SVG_NS, width=str(size), height=str(size), viewBox=f"0 0 {size} {size}")
    if title:
        ET.SubElement(root, "title").text = title
    ET.SubElement(root, "rect", width=str(size), height=str(size), fill="white")

    if voronoi and t.p >= 3:
        layer = ET.SubElement(root, "g", id="voronoi", stroke="#c0392b", fill="none")
        layer.set("stroke-width", "1")
        layer.set("stroke-dasharray", "4 3")
        for a, b in voronoi_segments(pts, box):
            (x1, y1), (x2, y2) = xy(a), xy(b)
            ET.SubElement(layer, "line", x1=x1, y1=y1, x2=x2, y2=y2)

    outline = ET.SubElement(root, "g", id="polygon", stroke="black", fill="none")
    outline.set("stroke-width", "1.5")
    ET.SubElement(outline, "polygon", points=" ".join(",".join(xy(v)) for v in pts))

    diagonals = ET.SubElement(root, "g", id="diagonals", stroke="#1f4e9c")
    diagonals.set("stroke-width", "1.2")
    for a, b in t.diagonals:
        (x1, y1), (x2, y2) = xy(pts[a]), xy(pts[b])
        ET.SubElement(diagonals, "line", x1=x1, y1=y1, x2=x2, y2=y2)

    vertices = ET.SubElement(root, "g", id="vertices", fill="black")
    for v in pts:
        cx, cy = xy(v)
        ET.SubElement(vertices, "circle", cx=cx, cy=cy, r="2.5")

    return ET.tostring(root, encoding="unicode", xml_declaration=True) + "\n"


def polygon_points(p: int) -> np.ndarray:
    k = np.arange(p)
    return np.column_stack([np.cos(2 * np.pi * k / p), np.sin(2 * np.pi * k / p)])
