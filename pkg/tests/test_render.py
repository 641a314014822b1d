import xml.etree.ElementTree as ET

import numpy as np
import pytest

from lensspine.construct import optimal_triangulation, perturbed_points
from lensspine.render import SVG_NS, polygon_points, triangulation_svg, voronoi_segments
from lensspine.triangulation import fan

NS = {"s": SVG_NS}


def parse(svg):
    return ET.fromstring(svg.split("?>", 1)[1])


def counts(root):
    return (
        len(root.findall(".//s:g[@id='vertices']/s:circle", NS)),
        len(root.findall(".//s:g[@id='diagonals']/s:line", NS)),
        root.find(".//s:g[@id='voronoi']", NS),
    )


def test_figure_svg_structure():
    c = optimal_triangulation(34, 13)
    pts = perturbed_points(34, c.parameter, c.eccentricity).points
    root = parse(triangulation_svg(pts, c.triangulation, title="(34,13)"))
    verts, diags, vor = counts(root)
    assert (verts, diags) == (34, 31)
    assert vor is not None and len(vor) > 0
    assert root.find("s:title", NS).text == "(34,13)"


def test_voronoi_layer_optional():
    root = parse(triangulation_svg(polygon_points(7), fan(7), voronoi=False))
    assert counts(root)[:2] == (7, 4) and counts(root)[2] is None


def test_shape_mismatch():
    with pytest.raises(ValueError):
        triangulation_svg(polygon_points(6), fan(7))


def test_voronoi_segments_inside_box():
    pts = perturbed_points(9, 2, 0.01).points
    segs = voronoi_segments(pts, 1.25)
    assert segs
    for a, b in segs:
        assert np.all(np.abs(a) <= 1.25 + 1e-9) and np.all(np.abs(b) <= 1.25 + 1e-9)
