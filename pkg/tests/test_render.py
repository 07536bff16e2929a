import xml.etree.ElementTree as ET

import pytest

from pleating.coords import random_generic
from pleating.develop import develop_patch
from pleating.mobius import INF, point
from pleating.render import RenderConfig, chart_point, render

NS = "{http://www.w3.org/2000/svg}"


def parse(svg):
    return ET.fromstring(svg)


def test_chart_point():
    assert chart_point(point(3 + 4j), 8) == (3 + 4j, False)
    z, clipped = chart_point(INF, 8)
    assert clipped and abs(z) == pytest.approx(8)
    z, clipped = chart_point(point(100j), 8)
    assert clipped and z == pytest.approx(8j)


def test_depth_zero(torus):
    c = random_generic(torus, 0)
    cfg = RenderConfig(size=400, chart_radius=4, margin=0)
    root = parse(render(develop_patch(torus, c, 0), torus, c, cfg))
    assert len(root.iter(NS + "polygon").__next__().get("points").split()) == 3
    verts = [(float(v.get("cx")), float(v.get("cy")), v.get("class")) for v in root.iter(NS + "circle") if "vertex" in v.get("class")]
    # 0 -> centre, 1 -> one unit right, infinity -> clipped marker
    assert (200.0, 200.0, "vertex") in verts and (250.0, 200.0, "vertex") in verts
    assert sum(cls == "vertex clipped" for _, _, cls in verts) == 1


def test_triangle_count_matches_patch(tri):
    c = random_generic(tri, 1)
    patch = develop_patch(tri, c, 3)
    root = parse(render(patch, tri, c))
    assert sum(1 for p in root.iter(NS + "polygon") if p.get("class") == "triangle") == len(patch)


def test_fuchsian_vertices_on_axis(tri):
    c = random_generic(tri, 2, positive=True)
    cfg = RenderConfig()
    root = parse(render(develop_patch(tri, c, 3), tri, c, cfg))
    for v in root.iter(NS + "circle"):
        if v.get("class") == "vertex":
            assert float(v.get("cy")) == pytest.approx(cfg.size / 2, abs=1e-3)


def test_deterministic(torus):
    c = random_generic(torus, 4)
    patch = develop_patch(torus, c, 2)
    assert render(patch, torus, c) == render(patch, torus, c)


def test_rejects_bad_config(torus):
    with pytest.raises(ValueError):
        RenderConfig(size=0)
    with pytest.raises(ValueError):
        render([], torus)
