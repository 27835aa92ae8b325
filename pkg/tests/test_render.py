import math
import xml.etree.ElementTree as ET

import pytest

from pentile.fixtures import type15_snapshot
from pentile.render import InfeasibleSnapshot, render_snapshot
from pentile.tiling_graph import initial_graph

SVG = "{http://www.w3.org/2000/svg}"


def _polygons(svg):
    root = ET.fromstring(svg)
    out = []
    for p in root.iter(SVG + "polygon"):
        pts = [tuple(map(float, xy.split(","))) for xy in p.get("points").split()]
        out.append(pts)
    return root, out


@pytest.mark.parametrize("case", [1, 2, 100, 303, 371])
def test_initial_graph_closes(case):
    svg, worst = render_snapshot(initial_graph().to_json({"case": case, "lengths": []}))
    root, polys = _polygons(svg)
    assert len(polys) == 1 and len(polys[0]) == 5
    # worst includes the gap left after walking all five sides
    assert worst < 1e-9


def test_fixture_renders_five_tiles():
    svg, worst = render_snapshot(type15_snapshot(), scale=300)
    root, polys = _polygons(svg)
    assert len(polys) == 5
    assert worst < 1e-9
    assert len(list(root.iter(SVG + "line"))) == 1  # the s1 -> s2 arrow


def test_fixture_shared_vertices_coincide():
    svg, _ = render_snapshot(type15_snapshot(), scale=1.0)
    _, polys = _polygons(svg)
    pts = [p for poly in polys for p in poly]
    # the middle vertex is a corner of three tiles: those copies must agree
    close = sum(1 for a in pts for b in pts if a is not b and math.dist(a, b) < 1e-9)
    assert close >= 6


def _overlap(p, q, eps=1e-6):
    """Do two convex polygons share interior points?  Separating axis test."""
    for poly in (p, q):
        for k in range(len(poly)):
            (x1, y1), (x2, y2) = poly[k], poly[(k + 1) % len(poly)]
            nx, ny = y2 - y1, x1 - x2
            a = [nx * x + ny * y for x, y in p]
            b = [nx * x + ny * y for x, y in q]
            if max(a) <= min(b) + eps * math.hypot(nx, ny) or max(b) <= min(a) + eps * math.hypot(nx, ny):
                return False
    return True


def test_fixture_tiles_do_not_overlap():
    svg, _ = render_snapshot(type15_snapshot(), scale=1.0)
    _, polys = _polygons(svg)
    for a in range(5):
        for b in range(a + 1, 5):
            assert not _overlap(polys[a], polys[b]), (a, b)


def test_overlap_oracle_sees_overlap():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert _overlap(sq, [(0.5, 0.5), (1.5, 0.5), (1.5, 1.5), (0.5, 1.5)])
    assert not _overlap(sq, [(1, 0), (2, 0), (2, 1), (1, 1)])


def test_snapshot_without_case():
    with pytest.raises(InfeasibleSnapshot):
        render_snapshot(initial_graph().to_json())


def test_contradictory_lengths():
    text = initial_graph().to_json({"case": 1, "lengths": [["eq", ["1", "0", "0", "0", "0"]]]})
    with pytest.raises(InfeasibleSnapshot):
        render_snapshot(text)
