import random

import pytest

from pentile.fixtures import type15_case_set, type15_graph
from pentile.goodset_enum import load_golden
from pentile.search.lengths import LengthProgram
from pentile.tiling_graph import (PI, Attachment, LabelClash, TilingGraph, add_face,
                                  attachment_ok, check_invariants, closed_face_runs,
                                  complete_vertices, enumerate_attachments, find_runs,
                                  initial_graph, merge_label, merge_vertices)
from pentile.vectypes import compat


def _run_with(g, vid, a, b):
    for r in find_runs(g):
        vs = r.vertices
        if vid[a] in vs and vid[b] in vs:
            i, j = vs.index(vid[a]), vs.index(vid[b])
            return r, min(i, j), max(i, j)
    raise AssertionError(f"no run through {a} and {b}")


def test_initial_graph():
    g = initial_graph()
    assert len(g.tiles) == 1 and len(g.vertices()) == 5
    assert g.euler_characteristic() == 2
    assert check_invariants(g, compat(((1, 1, 1, 0, 0),)))
    assert len(find_runs(g)) == 0 or all(len(r.steps) >= 3 for r in find_runs(g))


def test_fixture_is_valid():
    g, vid = type15_graph()
    X = type15_case_set()
    assert len(g.tiles) == 5
    assert check_invariants(g, X)
    assert g.euler_characteristic() == 2


def test_fixture_runs_and_closed_faces():
    g, vid = type15_graph()
    r, i, j = _run_with(g, vid, "w", "w'")
    assert r.distance(i, j) == (0, 0, 0, 0, 0)
    r, i, j = _run_with(g, vid, "s", "s'")
    assert r.distance(i, j) in {(0, -1, 0, 1, 0), (0, 1, 0, -1, 0)}
    faces = closed_face_runs(g)
    assert any(set(d) != {0} and sorted(abs(x) for x in d) == [0, 0, 0, 1, 1] for d in faces)


def test_fixture_merge_replay():
    g, vid = type15_graph()
    X = type15_case_set()
    for a, b in [("w", "w'"), ("u", "u'")]:
        r, i, j = _run_with(g, vid, a, b)
        assert merge_label(r, i, j) is not None
        g = merge_vertices(g, r, i, j)
        assert check_invariants(g, X)
    u = min(vid["u"], vid["u'"])
    g = complete_vertices(g, X)
    assert PI in g.gaps[u] and g.is_complete(u)
    assert check_invariants(g, X)
    r, i, j = _run_with(g, vid, "r", "r'")
    g = merge_vertices(g, r, i, j)
    assert check_invariants(g, X)
    # the merged graph forces l3 = l4 + l5
    assert any(tuple(d) in {(0, 0, 1, -1, -1), (0, 0, -1, 1, 1)} for d in closed_face_runs(g))


def test_snapshot_round_trip():
    g, _ = type15_graph()
    text = g.to_json({"case": 303})
    h, meta = TilingGraph.from_json(text)
    assert h == g and meta["case"] == 303
    assert h.to_json({"case": 303}) == text


@pytest.mark.parametrize("text", [
    "not json",
    '{"format": "other", "version": 1}',
    '{"format": "pentile-graph", "version": 1, "tiles": [[[0,1,2,3], 1]], "vertices": [], "next_vid": 4}',
])
def test_malformed_snapshots_rejected(text):
    with pytest.raises(ValueError):
        TilingGraph.from_json(text)


def test_label_clash():
    g = initial_graph()
    att = Attachment(0, 2, 1, "L")
    with pytest.raises(LabelClash):
        add_face(g, att, laid_edge=(att.laid_edge() + 1) % 5)
    assert len(add_face(g, att, laid_edge=att.laid_edge()).tiles) == 2


def test_no_dominating_type():
    X = type15_case_set()
    # corners 2 and 4 never meet at a vertex of this case
    g = add_face(initial_graph(), Attachment(1, 3, 1, "L"))
    v = check_invariants(g, X)
    assert not v and v.kind == "NoDominatingType"
    assert Attachment(1, 3, 1, "L") not in enumerate_attachments(initial_graph(), 1, X)


def test_local_attachment_check_matches_full_check():
    golden = load_golden()
    rng = random.Random(1)
    total = 0
    for _ in range(25):
        X = compat(golden[rng.randrange(len(golden))][3])
        g = initial_graph()
        for _ in range(6):
            w = rng.choice(g.open_vertices())
            for side in "LR":
                for o in (1, -1):
                    for k in range(5):
                        a = Attachment(w, k, o, side)
                        assert bool(check_invariants(add_face(g, a), X)) == attachment_ok(g, a, X)
                        total += 1
            atts = enumerate_attachments(g, w, X)
            if not atts:
                break
            g = complete_vertices(add_face(g, rng.choice(atts)), X)
            if not check_invariants(g, X):
                break
    assert total > 500
