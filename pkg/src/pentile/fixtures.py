"""Hand-built tiling graphs used by tests, demos and the renderer.

``type15_graph`` is a five-tile fragment of the type 15 tiling, case
compat(00120 02001 20010 00004).  Vertex names follow the usual drawing of
that fragment: y is the vertex shared by three tiles in the middle, t the
other triple point, and primed names are the far copies of a point that a
merge would identify.
"""
from __future__ import annotations

from .tiling_graph import from_description
from .vectypes import compat, decode_set

TYPE15_BASIS = "00120 02001 20010 00004"
TYPE15_CASE = 303


def type15_case_set():
    return compat(decode_set(TYPE15_BASIS))


def type15_graph():
    """(graph, name -> vertex id)."""
    A, B, C, D, E = range(5)
    tiles = [
        (("y", "x", "a2", "a3", "z"), -1),
        (("y", "x", "b3", "r'", "u'"), 1),
        (("r", "c4", "w'", "t", "u"), 1),
        (("d5", "d1", "w", "t", "s"), -1),
        (("e5", "s'", "t", "y", "z"), -1),
    ]
    rotations = {
        "y": [(E, 4), (A, 1), (B, 1)],
        "x": [(B, 2), (A, 2)],
        "z": [(E, 5), (A, 5)],
        "t": [(D, 4), (E, 3), (C, 4)],
    }
    gaps = {"y": "EEE", "t": "EEE", "x": "EU", "z": "UE"}
    return from_description(tiles, rotations, gaps)


TYPE15_LENGTHS = ((0, 1, 0, -1, 0), (0, 0, 0, 1, -1), (0, 0, 1, -2, 0))  # B=D=E, C=2B


def type15_snapshot() -> str:
    """Snapshot text of the fragment drawn with the type 15 pentagon.

    The closed faces alone force only D=E; the remaining side equations
    are those of the pentagon the fragment is cut from, without which the
    drawn tiles need not fit together.
    """
    from .tiling_graph import closed_face_runs
    g, _ = type15_graph()
    rows = [d for d in closed_face_runs(g) if any(d)]
    rows += [d for d in TYPE15_LENGTHS if d not in rows]
    return g.to_json({"case": TYPE15_CASE, "lengths": [["eq", [str(x) for x in d]] for d in rows]})
