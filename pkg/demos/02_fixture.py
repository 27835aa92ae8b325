"""Walk through the hand-built five-tile fragment of the type 15 tiling.

Shows the runs along the frontier, replays the merges that close the
fragment up, and writes a snapshot plus its drawing to /tmp.
Run: python3 demos/02_fixture.py
"""
from pentile.fixtures import type15_case_set, type15_graph, type15_snapshot
from pentile.render import render_snapshot
from pentile.tiling_graph import (check_invariants, closed_face_runs, complete_vertices,
                                  find_runs, merge_vertices)

g, vid = type15_graph()
X = type15_case_set()
name = {v: k for k, v in vid.items()}
print("tiles:", len(g.tiles), "vertices:", len(g.vertices()), "invariants:", check_invariants(g, X))


def show_runs(g):
    for r in find_runs(g):
        labels = "".join(s.label for s in r.steps)
        ends = name.get(r.vertices[0], r.vertices[0]), name.get(r.vertices[-1], r.vertices[-1])
        print(f"  run {labels:8s} {ends[0]:>3} .. {ends[1]:<3} side difference {r.distance(0, len(r.steps) - 1)}")


print("runs before any merge:")
show_runs(g)


def merge(g, a, b):
    for r in find_runs(g):
        vs = r.vertices
        if vid[a] in vs and vid[b] in vs:
            i, j = sorted((vs.index(vid[a]), vs.index(vid[b])))
            return merge_vertices(g, r, i, j)
    raise SystemExit(f"{a} and {b} are not on a common run")


# w and w' are one side apart on both tiles, so they coincide
g = merge(g, "w", "w'")
# u and u' close the gap between tiles B and C; u then completes with a pi gap
g = merge(g, "u", "u'")
g = complete_vertices(g, X)
g = merge(g, "r", "r'")
print("after three merges:", check_invariants(g, X))
print("side equations forced by closed faces:", [d for d in closed_face_runs(g) if any(d)])

with open("/tmp/type15_fragment.json", "w") as f:
    f.write(type15_snapshot() + "\n")
svg, worst = render_snapshot(type15_snapshot())
with open("/tmp/type15_fragment.svg", "w") as f:
    f.write(svg)
print(f"wrote /tmp/type15_fragment.json and .svg (shared vertices agree to {worst:.1e})")
