"""SVG drawings of tiling graphs.

An exact witness (alpha, l) is solved first; floats appear only when the
final coordinates are written out.  Tiles are laid out by walking the
rotation system: around a vertex, clockwise, each corner sweeps its angle
and each gap sweeps 0 (E) or pi (P).
"""
from __future__ import annotations

import math
from collections import deque

from gmpy2 import mpq as Q

from .search.certificate import AnglePolytope, CertFeasible, point_certificate
from .search.lengths import LengthProgram
from .tiling_graph import PI, UNKNOWN, TilingGraph
from .vectypes import open_witness


class InfeasibleSnapshot(ValueError):
    pass


def lengths_from_rows(rows) -> LengthProgram:
    L = LengthProgram()
    for kind, d in rows:
        d = tuple(Q(x) for x in d)
        if kind == "eq":
            L = L.with_eq(d)
        elif kind == "pos":
            L = L.with_pos(d)
        else:
            raise ValueError(f"unknown length row kind {kind!r}")
    return L


def solve_witness(X, L: LengthProgram):
    """Exact (alpha, l): alpha rational in P_X, l in the cyclotomic field."""
    poly = AnglePolytope(tuple(X))
    if poly.empty:
        raise InfeasibleSnapshot("empty angle polytope")
    candidates = [poly.point()] if poly.dim == 0 else _angle_candidates(X)
    for alpha in candidates:
        res = point_certificate(alpha, L)
        if isinstance(res, CertFeasible):
            return res.witness
    raise InfeasibleSnapshot("no pentagon found for the stored conditions")


def _angle_candidates(X):
    out = []
    # the regular pentagon first when it is admissible, then an interior point
    reg = (Q(3, 5),) * 5
    if all(sum(a * b for a, b in zip(v, reg)) == 2 for v in X):
        out.append(reg)
    w = open_witness(X)
    if w is not None:
        out.append(w)
    return out


def _tile_points(alpha, lengths, orient, k, start, phi):
    """Corner positions of a tile whose corner k sits at ``start`` with first
    edge leaving in direction ``phi`` (radians).  Returns {corner: (x, y)}."""
    pts = {k: start}
    x, y = start
    d = phi
    c = k
    for _ in range(5):
        if orient > 0:
            e, nxt = c, (c + 1) % 5
        else:
            e, nxt = (c - 1) % 5, (c - 1) % 5
        x += lengths[e] * math.cos(d)
        y += lengths[e] * math.sin(d)
        if nxt == k:
            break
        pts[nxt] = (x, y)
        d -= math.pi - alpha[nxt] * math.pi
        c = nxt
    # walking the fifth edge must bring us back to the start
    gap = math.hypot(x - start[0], y - start[1])
    return pts, gap


def layout(g: TilingGraph, alpha, lengths):
    """Positions per tile corner and the worst mismatch between copies of a vertex."""
    alpha = [float(a) for a in alpha]
    lengths = [float(l) for l in lengths]
    placed = {}  # tile -> {corner: (x, y)}
    first_dir = {}  # (tile, corner) -> direction of its first edge
    vpos = {}
    worst = 0.0
    queue = deque()

    def place(tile, k, start, phi):
        nonlocal worst
        if tile in placed:
            return
        corners, orient = g.tiles[tile]
        pts, gap = _tile_points(alpha, lengths, orient, k, start, phi)
        worst = max(worst, gap)
        placed[tile] = pts
        # first-edge direction of every corner, walking the same way round
        d = phi
        c = k
        for _ in range(5):
            first_dir[(tile, c)] = d
            nxt = (c + 1) % 5 if orient > 0 else (c - 1) % 5
            d -= math.pi - alpha[nxt] * math.pi
            c = nxt
        for c, p in pts.items():
            v = corners[c]
            if v in vpos:
                q = vpos[v]
                worst = max(worst, math.hypot(p[0] - q[0], p[1] - q[1]))
            else:
                vpos[v] = p
                queue.append(v)

    place(0, 0, (0.0, 0.0), 0.0)
    while queue:
        v = queue.popleft()
        rot, gaps = g.rot[v], g.gaps[v]
        n = len(rot)
        known = next(i for i, c in enumerate(rot) if c[0] in placed)
        dirs = {known: first_dir[rot[known]]}
        # clockwise: next first edge = this first edge - corner angle - gap
        i = known
        while True:
            gap = gaps[i]
            j = (i + 1) % n
            if gap == UNKNOWN or j == known:
                break
            t, k = rot[i]
            dirs[j] = dirs[i] - alpha[k] * math.pi - (math.pi if gap == PI else 0.0)
            i = j
        # counter-clockwise from the known corner for whatever is left
        i = known
        while True:
            j = (i - 1) % n
            if j in dirs or gaps[j] == UNKNOWN:
                break
            t, k = rot[j]
            dirs[j] = dirs[i] + alpha[k] * math.pi + (math.pi if gaps[j] == PI else 0.0)
            i = j
        for i, phi in dirs.items():
            t, k = rot[i]
            if t in placed:
                worst = max(worst, abs(math.remainder(first_dir[(t, k)] - phi, 2 * math.pi)))
            else:
                place(t, k, vpos[v], phi)
    if len(placed) != len(g.tiles):
        raise InfeasibleSnapshot("graph is not connected")
    return placed, worst


def to_svg(g: TilingGraph, alpha, lengths, scale: float = 400.0, margin: float = 20.0):
    placed, worst = layout(g, alpha, lengths)
    xs = [p[0] for pts in placed.values() for p in pts.values()]
    ys = [p[1] for pts in placed.values() for p in pts.values()]
    x0, y1 = min(xs), max(ys)
    w = (max(xs) - x0) * scale + 2 * margin
    h = (y1 - min(ys)) * scale + 2 * margin

    def tr(p):
        # SVG's y axis points down
        return (margin + (p[0] - x0) * scale, margin + (y1 - p[1]) * scale)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2f}" height="{h:.2f}" '
           f'viewBox="0 0 {w:.2f} {h:.2f}">',
           '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
           'markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>']
    for t in sorted(placed):
        pts = placed[t]
        poly = " ".join(f"{x:.6f},{y:.6f}" for x, y in (tr(pts[c]) for c in range(5)))
        width = 3 if t == 0 else 1
        out.append(f'<polygon class="tile" data-tile="{t}" points="{poly}" fill="#e8eef7" '
                   f'stroke="black" stroke-width="{width}"/>')
        cx = sum(tr(pts[c])[0] for c in range(5)) / 5
        cy = sum(tr(pts[c])[1] for c in range(5)) / 5
        out.append(f'<text x="{cx:.2f}" y="{cy:.2f}" font-size="10" text-anchor="middle">{t}</text>')
    a, b = tr(placed[0][0]), tr(placed[0][1])
    out.append(f'<line class="s1s2" x1="{a[0]:.6f}" y1="{a[1]:.6f}" x2="{b[0]:.6f}" y2="{b[1]:.6f}" '
               f'stroke="red" stroke-width="2" marker-end="url(#arrow)"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n", worst


def render_snapshot(text: str, scale: float = 400.0):
    """SVG text and the worst vertex mismatch for a snapshot."""
    from .search.driver import case_set
    g, meta = TilingGraph.from_json(text)
    if "case" not in meta:
        raise InfeasibleSnapshot("snapshot does not name its angle case")
    X = case_set(int(meta["case"]))
    L = lengths_from_rows(meta.get("lengths", []))
    if not L.feasible():
        raise InfeasibleSnapshot("stored length conditions are contradictory")
    alpha, ell = solve_witness(X, L)
    return to_svg(g, alpha, ell, scale)
