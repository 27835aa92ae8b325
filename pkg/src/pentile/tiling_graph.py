"""Labelled planar tiling graphs.

The embedding is stored as a rotation system.  Tile ``T`` has five corner
vertices (corner 1..5, stored 0-based) and an orientation: +1 when its
corners run clockwise, -1 otherwise.  Edge label ``k`` joins corners k and
k+1, so its length is l_k.

Each vertex keeps its tile corners in clockwise order, and one label per
gap between consecutive corners: gap ``j`` sits between corner ``j`` and
corner ``j+1``.  A gap is a corner of a special face and is labelled
E (angle 0), P (angle pi) or U (unknown).  Every edge borders exactly one
tile and one special face, so special faces are recovered by walking gaps.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .vectypes import down_closure

EMPTY, PI, UNKNOWN = "E", "P", "U"


class GraphError(Exception):
    pass


class AmbiguousCompletion(GraphError):
    pass


class MergeCreatesViolation(GraphError):
    pass


class LabelClash(GraphError):
    pass


@dataclass(frozen=True)
class Ok:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str = ""

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Step:
    """One corner of a special face: vertex, gap index there, its label, and
    the label of the edge walked to the next corner."""
    vertex: int
    gap: int
    label: str
    edge: int


@dataclass(frozen=True)
class Run:
    """Aligned gaps along the open special face.

    ``steps`` starts and ends at an Unknown gap (the same one when the
    face has a single Unknown); the steps in between are E or P.
    ``pos`` gives each step's position along the line as integer
    coefficients over (l_1..l_5).
    """
    steps: tuple
    pos: tuple

    @property
    def vertices(self):
        return tuple(s.vertex for s in self.steps)

    def empties(self, i, j):
        return sum(1 for s in self.steps[i + 1:j] if s.label == EMPTY)

    def distance(self, i, j):
        return tuple(b - a for a, b in zip(self.pos[i], self.pos[j]))


@dataclass(frozen=True)
class Attachment:
    vertex: int
    corner: int  # 0-based corner of the new tile placed at ``vertex``
    orient: int
    side: str  # "L": against the corner before the unknown gap, "R": after

    def laid_edge(self) -> int:
        """Label of the new tile's edge laid along the existing boundary."""
        k = self.corner
        if self.side == "L":
            # first edge of the new corner
            return k if self.orient > 0 else (k - 1) % 5
        return (k - 1) % 5 if self.orient > 0 else k


class TilingGraph:
    __slots__ = ("tiles", "rot", "gaps", "next_vid", "flat")

    def __init__(self, tiles, rot, gaps, next_vid, flat=None):
        self.tiles = tiles  # list of (corners tuple, orient)
        self.rot = rot  # vid -> tuple of (tile, corner)
        self.gaps = gaps  # vid -> str, one label per gap
        self.next_vid = next_vid
        # vid -> "L"/"R": the unknown gap is known to contain a straight
        # angle, lying against the corner before (L) or after (R) it
        self.flat = flat if flat is not None else {}

    def copy(self) -> "TilingGraph":
        return TilingGraph(list(self.tiles), dict(self.rot), dict(self.gaps), self.next_vid, dict(self.flat))

    # -- basic queries ------------------------------------------------------
    def vertices(self):
        return sorted(self.rot)

    def n_edges(self) -> int:
        return 5 * len(self.tiles)

    def vect(self, v):
        c = [0] * 5
        for _, k in self.rot[v]:
            c[k] += 1
        return tuple(c)

    def is_half(self, v) -> bool:
        return PI in self.gaps[v] or v in self.flat

    def cvect(self, v):
        m = 2 if self.is_half(v) else 1
        return tuple(m * x for x in self.vect(v))

    def unknown_gap(self, v) -> Optional[int]:
        g = self.gaps[v]
        i = g.find(UNKNOWN)
        return None if i < 0 else i

    def is_complete(self, v) -> bool:
        return UNKNOWN not in self.gaps[v]

    def open_vertices(self):
        return [v for v in self.vertices() if not self.is_complete(v)]

    def first_edge(self, tile, k):
        """(neighbour corner, edge label) of the first clockwise edge."""
        if self.tiles[tile][1] > 0:
            return (k + 1) % 5, k
        return (k - 1) % 5, (k - 1) % 5

    def last_edge(self, tile, k):
        if self.tiles[tile][1] > 0:
            return (k - 1) % 5, (k - 1) % 5
        return (k + 1) % 5, k

    # -- special faces -------------------------------------------------------
    def _next_gap(self, v, j):
        rv = self.rot[v]
        tile, k = rv[(j + 1) % len(rv)]
        m, lab = self.first_edge(tile, k)
        y = self.tiles[tile][0][m]
        return y, self.rot[y].index((tile, m)), lab

    def face_walks(self):
        """All special faces as cyclic lists of Steps, deterministic order."""
        seen = set()
        faces = []
        for v in self.vertices():
            for j in range(len(self.gaps[v])):
                if (v, j) in seen:
                    continue
                walk = []
                cur = (v, j)
                while cur not in seen:
                    seen.add(cur)
                    y, i, lab = self._next_gap(*cur)
                    walk.append(Step(cur[0], cur[1], self.gaps[cur[0]][cur[1]], lab))
                    cur = (y, i)
                faces.append(tuple(walk))
        return faces

    def open_faces(self):
        return [f for f in self.face_walks() if any(s.label == UNKNOWN for s in f)]

    def _prev_gap(self, y, i):
        tile, m = self.rot[y][i]
        k, _ = self.last_edge(tile, m)
        v = self.tiles[tile][0][k]
        rv = self.rot[v]
        return v, (rv.index((tile, k)) - 1) % len(rv)

    def walk_from(self, v, j):
        """The special face through gap (v, j), starting there."""
        walk = []
        cur = (v, j)
        while True:
            y, i, lab = self._next_gap(*cur)
            walk.append(Step(cur[0], cur[1], self.gaps[cur[0]][cur[1]], lab))
            cur = (y, i)
            if cur == (v, j):
                return tuple(walk)

    def outer_face(self):
        """The open special face, walked from its Unknown gap at the smallest vertex."""
        for v in self.vertices():
            j = self.unknown_gap(v)
            if j is not None:
                return self.walk_from(v, j)
        raise GraphError("no open special face")

    # -- connectivity ---------------------------------------------------------
    def connected(self) -> bool:
        if not self.tiles:
            return True
        seen_t = {0}
        stack = [0]
        vt = {}
        for v, r in self.rot.items():
            for t, _ in r:
                vt.setdefault(v, set()).add(t)
        while stack:
            t = stack.pop()
            for v in self.tiles[t][0]:
                for t2 in vt[v]:
                    if t2 not in seen_t:
                        seen_t.add(t2)
                        stack.append(t2)
        return len(seen_t) == len(self.tiles)

    def euler_characteristic(self) -> int:
        return len(self.rot) - self.n_edges() + len(self.tiles) + len(self.face_walks())

    # -- serialization ---------------------------------------------------------
    def to_json(self, extra=None) -> str:
        d = {
            "format": "pentile-graph",
            "version": 1,
            "tiles": [[list(c), o] for c, o in self.tiles],
            "vertices": [[v, [list(c) for c in self.rot[v]], self.gaps[v]] for v in self.vertices()],
            "next_vid": self.next_vid,
            "flat": [[v, self.flat[v]] for v in sorted(self.flat)],
        }
        if extra:
            d.update(extra)
        return json.dumps(d, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str):
        d = json.loads(text)
        if d.get("format") != "pentile-graph" or d.get("version") != 1:
            raise ValueError("not a pentile graph snapshot")
        tiles = [(tuple(c), int(o)) for c, o in d["tiles"]]
        rot, gaps = {}, {}
        for v, r, g in d["vertices"]:
            rot[int(v)] = tuple((int(t), int(k)) for t, k in r)
            if len(g) != len(r) or set(g) - {EMPTY, PI, UNKNOWN}:
                raise ValueError(f"bad gap labels at vertex {v}")
            gaps[int(v)] = g
        flat = {int(v): side for v, side in d.get("flat", [])}
        g = cls(tiles, rot, gaps, int(d["next_vid"]), flat)
        g._validate_structure()
        return g, d

    def _validate_structure(self):
        for t, (corners, o) in enumerate(self.tiles):
            if len(corners) != 5 or o not in (1, -1):
                raise ValueError(f"malformed tile {t}")
            for k, v in enumerate(corners):
                if v not in self.rot or (t, k) not in self.rot[v]:
                    raise ValueError(f"tile {t} corner {k} missing from vertex {v}")
        for v, r in self.rot.items():
            for t, k in r:
                if t >= len(self.tiles) or self.tiles[t][0][k] != v:
                    raise ValueError(f"vertex {v} lists a corner it does not own")
        for v, side in self.flat.items():
            if v not in self.rot or side not in ("L", "R") or self.is_complete(v):
                raise ValueError(f"bad straight-angle mark at vertex {v}")

    def __eq__(self, o):
        return isinstance(o, TilingGraph) and self.to_json() == o.to_json()

    def __repr__(self):
        return f"TilingGraph(tiles={len(self.tiles)}, vertices={len(self.rot)})"


def initial_graph() -> TilingGraph:
    """A single tile, corners clockwise, five unknown outer gaps."""
    tiles = [(tuple(range(5)), 1)]
    rot = {k: ((0, k),) for k in range(5)}
    gaps = {k: UNKNOWN for k in range(5)}
    return TilingGraph(tiles, rot, gaps, 5)


def from_description(tiles, rotations, gaps) -> TilingGraph:
    """Build a graph from named data (used for hand-made fixtures).

    ``tiles``: list of (corner vertex names, orient).  ``rotations``: vertex
    name -> clockwise list of (tile index, 1-based corner), needed only for
    vertices with several corners.  ``gaps``: vertex name -> label string.
    """
    names = []
    for corners, _ in tiles:
        for n in corners:
            if n not in names:
                names.append(n)
    vid = {n: i for i, n in enumerate(names)}
    T = [(tuple(vid[n] for n in corners), o) for corners, o in tiles]
    rot, gp = {}, {}
    for n in names:
        if n in rotations:
            rot[vid[n]] = tuple((t, k - 1) for t, k in rotations[n])
        else:
            owners = [(t, k) for t, (c, _) in enumerate(tiles) for k, m in enumerate(c) if m == n]
            if len(owners) != 1:
                raise ValueError(f"vertex {n} needs an explicit rotation")
            rot[vid[n]] = tuple(owners)
        gp[vid[n]] = gaps.get(n, UNKNOWN * len(rot[vid[n]]))
    g = TilingGraph(T, rot, gp, len(names))
    g._validate_structure()
    return g, vid


# -- runs ----------------------------------------------------------------------

def _runs_of(face):
    n = len(face)
    unk = [i for i, s in enumerate(face) if s.label == UNKNOWN]
    runs = []
    for a, p in enumerate(unk):
        q = unk[(a + 1) % len(unk)]
        length = (q - p) % n or n
        steps = [face[(p + t) % n] for t in range(length + 1)]
        if length < 2:
            continue  # two Unknown gaps joined by a single edge: nothing aligned
        pos = [(0,) * 5]
        cur = [0] * 5
        direction = 1
        for t in range(length):
            cur[steps[t].edge] += direction
            pos.append(tuple(cur))
            if steps[t + 1].label == EMPTY:
                direction = -direction
        runs.append(Run(tuple(steps), tuple(pos)))
    return runs


def find_runs(g: TilingGraph):
    """Maximal runs of the open special face, in walk order."""
    return _runs_of(g.outer_face())


def closed_face_runs(g: TilingGraph):
    """For each complete special face, its two sides as length vectors.

    A complete face is a segment folded at its two E gaps; the edges on
    each side of the folds add up to the same length.
    """
    out = []
    for f in g.face_walks():
        if any(s.label == UNKNOWN for s in f):
            continue
        folds = [i for i, s in enumerate(f) if s.label == EMPTY]
        if len(folds) != 2:
            continue
        a, b = folds
        side = [0] * 5
        for i, s in enumerate(f):
            side[s.edge] += 1 if a <= i < b else -1
        out.append(tuple(side))
    return out


# -- invariants ------------------------------------------------------------------

def check_invariants(g: TilingGraph, X) -> Ok | Violation:
    for t, (corners, _) in enumerate(g.tiles):
        if len(set(corners)) != 5:
            return Violation("DegenerateTile", f"tile {t}")
    if not g.connected():
        return Violation("Disconnected")
    for v in g.vertices():
        gl = g.gaps[v]
        if gl.count(UNKNOWN) > 1:
            return Violation("TwoUnknown", f"vertex {v}")
        if gl.count(PI) + (v in g.flat) > 1:
            return Violation("TwoPi", f"vertex {v}")
    faces = g.face_walks()
    open_faces = [f for f in faces if any(s.label == UNKNOWN for s in f)]
    if len(open_faces) != 1:
        return Violation("OpenFaceCount", str(len(open_faces)))
    for f in faces:
        if f is open_faces[0]:
            continue
        if sum(1 for s in f if s.label == EMPTY) != 2:
            return Violation("ClosedFaceFolds")
    if len(g.rot) - g.n_edges() + len(g.tiles) + len(faces) != 2:
        return Violation("Euler")
    for r in _runs_of(open_faces[0]):
        if r.empties(0, len(r.steps) - 1) > 2:
            return Violation("RunTooManyEmpty")
    down = down_closure(tuple(X))
    for v in g.vertices():
        cv = g.cvect(v)
        if cv not in down:
            return Violation("NoDominatingType", f"vertex {v} cvect {cv}")
        if g.is_complete(v) and cv not in X:
            return Violation("CompleteTypeNotInX", f"vertex {v} cvect {cv}")
    return Ok()


# -- completion ---------------------------------------------------------------------

def completion_label(g: TilingGraph, v, X):
    """Label forced on the unknown gap of ``v``, or None."""
    if g.is_complete(v):
        return None
    if v in g.flat:
        # the missing part of the wedge is exactly the straight angle
        return PI if g.cvect(v) in X else None
    full = g.cvect(v) in X
    half = PI not in g.gaps[v] and tuple(2 * c for c in g.vect(v)) in X
    if full and half:
        raise AmbiguousCompletion(f"vertex {v}")
    if full:
        return EMPTY
    if half:
        return PI
    return None


def complete_vertices(g: TilingGraph, X) -> TilingGraph:
    """Apply both relabelling rules until nothing changes."""
    changed = True
    while changed:
        changed = False
        for v in g.vertices():
            lab = completion_label(g, v, X)
            if lab is not None:
                if not changed:
                    g = g.copy()
                    changed = True
                j = g.unknown_gap(v)
                gl = g.gaps[v]
                g.gaps[v] = gl[:j] + lab + gl[j + 1:]
                g.flat.pop(v, None)
    return g


# -- merging ---------------------------------------------------------------------------

def merge_label(run: Run, i: int, j: int):
    """(closed, outer) labels when merging run steps i < j, or None."""
    a, b = run.steps[i].label, run.steps[j].label
    k = run.empties(i, j)
    if k not in (1, 2):
        return None
    closed = EMPTY if k == 1 else PI
    if UNKNOWN in (a, b):
        return closed, UNKNOWN
    if a == PI and b == PI and closed == EMPTY:
        return closed, EMPTY
    return None


def merge_vertices(g: TilingGraph, run: Run, i: int, j: int) -> TilingGraph:
    """Identify the vertices of run steps i < j.

    The part of the open face walked from step i to step j becomes a
    complete special face.
    """
    labels = merge_label(run, i, j)
    if labels is None:
        raise MergeCreatesViolation("gap labels cannot be merged")
    sa, sb = run.steps[i], run.steps[j]
    v, w = sa.vertex, sb.vertex
    if v == w:
        raise MergeCreatesViolation("vertex already identified")
    closed, outer = labels
    rv, rw = g.rot[v], g.rot[w]
    gv, gw = g.gaps[v], g.gaps[w]
    a, b = sa.gap, sb.gap
    nv, nw = len(rv), len(rw)
    # v's corners from a+1 round to a, then the outer gap, then w's corners
    # from b+1 round to b, then the closed gap
    cv = [rv[(a + 1 + t) % nv] for t in range(nv)]
    lv = [gv[(a + 1 + t) % nv] for t in range(nv - 1)]
    cw = [rw[(b + 1 + t) % nw] for t in range(nw)]
    lw = [gw[(b + 1 + t) % nw] for t in range(nw - 1)]
    keep, gone = min(v, w), max(v, w)
    h = g.copy()
    h.rot[keep] = tuple(cv + cw)
    h.gaps[keep] = "".join(lv + [outer] + lw + [closed])
    del h.rot[gone]
    del h.gaps[gone]
    # forgetting a straight-angle mark only weakens what is known
    h.flat.pop(v, None)
    h.flat.pop(w, None)
    if gone != keep:
        h.tiles = [(tuple(keep if x == gone else x for x in c), o) for c, o in h.tiles]
    return h


def mark_flat(g: TilingGraph, v, side: str) -> TilingGraph:
    """Record that v lies inside an edge met across its unknown gap on ``side``."""
    h = g.copy()
    h.flat[v] = side
    return h


# -- attachments -------------------------------------------------------------------------

def enumerate_attachments(g: TilingGraph, w, X, validate=True):
    """All ways to glue a new tile at ``w`` inside its unknown gap."""
    if g.is_complete(w):
        return []
    X = tuple(X)
    down = down_closure(X)
    base = g.vect(w)
    mult = 2 if g.is_half(w) else 1
    out = []
    for side in ("L", "R"):
        if g.flat.get(w) == side:
            continue
        for orient in (1, -1):
            for k in range(5):
                v = list(base)
                v[k] += 1
                if tuple(mult * c for c in v) not in down:
                    continue
                att = Attachment(w, k, orient, side)
                if validate and not attachment_ok(g, att, X):
                    continue
                out.append(att)
    return out


def attachment_ok(g: TilingGraph, att: Attachment, X) -> bool:
    """check_invariants on add_face(g, att), using that only w's surroundings change.

    Gluing a tile into an unknown wedge keeps the graph connected, adds one
    vertex-disjoint face and keeps a single open face, so only the vertex
    types at w and at the new corners and the runs of the open face need
    to be looked at.
    """
    down = down_closure(tuple(X))
    h = add_face(g, att)
    w = att.vertex
    if h.cvect(w) not in down:
        return False
    for k in range(5):
        if k != att.corner:
            e = [0] * 5
            e[k] = 1
            if tuple(e) not in down:
                return False
    # the run through the new E gap at w: walk both ways to the next Unknown
    j = h.unknown_gap(w) + (-1 if att.side == "L" else 1)
    empties = 1
    cur = (w, j)
    while True:
        y, i, _ = h._next_gap(*cur)
        lab = h.gaps[y][i]
        if lab == UNKNOWN:
            break
        empties += lab == EMPTY
        cur = (y, i)
    cur = (w, j)
    while True:
        cur = h._prev_gap(*cur)
        lab = h.gaps[cur[0]][cur[1]]
        if lab == UNKNOWN:
            break
        empties += lab == EMPTY
    return empties <= 2


def add_face(g: TilingGraph, att: Attachment, laid_edge: Optional[int] = None) -> TilingGraph:
    """Glue a new tile at ``att.vertex``.

    The new corner goes right after (side L) or right before (side R) the
    unknown gap's bounding corner; the shared direction becomes an E gap and
    the remaining wedge stays unknown.  ``laid_edge``, when given, is the
    edge label the caller expects along the boundary.
    """
    w = att.vertex
    if att.orient not in (1, -1) or not 0 <= att.corner < 5 or att.side not in ("L", "R"):
        raise ValueError(f"malformed attachment {att}")
    if laid_edge is not None and laid_edge != att.laid_edge():
        raise LabelClash(f"edge {att.laid_edge() + 1} cannot lie where edge {laid_edge + 1} is expected")
    j = g.unknown_gap(w)
    if j is None:
        raise GraphError(f"vertex {w} has no unknown gap")
    if g.flat.get(w) == att.side:
        raise GraphError(f"vertex {w} is straight on side {att.side}")
    h = g.copy()
    t = len(h.tiles)
    corners = []
    for k in range(5):
        if k == att.corner:
            corners.append(w)
        else:
            corners.append(h.next_vid)
            h.rot[h.next_vid] = ((t, k),)
            h.gaps[h.next_vid] = UNKNOWN
            h.next_vid += 1
    h.tiles.append((tuple(corners), att.orient))
    r, gl = list(h.rot[w]), h.gaps[w]
    new = (t, att.corner)
    r.insert(j + 1, new)
    pair = EMPTY + UNKNOWN if att.side == "L" else UNKNOWN + EMPTY
    h.rot[w] = tuple(r)
    h.gaps[w] = gl[:j] + pair + gl[j + 1:]
    return h
