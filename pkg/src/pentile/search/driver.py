"""Backtracking search for tilings, one angle case at a time."""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from ..tiling_graph import (AmbiguousCompletion, MergeCreatesViolation, add_face, check_invariants,
                            complete_vertices, enumerate_attachments, find_runs, initial_graph, mark_flat,
                            merge_label, merge_vertices, EMPTY)
from ..vectypes import polytope_dim
from .certificate import InfeasibleCertified, closed_implies_zero, feasibility_certificate
from .families import applicable, detect_family
from .lengths import LengthProgram

NO_TILING = "NoTiling"
PRUNED = "PrunedIntoFamilies"
INCONCLUSIVE = "Inconclusive"


class InvalidCase(ValueError):
    pass


@dataclass
class Limits:
    max_tiles: int = 50
    max_nodes: int = 10 ** 6
    time: Optional[float] = None
    cert_period: int = 8
    cert_boxes: int = 256
    cert_depth: int = 12
    deepen: bool = True
    debug: bool = False


@dataclass
class CaseVerdict:
    case_index: int
    outcome: str
    families: tuple = ()
    stats: dict = field(default_factory=dict)
    trace_hash: Optional[str] = None

    def to_json(self) -> str:
        d = asdict(self)
        d["families"] = list(self.families)
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CaseVerdict":
        d = json.loads(text)
        return cls(d["case_index"], d["outcome"], tuple(d["families"]), d["stats"], d["trace_hash"])


class CaseContext:
    """Per-case data shared by every node, plus LP caches."""

    def __init__(self, X, case_index=None, limits: Limits = None):
        self.X = tuple(X)
        self.case_index = case_index
        self.limits = limits or Limits()
        self.dim = polytope_dim(self.X)
        self.rules = applicable(self.X, case_index)
        self._signs = {}
        self._certs = {}
        self._implied = {}
        self.alpha = None
        if self.dim == 0:
            from ..vectypes import open_witness
            self.alpha = open_witness(self.X)

    def implies_zero(self, L: LengthProgram, r) -> bool:
        """Does every admissible length vector satisfy r.l = 0?

        With a single angle vector the closure equations are linear in l
        and are added to the program before asking.
        """
        key = (L.key(), r)
        hit = self._implied.get(key)
        if hit is None:
            if self.alpha is None:
                hit = L.implies_zero(r)
            else:
                hit = closed_implies_zero(self.alpha, L, r)
            self._implied[key] = hit
        return hit

    def sign_options(self, L: LengthProgram, d):
        key = (L.key(), d)
        r = self._signs.get(key)
        if r is None:
            r = self._signs[key] = L.sign_options(d)
        return r

    def certificate(self, L: LengthProgram):
        key = L.key()
        r = self._certs.get(key)
        if r is None:
            lim = self.limits
            r = self._certs[key] = feasibility_certificate(self.X, L, max_depth=lim.cert_depth,
                                                           max_boxes=lim.cert_boxes)
        return r


@dataclass
class Settled:
    graph: object
    lengths: LengthProgram
    pair: Optional[tuple] = None  # undecided (run, i, j, d)


@dataclass
class Pruned:
    reason: str


def settle(g, L: LengthProgram, ctx: CaseContext):
    """Complete vertices, merge forced pairs and fix forced signs, to a fixed point."""
    while True:
        try:
            g = complete_vertices(g, ctx.X)
        except AmbiguousCompletion:
            return Pruned("AmbiguousCompletion")
        chk = check_invariants(g, ctx.X)
        if not chk:
            return Pruned(chk.kind)
        pair = None
        restart = False
        for run in find_runs(g):
            n = len(run.steps)
            for i in range(n):
                for j in range(i + 1, n):
                    d = run.distance(i, j)
                    if run.steps[i].vertex == run.steps[j].vertex:
                        opts = ctx.sign_options(L, d)
                        if 0 not in opts:
                            return Pruned("OpenLoop")
                        if opts != (0,):
                            L = L.with_eq(d)
                            restart = True
                            break
                        continue
                    lab = merge_label(run, i, j)
                    opts = ctx.sign_options(L, d)
                    if opts == (0,):
                        if lab is None:
                            return Pruned("Collision")
                        try:
                            g = merge_vertices(g, run, i, j)
                        except MergeCreatesViolation:
                            return Pruned("MergeViolation")
                        restart = True
                        break
                    if pair is None and lab is not None and 0 in opts:
                        pair = (run, i, j, d)
                if restart:
                    break
            if restart:
                break
        if restart:
            continue
        marks = flat_ends(g, L, ctx)
        if not marks:
            return Settled(g, L, pair)
        for v, side in marks:
            g = mark_flat(g, v, side)


def flat_ends(g, L: LengthProgram, ctx: CaseContext):
    """Open run ends that the program places strictly inside an opposite edge.

    Past a fold both arms of a run lie on one ray.  If an end vertex is
    strictly nearer to the fold than some vertex of the other arm and
    coincides with none of them, it sits inside an edge of the tile across
    the fold, so its unknown gap contains a straight angle.
    """
    out = []
    for run in find_runs(g):
        steps, n = run.steps, len(run.steps) - 1
        folds = [k for k in range(1, n) if steps[k].label == EMPTY]
        if not folds:
            continue
        for end in (0, n):
            v = steps[end].vertex
            if v in g.flat or any(m == v for m, _ in out):
                continue
            if end == 0:
                f = folds[0]
                arm = range(f + 1, (folds[1] if len(folds) > 1 else n) + 1)
                side = "R"
            else:
                f = folds[-1]
                arm = range(folds[-2] if len(folds) > 1 else 0, f)
                side = "L"
            first = f + 1 if end == 0 else f - 1
            sigma = next(c for c in run.distance(f, first) if c)
            beyond = False
            for u in arm:
                if steps[u].vertex == v:
                    break
                d = tuple(sigma * c for c in run.distance(end, u))
                opts = ctx.sign_options(L, d)
                if 0 in opts:
                    break
                beyond = beyond or opts == (1,)
            else:
                if beyond:
                    out.append((v, side))
    return out


def branch_run(g, L: LengthProgram, run, i, j, ctx: CaseContext = None):
    """Children for the pair (i, j) of a run: equal (merged), after, before."""
    d = run.distance(i, j)
    opts = ctx.sign_options(L, d) if ctx else L.sign_options(d)
    out = []
    for s in sorted(opts, key=lambda x: (x != 0, -x)):
        L2 = L.with_sign(d, s)
        if s == 0:
            if merge_label(run, i, j) is None:
                continue
            try:
                out.append((merge_vertices(g, run, i, j), L2))
            except MergeCreatesViolation:
                continue
        else:
            out.append((g, L2))
    return out


def select_branch_vertex(g, X):
    """(vertex, attachments): the open vertex with fewest attachments, then smallest id."""
    best = None
    for v in g.open_vertices():
        atts = enumerate_attachments(g, v, X)
        if best is None or len(atts) < len(best[1]):
            best = (v, atts)
            if not atts:
                break
    return best


class _Search:
    def __init__(self, ctx: CaseContext):
        self.ctx = ctx
        self.lim = ctx.limits
        self.stats = {"nodes": 0, "max_tiles": 0, "run_branches": 0, "face_branches": 0,
                      "certificates": 0, "invariant_checks": 0, "prunes": {}, "elapsed": 0.0}
        self.families = set()
        self.limit_hit = None
        self.trace = hashlib.sha256()
        self.snapshot = None

    def log(self, *parts):
        self.trace.update((" ".join(str(p) for p in parts) + "\n").encode())

    def prune(self, reason):
        p = self.stats["prunes"]
        p[reason] = p.get(reason, 0) + 1
        self.log("prune", reason)

    def run(self, g, L):
        """Depth-first search, by default repeated with a growing tile cap.

        A pass that ends without reaching its cap has explored the whole
        tree, so its verdict is final.  Shallow family hits therefore show
        up before a deep subtree can eat the node budget.
        """
        self.t0 = time.perf_counter()
        caps = range(len(g.tiles), self.lim.max_tiles + 1) if self.lim.deepen else [self.lim.max_tiles]
        for cap in caps:
            self.cap = cap
            self.cap_hit = False
            self.trace = hashlib.sha256()
            self.snapshot = None
            self.dfs(g, L)
            self.stats["passes"] = self.stats.get("passes", 0) + 1
            if self.limit_hit or not self.cap_hit:
                break
        if self.cap_hit and not self.limit_hit:
            self.limit_hit = "max_tiles"
        self.stats["elapsed"] = round(time.perf_counter() - self.t0, 3)

    def dfs(self, g, L):
        # stack entries: (graph, lengths, strengthened)
        stack = [(g, L, True)]
        while stack:
            if self.stats["nodes"] >= self.lim.max_nodes:
                self.limit_hit = "max_nodes"
                return
            if self.lim.time is not None and time.perf_counter() - self.t0 > self.lim.time:
                self.limit_hit = "time"
                return
            g, L, strengthened = stack.pop()
            self.stats["nodes"] += 1
            children = self.expand(g, L, strengthened)
            stack.extend(reversed(children))

    def expand(self, g, L, strengthened):
        ctx = self.ctx
        n = self.stats["nodes"]
        res = settle(g, L, ctx)
        if isinstance(res, Pruned):
            self.prune(res.reason)
            return []
        g, L2 = res.graph, res.lengths
        strengthened = strengthened or L2 is not L
        self.stats["invariant_checks"] += 1
        if self.lim.debug:
            assert check_invariants(g, ctx.X), "search node violates the graph invariants"
            assert L2.feasible(), "search node with an empty length program"
        tiles = len(g.tiles)
        self.stats["max_tiles"] = max(self.stats["max_tiles"], tiles)
        self.log("node", n, tiles, len(g.rot), len(L2.rows()))
        # with a single angle vector the certificate runs first: the family
        # test then may rely on the closure equations having a solution
        if ctx.dim == 0 or strengthened or n % self.lim.cert_period == 0:
            self.stats["certificates"] += 1
            if isinstance(ctx.certificate(L2), InfeasibleCertified):
                self.prune("certificate")
                return []
        fam = detect_family(L2, ctx.rules, lambda r: ctx.implies_zero(L2, r))
        if fam is not None:
            self.families.add(fam.type_id)
            self.prune(f"family{fam.type_id}")
            return []
        if res.pair is not None:
            run, i, j, _ = res.pair
            self.stats["run_branches"] += 1
            self.log("run", [s.vertex for s in run.steps], i, j)
            return [(h, L3, True) for h, L3 in branch_run(g, L2, run, i, j, ctx)]
        if tiles >= self.cap:
            self.cap_hit = True
            if self.snapshot is None:
                self.snapshot = (g, L2)
            self.log("limit", tiles)
            return []
        sel = select_branch_vertex(g, ctx.X)
        if sel is None:
            self.prune("NoOpenVertex")
            return []
        v, atts = sel
        if not atts:
            self.prune("NoAttachment")
            return []
        self.stats["face_branches"] += 1
        self.log("attach", v, len(atts))
        return [(add_face(g, a), L2, False) for a in atts]


def search_graph(g, L, ctx: CaseContext) -> CaseVerdict:
    s = _Search(ctx)
    s.run(g, L)
    if s.limit_hit:
        outcome = INCONCLUSIVE
        s.stats["limit"] = s.limit_hit
    elif s.families:
        outcome = PRUNED
    else:
        outcome = NO_TILING
    v = CaseVerdict(ctx.case_index or 0, outcome, tuple(sorted(s.families)), s.stats,
                    s.trace.hexdigest() if outcome == NO_TILING else None)
    v.snapshot = None
    if s.snapshot is not None:
        sg, sL = s.snapshot
        v.snapshot = snapshot_json(sg, sL, ctx.case_index)
    return v


def snapshot_json(g, L, case_index) -> str:
    """Graph text plus what is needed to draw it again: the case and Q."""
    rows = [[kind, [str(x) for x in d]] for kind, d in L.rows()]
    return g.to_json({"case": case_index, "lengths": rows})


def case_set(case_index: int, records=None):
    """X for a case index: compat of the stored basis."""
    from ..goodset_enum import load_golden
    from ..vectypes import compat
    rows = load_golden()
    if not 1 <= case_index <= len(rows):
        raise InvalidCase(f"case index must lie in 1..{len(rows)}, got {case_index}")
    if records is not None:
        return records[case_index - 1].maximal_set
    return compat(rows[case_index - 1][3])


def search_case(case_index: int, limits: Limits = None) -> CaseVerdict:
    ctx = CaseContext(case_set(case_index), case_index, limits)
    return search_graph(initial_graph(), LengthProgram(), ctx)


def _worker(args):
    i, limits, snapshot_dir = args
    v = search_case(i, limits)
    if snapshot_dir and v.snapshot is not None and v.outcome == INCONCLUSIVE:
        import os
        with open(os.path.join(snapshot_dir, f"case{i:03d}.json"), "w") as f:
            f.write(v.snapshot + "\n")
    return v.to_json()


def search_all(limits: Limits = None, cases=None, threads: int = 1, sink=None,
               snapshot_dir=None):
    """Run every case; verdicts come back in case order.

    ``sink`` receives one JSON line per case as soon as it is available,
    always from this process, so appends never interleave.
    """
    from ..goodset_enum import load_golden
    cases = list(cases or range(1, len(load_golden()) + 1))
    jobs = [(i, limits, snapshot_dir) for i in cases]
    out = []
    if threads <= 1:
        lines = map(_worker, jobs)
    else:
        from multiprocessing import Pool
        pool = Pool(threads)
        lines = pool.imap(_worker, jobs)
    try:
        for line in lines:
            if sink is not None:
                sink.write(line + "\n")
                sink.flush()
            out.append(CaseVerdict.from_json(line))
    finally:
        if threads > 1:
            pool.close()
            pool.join()
    return out
