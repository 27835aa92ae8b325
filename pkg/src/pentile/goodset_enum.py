"""Exhaustive enumeration of maximal good sets of vertex types.

``recurse`` grows a set X of vertex types one vector at a time, always
closing under compat, and records every good set met along the way.  Sets
are explored with angles sorted decreasingly (the ordered polytope); the
full list is recovered afterwards by permuting coordinates.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from pathlib import Path

from .exactmath import Q, dot
from .vectypes import (VecTypeSet, apply_perm, canonical_form, compat, decode_set, dihedral_group,
                       encode_set, is_good, max_vector, min_vector, open_witness, polytope_dim, rank, vset)

MAX_CALLS = 10 ** 6


class NoSuchU(RuntimeError):
    pass


class UnboundedCandidates(RuntimeError):
    pass


@dataclass
class EnumStats:
    recurse_calls: int = 0
    maximal_sets_found: int = 0
    max_depth: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class GoodSetRecord:
    index: int
    maximal_set: VecTypeSet
    basis: VecTypeSet
    canonical: VecTypeSet
    dim: int
    struck: bool


def choose_u(X: VecTypeSet, witness=None, mins=None):
    """A direction u with sum 0, u.v = 0 on X, negative where m_X vanishes.

    Built as alpha - alpha' with alpha a minimiser of the last vanishing
    coordinate of m_X (so alpha_5 = 0, and alpha_4 = 0 too when (m_X)_4 = 0)
    and alpha' a point of P>=_X inside the open cube.
    """
    if witness is None:
        witness = open_witness(X, ordered=True)
    if mins is None:
        mins = min_vector(X)
    m, argmins = mins
    if m[3] > 0 and m[4] > 0:
        return (Q(0),) * 5
    low = argmins[3] if m[3] == 0 else argmins[4]
    u = tuple(a - b for a, b in zip(low, witness))
    ok = sum(u) == 0 and all(dot(u, v) == 0 for v in X)
    ok = ok and all(u[i] < 0 for i in (3, 4) if m[i] == 0)
    if not ok:
        raise NoSuchU(X)
    return u


def candidate_vectors(m, u):
    """All nonzero v in N^5 with v.u >= 0 and v.m <= 2."""
    pos = [i for i in range(5) if m[i] > 0]
    zer = [i for i in range(5) if m[i] == 0]
    if any(u[i] >= 0 for i in zer):
        raise UnboundedCandidates((m, u))
    out = []
    v = [0] * 5

    def rec_zero(k, budget):
        # budget = sum over fixed coordinates of v_j u_j, must stay >= 0
        if k == len(zer):
            if any(v):
                out.append(tuple(v))
            return
        i = zer[k]
        c = 0
        while budget + c * u[i] >= 0:
            v[i] = c
            rec_zero(k + 1, budget + c * u[i])
            c += 1
        v[i] = 0

    def rec_pos(k, rem):
        if k == len(pos):
            b = sum(v[j] * u[j] for j in pos)
            rec_zero(0, b)
            return
        i = pos[k]
        c = 0
        while c * m[i] <= rem:
            v[i] = c
            rec_pos(k + 1, rem - c * m[i])
            c += 1
        v[i] = 0

    rec_pos(0, Q(2))
    out = [w for w in out if dot(w, u) >= 0 and dot(w, m) <= 2]
    return sorted(set(out), key=lambda w: (sum(w), w))


def recurse(X, excluded, out: set, stats: EnumStats, depth: int = 0):
    stats.recurse_calls += 1
    if stats.recurse_calls > MAX_CALLS:
        raise RuntimeError("recurse call budget exhausted")
    stats.max_depth = max(stats.max_depth, depth)
    wit = open_witness(X, ordered=True)
    if wit is None:
        return stats
    X = compat(X, wit)
    if excluded.intersection(X):
        return stats
    if X and is_good(X):
        if X not in out:
            stats.maximal_sets_found += 1
        out.add(X)
    mins = min_vector(X)
    u = choose_u(X, wit, mins)
    top = max_vector(X)
    tried = set()
    for w in candidate_vectors(mins[0], u):
        if w in X or w in excluded:
            continue
        if dot(w, top) < 2:
            # w.alpha < 2 on all of P>=_X: no child can contain w
            continue
        recurse(vset(X + (w,)), excluded | tried, out, stats, depth + 1)
        tried.add(w)
    return stats


def enumerate_ordered():
    """The maximal good sets of the ordered chamber, and run statistics."""
    stats = EnumStats()
    t0 = time.perf_counter()
    out = set()
    recurse((), frozenset(), out, stats)
    stats.elapsed = time.perf_counter() - t0
    return sorted(out), stats


def expand_all(sets) -> list:
    """Images of the sets under all coordinate permutations."""
    seen = set()
    for X in sets:
        for p in itertools.permutations(range(5)):
            seen.add(apply_perm(p, X))
    return sorted(seen)


def consecutive_triple(X) -> bool:
    """Does X contain the type of three cyclically consecutive corners?"""
    for k in range(5):
        v = [0] * 5
        for j in range(3):
            v[(k + j) % 5] = 1
        if tuple(v) in X:
            return True
    return False


def table_basis(X: VecTypeSet) -> VecTypeSet:
    """Greedy basis of X: members by (digit sum, lexicographic), kept if
    they raise the rank of the equality system."""
    from .vectypes import ONES
    chosen, rows = [], [ONES]
    r = 1
    for v in sorted(X, key=lambda w: (sum(w), w)):
        r2 = rank(rows + [v])
        if r2 > r:
            chosen.append(v)
            rows.append(v)
            r = r2
    return vset(chosen)


def data_dir() -> Path:
    import os
    env = os.environ.get("PENTILE_DATA")
    return Path(env) if env else Path(__file__).parent / "data"


def load_golden(path=None):
    """Rows (index, dim, struck, basis) of the golden classification."""
    path = Path(path) if path else data_dir() / "table1.txt"
    rows = []
    for line in path.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split()
        rows.append((int(parts[0]), int(parts[1]), parts[2] == "1", decode_set(" ".join(parts[3:]))))
    return rows


def classify(sets, golden=None):
    """Group sets into dihedral classes and align them with the golden index.

    Each class is reported in the orientation in which the golden basis
    lives, so its compat closure is a member of the class.
    """
    golden = golden if golden is not None else load_golden()
    classes = {}
    for X in sets:
        classes.setdefault(canonical_form(X), X)
    by_canon = {}
    for i, _dim, _struck, B in golden:
        by_canon[canonical_form(compat(B))] = (i, B)
    records = []
    unmatched = []
    for canon in sorted(classes):
        if canon not in by_canon:
            unmatched.append(canon)
            continue
        i, B = by_canon[canon]
        Xi = compat(B)
        records.append(GoodSetRecord(
            index=i, maximal_set=Xi, basis=table_basis(Xi), canonical=canon,
            dim=polytope_dim(Xi), struck=consecutive_triple(Xi)))
    records.sort(key=lambda r: r.index)
    return records, unmatched


def enumerate_all(golden=None):
    """Full pipeline: ordered enumeration, permutation expansion, classes."""
    ordered, stats = enumerate_ordered()
    expanded = expand_all(ordered)
    records, unmatched = classify(expanded, golden)
    if unmatched:
        raise RuntimeError(f"{len(unmatched)} classes missing from the golden index")
    return records, {"maximal": len(ordered), "permuted": len(expanded),
                     "classes": len(records), "stats": stats}


SECTION_TITLES = {3: "dim(P)=3", 2: "dim(P)=2", 1: "dim(P)=1", 0: "dim(P)=0"}


def emit_tables(records, sink=None) -> str:
    lines = []
    for d in (3, 2, 1, 0):
        lines.append(f"## {SECTION_TITLES[d]}")
        for r in records:
            if r.dim == d:
                mark = "~" if r.struck else ""
                lines.append(f"{mark}{r.index}\t{encode_set(sorted(r.basis, key=lambda w: (sum(w), w)))}")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text


def parse_tables(text: str) -> dict:
    """Inverse of :func:`emit_tables`: index -> (dim, struck, basis)."""
    out, dim = {}, None
    for line in text.splitlines():
        if line.startswith("## "):
            dim = int(line.split("=")[1])
            continue
        if not line.strip():
            continue
        idx, basis = line.split("\t")
        struck = idx.startswith("~")
        out[int(idx.lstrip("~"))] = (dim, struck, decode_set(basis))
    return out


def write_tsv(records, path):
    with open(path, "w") as f:
        f.write("index\tdim\tstruck\tbasis\tmaximal_set\n")
        for r in records:
            f.write(f"{r.index}\t{r.dim}\t{int(r.struck)}\t{encode_set(r.basis)}\t{encode_set(r.maximal_set)}\n")
