"""Vector types, the dihedral action on corner labels, and angle polytopes.

Angles are measured in units of pi, so a vertex type v satisfies v.alpha = 2
and the five angles of a pentagon sum to 3.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable

from .exactmath import (Feasible, LinearSystem, Optimum, Q, affine_dim, dot, lp_feasible,
                        lp_maximize, lp_minimize, nullspace, rank)

VecType = tuple  # five non-negative ints
VecTypeSet = tuple  # sorted tuple of VecType, no duplicates

ONES = (1, 1, 1, 1, 1)


class InfiniteSet(ValueError):
    pass


class EmptyPolytope(ValueError):
    pass


def vset(members: Iterable) -> VecTypeSet:
    return tuple(sorted(set(tuple(int(c) for c in v) for v in members)))


def encode(v: VecType) -> str:
    """Digit string; vectors with a coordinate above 9 are written [a,b,c,d,e]."""
    if any(c < 0 for c in v):
        raise ValueError(f"negative coordinate: {v}")
    if any(c > 9 for c in v):
        return "[" + ",".join(str(c) for c in v) + "]"
    return "".join(str(c) for c in v)


def decode(s: str) -> VecType:
    if s.startswith("[") and s.endswith("]"):
        parts = s[1:-1].split(",")
        if len(parts) == 5 and all(p.isdigit() for p in parts):
            return tuple(int(p) for p in parts)
    elif len(s) == 5 and s.isdigit():
        return tuple(int(ch) for ch in s)
    raise ValueError(f"not a vector type: {s!r}")


def encode_set(X: VecTypeSet) -> str:
    return " ".join(encode(v) for v in X)


def decode_set(s: str) -> VecTypeSet:
    return vset(decode(t) for t in s.split())


def corrected(v: VecType, is_half: bool) -> VecType:
    return tuple(2 * c for c in v) if is_half else tuple(v)


def dominated(v: VecType, X: VecTypeSet) -> bool:
    """Is there w in X with v <= w coordinate-wise?"""
    return any(all(a <= b for a, b in zip(v, w)) for w in X)


@lru_cache(maxsize=512)
def down_closure(X: VecTypeSet) -> frozenset:
    """All v with v <= w for some w in X; membership is :func:`dominated`."""
    out = set()
    for w in X:
        out.update(itertools.product(*(range(c + 1) for c in w)))
    return frozenset(out)


# -- dihedral group on corner indices ------------------------------------
# A permutation p acts on vectors by p(v) = (v[p[0]], ..., v[p[4]]).

ROTATION = (1, 2, 3, 4, 0)
MIRROR = (4, 3, 2, 1, 0)  # (3)(24)(15)


def _compose(p, q):
    # apply q first then p:  (p o q)(v) = p(q(v))
    return tuple(q[p[i]] for i in range(5))


@lru_cache(maxsize=None)
def dihedral_group() -> tuple:
    seen = {tuple(range(5))}
    frontier = [tuple(range(5))]
    while frontier:
        g = frontier.pop()
        for h in (ROTATION, MIRROR):
            k = _compose(h, g)
            if k not in seen:
                seen.add(k)
                frontier.append(k)
    return tuple(sorted(seen))


def permute(p, v: VecType) -> VecType:
    return tuple(v[p[i]] for i in range(5))


def apply_perm(p, X: Iterable) -> VecTypeSet:
    return vset(permute(p, v) for v in X)


def canonical_form(X: Iterable, group=None) -> VecTypeSet:
    return min(apply_perm(p, X) for p in (group or dihedral_group()))


def stabilizer(X: VecTypeSet) -> list:
    return [p for p in dihedral_group() if apply_perm(p, X) == tuple(X)]


# -- angle polytopes ---------------------------------------------------------

def polytope(X: Iterable, ordered: bool = False, open_cube: bool = False) -> LinearSystem:
    """P_X (or P>=_X when ordered) as a linear system in alpha.

    With ``open_cube`` the box rows are strict, i.e. the system describes the
    intersection with ]0,1[^5.
    """
    s = LinearSystem(5, nonneg=True).eq(ONES, 3)
    for v in X:
        s = s.eq(v, 2)
    for i in range(5):
        e = [0] * 5
        e[i] = 1
        if open_cube:
            s = s.ge(e, 0, True)
        s = s.le(e, 1, open_cube)
    if ordered:
        for i in range(4):
            e = [0] * 5
            e[i], e[i + 1] = 1, -1
            s = s.ge(e, 0)
    return s


def open_witness(X: Iterable, ordered: bool = False):
    """A point of P_X inside the open cube, or None."""
    res = lp_feasible(polytope(X, ordered, open_cube=True))
    return res.witness if isinstance(res, Feasible) else None


def polytope_dim(X: Iterable) -> int:
    return affine_dim(polytope(X))


def _bounded_points(alpha, target):
    """All w in N^5 with w.alpha == target, for alpha > 0."""
    out = []
    w = [0] * 5

    def rec(i, rem):
        if i == 4:
            q = rem / alpha[4]
            if q.denominator == 1:
                w[4] = int(q)
                out.append(tuple(w))
            return
        k = 0
        while k * alpha[i] <= rem:
            w[i] = k
            rec(i + 1, rem - k * alpha[i])
            k += 1
        w[i] = 0

    rec(0, Q(target))
    return out


def compat(X: Iterable, witness=None) -> VecTypeSet:
    """All w in N^5 with (w,2) in span{(1,1,1,1,1,3)} + {(v,2) : v in X}.

    For a witness alpha0 of P_X in the open cube this is the set of w with
    w.alpha = 2 on the whole affine hull of P_X, which we enumerate by
    bounding w.alpha0 = 2 and then filtering by the hull's directions.
    """
    X = vset(X)
    if witness is None:
        witness = open_witness(X)
        if witness is None:
            raise InfiniteSet("P_X does not meet the open cube")
    dirs = nullspace([ONES] + list(X), 5)
    out = []
    for w in _bounded_points(witness, 2):
        if all(dot(w, d) == 0 for d in dirs):
            out.append(w)
    return vset(out)


def is_good(X: Iterable) -> bool:
    """Goodness via a single LP.

    X is good iff the cone spanned by the projections v - (|v|/5)(1,...,1)
    is a linear subspace, iff some strictly positive combination of them
    vanishes.
    """
    X = vset(X)
    if not X:
        return True
    m = len(X)
    s = LinearSystem(m)
    for i in range(5):
        s = s.eq([5 * v[i] - sum(v) for v in X], 0)
    for j in range(m):
        e = [0] * m
        e[j] = 1
        s = s.ge(e, 1)
    return isinstance(lp_feasible(s), Feasible)


def is_good_by_members(X: Iterable) -> bool:
    """Goodness straight from the definition: one LP per member.

    For each v0, maximise u.v0 over {sum u = 0, u.v >= 0 for v in X} in a
    box.  X is good iff all optima are 0.
    """
    X = vset(X)
    base = LinearSystem(5).eq(ONES, 0)
    for v in X:
        base = base.ge(v, 0)
    for i in range(5):
        e = [0] * 5
        e[i] = 1
        base = base.ge(e, -1).le(e, 1)
    for v0 in X:
        res = lp_maximize(v0, base)
        if res.value != 0:
            return False
    return True


def min_vector(X: Iterable):
    """(m_X)_i = min alpha_i over P>=_X, with the minimising points."""
    s = polytope(X, ordered=True)
    m, argmins = [], []
    for i in range(5):
        e = [0] * 5
        e[i] = 1
        res = lp_minimize(e, s)
        if not isinstance(res, Optimum):
            raise EmptyPolytope(X)
        m.append(res.value)
        argmins.append(res.witness)
    return tuple(m), tuple(argmins)


def max_vector(X: Iterable):
    """Coordinate-wise maxima over P>=_X."""
    s = polytope(X, ordered=True)
    out = []
    for i in range(5):
        e = [0] * 5
        e[i] = 1
        res = lp_maximize(e, s)
        if not isinstance(res, Optimum):
            raise EmptyPolytope(X)
        out.append(res.value)
    return tuple(out)


def implied_value_range(a, X: Iterable):
    """(min, max) of a.alpha over P_X."""
    s = polytope(X)
    return lp_minimize(a, s).value, lp_maximize(a, s).value


def same_polytope(X: Iterable, Y: Iterable) -> bool:
    """Mutual implication of the defining equalities of P_X and P_Y."""
    for A, B in ((X, Y), (Y, X)):
        for v in B:
            lo, hi = implied_value_range(v, A)
            if lo != 2 or hi != 2:
                return False
    return True


def equality_rank(X: Iterable) -> int:
    return rank([ONES] + list(X))
