"""Certificates that no pentagon has angles in P and side lengths in Q.

The closure condition sum_i l_i exp(i pi s_i) = 0 splits into a cosine and
a sine equation.  When P is a single rational point both are linear in l
with coefficients in a real cyclotomic field, and an exact LP decides the
question.  Otherwise P is covered by boxes; on each box every cos/sin is
replaced by a certified enclosure and the relaxed linear system is tested.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..exactmath import (AlgebraicReal, Feasible, LinearSystem, Optimum, Q, alg_cos, implicit_equalities,
                         lp_feasible, lp_maximize, lp_minimize, nullspace, span_member, trig_bounds)
from ..vectypes import ONES, polytope
from .lengths import LengthProgram, turning, turning_affine


@dataclass(frozen=True)
class CertFeasible:
    witness: object = None


@dataclass(frozen=True)
class InfeasibleCertified:
    boxes: int = 0


@dataclass(frozen=True)
class CertUnknown:
    boxes: int = 0


def _field_conv(N):
    def conv(v):
        return v if isinstance(v, AlgebraicReal) else AlgebraicReal(N, (v,))
    return conv


def closure_rows(alpha):
    """(N, cos row, sin row) of the closure equations at a rational alpha."""
    s = turning(alpha)
    q = 1
    for x in s:
        q = q * x.denominator // math.gcd(q, x.denominator)
    N = 2 * q
    cos_row, sin_row = [], []
    for x in s:
        p = int(x * q)
        cos_row.append(alg_cos(2 * p, N))
        sin_row.append(alg_cos(q - 2 * p, N))
    return N, tuple(cos_row), tuple(sin_row)


def closure_residual(alpha, lengths):
    """Exact value of the closure sum (cos part, sin part)."""
    N, c, s = closure_rows(alpha)
    zero = AlgebraicReal(N)
    rc = sum((ci * Q(l) for ci, l in zip(c, lengths)), zero)
    rs = sum((si * Q(l) for si, l in zip(s, lengths)), zero)
    return rc, rs


def point_certificate(alpha, lengths: LengthProgram):
    """Exact decision for a single angle vector."""
    N, c, s = closure_rows(alpha)
    sys = lengths.sys.eq(c, 0).eq(s, 0)
    res = lp_feasible(sys, _field_conv(N))
    if isinstance(res, Feasible):
        return CertFeasible((tuple(alpha), res.witness))
    return InfeasibleCertified()


def closed_range(alpha, lengths: LengthProgram, r):
    """(min, max) of r.l over the program cut by the closure equations at alpha.

    Values live in the cyclotomic field; None when the cut is empty.
    """
    N, c, s = closure_rows(alpha)
    sys = lengths.sys.eq(c, 0).eq(s, 0)
    conv = _field_conv(N)
    lo = lp_minimize(r, sys, conv)
    if not isinstance(lo, Optimum):
        return None
    return lo.value, lp_maximize(r, sys, conv).value


def closed_implies_zero(alpha, lengths: LengthProgram, r) -> bool:
    """Is r.l = 0 forced by the program plus the closure equations at alpha?

    The cut set is an affine space meeting an open set, so when it is not
    empty a linear form is constant on it iff it lies in the span of the
    equality rows.  The caller must know the cut is not empty.
    """
    N, c, s = closure_rows(alpha)
    rows = [tuple(a) + (b,) for a, b in lengths.sys.eqs] + [c + (0,), s + (0,)]
    return span_member(tuple(r) + (0,), rows, _field_conv(N))


class AnglePolytope:
    """P_X (optionally cut by extra equations) with a free-coordinate chart."""

    def __init__(self, X, extra_eqs=()):
        sys = polytope(X)
        for a, b in extra_eqs:
            sys = sys.eq(a, b)
        self.sys = sys
        rows = [a for a, _ in sys.eqs] + [a for a, _ in implicit_equalities(sys)]
        self.dirs = nullspace(rows, 5)
        self.dim = len(self.dirs)
        # the free coordinates are the unit positions of the reduced basis
        self.free = [next(j for j in range(5) if d[j] == 1 and
                          all(e[j] == 0 for e in self.dirs if e is not d)) for d in self.dirs]
        self.empty = not isinstance(lp_feasible(sys.relaxed()), Feasible)

    def point(self):
        res = lp_feasible(self.sys.relaxed())
        return res.witness if isinstance(res, Feasible) else None

    def bounding_box(self):
        box = []
        for j in self.free:
            e = [0] * 5
            e[j] = 1
            box.append((lp_minimize(e, self.sys).value, lp_maximize(e, self.sys).value))
        return box

    def cut(self, box):
        s = self.sys
        for j, (lo, hi) in zip(self.free, box):
            e = [0] * 5
            e[j] = 1
            s = s.ge(e, lo).le(e, hi)
        return s


def _enclosures(sys, bits):
    """Per edge: (sin interval, cos interval) of pi*s_i over the system."""
    out = []
    for i in range(5):
        c0, a = turning_affine(i)
        if not any(a):
            lo = hi = Q(c0)
        else:
            lo = c0 + lp_minimize(a, sys).value
            hi = c0 + lp_maximize(a, sys).value
        out.append(trig_bounds(lo, hi, bits))
    return out


def relaxed_empty(lengths: LengthProgram, encl) -> bool:
    sin_hi = [s.hi for s, _ in encl]
    sin_lo = [s.lo for s, _ in encl]
    cos_hi = [c.hi for _, c in encl]
    cos_lo = [c.lo for _, c in encl]
    sys = lengths.sys.ge(sin_hi, 0).le(sin_lo, 0).ge(cos_hi, 0).le(cos_lo, 0)
    return not isinstance(lp_feasible(sys), Feasible)


def box_certificate(poly: AnglePolytope, lengths: LengthProgram, max_depth=12, max_boxes=512, bits=48):
    """Cover P by boxes; InfeasibleCertified if every box is refuted."""
    stack = [(poly.bounding_box(), 0)]
    boxes = 0
    while stack:
        box, depth = stack.pop()
        boxes += 1
        if boxes > max_boxes:
            return CertUnknown(boxes)
        sys = poly.cut(box)
        if not isinstance(lp_feasible(sys.relaxed()), Feasible):
            continue
        if relaxed_empty(lengths, _enclosures(sys, bits)):
            continue
        if depth >= max_depth:
            return CertUnknown(boxes)
        k = max(range(len(box)), key=lambda t: box[t][1] - box[t][0])
        lo, hi = box[k]
        if hi == lo:
            return CertUnknown(boxes)
        mid = (lo + hi) / 2
        for half in ((lo, mid), (mid, hi)):
            b = list(box)
            b[k] = half
            stack.append((b, depth + 1))
    return InfeasibleCertified(boxes)


@lru_cache(maxsize=64)
def _poly_for(X, extra):
    return AnglePolytope(X, extra)


def feasibility_certificate(X, lengths: LengthProgram, extra_angle_eqs=(), max_depth=12, max_boxes=512):
    """Feasible, InfeasibleCertified or CertUnknown (the last only when dim P > 0)."""
    if not lengths.feasible():
        return InfeasibleCertified()
    poly = _poly_for(tuple(X), tuple(extra_angle_eqs))
    if poly.empty:
        return InfeasibleCertified()
    if poly.dim == 0:
        return point_certificate(poly.point(), lengths)
    return box_certificate(poly, lengths, max_depth, max_boxes)
