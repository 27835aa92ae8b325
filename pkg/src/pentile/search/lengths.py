"""The side-length program and the turning vector of a pentagon."""
from __future__ import annotations

from functools import cached_property

from ..exactmath import Feasible, LinearSystem, Optimum, Q, lp_feasible, lp_maximize, lp_minimize, span_member

ONES = (1, 1, 1, 1, 1)


class LengthProgram:
    """Linear conditions on the side lengths l in R^5.

    Always contains l > 0 and sum(l) = 1.  Every other row is homogeneous:
    d.l = 0 or d.l > 0 for an integer vector d.  Because every inequality is
    strict the described set is relatively open, so ranges over it are read
    off its closure.
    """
    def __init__(self, sys: LinearSystem = None):
        if sys is None:
            sys = LinearSystem(5, nonneg=True).eq(ONES, 1)
            for i in range(5):
                e = [0] * 5
                e[i] = 1
                sys = sys.ge(e, 0, True)
        self.sys = sys

    def with_eq(self, d) -> "LengthProgram":
        return LengthProgram(self.sys.eq(tuple(d), 0))

    def with_pos(self, d) -> "LengthProgram":
        return LengthProgram(self.sys.ge(tuple(d), 0, True))

    def with_neg(self, d) -> "LengthProgram":
        return self.with_pos(tuple(-x for x in d))

    def with_sign(self, d, sign: int) -> "LengthProgram":
        if sign == 0:
            return self.with_eq(d)
        return self.with_pos(d) if sign > 0 else self.with_neg(d)

    @cached_property
    def witness(self):
        res = lp_feasible(self.sys)
        return res.witness if isinstance(res, Feasible) else None

    def feasible(self) -> bool:
        return self.witness is not None

    def range(self, d):
        """(inf, sup) of d.l over the program."""
        lo = lp_minimize(d, self.sys)
        hi = lp_maximize(d, self.sys)
        if not isinstance(lo, Optimum) or not isinstance(hi, Optimum):
            raise ValueError("empty length program")
        return lo.value, hi.value

    def implies_zero(self, d) -> bool:
        """d.l = 0 on the whole (non-empty, relatively open) program.

        Such a set spans the affine space cut out by its equality rows, so
        this is a span test on (d | 0).
        """
        rows = [tuple(a) + (b,) for a, b in self.sys.eqs]
        return span_member(tuple(d) + (0,), rows)

    def sign_options(self, d):
        """Signs of d.l that some point of the program realises, ascending."""
        lo, hi = self.range(d)
        if lo == hi:
            return (0 if lo == 0 else (1 if lo > 0 else -1),)
        out = []
        if lo < 0:
            out.append(-1)
        if lo < 0 < hi:
            out.append(0)
        if hi > 0:
            out.append(1)
        return tuple(out)

    def rows(self):
        """Constraint rows beyond the base ones, as (kind, d) pairs."""
        out = [("eq", a) for a, _ in self.sys.eqs[1:]]
        out += [("pos", a) for a, _, _ in self.sys.ineqs[5:]]
        return out

    def key(self):
        return (self.sys.eqs, self.sys.ineqs)

    def __repr__(self):
        return f"LengthProgram({self.rows()})"


def turning(alpha):
    """Edge directions in units of pi, relative to edge 1.

    Edge i runs from corner i to corner i+1; walking round the boundary we
    turn by pi - alpha_j at every corner j = 2..i before reaching it.
    """
    alpha = [Q(a) for a in alpha]
    s = [Q(0)]
    for i in range(1, 5):
        s.append(s[-1] + 1 - alpha[i])
    return tuple(s)


def turning_affine(i: int):
    """Direction of edge i (0-based) as (constant, coefficients over alpha)."""
    coeffs = [0] * 5
    for j in range(1, i + 1):
        coeffs[j] = -1
    return i, tuple(coeffs)
