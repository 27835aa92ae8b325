"""Exact linear programming over ordered fields.

The solver is a dense two-phase simplex with Bland's rule.  Entries only
need the field operations and comparison with 0, so the same code runs on
gmpy2 rationals and on :class:`~pentile.exactmath.algebraic.AlgebraicReal`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .rational import Q, as_q


@dataclass(frozen=True)
class LinearSystem:
    """Constraints on x in K^n.

    ``eqs`` holds rows ``(a, b)`` meaning a.x = b.  ``ineqs`` holds rows
    ``(a, b, strict)`` meaning a.x >= b, or a.x > b when strict.  With
    ``nonneg`` every variable is additionally constrained to x >= 0, which
    the solver handles without extra rows.
    """
    n: int
    eqs: tuple = ()
    ineqs: tuple = ()
    nonneg: bool = False

    def eq(self, a, b) -> "LinearSystem":
        return LinearSystem(self.n, self.eqs + ((tuple(a), b),), self.ineqs, self.nonneg)

    def ge(self, a, b, strict: bool = False) -> "LinearSystem":
        return LinearSystem(self.n, self.eqs, self.ineqs + ((tuple(a), b, strict),), self.nonneg)

    def le(self, a, b, strict: bool = False) -> "LinearSystem":
        return self.ge([-x for x in a], -b, strict)

    def extend(self, other: "LinearSystem") -> "LinearSystem":
        assert other.n == self.n
        return LinearSystem(self.n, self.eqs + other.eqs, self.ineqs + other.ineqs,
                            self.nonneg or other.nonneg)

    def relaxed(self) -> "LinearSystem":
        """Same system with every strict row made non-strict."""
        return LinearSystem(self.n, self.eqs, tuple((a, b, False) for a, b, _ in self.ineqs),
                            self.nonneg)

    def explicit(self) -> "LinearSystem":
        """Equivalent system with the sign constraints written as rows."""
        if not self.nonneg:
            return self
        s = LinearSystem(self.n, self.eqs, self.ineqs)
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            s = s.ge(e, 0)
        return s

    @property
    def has_strict(self) -> bool:
        return any(s for _, _, s in self.ineqs)

    def satisfied_by(self, x) -> bool:
        if self.nonneg and any(v < 0 for v in x):
            return False
        for a, b in self.eqs:
            if dot(a, x) != b:
                return False
        for a, b, strict in self.ineqs:
            v = dot(a, x)
            if v < b or (strict and v == b):
                return False
        return True

    def permuted(self, perm: Sequence[int]) -> "LinearSystem":
        """Rename variable i to perm[i]."""
        def mv(a):
            out = [0] * self.n
            for i, c in enumerate(a):
                out[perm[i]] = c
            return tuple(out)
        return LinearSystem(self.n, tuple((mv(a), b) for a, b in self.eqs),
                            tuple((mv(a), b, s) for a, b, s in self.ineqs), self.nonneg)


def dot(a, x):
    s = 0
    for ai, xi in zip(a, x):
        if ai:
            s = s + ai * xi
    return s


@dataclass(frozen=True)
class Feasible:
    witness: tuple


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Optimum:
    value: object
    witness: tuple


@dataclass(frozen=True)
class Unbounded:
    pass


class _Tableau:
    """min c.z subject to A z = b, z >= 0, with b >= 0."""

    def __init__(self, rows, rhs, zero, one):
        self.m = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        self.zero = zero
        self.one = one
        # constraint rows carry the rhs in the last slot
        self.T = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = [None] * self.m

    def pivot(self, r, c):
        T = self.T
        row = T[r]
        p = row[c]
        if p != self.one:
            inv = self.one / p
            T[r] = row = [x * inv if x else x for x in row]
        nz = [j for j, x in enumerate(row) if x]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][c]
            if f:
                Ti = T[i]
                for j in nz:
                    Ti[j] = Ti[j] - f * row[j]
        self.basis[r] = c

    def run(self, cost, allowed):
        """Minimise with objective row ``cost`` (list incl. rhs slot)."""
        T = self.T
        m = self.m
        # reduced costs: cost - sum over basis
        red = list(cost)
        for i in range(m):
            cb = cost[self.basis[i]]
            if cb:
                Ti = T[i]
                for j in range(len(red)):
                    if Ti[j]:
                        red[j] = red[j] - cb * Ti[j]
        while True:
            enter = None
            for j in allowed:
                if red[j] < 0:
                    enter = j
                    break
            if enter is None:
                return red
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return None
            r = best[1]
            self.pivot(r, enter)
            f = red[enter]
            row = T[r]
            for j, x in enumerate(row):
                if x:
                    red[j] = red[j] - f * x


def _solve(c, sys: LinearSystem, conv: Callable):
    """Core: maximise c.x over the closed system (strict rows relaxed).

    Returns ('inf',), ('unb',) or ('opt', value, x).
    """
    n = sys.n
    zero, one = conv(0), conv(1)
    # columns: x (n), then x- (n) unless nonneg, one surplus per
    # inequality, then artificials where no slack can start in the basis
    nx = n if sys.nonneg else 2 * n
    k = len(sys.ineqs)
    ncore = nx + k
    rows, rhs, start = [], [], []
    for a, b in sys.eqs:
        a = [conv(v) for v in a]
        rows.append(a + ([] if sys.nonneg else [-v for v in a]) + [zero] * k)
        rhs.append(conv(b))
        start.append(None)
    for idx, (a, b, _) in enumerate(sys.ineqs):
        a = [conv(v) for v in a]
        sl = [zero] * k
        sl[idx] = -one
        rows.append(a + ([] if sys.nonneg else [-v for v in a]) + sl)
        rhs.append(conv(b))
        start.append(nx + idx)
    for i in range(len(rows)):
        if rhs[i] < 0 or (rhs[i] == 0 and start[i] is not None):
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    m = len(rows)
    # a surplus column with coefficient +1 after normalisation is a
    # ready-made basic variable
    need = [i for i in range(m) if start[i] is None or rows[i][start[i]] != one]
    art = {i: ncore + j for j, i in enumerate(need)}
    full = [r + [one if art.get(i) == ncore + j else zero for j in range(len(need))]
            for i, r in enumerate(rows)]
    tab = _Tableau(full, rhs, zero, one)
    tab.basis = [art[i] if i in art else start[i] for i in range(m)]
    total = ncore + len(need)
    if need:
        cost1 = [zero] * ncore + [one] * len(need) + [zero]
        red = tab.run(cost1, list(range(total)))
        # phase-1 optimum value is -red[-1]
        if -red[-1] != 0:
            return ('inf',)
        # drive artificials out of the basis
        keep = []
        for i in range(m):
            if tab.basis[i] >= ncore:
                piv = None
                for j in range(ncore):
                    if tab.T[i][j] != 0:
                        piv = j
                        break
                if piv is None:
                    continue  # redundant row
                tab.pivot(i, piv)
            keep.append(i)
        tab.T = [tab.T[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]
        tab.m = len(keep)
    cvec = [conv(v) for v in c]
    xcost = [-v for v in cvec] + ([] if sys.nonneg else cvec)
    cost2 = xcost + [zero] * k + [zero] * len(need) + [zero]
    red = tab.run(cost2, list(range(ncore)))
    if red is None:
        return ('unb',)
    z = [zero] * ncore
    for i, bcol in enumerate(tab.basis):
        if bcol < ncore:
            z[bcol] = tab.T[i][-1]
    x = tuple(z[j] if sys.nonneg else z[j] - z[n + j] for j in range(n))
    return ('opt', dot(cvec, x), x)


def lp_maximize(c, sys: LinearSystem, conv: Callable = as_q):
    """Maximise c.x over the closure of ``sys``."""
    res = _solve(c, sys, conv)
    if res[0] == 'inf':
        return Infeasible()
    if res[0] == 'unb':
        return Unbounded()
    return Optimum(res[1], res[2])


def lp_minimize(c, sys: LinearSystem, conv: Callable = as_q):
    """Minimise c.x over ``sys`` (strict rows are read as non-strict)."""
    res = lp_maximize([-v for v in c], sys, conv)
    if isinstance(res, Optimum):
        return Optimum(-res.value, res.witness)
    return res


def lp_feasible(sys: LinearSystem, conv: Callable = as_q):
    """Exact feasibility; strict rows are honoured.

    Strict rows a.x > b become a.x - t >= b with an extra variable t <= 1
    that is maximised; the strict system is feasible iff the optimum t > 0.
    """
    if not sys.has_strict:
        res = _solve([0] * sys.n, sys, conv)
        return Infeasible() if res[0] == 'inf' else Feasible(res[2])
    n = sys.n
    ext = LinearSystem(n + 1,
                       tuple((tuple(a) + (0,), b) for a, b in sys.eqs),
                       tuple((tuple(a) + ((-1,) if s else (0,)), b, False)
                             for a, b, s in sys.ineqs), sys.nonneg)
    ext = ext.ge([0] * n + [-1], -1)
    res = _solve([0] * n + [1], ext, conv)
    if res[0] != 'opt' or not res[1] > 0:
        return Infeasible()
    return Feasible(res[2][:n])


def rank(rows, conv: Callable = as_q) -> int:
    return len(_echelon([[conv(v) for v in r] for r in rows]))


def _echelon(rows):
    rows = [list(r) for r in rows]
    out = []
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rows and col < ncols:
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        p = piv[col]
        piv = [v / p for v in piv]
        rows = [[a - r[col] * b for a, b in zip(r, piv)] if r[col] != 0 else r for r in rows]
        out.append(piv)
        col += 1
    return out


def span_member(target, basis, conv: Callable = as_q) -> bool:
    """True iff ``target`` is a rational combination of ``basis``."""
    if all(v == 0 for v in target):
        return True
    if not basis:
        return False
    return rank(list(basis) + [target], conv) == rank(basis, conv)


def nullspace(rows, n: int, conv: Callable = as_q):
    """Basis of {x : r.x = 0 for every r in rows}."""
    ech = _echelon([[conv(v) for v in r] for r in rows]) if rows else []
    # reduce to RREF
    pivots = []
    for r in ech:
        pivots.append(next(j for j, v in enumerate(r) if v != 0))
    for i in range(len(ech) - 1, -1, -1):
        pc = pivots[i]
        for k in range(i):
            f = ech[k][pc]
            if f != 0:
                ech[k] = [a - f * b for a, b in zip(ech[k], ech[i])]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for fcol in free:
        v = [conv(0)] * n
        v[fcol] = conv(1)
        for r, pc in zip(ech, pivots):
            v[pc] = -r[fcol]
        basis.append(tuple(v))
    return basis


def implicit_equalities(sys: LinearSystem, conv: Callable = as_q):
    """Rows of ``sys.ineqs`` that hold with equality on the whole closure."""
    out = []
    relax = sys.explicit().relaxed()
    for a, b, _ in relax.ineqs:
        res = lp_maximize(a, relax, conv)
        if isinstance(res, Optimum) and res.value == b:
            out.append((a, b))
    return out


def affine_dim(sys: LinearSystem, conv: Callable = as_q) -> int:
    """Dimension of the affine hull of the closure of ``sys``; -1 if empty."""
    if isinstance(lp_feasible(sys.relaxed(), conv), Infeasible):
        return -1
    sys = sys.explicit()
    rows = [a for a, _ in sys.eqs] + [a for a, _ in implicit_equalities(sys, conv)]
    return sys.n - (rank(rows, conv) if rows else 0)
