"""Conditions of the known, special and degenerate pentagon families.

Angles a..e are alpha_1..alpha_5 in units of pi; sides A..E are l_1..l_5,
with side A joining corners 1 and 2.  A chain ``A=B=C+2E`` stands for the
equalities between consecutive members.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from ..vectypes import dihedral_group, implied_value_range

KNOWN, SPECIAL, DEGENERATE = "known", "special", "degenerate"

# type, case, kind, angle equations ; length equations
TABLE = """
1  1   known      a+b+c=2                 ;
2  2   known      a+b+d=2                 ; C=E
3  31  known      3e=2, d+2e=2, b+2e=2    ; C+E=D, A=B
4  6   known      a+b+d=2, 2e=1           ; D=E, B=C
5  4   known      3e=2, a+b+d=2           ; D=E, B=C
6  13  known      d+2e=2, a+c+d=2         ; C=D=E, A=B
7  17  known      d+2e=2, a+2c=2          ; A=C=D=E
8  14  known      d+2e=2, 2b+c=2          ; A=B=C=D
9  15  known      d+2e=2, 2a+c=2          ; A=B=C=D
10 69  known      2c+d=2, b+c+e=2, a+2b=2 ; A+C=D=E
11 67  known      c+2d=2, b+d+e=2, a+2b=2 ; A=B=C+2E
12 67  known      c+2d=2, b+d+e=2, a+2b=2 ; A+C=B=2E
13 63  known      b+2d=2, a+b+d=2, 2e=1   ; A=2B=2C
14 67  known      c+2d=2, b+d+e=2, a+2b=2 ; A=B=2C=2E
15 303 known      c+2d=2, 2b+e=2, 2a+d=2, 2e=1 ; B=D=E, C=2B
16 72  special    b+c+e=2, 2b+d=2, a+2c=2 ; 2A=D=E, A=C
17 25  special    c+2e=2, 2b+d=2          ; A=B=C=D=E
18 73  special    d+2e=2, c+2e=2, b+d+e=2 ; D=E, A=B
19 23  special    c+2e=2, b+2d=2          ; A=B=C=D
20 2   degenerate a+b+d=2                 ; A=C+D, B=E
21 12  degenerate d+2e=2, 2a+b=2          ; A=B, C=D
22 27  degenerate c+2e=2, a+2d=2          ; A=B=C=E
23 64  degenerate 2b+d=2, a+b+d=2, 2e=1   ; A=2C=2D
24 69  degenerate 2c+d=2, b+c+e=2, a+2b=2 ; 2D=A+C, 2E=A+C
"""

_TERM = re.compile(r"([+-]?)(\d*)([a-eA-E])")


def _linear(expr: str):
    """Coefficient vector of a sum like '2c+d' over a..e (or A..E)."""
    out = [0] * 5
    pos = 0
    for m in _TERM.finditer(expr.replace(" ", "")):
        if m.start() != pos:
            raise ValueError(f"cannot parse {expr!r}")
        pos = m.end()
        k = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        out["abcde".index(m.group(3).lower())] += k
    if pos != len(expr.replace(" ", "")):
        raise ValueError(f"cannot parse {expr!r}")
    return tuple(out)


def parse_angle(eq: str):
    lhs, rhs = eq.split("=")
    return _linear(lhs), int(rhs)


def parse_lengths(chain: str):
    """Homogeneous rows r with r.l = 0, one per '=' in the chain."""
    parts = [_linear(p) for p in chain.split("=")]
    return [tuple(x - y for x, y in zip(p, q)) for p, q in zip(parts, parts[1:])]


@dataclass(frozen=True)
class FamilyCondition:
    type_id: int
    table_case: int
    kind: str
    angle_equations: tuple  # ((coeffs over a..e), rhs in units of pi)
    length_equations: tuple  # coeffs over A..E, each row = 0

    def relabeled(self, p):
        """The same conditions read through a corner relabelling.

        ``p`` maps label k to corner p[k]; sides follow their end corners.
        """
        ang = []
        for a, b in self.angle_equations:
            w = [0] * 5
            for k in range(5):
                w[p[k]] += a[k]
            ang.append((tuple(w), b))
        emap = edge_map(p)
        lens = []
        for r in self.length_equations:
            w = [0] * 5
            for k in range(5):
                w[emap[k]] += r[k]
            lens.append(tuple(w))
        return tuple(ang), tuple(lens)


def edge_map(p):
    """Side k (corners k, k+1) goes to the side joining p[k] and p[k+1]."""
    out = []
    for k in range(5):
        a, b = p[k], p[(k + 1) % 5]
        out.append(a if (a + 1) % 5 == b else b)
    return tuple(out)


@lru_cache(maxsize=None)
def families():
    out = []
    for line in TABLE.strip().splitlines():
        left, lens = line.split(";")
        tid, case, kind, angles = left.split(None, 3)
        ang = tuple(parse_angle(e) for e in angles.split(","))
        lrows = []
        for chain in lens.split(","):
            if chain.strip():
                lrows += parse_lengths(chain)
        out.append(FamilyCondition(int(tid), int(case), kind, ang, tuple(lrows)))
    return tuple(out)


def family(type_id: int) -> FamilyCondition:
    return families()[type_id - 1]


def angles_implied(X, angle_equations) -> bool:
    for a, b in angle_equations:
        lo, hi = implied_value_range(a, X)
        if lo != b or hi != b:
            return False
    return True


def applicable(X, case_index=None):
    """(family, relabelled length rows) whose angle conditions P_X forces.

    Types 1-15 are tried under every dihedral relabelling.  Special and
    degenerate types are tied to their own case and only tried there.
    """
    out = []
    for f in families():
        if f.kind != KNOWN and f.table_case != case_index:
            continue
        seen = set()
        for p in dihedral_group():
            ang, lens = f.relabeled(p)
            key = (tuple(sorted(ang)), tuple(sorted(lens)))
            if key in seen:
                continue
            seen.add(key)
            if angles_implied(X, ang):
                out.append((f, lens))
    return out


def detect_family(lengths, rules, implies_zero=None):
    """First family (by type id) whose length rows the program forces.

    ``implies_zero`` may replace the plain test on the program, e.g. by one
    that also uses the closure equations of a fixed angle vector.
    """
    test = implies_zero or lengths.implies_zero
    for f, lens in rules:
        if all(test(r) for r in lens):
            return f
    return None
