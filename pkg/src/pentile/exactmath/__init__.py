"""Exact rational LP, certified trigonometric enclosures, cyclotomic-real fields."""
from .rational import Q, as_q, qvec, fmt_q
from .lp import (LinearSystem, Feasible, Infeasible, Optimum, Unbounded, lp_feasible,
                 lp_minimize, lp_maximize, affine_dim, span_member, rank, nullspace,
                 implicit_equalities, dot)
from .interval import RationalInterval, trig_bounds, sincos_point, pi_interval
from .algebraic import AlgebraicReal, alg_cos, alg_sin, embed, minpoly_2cos, cyclotomic
