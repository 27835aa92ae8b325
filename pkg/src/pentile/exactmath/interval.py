"""Certified rational enclosures of pi, sin and cos.

Everything is rational: pi comes from Machin's formula with alternating
series bounds, and sin/cos from truncated Taylor series with a Lagrange
remainder.  Intermediate bounds are rounded outward to dyadic rationals so
denominators stay small.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rational import Q, as_q

DEFAULT_BITS = 48


@dataclass(frozen=True)
class RationalInterval:
    lo: Q
    hi: Q

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    def __add__(self, o):
        o = _iv(o)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-_iv(o))

    def __rsub__(self, o):
        return _iv(o) - self

    def __mul__(self, o):
        o = _iv(o)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def hull(self, o):
        return RationalInterval(min(self.lo, o.lo), max(self.hi, o.hi))

    def rounded(self, bits: int):
        return RationalInterval(_down(self.lo, bits), _up(self.hi, bits))


def _iv(x):
    if isinstance(x, RationalInterval):
        return x
    x = as_q(x)
    return RationalInterval(x, x)


def _down(x, bits):
    s = 1 << bits
    return Q((x * s).__floor__(), s)


def _up(x, bits):
    s = 1 << bits
    return Q((x * s).__ceil__(), s)


def _atan_inv(k: int, bits: int):
    """Enclosure of atan(1/k) for an integer k > 1."""
    x = Q(1, k)
    x2 = x * x
    eps = Q(1, 1 << (bits + 4))
    p, s, n = x, Q(0), 0
    while True:
        s += p / (2 * n + 1) * (-1) ** n
        p *= x2
        n += 1
        nxt = p / (2 * n + 1) * (-1) ** n
        if abs(nxt) < eps:
            # alternating, decreasing terms: the value sits between
            # consecutive partial sums
            return RationalInterval(min(s, s + nxt), max(s, s + nxt))


@lru_cache(maxsize=None)
def pi_interval(bits: int = DEFAULT_BITS) -> RationalInterval:
    return (16 * _atan_inv(5, bits + 8) - 4 * _atan_inv(239, bits + 8)).rounded(bits + 4)


def _sin_series(x, bits):
    """Enclosure of sin(x) for rational 0 <= x <= 1."""
    s, term, k = Q(0), x, 1
    eps = Q(1, 1 << (bits + 4))
    while True:
        s += term
        term = -term * x * x / ((k + 1) * (k + 2))
        k += 2
        if abs(term) < eps:
            r = abs(term)
            return RationalInterval(s - r, s + r).rounded(bits + 4)


def _cos_series(x, bits):
    s, term, k = Q(0), Q(1), 0
    eps = Q(1, 1 << (bits + 4))
    while True:
        s += term
        term = -term * x * x / ((k + 1) * (k + 2))
        k += 2
        if abs(term) < eps:
            r = abs(term)
            return RationalInterval(s - r, s + r).rounded(bits + 4)


@lru_cache(maxsize=4096)
def _sincos_small(t, bits):
    """Enclosures of sin(t*pi), cos(t*pi) for rational 0 <= t <= 1/4."""
    pi = pi_interval(bits + 8)
    xlo, xhi = _down(t * pi.lo, bits + 8), _up(t * pi.hi, bits + 8)
    # sin increasing and cos decreasing on [0, pi/4]
    s = RationalInterval(_sin_series(xlo, bits).lo, _sin_series(xhi, bits).hi)
    c = RationalInterval(_cos_series(xhi, bits).lo, _cos_series(xlo, bits).hi)
    return s, c


def sincos_point(t, bits: int = DEFAULT_BITS):
    """Enclosures of (sin(t*pi), cos(t*pi)) for a rational t."""
    t = as_q(t)
    t = t - 2 * (t / 2).__floor__()
    ss = cs = 1
    if t >= 1:
        t -= 1
        ss, cs = -1, -1
    if t > Q(1, 2):
        t = 1 - t
        cs = -cs
    if t > Q(1, 4):
        c, s = _sincos_small(Q(1, 2) - t, bits)
    else:
        s, c = _sincos_small(t, bits)
    return (s if ss > 0 else -s), (c if cs > 0 else -c)


def _clamp(iv):
    return RationalInterval(max(iv.lo, Q(-1)), min(iv.hi, Q(1)))


def _hits(lo, hi, offset) -> bool:
    """Is there an integer k with lo <= offset + 2k <= hi?"""
    k = ((lo - offset) / 2).__ceil__()
    return offset + 2 * k <= hi


def trig_bounds(angle_lo, angle_hi, bits: int = DEFAULT_BITS):
    """Enclosures of sin and cos over [angle_lo*pi, angle_hi*pi]."""
    lo, hi = as_q(angle_lo), as_q(angle_hi)
    if lo > hi:
        raise ValueError("angle_lo > angle_hi")
    s0, c0 = sincos_point(lo, bits)
    s1, c1 = sincos_point(hi, bits)
    s, c = s0.hull(s1), c0.hull(c1)
    if _hits(lo, hi, Q(1, 2)):
        s = RationalInterval(s.lo, Q(1))
    if _hits(lo, hi, Q(3, 2)):
        s = RationalInterval(Q(-1), s.hi)
    if _hits(lo, hi, Q(0)):
        c = RationalInterval(c.lo, Q(1))
    if _hits(lo, hi, Q(1)):
        c = RationalInterval(Q(-1), c.hi)
    return _clamp(s), _clamp(c)
