"""Exact arithmetic in the real field Q(2cos(pi/N)).

Elements are polynomials in theta = 2cos(pi/N) reduced modulo the minimal
polynomial of theta.  Zero tests are exact (coefficients in a basis); signs
are certified by evaluating at a rational enclosure of theta and refining
until the enclosure excludes zero.
"""
from __future__ import annotations

from functools import lru_cache

from .interval import RationalInterval, sincos_point
from .rational import Q, as_q

# polynomials are tuples of coefficients, lowest degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _pscale(a, c):
    return _trim(x * c for x in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = Q(a[-1]) / lead
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a = list(_trim(a))
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic(n: int):
    """Integer coefficients of the n-th cyclotomic polynomial."""
    num = (-1,) + (0,) * (n - 1) + (1,)
    for d in range(1, n):
        if n % d == 0:
            num, r = _pdivmod(num, cyclotomic(d))
            assert not r
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def dickson(k: int):
    """D_k with D_k(z + 1/z) = z^k + z^-k (so 2cos(k t) = D_k(2cos t))."""
    a, b = (2,), (0, 1)
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, _padd(_pmul((0, 1), b), _pscale(a, -1))
    return b


@lru_cache(maxsize=None)
def minpoly_2cos(N: int):
    """Monic integer minimal polynomial of 2cos(pi/N)."""
    if N == 1:
        return (2, 1)
    phi = cyclotomic(2 * N)
    d = len(phi) - 1
    h = d // 2
    out = (phi[h],)
    for k in range(1, h + 1):
        out = _padd(out, _pscale(dickson(k), phi[h + k]))
    return tuple(int(c) for c in out)


@lru_cache(maxsize=None)
def _theta_interval(N: int, bits: int) -> RationalInterval:
    _, c = sincos_point(Q(1, N), bits)
    return RationalInterval(2 * c.lo, 2 * c.hi)


_TABLES = {}


def _reduction_rows(N: int, upto: int):
    """theta^k modulo the minimal polynomial for deg <= k <= upto, as a dict."""
    d, rows = _TABLES.get(N, (None, None))
    if rows is None:
        mp = minpoly_2cos(N)
        d = len(mp) - 1
        rows = {d: tuple(Q(-c) for c in mp[:d])}
        _TABLES[N] = (d, rows)
    k = max(rows)
    while k < upto:
        prev = rows[k]
        top = prev[-1]
        nxt = [Q(0)] + list(prev[:-1])
        rows[k + 1] = tuple(a + top * r for a, r in zip(nxt, rows[d]))
        k += 1
    return d, rows


def _reduce(c, N):
    d, rows = _reduction_rows(N, len(c) - 1)
    if len(c) <= d:
        return _trim(c)
    out = list(c[:d])
    for k in range(d, len(c)):
        x = c[k]
        if x:
            for i, r in enumerate(rows[k]):
                if r:
                    out[i] += x * r
    return _trim(out)


_MPQ = type(Q(0))


class AlgebraicReal:
    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs=()):
        self.N = N
        c = [x if type(x) is _MPQ else as_q(x) for x in coeffs]
        self.coeffs = _reduce(c, N)

    @classmethod
    def _raw(cls, N, coeffs):
        # coeffs already reduced, trimmed and rational
        obj = object.__new__(cls)
        obj.N = N
        obj.coeffs = coeffs
        return obj

    @classmethod
    def theta(cls, N):
        return cls(N, (0, 1))

    def _coerce(self, o):
        if isinstance(o, AlgebraicReal):
            if o.N != self.N:
                raise ValueError("elements of different fields")
            return o
        return AlgebraicReal(self.N, (o,))

    def __add__(self, o):
        o = self._coerce(o)
        return AlgebraicReal._raw(self.N, _padd(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicReal._raw(self.N, tuple(-x for x in self.coeffs))

    def __sub__(self, o):
        o = self._coerce(o)
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return AlgebraicReal._raw(self.N, _trim((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                                                for i in range(n)))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, AlgebraicReal):
            if o.N != self.N:
                raise ValueError("elements of different fields")
            if len(o.coeffs) == 1:
                return AlgebraicReal._raw(self.N, _pscale(self.coeffs, o.coeffs[0]))
            if len(self.coeffs) == 1:
                return AlgebraicReal._raw(self.N, _pscale(o.coeffs, self.coeffs[0]))
            return AlgebraicReal._raw(self.N, _reduce(_pmul(self.coeffs, o.coeffs), self.N))
        return AlgebraicReal._raw(self.N, _pscale(self.coeffs, as_q(o)))

    __rmul__ = __mul__

    def inverse(self):
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid: s*a + t*m = g, g a nonzero constant
        m = tuple(Q(x) for x in minpoly_2cos(self.N))
        r0, r1 = m, self.coeffs
        s0, s1 = (), (Q(1),)
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _padd(s0, _pscale(_pmul(q, s1), -1))
        return AlgebraicReal(self.N, _pscale(s1, 1 / r1[0]))

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o):
        return self._coerce(o) * self.inverse()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return not self.is_zero()

    def enclosure(self, bits: int = 64) -> RationalInterval:
        t = _theta_interval(self.N, bits)
        acc = RationalInterval(Q(0), Q(0))
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def sign(self) -> int:
        if not self.coeffs:
            return 0
        if len(self.coeffs) == 1:
            return 1 if self.coeffs[0] > 0 else -1
        bits = 64
        while True:
            iv = self.enclosure(bits)
            if iv.lo > 0:
                return 1
            if iv.hi < 0:
                return -1
            bits *= 2

    def __eq__(self, o):
        try:
            o = self._coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def __float__(self):
        iv = self.enclosure(80)
        return float((iv.lo + iv.hi) / 2)

    def __repr__(self):
        return f"AlgebraicReal({self.N}, {[str(c) for c in self.coeffs]})"


def alg_cos(p: int, N: int) -> AlgebraicReal:
    """cos(p*pi/N) as an element of Q(2cos(pi/N))."""
    k = abs(p) % (2 * N)
    return AlgebraicReal(N, _pscale(dickson(k), Q(1, 2)))


def alg_sin(p: int, N: int) -> AlgebraicReal:
    """sin(p*pi/N), living in the field of index 2N."""
    return alg_cos(N - 2 * p, 2 * N)


def embed(x, M: int) -> AlgebraicReal:
    """Map an element of Q(2cos(pi/N)) into Q(2cos(pi/M)) for N | M."""
    if not isinstance(x, AlgebraicReal):
        return AlgebraicReal(M, (x,))
    if M % x.N:
        raise ValueError("target field does not contain the source")
    th = AlgebraicReal(M, dickson(M // x.N))
    acc = AlgebraicReal(M)
    for c in reversed(x.coeffs):
        acc = acc * th + c
    return acc
