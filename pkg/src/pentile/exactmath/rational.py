"""The rational number type used throughout (gmpy2 ``mpq``)."""
from fractions import Fraction

from gmpy2 import mpq as Q


def as_q(x) -> Q:
    if isinstance(x, str):
        return Q(Fraction(x))
    return Q(x)


def qvec(xs) -> tuple:
    return tuple(as_q(x) for x in xs)


def fmt_q(x) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
