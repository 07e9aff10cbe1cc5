"""Exact rational scalars and vectors.

Every quantity in the package is a :class:`fractions.Fraction`; vectors are
plain tuples of fractions. Floats are refused at the boundary because the
floor and tie logic downstream must be exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Tuple, Union

from .errors import DomainError

RationalLike = Union[Fraction, int, str]
RationalVector = Tuple[Fraction, ...]


def rational(value: RationalLike) -> Fraction:
    """Parse ``value`` into a canonical Fraction.

    Accepts ints, Fractions and strings of the form ``"p"``, ``"p/q"`` or a
    decimal such as ``"2.5"`` (converted exactly to 5/2).
    """
    if isinstance(value, bool):
        raise DomainError(f"not a rational literal: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"not a rational literal: {value!r}") from None
    raise DomainError(f"not a rational literal: {value!r} ({type(value).__name__})")


def vector(values: Iterable[RationalLike]) -> RationalVector:
    out = tuple(rational(v) for v in values)
    if not out:
        raise DomainError("empty vector")
    return out


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def floor_ratio(p: RationalLike, q: RationalLike) -> int:
    """Return the integer floor of ``p / q`` for ``q > 0``."""
    p, q = rational(p), rational(q)
    if q <= 0:
        raise DomainError(f"floor_ratio needs q > 0, got {format_rational(q)}")
    return math.floor(p / q)


def min_positive_integer_combination(a: Iterable[RationalLike]) -> Fraction:
    """Smallest positive value of ``sum(k_i * a_i)`` over integer vectors ``k``.

    Over the rationals the subgroup generated by ``a`` is cyclic, generated by
    gcd(numerators over a common denominator) / common denominator.
    """
    a = vector(a)
    if any(x <= 0 for x in a):
        raise DomainError("entries must be positive")
    common = reduce(math.lcm, (x.denominator for x in a))
    g = reduce(math.gcd, (x.numerator * (common // x.denominator) for x in a))
    return Fraction(g, common)


def scale(a: Iterable[RationalLike], alpha: RationalLike) -> RationalVector:
    alpha = rational(alpha)
    if alpha <= 0:
        raise DomainError(f"scale factor must be positive, got {format_rational(alpha)}")
    return tuple(alpha * x for x in vector(a))
