"""Exact rationals used everywhere in the package.

Coefficients are ``gmpy2.mpq``: arbitrary precision, always reduced, with a
positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import gmpy2

Rat = type(gmpy2.mpq(0))

ZERO = gmpy2.mpq(0)
ONE = gmpy2.mpq(1)


def rat(value) -> Rat:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational.

    Floats are refused: silently accepting them would smuggle rounding into
    an exact pipeline.
    """
    if isinstance(value, Rat):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational coefficient")
    if isinstance(value, int):
        return gmpy2.mpq(value)
    if isinstance(value, Fraction):
        return gmpy2.mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        try:
            return gmpy2.mpq(text)
        except ValueError as exc:
            raise ValueError(f"not an exact rational literal: {value!r}") from exc
    if isinstance(value, Rational):
        return gmpy2.mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def rat_str(value) -> str:
    """Serialize as ``"p/q"`` (``"p"`` when the denominator is 1)."""
    return str(rat(value))


def sign(value) -> int:
    return (value > 0) - (value < 0)


def exact_root(value, n: int):
    """Return the rational n-th root of ``value`` if it exists, else None.

    Odd roots of negatives are allowed; even roots of negatives return None.
    """
    value = rat(value)
    if value == 0:
        return ZERO
    neg = value < 0
    if neg and n % 2 == 0:
        return None
    a = abs(value)
    num, exact_n = gmpy2.iroot(a.numerator, n)
    den, exact_d = gmpy2.iroot(a.denominator, n)
    if not (exact_n and exact_d):
        return None
    root = gmpy2.mpq(int(num), int(den))
    return -root if neg else root
