"""Rendering helpers for exact values.

Error terms at n ~ 1e5 are rationals with tens of thousands of digits, which
trips CPython's default 4300-digit guard on int -> str conversion.  Every
serialization path goes through int_str so the guard is lifted exactly once,
on demand.
"""

import sys
from fractions import Fraction

_MAX_DIGITS = 2_000_000


def int_str(v: int) -> str:
    try:
        return str(v)
    except ValueError:
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), _MAX_DIGITS))
        return str(v)


def frac_pair(x: Fraction) -> tuple[str, str]:
    """Numerator and denominator of x in lowest terms, as decimal strings."""
    return int_str(x.numerator), int_str(x.denominator)


def frac_decimal(x: Fraction) -> str:
    """Nearest-double rendering of x; a display convenience, never an input."""
    return repr(float(x))
