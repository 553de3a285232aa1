"""Bit-exact serialization helpers: rationals as "num/den" strings, stable JSON.

Every rational that crosses a file or process boundary travels as a canonical
"num/den" string so that cache hits and certificate round-trips are
byte-identical to recomputation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational


def rat_to_str(x) -> str:
    """Canonical "num/den" form, denominator always present and positive."""
    if not isinstance(x, Rational):
        raise TypeError(f"expected a rational, got {type(x).__name__}")
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def rat_from_str(s: str) -> Fraction:
    """Parse "num/den" or a bare integer string."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def json_dumps_stable(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, no whitespace drift."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def exact_decimal(x, decimals: int = 6) -> str:
    """Decimal rendering of a rational by integer arithmetic (no float),
    truncated toward zero. For plot data files."""
    f = Fraction(x)
    sign = "-" if f < 0 else ""
    scale = 10**decimals
    scaled = abs(f.numerator) * scale // f.denominator
    whole, frac = divmod(scaled, scale)
    return f"{sign}{whole}.{frac:0{decimals}d}"
