"""Canonical JSON helpers shared by every payload type."""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational


def rational_str(x) -> str:
    """``"p/q"`` in lowest terms with ``q > 0``; plain ``"p"`` when ``q == 1``."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise ValueError(f"not a rational: {s!r}")
    if isinstance(s, (int, Rational)):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not a rational: {s!r}")


def simplify(x):
    """Collapse an integral Fraction to ``int`` so integer workloads stay on ints."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
