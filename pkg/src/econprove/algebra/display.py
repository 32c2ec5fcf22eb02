"""Decimal rendering of exact rationals (display only, never used to decide)."""
from __future__ import annotations

import decimal
from fractions import Fraction


def format_decimal(r: Fraction, sig: int = 6) -> str:
    """Round r to `sig` significant digits, rendered without exponent when sane."""
    if r == 0:
        return "0"
    with decimal.localcontext() as ctx:
        ctx.prec = sig
        d = decimal.Decimal(r.numerator) / decimal.Decimal(r.denominator)
    text = format(d, "f") if -6 < d.adjusted() < sig + 4 else format(d, "e")
    return text
