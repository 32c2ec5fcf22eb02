"""Real algebraic numbers: square-free defining polynomial + isolating interval.

The isolating interval is open, its endpoints are never roots of the defining
polynomial, and it contains exactly one real root.  Interval bounds may only
shrink over the object's lifetime (the identified root never changes), so
sharing across threads stays safe; `refine` returns a tightened snapshot.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Union

from econprove.algebra.poly import Polynomial

Rat = Union[int, Fraction]


class RealAlgebraicNumber:
    __slots__ = ("defining", "_lo", "_hi", "_rat", "_sign_lo")

    def __init__(self, defining: Polynomial, lo: Fraction, hi: Fraction,
                 exact: Optional[Fraction] = None):
        if len(defining.vars) != 1:
            raise ValueError("defining polynomial must be univariate")
        object.__setattr__(self, "defining", defining)
        object.__setattr__(self, "_lo", Fraction(lo))
        object.__setattr__(self, "_hi", Fraction(hi))
        object.__setattr__(self, "_rat", exact)
        object.__setattr__(self, "_sign_lo", None)

    def __setattr__(self, name, value):  # pragma: no cover - shrink via methods
        raise AttributeError("use tighten()/refine() to adjust the interval")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(r: Rat, var: str = "x") -> RealAlgebraicNumber:
        r = Fraction(r)
        defining = Polynomial.from_univariate(var, [-r.numerator, r.denominator])
        return RealAlgebraicNumber(defining, r - 1, r + 1, exact=r)

    # -- basic accessors --------------------------------------------------

    @property
    def lo(self) -> Fraction:
        return self._lo

    @property
    def hi(self) -> Fraction:
        return self._hi

    @property
    def var(self) -> str:
        return self.defining.vars[0]

    def defining_in(self, var: str) -> Polynomial:
        if self.var == var:
            return self.defining
        return self.defining.rename({self.var: var})

    def as_rational(self) -> Optional[Fraction]:
        if self._rat is not None:
            return self._rat
        coeffs = self.defining.univariate_coeffs()
        if len(coeffs) == 2:
            r = Fraction(-coeffs[0], coeffs[1])
            object.__setattr__(self, "_rat", r)
            return r
        return None

    def is_rational(self) -> bool:
        return self.as_rational() is not None

    def width(self) -> Fraction:
        return self._hi - self._lo

    # -- refinement -------------------------------------------------------

    def _def_sign(self, x: Fraction) -> int:
        v = self.defining.evaluate({self.var: x})
        return 0 if v == 0 else (1 if v > 0 else -1)

    def tighten(self) -> None:
        """One bisection step; interval width halves (or better)."""
        r = self.as_rational()
        if r is not None:
            w = (self._hi - self._lo) / 4
            object.__setattr__(self, "_lo", max(self._lo, r - w))
            object.__setattr__(self, "_hi", min(self._hi, r + w))
            return
        mid = (self._lo + self._hi) / 2
        s = self._def_sign(mid)
        if s == 0:
            object.__setattr__(self, "_rat", mid)
            self.tighten()
            return
        if self._sign_lo is None:
            object.__setattr__(self, "_sign_lo", self._def_sign(self._lo))
        if s == self._sign_lo:
            object.__setattr__(self, "_lo", mid)
        else:
            object.__setattr__(self, "_hi", mid)

    def tighten_below(self, width: Fraction) -> None:
        while self._hi - self._lo > width:
            self.tighten()

    def refine(self, width: Fraction) -> RealAlgebraicNumber:
        """Snapshot of the same root with isolating interval of width <= width."""
        if width <= 0:
            raise ValueError("width must be positive")
        self.tighten_below(width)
        return RealAlgebraicNumber(self.defining, self._lo, self._hi, self._rat)

    # -- exact comparison with rationals -----------------------------------

    def compare_rational(self, r: Rat) -> int:
        """Sign of (self - r), exactly."""
        r = Fraction(r)
        mine = self.as_rational()
        if mine is not None:
            return 0 if mine == r else (1 if mine > r else -1)
        if r <= self._lo:
            return 1
        if r >= self._hi:
            return -1
        s = self._def_sign(r)
        if s == 0:
            # r is a root of the defining polynomial inside the isolating
            # interval, hence the unique one: self == r.
            object.__setattr__(self, "_rat", r)
            return 0
        if self._sign_lo is None:
            object.__setattr__(self, "_sign_lo", self._def_sign(self._lo))
        if s == self._sign_lo:
            object.__setattr__(self, "_lo", r)     # root lies in (r, hi)
            return 1
        object.__setattr__(self, "_hi", r)
        return -1

    # -- display -----------------------------------------------------------

    def decimal(self, sig: int = 6) -> str:
        from econprove.algebra.display import format_decimal
        r = self.as_rational()
        if r is not None:
            return format_decimal(r, sig)
        for _ in range(200):
            lo_s = format_decimal(self._lo, sig)
            hi_s = format_decimal(self._hi, sig)
            if lo_s == hi_s:
                return lo_s
            self.tighten()
        return format_decimal((self._lo + self._hi) / 2, sig)

    def __repr__(self) -> str:
        r = self.as_rational()
        if r is not None:
            return f"RealAlgebraicNumber({r})"
        return f"RealAlgebraicNumber({self.defining} in ({self._lo}, {self._hi}))"


def simplest_rational_between(a: Fraction, b: Fraction) -> Fraction:
    """Rational with the smallest denominator (then magnitude) in [a, b]."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        a, b = b, a
    if a <= 0 <= b:
        return Fraction(0)
    if b < 0:
        return -simplest_rational_between(-b, -a)

    def rec(x: Fraction, y: Fraction) -> Fraction:
        # simplest rational in [x, y] with 0 < x <= y
        fx = x.numerator // x.denominator
        if fx == x:
            return Fraction(fx)
        if fx + 1 <= y:
            return Fraction(fx + 1)
        return fx + 1 / rec(1 / (y - fx), 1 / (x - fx))

    return rec(a, b)


# -- exact interval arithmetic (rational endpoints) -------------------------

Interval = tuple[Fraction, Fraction]


def iv_add(a: Interval, b: Interval) -> Interval:
    return (a[0] + b[0], a[1] + b[1])


def iv_mul(a: Interval, b: Interval) -> Interval:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(products), max(products))


def iv_pow(a: Interval, k: int) -> Interval:
    if k == 0:
        return (Fraction(1), Fraction(1))
    if k == 1:
        return a
    lo, hi = a
    if k % 2 == 1 or lo >= 0:
        return (lo ** k, hi ** k)
    if hi <= 0:
        return (hi ** k, lo ** k)
    return (Fraction(0), max(lo ** k, hi ** k))


def poly_box(p: Polynomial, box: Mapping[str, Interval]) -> Interval:
    """Exact interval bound of p over a box with rational corner coordinates."""
    lo = Fraction(0)
    hi = Fraction(0)
    for e, c in p.terms.items():
        t: Interval = (Fraction(c), Fraction(c))
        for v, k in zip(p.vars, e):
            if k:
                t = iv_mul(t, iv_pow(box[v], k))
        lo += t[0]
        hi += t[1]
    return (lo, hi)
