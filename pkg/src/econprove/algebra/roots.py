"""Real root isolation for univariate rational polynomials.

Descartes-rule bisection (Vincent/Collins/Akritas transformations) on the
integer primitive square-free part.  Rational roots are split off exactly
where cheap (zero roots, small rational-root-theorem candidates, bisection
midpoints that land on a root) and deflated from the working polynomial, so
interval roots always reference a defining polynomial none of whose other
roots can wander into their isolating interval or endpoints.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from econprove.algebra.poly import Polynomial, square_free_part
from econprove.algebra.algnum import RealAlgebraicNumber


def _variations(coeffs: list[int]) -> int:
    count = 0
    prev = 0
    for c in coeffs:
        if c:
            s = 1 if c > 0 else -1
            if prev and s != prev:
                count += 1
            prev = s
    return count


def _shift1(coeffs: list[int]) -> list[int]:
    """Taylor shift: coefficients of p(x+1)."""
    out = coeffs[:]
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += out[j + 1]
    return out


def _half_scale(coeffs: list[int]) -> list[int]:
    """Coefficients of 2^n p(x/2)."""
    n = len(coeffs) - 1
    return [c << (n - k) for k, c in enumerate(coeffs)]


def _div_x_minus_1(coeffs: list[int]) -> list[int]:
    """Exact quotient by (x - 1); requires p(1) == 0."""
    n = len(coeffs) - 1
    b = [0] * n
    b[n - 1] = coeffs[n]
    for k in range(n - 1, 0, -1):
        b[k - 1] = coeffs[k] + b[k]
    return b


class _Collector:
    __slots__ = ("rationals", "intervals")

    def __init__(self):
        self.rationals: list[Fraction] = []
        self.intervals: list[tuple[Fraction, Fraction]] = []


def _roots_in_01(coeffs: list[int], lo: Fraction, hi: Fraction,
                 out: _Collector, mirror: bool) -> None:
    """Isolate roots of a square-free p in (0,1), affinely mapped to (lo,hi).

    `mirror` flips reported coordinates for the negative-axis pass.
    """
    test = _shift1(coeffs[::-1])
    v = _variations(test)
    if v == 0:
        return
    if v == 1:
        iv = (-hi, -lo) if mirror else (lo, hi)
        out.intervals.append(iv)
        return
    mid = (lo + hi) / 2
    left = _half_scale(coeffs)       # 2^n p(x/2): (0,1) <-> (lo,mid)
    right = _shift1(left)            # 2^n p((x+1)/2): (0,1) <-> (mid,hi)
    if right[0] == 0:                # p at the midpoint is zero: exact root
        out.rationals.append(-mid if mirror else mid)
        right = right[1:]            # simple root: exactly one zero leads
        left = _div_x_minus_1(left)  # same root seen at left branch's x=1
    _roots_in_01(left, lo, mid, out, mirror)
    _roots_in_01(right, mid, hi, out, mirror)


def _small_divisors(n: int, limit: int) -> list[int] | None:
    """Positive divisors of n if there are at most `limit`, else None."""
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
            if len(out) > limit:
                return None
        d += 1
    return sorted(out)


def _eval_frac(coeffs: list[int], r: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * r + c
    return acc


def _deflate(coeffs: list[int], r: Fraction) -> list[int]:
    """Quotient of p by (x - r) for a known root r, re-cleared to integers."""
    n = len(coeffs) - 1
    b: list[Fraction] = [Fraction(0)] * n
    b[n - 1] = Fraction(coeffs[n])
    for k in range(n - 1, 0, -1):
        b[k - 1] = coeffs[k] + r * b[k]
    lcm = 1
    for c in b:
        lcm = lcm * c.denominator // _igcd(lcm, c.denominator)
    out = [int(c * lcm) for c in b]
    g = 0
    for c in out:
        g = _igcd(g, abs(c))
    return [c // g for c in out] if g > 1 else out


def isolate_real_roots(p: Polynomial) -> list[RealAlgebraicNumber]:
    """Isolate the distinct real roots of a univariate polynomial.

    One RealAlgebraicNumber per root, in increasing order, with pairwise
    disjoint open isolating intervals; rational roots come out exact.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if len(p.vars) > 1:
        raise ValueError("isolate_real_roots expects a univariate polynomial")
    if p.is_constant:
        return []
    var = p.vars[0]
    sf = square_free_part(p, var)
    _, sf = sf.integer_primitive()
    coeffs = [int(c) for c in sf.univariate_coeffs()]

    col = _Collector()
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        col.rationals.append(Fraction(0))
        coeffs = coeffs[k:]

    if len(coeffs) >= 3:
        divs0 = _small_divisors(abs(coeffs[0]), 16)
        divs1 = _small_divisors(abs(coeffs[-1]), 16)
        if divs0 is not None and divs1 is not None and len(divs0) * len(divs1) <= 64:
            for pnum in divs0:
                for pden in divs1:
                    for r in (Fraction(pnum, pden), Fraction(-pnum, pden)):
                        if len(coeffs) >= 3 and _eval_frac(coeffs, r) == 0:
                            col.rationals.append(r)
                            coeffs = _deflate(coeffs, r)

    if len(coeffs) == 2:
        col.rationals.append(Fraction(-coeffs[0], coeffs[1]))
        coeffs = [coeffs[1]]

    if len(coeffs) >= 3:
        an = abs(coeffs[-1])
        top = max(abs(c) for c in coeffs[:-1])
        bound = 1
        while bound * an <= top + an:
            bound <<= 1
        pos = [c * bound ** i for i, c in enumerate(coeffs)]
        _roots_in_01(pos, Fraction(0), Fraction(bound), col, mirror=False)
        negp = [(-c if i % 2 else c) for i, c in enumerate(coeffs)]
        negs = [c * bound ** i for i, c in enumerate(negp)]
        _roots_in_01(negs, Fraction(0), Fraction(bound), col, mirror=True)
        # deflate midpoint hits discovered during the sweeps
        for r in col.rationals:
            if _eval_frac(coeffs, r) == 0:
                coeffs = _deflate(coeffs, r)

    defining = Polynomial.from_univariate(var, coeffs)
    roots = [RealAlgebraicNumber.from_rational(r, var) for r in col.rationals]
    roots += [RealAlgebraicNumber(defining, lo, hi) for lo, hi in col.intervals]
    separate(roots)
    roots.sort(key=lambda r: r.lo)
    return roots


def separate(roots: list[RealAlgebraicNumber]) -> None:
    """Refine intervals of distinct roots until pairwise disjoint."""
    if len(roots) < 2:
        return
    done = False
    while not done:
        done = True
        roots.sort(key=lambda r: r.lo)
        for a, b in zip(roots, roots[1:]):
            guard = 0
            while not (a.hi <= b.lo or b.hi <= a.lo):
                a.tighten()
                b.tighten()
                done = False
                guard += 1
                if guard > 10000:  # pragma: no cover - distinct roots separate
                    raise RuntimeError("failed to separate root intervals")
