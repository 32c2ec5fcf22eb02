"""Exact sign evaluation and root isolation over algebraic sample points.

The workhorses behind CAD lifting:

* ``sign_at(p, point)`` - exact sign of a polynomial at a mixed
  rational/algebraic assignment.  Interval refinement decides nonzero signs;
  zero is certified via a gcd test (one algebraic coordinate) or the
  z-resultant trick (several), never by "small enough".
* ``isolate_at_point(p, point, var)`` - real roots of p specialized at an
  algebraic point, as plain algebraic numbers over Q obtained from iterated
  resultants against each coordinate's defining polynomial.
* ``compare_algebraic(a, b)`` - exact order of two algebraic numbers.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Union

from econprove.algebra.poly import (
    Polynomial,
    divexact,
    poly_gcd,
    resultant,
    square_free_part,
)
from econprove.algebra.algnum import RealAlgebraicNumber, poly_box
from econprove.algebra import roots as _roots

PointValue = Union[int, Fraction, RealAlgebraicNumber]
Point = Mapping[str, PointValue]


class LiftingDegeneracyError(Exception):
    """Conjugate interference made an iterated resultant vanish at the sample.

    Repairing this corner needs number-field gcds; callers retry with another
    variable order instead, so no wrong answer can escape.
    """


def _split_point(p: Polynomial, point: Point):
    """(rational substitutions, remaining algebraic coords used by p)."""
    rationals: dict[str, Fraction] = {}
    algebraic: dict[str, RealAlgebraicNumber] = {}
    missing = []
    for v in p.vars:
        if v not in point:
            missing.append(v)
            continue
        val = point[v]
        if isinstance(val, RealAlgebraicNumber):
            r = val.as_rational()
            if r is not None:
                rationals[v] = r
            else:
                algebraic[v] = val
        else:
            rationals[v] = Fraction(val)
    if missing:
        raise ValueError(f"assignment missing variables: {missing}")
    return rationals, algebraic


def _sign_of_constant(c: Fraction) -> int:
    return 0 if c == 0 else (1 if c > 0 else -1)


def sign_at(p: Polynomial, point: Point) -> int:
    """Exact sign of p at a point of rationals and real algebraic numbers."""
    rationals, algebraic = _split_point(p, point)
    q = p.substitute(rationals) if rationals else p
    if not algebraic:
        return _sign_of_constant(q.constant_value())
    rans = {v: a for v, a in algebraic.items() if v in q.vars}
    if not rans:
        return _sign_of_constant(q.constant_value())

    for _ in range(3):
        box = {v: (a.lo, a.hi) for v, a in rans.items()}
        lo, hi = poly_box(q, box)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        for a in rans.values():
            a.tighten()
            a.tighten()

    if _is_zero_exact(q, rans):
        return 0
    while True:
        for a in rans.values():
            a.tighten()
        box = {v: (a.lo, a.hi) for v, a in rans.items()}
        lo, hi = poly_box(q, box)
        if lo > 0:
            return 1
        if hi < 0:
            return -1


def _is_zero_exact(q: Polynomial, rans: dict[str, RealAlgebraicNumber]) -> bool:
    if len(rans) == 1:
        (v, a), = rans.items()
        g = poly_gcd(q, a.defining_in(v))
        if g.is_constant:
            return False
        return _sign_changes_over(g, a)
    # z-trick: T(z) = res_{v1}(d1, ... res_{vk}(dk, z - q)); T(q(alpha)) = 0 and
    # T is never identically zero because z - q is monic in z.
    t = Polynomial.variable("z$") - q
    for v, a in rans.items():
        if t.degree(v) >= 1:
            t = resultant(a.defining_in(v), t, v)
    if t.coeff_of("z$", 0).constant_value() != 0:
        return False
    # 0 is a root of T; decide whether the value converges to it.
    candidates = _roots.isolate_real_roots(t.rename({"z$": "z"}))
    zero_iv: Optional[tuple[Fraction, Fraction]] = None
    for c in candidates:
        if c.compare_rational(0) == 0:
            zero_iv = (c.lo, c.hi)
            break
    if zero_iv is None:
        return False
    while True:
        box = {v: (a.lo, a.hi) for v, a in rans.items()}
        lo, hi = poly_box(q, box)
        if lo > 0 or hi < 0:
            return False
        if zero_iv[0] < lo and hi < zero_iv[1]:
            # the value is a root of T and the only root in zero_iv is 0
            return True
        for a in rans.values():
            a.tighten()


def isolate_at_point(p: Polynomial, point: Point, var: str
                     ) -> Optional[list[RealAlgebraicNumber]]:
    """Real roots of x -> p(point, x), or None if p vanishes identically there.

    All returned numbers are algebraic over Q (defining polynomials come from
    iterated resultants), sorted with disjoint isolating intervals.
    """
    rationals: dict[str, Fraction] = {}
    algebraic: dict[str, RealAlgebraicNumber] = {}
    for v in p.vars:
        if v == var:
            continue
        val = point.get(v)
        if val is None:
            raise ValueError(f"assignment missing variable {v}")
        if isinstance(val, RealAlgebraicNumber):
            r = val.as_rational()
            if r is not None:
                rationals[v] = r
            else:
                algebraic[v] = val
        else:
            rationals[v] = Fraction(val)
    q = p.substitute(rationals) if rationals else p
    rans = {v: a for v, a in algebraic.items() if v in q.vars}

    deg = q.degree(var)
    if deg <= 0:
        if q.is_zero:
            return None
        if not rans and q.is_constant:
            return None if q.constant_value() == 0 else []
        if not rans:
            return []
        s = sign_at(q, rans)
        return None if s == 0 else []

    coeff_signs = [sign_at(q.coeff_of(var, j), rans) if not q.coeff_of(var, j).is_zero
                   else 0 for j in range(deg + 1)]
    if all(s == 0 for s in coeff_signs):
        return None
    if max(j for j, s in enumerate(coeff_signs) if s != 0) == 0:
        return []

    if not rans:
        return _roots.isolate_real_roots(q)

    w = q
    remaining = dict(rans)
    for v, a in rans.items():
        if w.degree(v) < 1:
            remaining.pop(v, None)
            continue
        d = a.defining_in(v)
        while True:
            g = poly_gcd(d, w)
            if g.is_constant:
                break
            if _sign_changes_over(g, a):
                # g | w and g(alpha) = 0 would force the specialization to
                # vanish identically, contradicting the coefficient check.
                raise LiftingDegeneracyError("common factor vanishes at sample")
            d = divexact(d, g)
            if d.degree(v) < 1:
                raise LiftingDegeneracyError("defining polynomial exhausted")
        w = resultant(d, w, v)
        remaining.pop(v, None)
        live = {u: b for u, b in remaining.items() if u in w.vars}
        if not _specialization_nonzero(w, var, live):
            raise LiftingDegeneracyError("iterated resultant vanished at sample")

    candidates = _roots.isolate_real_roots(w)
    out = []
    for c in candidates:
        full_point = dict(rans)
        full_point[var] = c
        if sign_at(q, full_point) == 0:
            out.append(c)
    _roots.separate(out)
    out.sort(key=lambda r: r.lo)
    return out


def _specialization_nonzero(w: Polynomial, var: str,
                            rans: dict[str, RealAlgebraicNumber]) -> bool:
    """Does w(rans, var) stay a nonzero polynomial in var?"""
    for j in range(w.degree(var) + 1):
        c = w.coeff_of(var, j)
        if c.is_zero:
            continue
        if not rans:
            if not c.is_constant or c.constant_value() != 0:
                return True
            continue
        if sign_at(c, rans) != 0:
            return True
    return False


def _sign_changes_over(g: Polynomial, a: RealAlgebraicNumber) -> bool:
    """Does g (a divisor of a's defining polynomial) vanish at a?

    g's roots are roots of the defining polynomial, the isolating interval
    holds exactly one of those, and interval endpoints are never roots; so g
    vanishes at `a` iff g changes sign across the interval.
    """
    gv = g.vars[0] if g.vars else a.var
    slo = g.evaluate({gv: a.lo}) if g.vars else g.constant_value()
    shi = g.evaluate({gv: a.hi}) if g.vars else g.constant_value()
    if slo == 0 or shi == 0:
        # endpoint roots cannot belong to the defining polynomial; treat as
        # a vanishing certificate failure
        raise AssertionError("isolating interval endpoint is a root")
    return (slo > 0) != (shi > 0)


def compare_algebraic(a: RealAlgebraicNumber, b: RealAlgebraicNumber) -> int:
    """Exact sign of (a - b)."""
    ra, rb = a.as_rational(), b.as_rational()
    if ra is not None and rb is not None:
        return _sign_of_constant(ra - rb)
    if ra is not None:
        return -b.compare_rational(ra)
    if rb is not None:
        return a.compare_rational(rb)
    for _ in range(3):
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        a.tighten()
        b.tighten()
    t = "t$"
    g = poly_gcd(a.defining_in(t), b.defining_in(t))
    if not g.is_constant:
        for gamma in _roots.isolate_real_roots(g):
            if _root_inside(gamma, a) and _root_inside(gamma, b):
                return 0
    while True:
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        a.tighten()
        b.tighten()


def _root_inside(gamma: RealAlgebraicNumber, a: RealAlgebraicNumber) -> bool:
    """Is gamma (a root of a divisor of a's defining poly) equal to a?

    Equivalent to gamma lying strictly inside a's isolating interval.
    """
    return gamma.compare_rational(a.lo) > 0 and gamma.compare_rational(a.hi) < 0


def sort_unique(values: list[RealAlgebraicNumber]) -> list[list[RealAlgebraicNumber]]:
    """Group equal algebraic numbers and sort the groups in increasing order."""
    groups: list[list[RealAlgebraicNumber]] = []
    for v in values:
        for grp in groups:
            if compare_algebraic(v, grp[0]) == 0:
                grp.append(v)
                break
        else:
            groups.append([v])
    reps = [g[0] for g in groups]
    _roots.separate(reps)  # distinct values, so intervals eventually disjoint
    groups.sort(key=lambda g: g[0].lo)
    return groups
