"""One-variable solution sets: finite unions of intervals with exact endpoints.

The output language of one-free-variable QE.  Endpoints are rationals or real
algebraic numbers; algebraic endpoints render as root(p, k) (k-th real root of
p in increasing order) with decimal annotations supplied separately.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from econprove.algebra import (
    Polynomial,
    RealAlgebraicNumber,
    compare_algebraic,
    isolate_real_roots,
    simplest_rational_between,
)
from econprove import formula as F

Value = Union[Fraction, RealAlgebraicNumber]


def cmp_value(a: Value, b: Value) -> int:
    if isinstance(a, RealAlgebraicNumber):
        if isinstance(b, RealAlgebraicNumber):
            return compare_algebraic(a, b)
        return a.compare_rational(b)
    if isinstance(b, RealAlgebraicNumber):
        return -b.compare_rational(a)
    return 0 if a == b else (1 if a > b else -1)


def value_rational(v: Value) -> Optional[Fraction]:
    if isinstance(v, RealAlgebraicNumber):
        return v.as_rational()
    return Fraction(v)


@dataclass(frozen=True)
class Piece:
    """One interval; lo=None means -inf, hi=None means +inf (open there)."""

    lo: Optional[Value]
    hi: Optional[Value]
    lo_closed: bool
    hi_closed: bool

    def is_point(self) -> bool:
        return (self.lo is not None and self.hi is not None
                and self.lo_closed and self.hi_closed
                and cmp_value(self.lo, self.hi) == 0)


class SolutionSet:
    """Normalized disjoint union of intervals over one variable."""

    __slots__ = ("var", "pieces")

    def __init__(self, var: str, pieces: list[Piece]):
        self.var = var
        self.pieces = tuple(_normalize(pieces))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty(var: str) -> "SolutionSet":
        return SolutionSet(var, [])

    @staticmethod
    def all(var: str) -> "SolutionSet":
        return SolutionSet(var, [Piece(None, None, False, False)])

    @staticmethod
    def from_stack(var: str, boundaries: list[RealAlgebraicNumber],
                   truths: list[bool]) -> "SolutionSet":
        """From a level-1 CAD stack: truths alternate sector/section/sector...

        len(truths) == 2*len(boundaries) + 1.
        """
        assert len(truths) == 2 * len(boundaries) + 1
        pieces: list[Piece] = []
        run_start: Optional[Value] = None
        run_start_closed = False
        started = False

        def boundary_value(i: int) -> Value:
            b = boundaries[i]
            r = b.as_rational()
            return r if r is not None else b

        for idx, t in enumerate(truths):
            is_section = idx % 2 == 1
            bidx = idx // 2
            if t and not started:
                started = True
                if is_section:
                    run_start = boundary_value(bidx)
                    run_start_closed = True
                elif idx == 0:
                    run_start = None
                    run_start_closed = False
                else:
                    run_start = boundary_value(bidx - 1)
                    run_start_closed = False
            elif started and not t:
                if is_section:
                    end = boundary_value(bidx)
                    pieces.append(Piece(run_start, end, run_start_closed, False))
                else:
                    end = boundary_value(bidx - 1)
                    pieces.append(Piece(run_start, end, run_start_closed, True))
                started = False
        if started:
            pieces.append(Piece(run_start, None, run_start_closed, False))
        return SolutionSet(var, pieces)

    # -- queries -------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def is_all(self) -> bool:
        return (len(self.pieces) == 1 and self.pieces[0].lo is None
                and self.pieces[0].hi is None)

    def contains(self, r: Fraction) -> bool:
        for p in self.pieces:
            lo_ok = (p.lo is None or cmp_value(p.lo, r) < 0
                     or (p.lo_closed and cmp_value(p.lo, r) == 0))
            hi_ok = (p.hi is None or cmp_value(p.hi, r) > 0
                     or (p.hi_closed and cmp_value(p.hi, r) == 0))
            if lo_ok and hi_ok:
                return True
        return False

    # -- set algebra -----------------------------------------------------------

    def complement(self) -> "SolutionSet":
        out: list[Piece] = []
        prev: Optional[Value] = None
        prev_closed = False  # True if prev endpoint belongs to the previous piece
        for p in self.pieces:
            if p.lo is None:
                prev, prev_closed = p.hi, p.hi_closed
                continue
            out.append(Piece(prev, p.lo, prev is not None and not prev_closed,
                             not p.lo_closed))
            prev, prev_closed = p.hi, p.hi_closed
        if not self.pieces:
            return SolutionSet.all(self.var)
        last = self.pieces[-1]
        if last.hi is not None:
            out.append(Piece(last.hi, None, not last.hi_closed, False))
        return SolutionSet(self.var, out)

    def intersect(self, other: "SolutionSet") -> "SolutionSet":
        out: list[Piece] = []
        for a in self.pieces:
            for b in other.pieces:
                lo, lo_closed = _max_lo(a, b)
                hi, hi_closed = _min_hi(a, b)
                if _nonempty(lo, hi, lo_closed, hi_closed):
                    out.append(Piece(lo, hi, lo_closed, hi_closed))
        return SolutionSet(self.var, out)

    def union(self, other: "SolutionSet") -> "SolutionSet":
        return SolutionSet(self.var, list(self.pieces) + list(other.pieces))

    def minus(self, other: "SolutionSet") -> "SolutionSet":
        return self.intersect(other.complement())

    def equals(self, other: "SolutionSet") -> bool:
        if len(self.pieces) != len(other.pieces):
            return False
        for a, b in zip(self.pieces, other.pieces):
            for ea, eb, ca, cb in ((a.lo, b.lo, a.lo_closed, b.lo_closed),
                                   (a.hi, b.hi, a.hi_closed, b.hi_closed)):
                if (ea is None) != (eb is None):
                    return False
                if ea is not None and cmp_value(ea, eb) != 0:
                    return False
                if ca != cb:
                    return False
        return True

    def implies(self, other: "SolutionSet") -> bool:
        return self.minus(other).is_empty

    # -- samples ---------------------------------------------------------------

    def sample_rationals(self) -> list[Fraction]:
        """A rational from the interior of each piece (if one exists) plus
        rational endpoints."""
        out: list[Fraction] = []
        for p in self.pieces:
            for e in (p.lo, p.hi):
                if e is not None:
                    r = value_rational(e)
                    if r is not None and self.contains(r):
                        out.append(r)
            r = _interior_rational(p)
            if r is not None:
                out.append(r)
        return out

    # -- conversion to Tarski formulas -------------------------------------------

    def to_formula(self) -> tuple[F.Formula, list[tuple[str, Polynomial, Fraction, Fraction]]]:
        """(formula over self.var [+ aux vars], aux definitions).

        Rational endpoints become plain atoms.  Each distinct algebraic
        endpoint introduces an auxiliary variable with its defining polynomial
        and rational isolation bounds; callers conjoin those definitions under
        the appropriate quantifier.
        """
        var = self.var
        x = Polynomial.variable(var)
        aux: list[tuple[str, Polynomial, Fraction, Fraction]] = []
        aux_values: list[RealAlgebraicNumber] = []

        def endpoint_poly(v: Value) -> Polynomial:
            r = value_rational(v)
            if r is not None:
                return Polynomial.constant(r)
            assert isinstance(v, RealAlgebraicNumber)
            for i, known in enumerate(aux_values):
                if compare_algebraic(known, v) == 0:
                    return Polynomial.variable(aux[i][0])
            name = f"{var}_r{len(aux) + 1}"
            aux.append((name, v.defining_in(name), v.lo, v.hi))
            aux_values.append(v)
            return Polynomial.variable(name)

        parts: list[F.Formula] = []
        for p in self.pieces:
            conjs: list[F.Formula] = []
            if p.is_point():
                parts.append(F.normalize_atom(x, "==", endpoint_poly(p.lo)))
                continue
            if p.lo is not None:
                rel = ">=" if p.lo_closed else ">"
                conjs.append(F.normalize_atom(x, rel, endpoint_poly(p.lo)))
            if p.hi is not None:
                rel = "<=" if p.hi_closed else "<"
                conjs.append(F.normalize_atom(x, rel, endpoint_poly(p.hi)))
            parts.append(F.conj(conjs))
        return F.disj(parts), aux

    # -- rendering ----------------------------------------------------------------

    def render(self, name: Optional[str] = None) -> str:
        """Surface-syntax string, e.g. "-1 < t && t < 0" or "s >= 0"."""
        name = name or self.var
        if self.is_empty:
            return "false"
        if self.is_all:
            return "true"
        chunks = []
        for p in self.pieces:
            chunks.append(_render_piece(p, name))
        if len(chunks) == 1:
            return chunks[0]
        return " || ".join(f"({c})" if " && " in c else c for c in chunks)

    def annotations(self) -> dict[str, str]:
        """Decimal annotations for algebraic endpoints, keyed by root(...) text."""
        out: dict[str, str] = {}
        for p in self.pieces:
            for e in (p.lo, p.hi):
                if isinstance(e, RealAlgebraicNumber) and e.as_rational() is None:
                    out[_root_expr(e, self.var)] = e.decimal(6)
        return out

    def __repr__(self) -> str:
        return f"SolutionSet({self.render()})"


def _normalize(pieces: list[Piece]) -> list[Piece]:
    """Sort, drop empties, merge overlapping/adjacent pieces."""
    good = [p for p in pieces if _nonempty(p.lo, p.hi, p.lo_closed, p.hi_closed)]

    def key(p: Piece):
        if p.lo is None:
            return (0, Fraction(0))
        r = value_rational(p.lo)
        if r is not None:
            return (1, r)
        return (1, (p.lo.lo + p.lo.hi) / 2)

    good.sort(key=key)
    out: list[Piece] = []
    for p in good:
        if not out:
            out.append(p)
            continue
        last = out[-1]
        if _touches(last, p):
            out[-1] = _merge(last, p)
        else:
            out.append(p)
    return out


def _nonempty(lo, hi, lo_closed, hi_closed) -> bool:
    if lo is None or hi is None:
        return True
    c = cmp_value(lo, hi)
    if c > 0:
        return False
    if c == 0:
        return lo_closed and hi_closed
    return True


def _touches(a: Piece, b: Piece) -> bool:
    # b starts after a (sorted); they touch if b.lo <= a.hi (with closures)
    if a.hi is None:
        return True
    if b.lo is None:
        return True
    c = cmp_value(b.lo, a.hi)
    if c < 0:
        return True
    if c == 0:
        return a.hi_closed or b.lo_closed
    return False


def _merge(a: Piece, b: Piece) -> Piece:
    if a.hi is None:
        hi, hic = None, False
    elif b.hi is None:
        hi, hic = None, False
    else:
        c = cmp_value(a.hi, b.hi)
        if c > 0:
            hi, hic = a.hi, a.hi_closed
        elif c < 0:
            hi, hic = b.hi, b.hi_closed
        else:
            hi, hic = a.hi, a.hi_closed or b.hi_closed
    return Piece(a.lo, hi, a.lo_closed, hic)


def _max_lo(a: Piece, b: Piece):
    if a.lo is None:
        return b.lo, b.lo_closed
    if b.lo is None:
        return a.lo, a.lo_closed
    c = cmp_value(a.lo, b.lo)
    if c > 0:
        return a.lo, a.lo_closed
    if c < 0:
        return b.lo, b.lo_closed
    return a.lo, a.lo_closed and b.lo_closed


def _min_hi(a: Piece, b: Piece):
    if a.hi is None:
        return b.hi, b.hi_closed
    if b.hi is None:
        return a.hi, a.hi_closed
    c = cmp_value(a.hi, b.hi)
    if c < 0:
        return a.hi, a.hi_closed
    if c > 0:
        return b.hi, b.hi_closed
    return a.hi, a.hi_closed and b.hi_closed


def _interior_rational(p: Piece) -> Optional[Fraction]:
    if p.lo is None and p.hi is None:
        return Fraction(0)
    if p.lo is None:
        assert p.hi is not None
        hi = p.hi
        bound = hi if isinstance(hi, Fraction) else hi.lo
        return Fraction(int(bound // 1) - 1)
    if p.hi is None:
        lo = p.lo
        bound = lo if isinstance(lo, Fraction) else lo.hi
        return Fraction(int(bound // 1) + 2)
    if p.is_point():
        return value_rational(p.lo)
    lo, hi = p.lo, p.hi
    if isinstance(lo, RealAlgebraicNumber) or isinstance(hi, RealAlgebraicNumber):
        for _ in range(200):
            lo_b = lo if isinstance(lo, Fraction) else lo.hi
            hi_b = hi if isinstance(hi, Fraction) else hi.lo
            if lo_b < hi_b:
                return simplest_rational_between(lo_b, hi_b)
            if isinstance(lo, RealAlgebraicNumber):
                lo.tighten()
            if isinstance(hi, RealAlgebraicNumber):
                hi.tighten()
        return None
    return simplest_rational_between(lo, hi) if lo < hi else None


def _fmt_value(v: Value, var: str) -> str:
    r = value_rational(v)
    if r is not None:
        if r.denominator == 1:
            return str(r.numerator)
        return f"{r.numerator}/{r.denominator}"
    assert isinstance(v, RealAlgebraicNumber)
    return _root_expr(v, var)


def _root_expr(v: RealAlgebraicNumber, var: str) -> str:
    roots = isolate_real_roots(v.defining_in(var))
    k = 1
    for i, r in enumerate(roots):
        if compare_algebraic(r, v) == 0:
            k = i + 1
            break
    return f"root({v.defining_in(var)}, {k})"


def _render_piece(p: Piece, name: str) -> str:
    if p.is_point():
        return f"{name} == {_fmt_value(p.lo, name)}"
    parts = []
    if p.lo is not None and p.hi is not None:
        lo_rel = "<=" if p.lo_closed else "<"
        hi_rel = "<=" if p.hi_closed else "<"
        return f"{_fmt_value(p.lo, name)} {lo_rel} {name} && {name} {hi_rel} {_fmt_value(p.hi, name)}"
    if p.lo is not None:
        rel = ">=" if p.lo_closed else ">"
        parts.append(f"{name} {rel} {_fmt_value(p.lo, name)}")
    if p.hi is not None:
        rel = "<=" if p.hi_closed else "<"
        parts.append(f"{name} {rel} {_fmt_value(p.hi, name)}")
    return " && ".join(parts)
