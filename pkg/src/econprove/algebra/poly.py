"""Multivariate polynomials over the rationals with exact arithmetic.

Coefficients are ``fractions.Fraction``; there is no floating point anywhere.
A polynomial stores a sorted tuple of variable names and a map from exponent
vectors to nonzero coefficients.  Variables are trimmed to the support, so two
structurally equal polynomials compare and hash equal, and the graded
lexicographic order gives every polynomial one canonical leading term.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]


def _as_fraction(c: Coeff) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Immutable multivariate polynomial in canonical graded-lex form."""

    __slots__ = ("vars", "terms", "_hash")

    vars: tuple[str, ...]
    terms: dict[tuple[int, ...], Fraction]

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple[int, ...], Coeff]):
        vs = tuple(vars)
        # Drop zero coefficients, then trim variables without support.
        cleaned = {tuple(e): _as_fraction(c) for e, c in terms.items() if c}
        if cleaned:
            used = [i for i in range(len(vs)) if any(e[i] for e in cleaned)]
        else:
            used = []
        if len(used) != len(vs):
            vs2 = tuple(vs[i] for i in used)
            cleaned = {tuple(e[i] for i in used): c for e, c in cleaned.items()}
            vs = vs2
        if vs != tuple(sorted(vs)):
            order = sorted(range(len(vs)), key=lambda i: vs[i])
            vs = tuple(vs[i] for i in order)
            cleaned = {tuple(e[i] for i in order): c for e, c in cleaned.items()}
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(c: Coeff) -> Polynomial:
        c = _as_fraction(c)
        return Polynomial((), {(): c} if c else {})

    @staticmethod
    def variable(name: str) -> Polynomial:
        return Polynomial((name,), {(1,): Fraction(1)})

    @staticmethod
    def from_univariate(var: str, coeffs: Iterable[Coeff]) -> Polynomial:
        """Build from an ascending coefficient list c0 + c1*x + ..."""
        return Polynomial((var,), {(i,): _as_fraction(c) for i, c in enumerate(coeffs) if c})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise ValueError("not a constant polynomial")
        return self.terms.get((), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial, 0 if absent."""
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    @staticmethod
    def _grlex_key(e: tuple[int, ...]) -> tuple:
        return (sum(e), e)

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=Polynomial._grlex_key)
        return e, self.terms[e]

    def leading_sign(self) -> int:
        if not self.terms:
            return 0
        _, c = self.leading_term()
        return 1 if c > 0 else -1

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _aligned(a: Polynomial, b: Polynomial):
        if a.vars == b.vars:
            return a.vars, a.terms, b.terms
        vs = tuple(sorted(set(a.vars) | set(b.vars)))
        return vs, _reindex(a, vs), _reindex(b, vs)

    def __add__(self, other) -> Polynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        vs, ta, tb = Polynomial._aligned(self, other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(vs, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return _coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial.constant(0)
        vs, ta, tb = Polynomial._aligned(self, other)
        out: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Coeff) -> Polynomial:
        c = _as_fraction(c)
        if not c:
            return Polynomial.constant(0)
        return Polynomial(self.vars, {e: k * c for e, k in self.terms.items()})

    # -- structure -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def coeff_of(self, var: str, k: int) -> Polynomial:
        """Coefficient of var**k, a polynomial in the remaining variables."""
        if var not in self.vars:
            return self if k == 0 else Polynomial.constant(0)
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + e[i + 1:]] = c
        return Polynomial(rest, out)

    def as_univariate(self, var: str) -> list[Polynomial]:
        """Ascending coefficients of self viewed as univariate in var."""
        d = self.degree(var)
        if d < 0:
            return []
        return [self.coeff_of(var, k) for k in range(d + 1)]

    def univariate_coeffs(self) -> list[Fraction]:
        """Ascending Fraction coefficients; requires at most one variable."""
        if len(self.vars) > 1:
            raise ValueError("polynomial is not univariate")
        if not self.vars:
            c = self.constant_value()
            return [c] if c else []
        d = self.degree(self.vars[0])
        out = [Fraction(0)] * (d + 1)
        for e, c in self.terms.items():
            out[e[0]] = c
        return out

    def leading_coeff(self, var: str) -> Polynomial:
        d = self.degree(var)
        if d < 0:
            return Polynomial.constant(0)
        return self.coeff_of(var, d)

    def derivative(self, var: str) -> Polynomial:
        if var not in self.vars:
            return Polynomial.constant(0)
        i = self.vars.index(var)
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[e2] = out.get(e2, Fraction(0)) + c * e[i]
        return Polynomial(self.vars, out)

    def substitute(self, mapping: Mapping[str, Union[Polynomial, Coeff]]) -> Polynomial:
        """Replace variables by polynomials or rationals (simultaneous)."""
        if not any(v in mapping for v in self.vars):
            return self
        values = {}
        for v in self.vars:
            if v in mapping:
                m = mapping[v]
                values[v] = m if isinstance(m, Polynomial) else Polynomial.constant(m)
            else:
                values[v] = Polynomial.variable(v)
        result = Polynomial.constant(0)
        pow_cache: dict[tuple[str, int], Polynomial] = {}
        for e, c in self.terms.items():
            term = Polynomial.constant(c)
            for v, k in zip(self.vars, e):
                if k:
                    p = pow_cache.get((v, k))
                    if p is None:
                        p = values[v] ** k
                        pow_cache[(v, k)] = p
                    term = term * p
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Coeff]) -> Fraction:
        """Exact value at a full rational assignment."""
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ValueError(f"assignment missing variables: {missing}")
        total = Fraction(0)
        vals = [_as_fraction(point[v]) for v in self.vars]
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def rename(self, mapping: Mapping[str, str]) -> Polynomial:
        vs = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(vs)) != len(vs):
            raise ValueError("variable rename collision")
        return Polynomial(vs, self.terms)

    def integer_primitive(self) -> tuple[Fraction, Polynomial]:
        """Write self = content * primitive with coprime integer coefficients.

        The primitive part has a positive graded-lex leading coefficient; the
        content carries the sign.  Zero maps to (0, 0).
        """
        if not self.terms:
            return Fraction(0), self
        num = 0
        den = 1
        for c in self.terms.values():
            num = _igcd(num, abs(c.numerator))
            den = den * c.denominator // _igcd(den, c.denominator)
        content = Fraction(num, den)
        prim = self.scale(1 / content)
        if prim.leading_sign() < 0:
            prim = -prim
            content = -content
        return content, prim

    def primitive(self) -> Polynomial:
        return self.integer_primitive()[1]

    # -- printing --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=Polynomial._grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            if not factors:
                body = _fmt_coeff(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_fmt_coeff(abs(c))] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(x)
    return NotImplemented


def _reindex(p: Polynomial, vs: tuple[str, ...]) -> dict[tuple[int, ...], Fraction]:
    pos = [vs.index(v) for v in p.vars]
    out = {}
    zero = [0] * len(vs)
    for e, c in p.terms.items():
        row = zero[:]
        for i, k in zip(pos, e):
            row[i] = k
        out[tuple(row)] = c
    return out


# -- exact division and gcd ---------------------------------------------


def divexact(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact multivariate quotient p/q; ValueError if q does not divide p."""
    if q.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if q.is_constant:
        return p.scale(1 / q.constant_value())
    if p.is_zero:
        return p
    vs = tuple(sorted(set(p.vars) | set(q.vars)))
    rem = dict(_reindex(p, vs))
    qterms = _reindex(q, vs)
    eq = max(qterms, key=Polynomial._grlex_key)
    cq = qterms[eq]
    quot: dict[tuple[int, ...], Fraction] = {}
    while rem:
        er = max(rem, key=Polynomial._grlex_key)
        cr = rem[er]
        diff = tuple(a - b for a, b in zip(er, eq))
        if any(d < 0 for d in diff):
            raise ValueError("not divisible")
        c = cr / cq
        quot[diff] = c
        for e2, c2 in qterms.items():
            e = tuple(a + b for a, b in zip(diff, e2))
            s = rem.get(e, Fraction(0)) - c * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return Polynomial(vs, quot)


def content_wrt(p: Polynomial, var: str) -> Polynomial:
    """Polynomial content of p w.r.t. var: gcd of its var-coefficients."""
    coeffs = [c for c in p.as_univariate(var) if not c.is_zero]
    if not coeffs:
        return Polynomial.constant(0)
    g = coeffs[0].primitive()
    for c in coeffs[1:]:
        if g.is_constant:
            break
        g = poly_gcd(g, c)
    if g.is_constant:
        return Polynomial.constant(1)
    return g


def primitive_wrt(p: Polynomial, var: str) -> tuple[Polynomial, Polynomial]:
    """(content, primitive part) of p w.r.t. var."""
    cont = content_wrt(p, var)
    if cont.is_zero or cont.is_constant:
        return Polynomial.constant(1), p
    return cont, divexact(p, cont)


def _prem(p: Polynomial, q: Polynomial, var: str) -> tuple[Polynomial, int]:
    """Raw pseudo-remainder: returns (R, s) with lc(q)^s * p = Q*q + R."""
    dq = q.degree(var)
    lq = q.leading_coeff(var)
    x = Polynomial.variable(var)
    rem = p
    steps = 0
    while not rem.is_zero and rem.degree(var) >= dq:
        dr = rem.degree(var)
        lr = rem.leading_coeff(var)
        rem = rem * lq - q * lr * x ** (dr - dq)
        steps += 1
    return rem, steps


def pseudo_rem(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Pseudo-remainder with the full lc(q)^(deg p - deg q + 1) normalization."""
    dp, dq = p.degree(var), q.degree(var)
    if dq < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    if dp < dq:
        return p
    rem, steps = _prem(p, q, var)
    want = dp - dq + 1
    if steps < want:
        rem = rem * q.leading_coeff(var) ** (want - steps)
    return rem


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Primitive multivariate gcd with positive leading coefficient."""
    if p.is_zero:
        return q.primitive() if not q.is_zero else Polynomial.constant(0)
    if q.is_zero:
        return p.primitive()
    if p.is_constant or q.is_constant:
        return Polynomial.constant(1)
    common = set(p.vars) & set(q.vars)
    if not common:
        return Polynomial.constant(1)
    var = sorted(common)[-1]
    if p.degree(var) == 0:
        return poly_gcd(p, content_wrt(q, var))
    if q.degree(var) == 0:
        return poly_gcd(content_wrt(p, var), q)
    cp, pp = primitive_wrt(p, var)
    cq, qq = primitive_wrt(q, var)
    cont = poly_gcd(cp, cq)
    a, b = (pp, qq) if pp.degree(var) >= qq.degree(var) else (qq, pp)
    while True:
        if b.is_zero:
            g = a
            break
        if b.degree(var) == 0:
            g = Polynomial.constant(1)
            break
        r = pseudo_rem(a, b, var)
        if not r.is_zero:
            _, r = primitive_wrt(r, var)
            _, r = r.integer_primitive()
        a, b = b, r
    _, g = primitive_wrt(g, var)
    g = g.primitive()
    if cont.is_constant:
        return g
    return (cont * g).primitive()


def square_free_part(p: Polynomial, var: str) -> Polynomial:
    """p / gcd(p, dp/dvar): same roots in var, all simple."""
    if p.degree(var) <= 0:
        return p
    g = poly_gcd(p, p.derivative(var))
    if g.is_constant:
        return p
    return divexact(p, g).primitive()


def square_free_factors(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun decomposition of a univariate polynomial.

    Returns [(factor, multiplicity)] with pairwise-coprime square-free
    primitive factors whose weighted product is p up to a rational constant.
    Constants give []; the zero polynomial is rejected.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if len(p.vars) > 1:
        raise ValueError("square_free_factors expects a univariate polynomial")
    if p.is_constant:
        return []
    var = p.vars[0]
    _, p = p.integer_primitive()
    dp = p.derivative(var)
    g = poly_gcd(p, dp)
    out: list[tuple[Polynomial, int]] = []
    if g.is_constant:
        return [(p, 1)]
    b = divexact(p, g)
    c = divexact(dp, g)
    i = 1
    while b.degree(var) > 0:
        d = c - b.derivative(var)
        a = poly_gcd(b, d)
        if not a.is_constant:
            out.append((a.primitive(), i))
            b = divexact(b, a)
            c = divexact(d, a)
        else:
            c = d
        i += 1
    return out


# -- resultants and subresultants -----------------------------------------


def resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    """Resultant w.r.t. var, convention res(p,q) = Sylvester det, p rows first.

    Equivalently lc(p)^deg(q) * prod q(alpha) over the roots alpha of p.
    Both inputs must have positive degree in var.
    """
    m, n = p.degree(var), q.degree(var)
    if m <= 0 or n <= 0:
        raise ValueError("resultant requires positive degree in the variable")
    sign = 1
    num: list[tuple[Polynomial, int]] = []
    den: list[tuple[Polynomial, int]] = []
    scalar = Fraction(1)
    a, b = p, q
    if m < n:
        if (m * n) % 2 == 1:
            sign = -sign
        a, b = b, a
    while True:
        m, n = a.degree(var), b.degree(var)
        r, steps = _prem(a, b, var)
        if steps < m - n + 1:
            r = r * b.leading_coeff(var) ** (m - n + 1 - steps)
        if r.is_zero:
            return Polynomial.constant(0)
        # res(a,b) = (-1)^(mn) lc(b)^(m - k - n(m-n+1)) res(b, r), k = deg r
        k = r.degree(var)
        if (m * n) % 2 == 1:
            sign = -sign
        e = m - k - n * (m - n + 1)
        lb = b.leading_coeff(var)
        if e > 0:
            num.append((lb, e))
        elif e < 0:
            den.append((lb, -e))
        if k > 0:
            cont, r2 = r.integer_primitive()
            scalar *= cont ** n  # res(b, c*r2) = c^deg(b) res(b, r2)
            a, b = b, r2
            continue
        base = r ** n
        break
    result = base.scale(scalar * sign)
    for f, e in num:
        result = result * f ** e
    for f, e in den:
        result = divexact(result, f ** e)
    return result


def discriminant(p: Polynomial, var: str) -> Polynomial:
    """disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p); requires deg >= 2."""
    n = p.degree(var)
    if n < 2:
        raise ValueError("discriminant requires degree >= 2")
    res = resultant(p, p.derivative(var), var)
    res = divexact(res, p.leading_coeff(var))
    if (n * (n - 1) // 2) % 2 == 1:
        res = -res
    return res


def subresultants(p: Polynomial, q: Polynomial, var: str) -> list[Polynomial]:
    """Fraction-free subresultant PRS (Brown's recurrence), p and q included.

    Intermediate contents are NOT stripped, so the classic exact divisions
    apply.  Used for principal subresultant coefficients in CAD projection,
    where results only matter up to constant factors.
    """
    if p.degree(var) < q.degree(var):
        p, q = q, p
    prs = [p, q]
    a, b = p, q
    g = Polynomial.constant(1)
    h = Polynomial.constant(1)
    first = True
    while True:
        d = a.degree(var) - b.degree(var)
        r = pseudo_rem(a, b, var)
        if r.is_zero:
            return prs
        if first:
            first = False
        else:
            r = divexact(r, g * h ** d)
        prs.append(r)
        g = b.leading_coeff(var)
        if d > 1:
            h = divexact(g ** d, h ** (d - 1))
        elif d == 1:
            h = g
        # d == 0 leaves h unchanged
        a, b = b, r
        if b.degree(var) == 0:
            return prs


def principal_subres_coeffs(p: Polynomial, q: Polynomial, var: str) -> list[Polynomial]:
    """Principal subresultant coefficients psc_j(p, q), j = 0..min(deg)-1.

    Correct up to nonzero constant factors (sufficient for sign-invariant
    projection); identically-zero entries are reported as zero.
    """
    dp, dq = p.degree(var), q.degree(var)
    if dp < dq:
        p, q, dp, dq = q, p, dq, dp
    if dq <= 0:
        return []
    prs = subresultants(p, q, var)
    n = dq
    coeffs = [Polynomial.constant(0)] * n
    for i in range(2, len(prs)):
        r = prs[i]
        dr = r.degree(var)
        d_prev = prs[i - 1].degree(var)
        if d_prev - 1 < n:
            coeffs[d_prev - 1] = r.coeff_of(var, d_prev - 1)
        if dr < d_prev - 1 and dr < n:
            coeffs[dr] = r.leading_coeff(var) ** (d_prev - dr)
    # psc_(dq) slot is lc(q) itself conceptually but lives outside the list.
    if len(prs) >= 2 and dq - 1 < n and len(prs) == 2:
        pass
    return coeffs
