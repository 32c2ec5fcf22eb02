"""Independent oracles used only by the test suite.

Deliberately separate implementations from the library code paths they check:
dense Sylvester determinants for resultants, Sturm sequences for root counts,
eigenvalue checks for PSD conditions, and brute-force formula evaluation.
"""
from __future__ import annotations

import random
from fractions import Fraction

from econprove.algebra.poly import Polynomial, divexact


# -- Sylvester matrix resultant (fraction-free Bareiss on polynomial entries) --

def sylvester_resultant(p: Polynomial, q: Polynomial, var: str) -> Polynomial:
    m, n = p.degree(var), q.degree(var)
    assert m > 0 and n > 0
    pc = [p.coeff_of(var, k) for k in range(m, -1, -1)]
    qc = [q.coeff_of(var, k) for k in range(n, -1, -1)]
    size = m + n
    rows: list[list[Polynomial]] = []
    for i in range(n):
        row = [Polynomial.constant(0)] * size
        for j, c in enumerate(pc):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [Polynomial.constant(0)] * size
        for j, c in enumerate(qc):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def _bareiss_det(a: list[list[Polynomial]]) -> Polynomial:
    n = len(a)
    sign = 1
    prev = Polynomial.constant(1)
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Polynomial.constant(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = divexact(num, prev)
            a[i][k] = Polynomial.constant(0)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


# -- Sturm sequences ---------------------------------------------------------

def sturm_sequence(coeffs: list[Fraction]) -> list[list[Fraction]]:
    def deriv(c):
        return [c[i] * i for i in range(1, len(c))]

    def rem(a, b):
        a = a[:]
        while len(a) >= len(b) and any(a):
            while a and a[-1] == 0:
                a.pop()
            if len(a) < len(b):
                break
            f = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= f * c
            while a and a[-1] == 0:
                a.pop()
        return a

    seq = [coeffs[:], deriv(coeffs)]
    while seq[-1] and any(seq[-1]):
        r = rem(seq[-2], seq[-1])
        if not r or not any(r):
            break
        seq.append([-c for c in r])
    return seq


def _sign_at_inf(coeffs: list[Fraction], positive: bool) -> int:
    c = coeffs[-1]
    if c == 0:
        return 0
    if positive:
        return 1 if c > 0 else -1
    s = 1 if c > 0 else -1
    return s if (len(coeffs) - 1) % 2 == 0 else -s


def sturm_count_all_roots(coeffs: list[Fraction]) -> int:
    """Number of distinct real roots over (-inf, +inf) by Sturm's theorem."""
    coeffs = coeffs[:]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return 0
    seq = sturm_sequence(coeffs)

    def variations(positive: bool) -> int:
        signs = [_sign_at_inf(c, positive) for c in seq if c and any(c)]
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(False) - variations(True)


# -- brute-force formula evaluation and random rational points ---------------

def random_fraction(rng: random.Random, span: int = 6) -> Fraction:
    num = rng.randint(-4 * span, 4 * span)
    den = rng.choice([1, 1, 2, 3, 4])
    return Fraction(num, den)


def eval_poly(p: Polynomial, point: dict[str, Fraction]) -> Fraction:
    return p.evaluate(point)
