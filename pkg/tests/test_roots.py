"""Root isolation vs Sturm oracle; algebraic number refinement and signs."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from econprove.algebra import (
    Polynomial,
    RealAlgebraicNumber,
    compare_algebraic,
    isolate_at_point,
    isolate_real_roots,
    sign_at,
    simplest_rational_between,
)
from oracles import sturm_count_all_roots

X = Polynomial.variable("x")
Y = Polynomial.variable("y")


def test_sqrt2_isolation():
    roots = isolate_real_roots(X ** 2 - 2)
    assert len(roots) == 2
    neg, pos = roots
    assert neg.hi <= pos.lo
    # the two roots are -sqrt2 and sqrt2: compare against rational probes
    assert pos.compare_rational(1) == 1 and pos.compare_rational(2) == -1
    assert neg.compare_rational(-2) == 1 and neg.compare_rational(-1) == -1


def test_no_real_roots():
    assert isolate_real_roots(X ** 2 + 1) == []


def test_rational_roots_exact():
    roots = isolate_real_roots(X * (X - 1) * (X + 1))
    assert [r.as_rational() for r in roots] == [-1, 0, 1]


def test_zero_poly_rejected():
    with pytest.raises(ValueError):
        isolate_real_roots(Polynomial.constant(0))


def test_isolation_handles_multiple_roots():
    p = (X - 1) ** 2 * (X + 2) ** 3
    roots = isolate_real_roots(p)
    assert [r.as_rational() for r in roots] == [-2, 1]


def test_intervals_disjoint_and_ordered():
    p = (X ** 2 - 2) * (X ** 2 - 3) * (X - 5)
    roots = isolate_real_roots(p)
    assert len(roots) == 5
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo


def _random_int_poly(rng: random.Random, deg: int) -> Polynomial:
    coeffs = [rng.randint(-9, 9) for _ in range(deg + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[-1] = 1
    while coeffs[-1] == 0:
        coeffs[-1] = rng.randint(-9, 9)
    return Polynomial.from_univariate("x", coeffs)


def test_root_counts_match_sturm_on_500_random_polys():
    rng = random.Random(42)
    for _ in range(500):
        deg = rng.randint(1, 6)
        p = _random_int_poly(rng, deg)
        roots = isolate_real_roots(p)
        expected = sturm_count_all_roots([Fraction(c) for c in p.univariate_coeffs()])
        assert len(roots) == expected, f"mismatch for {p}"
        for a, b in zip(roots, roots[1:]):
            assert a.hi <= b.lo


def test_refine_shrinks_and_preserves():
    root2 = isolate_real_roots(X ** 2 - 2)[1]
    fine = root2.refine(Fraction(1, 100))
    assert fine.hi - fine.lo <= Fraction(1, 100)
    assert fine.lo ** 2 < 2 < fine.hi ** 2 and fine.lo > 0
    finer = fine.refine(Fraction(1, 500))
    assert Fraction(141, 100) < finer.lo < finer.hi < Fraction(142, 100)
    assert fine.lo <= finer.lo and finer.hi <= fine.hi


def test_refine_rational_collapses():
    half = RealAlgebraicNumber.from_rational(Fraction(1, 2))
    r = half.refine(Fraction(1, 1000))
    assert r.lo < Fraction(1, 2) < r.hi
    assert r.hi - r.lo <= Fraction(1, 1000)


def test_eval_sign_at_algebraic():
    root2 = isolate_real_roots(X ** 2 - 2)[1]
    assert sign_at(X ** 2 - 2, {"x": root2}) == 0
    assert sign_at(X ** 2 - 2, {"x": Fraction(7, 5)}) == -1  # 49/25 < 2
    assert sign_at(X ** 2 - 2, {"x": Fraction(3, 2)}) == 1   # 9/4 > 2
    assert sign_at(X - Y, {"x": root2, "y": Fraction(1)}) == 1


def test_eval_sign_incomplete_rejected():
    with pytest.raises(ValueError):
        sign_at(X - Y, {"x": Fraction(1)})


def test_eval_sign_defining_zero_many():
    rng = random.Random(5)
    for _ in range(30):
        p = _random_int_poly(rng, rng.randint(2, 5))
        for r in isolate_real_roots(p):
            assert sign_at(p, {"x": r}) == 0


def test_refine_never_changes_sign():
    rng = random.Random(11)
    for _ in range(20):
        p = _random_int_poly(rng, 4)
        roots = isolate_real_roots(p)
        q = _random_int_poly(rng, 3)
        for r in roots:
            before = sign_at(q, {"x": r})
            r.refine(Fraction(1, 10 ** 6))
            after = sign_at(q, {"x": r})
            assert before == after


def test_compare_algebraic():
    r2, r3 = isolate_real_roots((X ** 2 - 2) * (X ** 2 - 3))[2:]
    assert compare_algebraic(r2, r3) == -1
    other_r2 = isolate_real_roots(X ** 2 - 2)[1]
    assert compare_algebraic(r2, other_r2) == 0
    # same value by way of different defining polynomials
    both = isolate_real_roots((X ** 2 - 2) * (X ** 4 - 4))
    assert len(both) == 2  # sqrt2 deduplicated, -sqrt2 too


def test_simplest_rational_between():
    assert simplest_rational_between(Fraction(-1), Fraction(1)) == 0
    assert simplest_rational_between(Fraction(1, 3), Fraction(1, 2)) == Fraction(1, 2)
    assert simplest_rational_between(Fraction(7, 5), Fraction(3, 2)) == Fraction(3, 2)
    assert simplest_rational_between(Fraction(41, 29), Fraction(42, 29)) == Fraction(10, 7)
    assert simplest_rational_between(Fraction(5, 2), Fraction(7, 2)) == 3


# -- lifting primitive: roots over algebraic sample points -------------------

def test_isolate_at_point_rational_sample():
    p = X ** 2 + Y ** 2 - 1
    roots = isolate_at_point(p, {"y": Fraction(0)}, "x")
    assert roots is not None and [r.as_rational() for r in roots] == [-1, 1]
    assert isolate_at_point(p, {"y": Fraction(2)}, "x") == []


def test_isolate_at_point_identically_zero():
    p = (X - 1) * Y
    assert isolate_at_point(p, {"y": Fraction(0)}, "x") is None


def test_isolate_at_point_algebraic_sample():
    r2 = isolate_real_roots(Y ** 2 - 2)[1]  # sqrt(2) as a y-value
    # x^2 - y at y = sqrt2: roots are +- 2^(1/4)
    roots = isolate_at_point(X ** 2 - Y, {"y": r2}, "x")
    assert roots is not None and len(roots) == 2
    quarter = roots[1]
    assert sign_at(X ** 4 - 2, {"x": quarter}) == 0
    # x*y - 1 at y = sqrt2: single root 1/sqrt2
    roots = isolate_at_point(X * Y - 1, {"y": r2}, "x")
    assert roots is not None and len(roots) == 1
    inv = roots[0]
    assert sign_at(X ** 2 * 2 - 1, {"x": inv}) == 0


def test_isolate_at_point_two_algebraic_coordinates():
    r2 = isolate_real_roots(Y ** 2 - 2)[1]
    z = Polynomial.variable("z")
    r3 = isolate_real_roots(z ** 2 - 3)[1]
    # x - y*z at y=sqrt2, z=sqrt3: root sqrt6
    roots = isolate_at_point(X - Y * z, {"y": r2, "z": r3}, "x")
    assert roots is not None and len(roots) == 1
    r6 = roots[0]
    assert sign_at(X ** 2 - 6, {"x": r6}) == 0
    assert sign_at(X - Y * z, {"x": r6, "y": r2, "z": r3}) == 0


def test_multi_algebraic_sign():
    r2 = isolate_real_roots(Y ** 2 - 2)[1]
    z = Polynomial.variable("z")
    r3 = isolate_real_roots(z ** 2 - 3)[1]
    # sqrt2 * sqrt3 - sqrt6 == 0 needs the exact zero certificate
    r6 = isolate_real_roots((X ** 2 - 6))[1]
    p = Y * z - X
    assert sign_at(p, {"x": r6, "y": r2, "z": r3}) == 0
    assert sign_at(p + 1, {"x": r6, "y": r2, "z": r3}) == 1
