"""Exact arithmetic: rationals, multivariate polynomials, real algebraic numbers."""

from econprove.algebra.poly import (
    Polynomial,
    divexact,
    poly_gcd,
    resultant,
    discriminant,
    subresultants,
    principal_subres_coeffs,
    square_free_part,
    square_free_factors,
)
from econprove.algebra.roots import isolate_real_roots, separate
from econprove.algebra.algnum import (
    RealAlgebraicNumber,
    simplest_rational_between,
    poly_box,
)
from econprove.algebra.signs import (
    sign_at,
    isolate_at_point,
    compare_algebraic,
    sort_unique,
    LiftingDegeneracyError,
)
from econprove.algebra.display import format_decimal

__all__ = [
    "Polynomial",
    "divexact",
    "poly_gcd",
    "resultant",
    "discriminant",
    "subresultants",
    "principal_subres_coeffs",
    "square_free_part",
    "square_free_factors",
    "isolate_real_roots",
    "separate",
    "RealAlgebraicNumber",
    "simplest_rational_between",
    "poly_box",
    "sign_at",
    "isolate_at_point",
    "compare_algebraic",
    "sort_unique",
    "LiftingDegeneracyError",
    "format_decimal",
]
