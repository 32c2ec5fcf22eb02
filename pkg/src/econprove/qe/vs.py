"""Loos-Weispfenning virtual substitution for variables of degree <= 1.

Eliminates one existential variable from a quantifier-free formula whose
atoms are at most linear in it, substituting the symbolic test points
-infinity, atom roots (weak relations) and root+epsilon (strict relations).
Coefficients may be arbitrary polynomials in the other variables; guards
a != 0 are attached to every root branch.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional

from econprove.algebra.poly import Polynomial
from econprove import formula as F
from econprove.formula import Atom, And, Or, TRUE, FALSE, _Bool


class NotLinearError(Exception):
    """An atom has degree >= 2 in the elimination variable."""


def _linear_parts(poly: Polynomial, var: str) -> tuple[Polynomial, Polynomial]:
    """poly = a*var + b; raises NotLinearError beyond degree 1."""
    if poly.degree(var) > 1:
        raise NotLinearError(var)
    return poly.coeff_of(var, 1), poly.coeff_of(var, 0)


def _subst_minus_inf(atom: Atom, var: str) -> F.Formula:
    """Truth of (c*var + d REL 0) as var -> -infinity.

    c may be a polynomial in the parameters, so the c == 0 case has to stay
    inside the produced formula, not just be handled structurally.
    """
    c, d = _linear_parts(atom.poly, var)
    if c.is_zero:
        return F.normalize_atom(d, atom.rel, 0)
    rel = atom.rel
    c_zero = F.normalize_atom(c, "==", 0)
    if rel == "==":
        return F.conj([c_zero, F.normalize_atom(d, "==", 0)])
    if rel == "!=":
        return F.disj([F.normalize_atom(c, "!=", 0), F.normalize_atom(d, "!=", 0)])
    if rel in ("<", "<="):
        # value -> -inf iff c > 0; degenerate line when c == 0
        return F.disj([F.normalize_atom(c, ">", 0),
                       F.conj([c_zero, F.normalize_atom(d, rel, 0)])])
    return F.disj([F.normalize_atom(c, "<", 0),
                   F.conj([c_zero, F.normalize_atom(d, rel, 0)])])


def _subst_root(atom: Atom, var: str, a: Polynomial, b: Polynomial) -> F.Formula:
    """Truth of (c*var + d REL 0) at var = -b/a (guard a != 0 added by caller)."""
    c, d = _linear_parts(atom.poly, var)
    if c.is_zero:
        return F.normalize_atom(d, atom.rel, 0)
    num = d * a - c * b          # value = num / a
    rel = atom.rel
    if rel == "==":
        return F.normalize_atom(num, "==", 0)
    if rel == "!=":
        return F.normalize_atom(num, "!=", 0)
    scaled = num * a             # sign(num/a) = sign(num*a)
    return F.normalize_atom(scaled, rel, 0)


def _subst_root_eps(atom: Atom, var: str, a: Polynomial, b: Polynomial) -> F.Formula:
    """Truth of (c*var + d REL 0) at var = -b/a + epsilon."""
    c, d = _linear_parts(atom.poly, var)
    if c.is_zero:
        return F.normalize_atom(d, atom.rel, 0)
    num = d * a - c * b
    scaled = num * a
    rel = atom.rel
    zero = F.normalize_atom(num, "==", 0)
    if rel == "==":
        return F.conj([zero, F.normalize_atom(c, "==", 0)])
    if rel == "!=":
        return F.disj([F.normalize_atom(num, "!=", 0), F.normalize_atom(c, "!=", 0)])
    if rel in ("<", "<="):
        eps_side = F.normalize_atom(c, "<" if rel == "<" else "<=", 0)
        return F.disj([F.normalize_atom(scaled, "<", 0), F.conj([zero, eps_side])])
    eps_side = F.normalize_atom(c, ">" if rel == ">" else ">=", 0)
    return F.disj([F.normalize_atom(scaled, ">", 0), F.conj([zero, eps_side])])


def _map_atoms(f: F.Formula, fn) -> F.Formula:
    if isinstance(f, _Bool):
        return f
    if isinstance(f, Atom):
        return fn(f)
    if isinstance(f, And):
        return F.conj([_map_atoms(a, fn) for a in f.args])
    if isinstance(f, Or):
        return F.disj([_map_atoms(a, fn) for a in f.args])
    raise TypeError(f"expected an NNF quantifier-free formula, got {f!r}")


def eliminate_linear(var: str, f: F.Formula) -> F.Formula:
    """Quantifier-free equivalent of (exists var. f); f linear in var.

    Raises NotLinearError when some atom has degree >= 2 in var (callers fall
    back to CAD).
    """
    f = F.simplify(F.nnf(f))
    if isinstance(f, _Bool):
        return f
    pivots: list[tuple[Polynomial, Polynomial, bool]] = []  # (a, b, strict)
    seen: set = set()
    for atom in F.atoms_of(f):
        a, b = _linear_parts(atom.poly, var)
        if a.is_zero:
            continue
        strict = atom.rel in ("<", ">", "!=")
        key = (a, b, strict)
        if key not in seen:
            seen.add(key)
            pivots.append((a, b, strict))

    branches: list[F.Formula] = [_map_atoms(f, lambda at: _subst_minus_inf(at, var))]
    for a, b, strict in pivots:
        guard = F.normalize_atom(a, "!=", 0)
        if strict:
            body = _map_atoms(f, lambda at: _subst_root_eps(at, var, a, b))
        else:
            body = _map_atoms(f, lambda at: _subst_root(at, var, a, b))
        branches.append(F.conj([guard, body]))
    return F.simplify(F.disj(branches))


# -- full elimination with witness reconstruction ---------------------------


class VsResult:
    __slots__ = ("truth", "stages")

    def __init__(self, truth: bool, stages: list[tuple[str, str, F.Formula]]):
        self.truth = truth
        self.stages = stages  # (var, kind, formula before eliminating var)


def vs_eliminate(matrix: F.Formula, elimination: list[tuple[str, str]]) -> VsResult:
    """Eliminate quantified variables innermost-first by virtual substitution.

    `elimination` lists (var, kind) innermost-first, kind in {"exists",
    "forall"}.  Raises NotLinearError as soon as a step goes nonlinear.
    """
    g = F.simplify(F.nnf(matrix))
    stages: list[tuple[str, str, F.Formula]] = []
    for var, kind in elimination:
        stages.append((var, kind, g))
        if var not in F.free_vars(g):
            continue
        if kind == "exists":
            g = eliminate_linear(var, g)
        else:
            g = F.simplify(F.negate(eliminate_linear(var, F.simplify(F.negate(g)))))
    if not isinstance(g, _Bool):
        if F.free_vars(g):
            raise ValueError("variables remain after full elimination")
        g = F.simplify(g)
    assert isinstance(g, _Bool)
    return VsResult(g.value, stages)


def vs_project(matrix: F.Formula, elimination: list[tuple[str, str]]) -> F.Formula:
    """Like vs_eliminate but keeps free variables: returns the QF result."""
    g = F.simplify(F.nnf(matrix))
    for var, kind in elimination:
        if var not in F.free_vars(g):
            continue
        if kind == "exists":
            g = eliminate_linear(var, g)
        else:
            g = F.simplify(F.negate(eliminate_linear(var, F.simplify(F.negate(g)))))
    return g


def rational_witness(stages: list[tuple[str, str, F.Formula]]) -> dict[str, Fraction]:
    """Rebuild a rational witness for a purely existential VS run that ended True.

    Walks outermost-first: at each stage the already-chosen outer values make
    (exists var. stage formula) true, and a 1-D linear feasibility scan finds
    an exact rational value for var.
    """
    assignment: dict[str, Fraction] = {}
    for var, kind, before in reversed(stages):
        assert kind == "exists"
        g = F.simplify(F.substitute_all(before, assignment))
        if isinstance(g, _Bool):
            assert g.value
            assignment[var] = Fraction(0)
            continue
        val = _feasible_univariate(g, var)
        assert val is not None, "stage formula lost satisfiability"
        assignment[var] = val
    return assignment


def _feasible_univariate(g: F.Formula, var: str) -> Optional[Fraction]:
    roots: set[Fraction] = set()
    for atom in F.atoms_of(g):
        a, b = _linear_parts(atom.poly, var)
        if not a.is_zero:
            if not a.is_constant or not b.is_constant:
                raise ValueError("stage formula is not univariate")
            roots.add(Fraction(-b.constant_value(), a.constant_value()))
    candidates: list[Fraction] = []
    srt = sorted(roots)
    if not srt:
        candidates.append(Fraction(0))
    else:
        candidates.append(srt[0] - 1)
        for r in srt:
            candidates.append(r)
        for x, y in zip(srt, srt[1:]):
            candidates.append((x + y) / 2)
        candidates.append(srt[-1] + 1)
    for c in candidates:
        if F.truth_at_rational(g, {var: c}):
            return c
    return None
