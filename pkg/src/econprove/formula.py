"""Tarski formulas: polynomial atoms, boolean connectives, quantifier blocks.

Atoms are kept in the normal form ``poly REL 0`` with primitive integer
coefficients and positive leading sign (order relations flip direction when
the sign is normalized), so structurally equal atoms compare and hash equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from econprove.algebra.poly import Polynomial
from econprove.algebra.signs import sign_at, Point

RELATIONS = ("==", "!=", "<", "<=", ">", ">=")

_NEGATE = {"==": "!=", "!=": "==", "<": ">=", "<=": ">", ">": "<=", ">=": "<"}
_FLIP = {"==": "==", "!=": "!=", "<": ">", "<=": ">=", ">": "<", ">=": "<="}
_SIGNSET = {
    "==": frozenset({0}),
    "!=": frozenset({-1, 1}),
    "<": frozenset({-1}),
    "<=": frozenset({-1, 0}),
    ">": frozenset({1}),
    ">=": frozenset({0, 1}),
}
_FROM_SIGNSET = {v: k for k, v in _SIGNSET.items()}


class _Bool:
    __slots__ = ("value",)

    def __init__(self, value: bool):
        self.value = value

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"

    def __hash__(self):
        return hash(("bool", self.value))

    def __eq__(self, other):
        return isinstance(other, _Bool) and other.value == self.value


TRUE = _Bool(True)
FALSE = _Bool(False)


@dataclass(frozen=True)
class Atom:
    poly: Polynomial
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel}")

    def holds_for_sign(self, s: int) -> bool:
        return s in _SIGNSET[self.rel]


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple["Formula", ...]

    def __post_init__(self):
        if not self.args:
            raise ValueError("And of nothing")


@dataclass(frozen=True)
class Or:
    args: tuple["Formula", ...]

    def __post_init__(self):
        if not self.args:
            raise ValueError("Or of nothing")


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Quantifier:
    kind: str  # "exists" | "forall"
    variables: tuple[str, ...]
    body: "Formula"

    def __post_init__(self):
        if self.kind not in ("exists", "forall"):
            raise ValueError(self.kind)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable in one quantifier block")


Formula = Union[Atom, _Bool, Not, And, Or, Implies, Quantifier]


def conj(args: Iterable[Formula]) -> Formula:
    args = tuple(args)
    if not args:
        return TRUE
    if len(args) == 1:
        return args[0]
    return And(args)


def disj(args: Iterable[Formula]) -> Formula:
    args = tuple(args)
    if not args:
        return FALSE
    if len(args) == 1:
        return args[0]
    return Or(args)


def exists(variables: Iterable[str], body: Formula) -> Formula:
    vs = tuple(variables)
    return Quantifier("exists", vs, body) if vs else body


def forall(variables: Iterable[str], body: Formula) -> Formula:
    vs = tuple(variables)
    return Quantifier("forall", vs, body) if vs else body


def normalize_atom(lhs: Polynomial, rel: str, rhs: Polynomial | int | Fraction = 0) -> Formula:
    """Build the canonical atom for (lhs - rhs) REL 0; constants fold."""
    if rel not in RELATIONS:
        raise ValueError(f"unknown relation {rel}")
    if not isinstance(rhs, Polynomial):
        rhs = Polynomial.constant(rhs)
    diff = lhs - rhs
    if diff.is_constant:
        s = _sign(diff.constant_value())
        return TRUE if s in _SIGNSET[rel] else FALSE
    content, prim = diff.integer_primitive()
    if content < 0:
        rel = _FLIP[rel]
    return Atom(prim, rel)


def _sign(x: Fraction) -> int:
    return 0 if x == 0 else (1 if x > 0 else -1)


# -- negation to negation normal form ---------------------------------------


def negate(f: Formula) -> Formula:
    """Logical negation pushed to the atoms; quantifiers dualize."""
    if isinstance(f, _Bool):
        return FALSE if f.value else TRUE
    if isinstance(f, Atom):
        return Atom(f.poly, _NEGATE[f.rel])
    if isinstance(f, Not):
        return nnf(f.arg)
    if isinstance(f, And):
        return Or(tuple(negate(a) for a in f.args))
    if isinstance(f, Or):
        return And(tuple(negate(a) for a in f.args))
    if isinstance(f, Implies):
        return And((nnf(f.lhs), negate(f.rhs)))
    if isinstance(f, Quantifier):
        dual = "forall" if f.kind == "exists" else "exists"
        return Quantifier(dual, f.variables, negate(f.body))
    raise TypeError(f"not a formula: {f!r}")


def nnf(f: Formula) -> Formula:
    """Negation normal form (negations absorbed into atoms, Implies removed)."""
    if isinstance(f, (_Bool, Atom)):
        return f
    if isinstance(f, Not):
        return negate(f.arg)
    if isinstance(f, And):
        return And(tuple(nnf(a) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(nnf(a) for a in f.args))
    if isinstance(f, Implies):
        return Or((negate(f.lhs), nnf(f.rhs)))
    if isinstance(f, Quantifier):
        return Quantifier(f.kind, f.variables, nnf(f.body))
    raise TypeError(f"not a formula: {f!r}")


# -- variables ---------------------------------------------------------------


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, _Bool):
        return frozenset()
    if isinstance(f, Atom):
        return frozenset(f.poly.vars)
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (And, Or)):
        out: frozenset[str] = frozenset()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, Implies):
        return free_vars(f.lhs) | free_vars(f.rhs)
    if isinstance(f, Quantifier):
        return free_vars(f.body) - frozenset(f.variables)
    raise TypeError(f"not a formula: {f!r}")


def bound_vars(f: Formula) -> list[str]:
    """All bound variables with multiplicity (for precondition checks)."""
    if isinstance(f, (_Bool, Atom)):
        return []
    if isinstance(f, Not):
        return bound_vars(f.arg)
    if isinstance(f, (And, Or)):
        out = []
        for a in f.args:
            out.extend(bound_vars(a))
        return out
    if isinstance(f, Implies):
        return bound_vars(f.lhs) + bound_vars(f.rhs)
    if isinstance(f, Quantifier):
        return list(f.variables) + bound_vars(f.body)
    raise TypeError(f"not a formula: {f!r}")


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (_Bool, Atom)):
        return True
    if isinstance(f, Not):
        return is_quantifier_free(f.arg)
    if isinstance(f, (And, Or)):
        return all(is_quantifier_free(a) for a in f.args)
    if isinstance(f, Implies):
        return is_quantifier_free(f.lhs) and is_quantifier_free(f.rhs)
    return False


def atoms_of(f: Formula) -> list[Atom]:
    if isinstance(f, Atom):
        return [f]
    if isinstance(f, _Bool):
        return []
    if isinstance(f, Not):
        return atoms_of(f.arg)
    if isinstance(f, (And, Or)):
        out = []
        for a in f.args:
            out.extend(atoms_of(a))
        return out
    if isinstance(f, Implies):
        return atoms_of(f.lhs) + atoms_of(f.rhs)
    if isinstance(f, Quantifier):
        return atoms_of(f.body)
    raise TypeError(f"not a formula: {f!r}")


# -- prenex form --------------------------------------------------------------


@dataclass(frozen=True)
class PrenexSentence:
    """Alternating quantifier blocks (outermost first) over a QF matrix."""

    blocks: tuple[tuple[str, tuple[str, ...]], ...]
    matrix: Formula

    def quantified_vars(self) -> list[str]:
        out = []
        for _, vs in self.blocks:
            out.extend(vs)
        return out

    def free(self) -> frozenset[str]:
        return free_vars(self.matrix) - frozenset(self.quantified_vars())


class CaptureError(ValueError):
    """A variable is both free and bound, or bound twice."""


def to_prenex(f: Formula) -> PrenexSentence:
    """Equivalent prenex form; Implies is rewritten, quantifier order kept."""
    bound = bound_vars(f)
    seen = set()
    for v in bound:
        if v in seen:
            raise CaptureError(f"variable bound twice: {v}")
        seen.add(v)
    clash = free_vars(f) & seen
    if clash:
        raise CaptureError(f"variable both free and bound: {sorted(clash)[0]}")
    g = nnf(f)
    blocks, matrix = _pull(g)
    merged: list[tuple[str, list[str]]] = []
    for kind, vs in blocks:
        if merged and merged[-1][0] == kind:
            merged[-1][1].extend(vs)
        else:
            merged.append((kind, list(vs)))
    return PrenexSentence(tuple((k, tuple(vs)) for k, vs in merged), matrix)


def _pull(f: Formula) -> tuple[list[tuple[str, tuple[str, ...]]], Formula]:
    if isinstance(f, (_Bool, Atom)):
        return [], f
    if isinstance(f, Quantifier):
        blocks, matrix = _pull(f.body)
        return [(f.kind, f.variables)] + blocks, matrix
    if isinstance(f, (And, Or)):
        all_blocks: list[tuple[str, tuple[str, ...]]] = []
        parts = []
        for a in f.args:
            blocks, matrix = _pull(a)
            all_blocks.extend(blocks)
            parts.append(matrix)
        combined = And(tuple(parts)) if isinstance(f, And) else Or(tuple(parts))
        return all_blocks, combined
    if isinstance(f, Not):  # NNF leaves Not only around atoms
        return [], f
    raise TypeError(f"unexpected node in prenex pull: {f!r}")


# -- substitution --------------------------------------------------------------


def substitute(f: Formula, var: str, value: Fraction | int) -> Formula:
    """Replace a free variable by a rational; atoms re-normalize and fold."""
    value = Fraction(value)

    def rec(g: Formula) -> Formula:
        if isinstance(g, _Bool):
            return g
        if isinstance(g, Atom):
            return normalize_atom(g.poly.substitute({var: value}), g.rel)
        if isinstance(g, Not):
            return Not(rec(g.arg))
        if isinstance(g, And):
            return And(tuple(rec(a) for a in g.args))
        if isinstance(g, Or):
            return Or(tuple(rec(a) for a in g.args))
        if isinstance(g, Implies):
            return Implies(rec(g.lhs), rec(g.rhs))
        if isinstance(g, Quantifier):
            if var in g.variables:
                raise ValueError(f"cannot substitute bound variable {var}")
            return Quantifier(g.kind, g.variables, rec(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return rec(f)


def substitute_all(f: Formula, values: Mapping[str, Fraction]) -> Formula:
    out = f
    for v, val in values.items():
        out = substitute(out, v, val)
    return out


# -- simplification -------------------------------------------------------------


def simplify(f: Formula) -> Formula:
    """Equivalence-preserving cleanup: constant folding, flattening, merging
    of atoms over the same polynomial (complementary pairs collapse)."""
    if isinstance(f, (_Bool, Atom)):
        return f
    if isinstance(f, Not):
        return simplify(negate(f.arg))
    if isinstance(f, Implies):
        return simplify(Or((negate(f.lhs), nnf(f.rhs))))
    if isinstance(f, Quantifier):
        body = simplify(f.body)
        if isinstance(body, _Bool):
            return body
        keep = tuple(v for v in f.variables if v in free_vars(body))
        if not keep:
            return body
        return Quantifier(f.kind, keep, body)
    if isinstance(f, (And, Or)):
        is_and = isinstance(f, And)
        flat: list[Formula] = []
        for a in f.args:
            a = simplify(a)
            if isinstance(a, _Bool):
                if a.value == is_and:
                    continue            # neutral element
                return a                # absorbing element
            if isinstance(a, And) and is_and:
                flat.extend(a.args)
            elif isinstance(a, Or) and not is_and:
                flat.extend(a.args)
            else:
                flat.append(a)
        # merge atoms over identical polynomials via sign sets
        signsets: dict[Polynomial, frozenset[int]] = {}
        others: list[Formula] = []
        order: list[Polynomial] = []
        for a in flat:
            if isinstance(a, Atom):
                s = _SIGNSET[a.rel]
                if a.poly in signsets:
                    signsets[a.poly] = (signsets[a.poly] & s) if is_and else (signsets[a.poly] | s)
                else:
                    signsets[a.poly] = s
                    order.append(a.poly)
            else:
                if a not in others:
                    others.append(a)
        merged: list[Formula] = []
        for p in order:
            s = signsets[p]
            if not s:
                if is_and:
                    return FALSE
                continue
            if s == frozenset({-1, 0, 1}):
                if not is_and:
                    return TRUE
                continue
            merged.append(Atom(p, _FROM_SIGNSET[s]))
        merged.extend(others)
        if not merged:
            return TRUE if is_and else FALSE
        if len(merged) == 1:
            return merged[0]
        return And(tuple(merged)) if is_and else Or(tuple(merged))
    raise TypeError(f"not a formula: {f!r}")


# -- evaluation ----------------------------------------------------------------


def truth_at(f: Formula, point: Point) -> bool:
    """Truth of a quantifier-free formula at an exact (possibly algebraic) point."""
    if isinstance(f, _Bool):
        return f.value
    if isinstance(f, Atom):
        return f.holds_for_sign(sign_at(f.poly, point))
    if isinstance(f, Not):
        return not truth_at(f.arg, point)
    if isinstance(f, And):
        return all(truth_at(a, point) for a in f.args)
    if isinstance(f, Or):
        return any(truth_at(a, point) for a in f.args)
    if isinstance(f, Implies):
        return (not truth_at(f.lhs, point)) or truth_at(f.rhs, point)
    raise ValueError("truth_at expects a quantifier-free formula")


def truth_at_rational(f: Formula, point: Mapping[str, Fraction]) -> bool:
    """Fast path for all-rational points (no algebraic machinery)."""
    if isinstance(f, _Bool):
        return f.value
    if isinstance(f, Atom):
        return f.holds_for_sign(_sign(f.poly.evaluate(point)))
    if isinstance(f, Not):
        return not truth_at_rational(f.arg, point)
    if isinstance(f, And):
        return all(truth_at_rational(a, point) for a in f.args)
    if isinstance(f, Or):
        return any(truth_at_rational(a, point) for a in f.args)
    if isinstance(f, Implies):
        return (not truth_at_rational(f.lhs, point)) or truth_at_rational(f.rhs, point)
    raise ValueError("expects a quantifier-free formula")


# -- rendering -----------------------------------------------------------------


def render(f: Formula, var_names: Mapping[str, str] | None = None) -> str:
    """Surface-syntax rendering (&&, ||, !, ==>, atoms compared with 0)."""
    return _render(f, 0, var_names or {})


def _rename_poly(p: Polynomial, names: Mapping[str, str]) -> Polynomial:
    if not names:
        return p
    applicable = {v: names[v] for v in p.vars if v in names}
    return p.rename(applicable) if applicable else p


def _render(f: Formula, prec: int, names: Mapping[str, str]) -> str:
    # precedence levels: 0 lowest (==>), 1 ||, 2 &&, 3 unary/atom
    if isinstance(f, _Bool):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f"{_rename_poly(f.poly, names)} {f.rel} 0"
    if isinstance(f, Not):
        inner = _render(f.arg, 3, names)
        if isinstance(f.arg, (Atom, _Bool)):
            return f"!({inner})"
        return f"!({inner})"
    if isinstance(f, And):
        body = " && ".join(_render(a, 2, names) for a in f.args)
        return f"({body})" if prec > 2 else body
    if isinstance(f, Or):
        body = " || ".join(_render(a, 1, names) for a in f.args)
        return f"({body})" if prec > 1 else body
    if isinstance(f, Implies):
        body = f"{_render(f.lhs, 1, names)} ==> {_render(f.rhs, 1, names)}"
        return f"({body})" if prec > 0 else body
    if isinstance(f, Quantifier):
        q = "exists" if f.kind == "exists" else "forall"
        inner = _render(f.body, 3, names)
        return f"{q} {', '.join(f.variables)}. ({inner})"
    raise TypeError(f"not a formula: {f!r}")
