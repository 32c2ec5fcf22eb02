"""Surface-syntax AST for theory files (pre-abstraction expressions)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union


@dataclass(frozen=True)
class Span:
    start: int
    end: int

    def merge(self, other: "Span") -> "Span":
        return Span(min(self.start, other.start), max(self.end, other.end))


NOSPAN = Span(0, 0)


@dataclass(frozen=True)
class SNum:
    value: Fraction
    span: Span = NOSPAN


@dataclass(frozen=True)
class SVar:
    name: str
    span: Span = NOSPAN


@dataclass(frozen=True)
class SAdd:
    terms: tuple["SExpr", ...]
    span: Span = NOSPAN


@dataclass(frozen=True)
class SMul:
    factors: tuple["SExpr", ...]
    span: Span = NOSPAN


@dataclass(frozen=True)
class SNeg:
    arg: "SExpr"
    span: Span = NOSPAN


@dataclass(frozen=True)
class SPow:
    base: "SExpr"
    exponent: int
    span: Span = NOSPAN


@dataclass(frozen=True)
class SDiv:
    num: "SExpr"
    den: "SExpr"
    span: Span = NOSPAN


@dataclass(frozen=True)
class SApply:
    func: str
    args: tuple["SExpr", ...]
    primes: int = 0
    span: Span = NOSPAN


@dataclass(frozen=True)
class SDot:
    left: "SExpr"
    right: "SExpr"
    span: Span = NOSPAN


@dataclass(frozen=True)
class SDiffSym:
    # target is an identifier or a nested SDiffSym (internal use only)
    target: Union[str, "SDiffSym"]
    wrt: str
    span: Span = NOSPAN


SExpr = Union[SNum, SVar, SAdd, SMul, SNeg, SPow, SDiv, SApply, SDot, SDiffSym]


@dataclass(frozen=True)
class SRel:
    lhs: SExpr
    rel: str
    rhs: SExpr
    span: Span = NOSPAN


@dataclass(frozen=True)
class SNot:
    arg: "SFormula"
    span: Span = NOSPAN


@dataclass(frozen=True)
class SAnd:
    args: tuple["SFormula", ...]
    span: Span = NOSPAN


@dataclass(frozen=True)
class SOr:
    args: tuple["SFormula", ...]
    span: Span = NOSPAN


@dataclass(frozen=True)
class SImplies:
    lhs: "SFormula"
    rhs: "SFormula"
    span: Span = NOSPAN


@dataclass(frozen=True)
class SBool:
    value: bool
    span: Span = NOSPAN


SFormula = Union[SRel, SNot, SAnd, SOr, SImplies, SBool]


# -- statements ---------------------------------------------------------------


@dataclass(frozen=True)
class Declaration:
    kind: str  # "scalars" | "vectors" | "functions"
    names: tuple[str, ...]
    span: Span = NOSPAN


@dataclass(frozen=True)
class Definition:
    name: str
    formula: SFormula
    span: Span = NOSPAN


@dataclass(frozen=True)
class Assume:
    # exactly one of: formula, total=(name, var), ref
    formula: Optional[SFormula] = None
    total: Optional[tuple[str, str]] = None
    ref: Optional[str] = None
    span: Span = NOSPAN


@dataclass(frozen=True)
class HypothesisStmt:
    formula: Optional[SFormula] = None
    ref: Optional[str] = None
    span: Span = NOSPAN


Statement = Union[Declaration, Definition, Assume, HypothesisStmt]


@dataclass
class SourceProgram:
    statements: list[Statement] = field(default_factory=list)


def expr_identifiers(e: SExpr) -> list[str]:
    """All identifier occurrences in an expression (with multiplicity)."""
    if isinstance(e, SNum):
        return []
    if isinstance(e, SVar):
        return [e.name]
    if isinstance(e, SAdd):
        return [n for t in e.terms for n in expr_identifiers(t)]
    if isinstance(e, SMul):
        return [n for t in e.factors for n in expr_identifiers(t)]
    if isinstance(e, SNeg):
        return expr_identifiers(e.arg)
    if isinstance(e, SPow):
        return expr_identifiers(e.base)
    if isinstance(e, SDiv):
        return expr_identifiers(e.num) + expr_identifiers(e.den)
    if isinstance(e, SApply):
        return [n for a in e.args for n in expr_identifiers(a)]
    if isinstance(e, SDot):
        return expr_identifiers(e.left) + expr_identifiers(e.right)
    if isinstance(e, SDiffSym):
        inner = [e.target] if isinstance(e.target, str) else expr_identifiers(e.target)
        return inner + [e.wrt]
    raise TypeError(f"not an expression: {e!r}")


def formula_identifiers(f: SFormula) -> list[str]:
    if isinstance(f, SRel):
        return expr_identifiers(f.lhs) + expr_identifiers(f.rhs)
    if isinstance(f, SNot):
        return formula_identifiers(f.arg)
    if isinstance(f, (SAnd, SOr)):
        return [n for a in f.args for n in formula_identifiers(a)]
    if isinstance(f, SImplies):
        return formula_identifiers(f.lhs) + formula_identifiers(f.rhs)
    if isinstance(f, SBool):
        return []
    raise TypeError(f"not a formula: {f!r}")


def formula_functions(f: SFormula) -> list[str]:
    """Function identifiers applied somewhere in the formula."""
    out: list[str] = []

    def walk_e(e: SExpr):
        if isinstance(e, SApply):
            out.append(e.func)
            for a in e.args:
                walk_e(a)
        elif isinstance(e, SAdd):
            for t in e.terms:
                walk_e(t)
        elif isinstance(e, SMul):
            for t in e.factors:
                walk_e(t)
        elif isinstance(e, SNeg):
            walk_e(e.arg)
        elif isinstance(e, SPow):
            walk_e(e.base)
        elif isinstance(e, SDiv):
            walk_e(e.num)
            walk_e(e.den)
        elif isinstance(e, SDot):
            walk_e(e.left)
            walk_e(e.right)

    def walk_f(g: SFormula):
        if isinstance(g, SRel):
            walk_e(g.lhs)
            walk_e(g.rhs)
        elif isinstance(g, SNot):
            walk_f(g.arg)
        elif isinstance(g, (SAnd, SOr)):
            for a in g.args:
                walk_f(a)
        elif isinstance(g, SImplies):
            walk_f(g.lhs)
            walk_f(g.rhs)

    walk_f(f)
    return out
