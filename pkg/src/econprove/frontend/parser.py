"""Lexer and recursive-descent parser for `.econ` theory files.

Grammar (statements end with ';', comments run '//' to end of line):

    statement  = ("scalars"|"vectors"|"functions") ident {"," ident}
               | Name ":=" formula
               | "assume" ( formula | "total" "(" Name "," ident ")" | Name )
               | "hypothesis" ( formula | Name )
    formula    = boolean combinations (!, &&, ||, ==>) of relations
    relation   = expr (== | != | < | <= | > | >=) expr
    expr       = rationals/decimals, idents, + - * / ^, f(e), f'(e),
                 D(v, t), vector "." vector, parentheses

A bare '=' in formula position is the classic ==/= mix-up and raises the E2
error with a hint instead of a generic syntax error.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from econprove.frontend.ast import (
    Assume, Declaration, Definition, HypothesisStmt, SourceProgram, Span,
    SAdd, SAnd, SApply, SBool, SDiffSym, SDiv, SDot, SExpr, SFormula,
    SImplies, SMul, SNeg, SNot, SNum, SOr, SPow, SRel, SVar,
)

KEYWORDS = {"scalars", "vectors", "functions", "assume", "hypothesis", "total",
            "true", "false"}

RELOPS = {"==", "!=", "<", "<=", ">", ">="}


class ParseError(ValueError):
    def __init__(self, message: str, span: Span, code: str = "syntax"):
        super().__init__(message)
        self.message = message
        self.span = span
        self.code = code


class AssignmentConfusionError(ParseError):
    """E2: '=' used where a formula needs '=='."""

    def __init__(self, span: Span):
        super().__init__("'=' is assignment-like; use == for equations",
                         span, code="E2-assignment-confusion")


@dataclass(frozen=True)
class Token:
    kind: str      # IDENT NUMBER OP PRIME EOF
    text: str
    span: Span


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start = i
        if c.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(Token("NUMBER", text[i:j], Span(start, j)))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], Span(start, j)))
            i = j
            continue
        if c == "'":
            tokens.append(Token("PRIME", "'", Span(i, i + 1)))
            i += 1
            continue
        for op in ("==>", ":=", "==", "!=", "<=", ">=", "&&", "||"):
            if text.startswith(op, i):
                tokens.append(Token("OP", op, Span(i, i + len(op))))
                i += len(op)
                break
        else:
            if c in "+-*/^()<>,;=!.":
                tokens.append(Token("OP", c, Span(i, i + 1)))
                i += 1
            else:
                raise ParseError(f"unexpected character {c!r}", Span(i, i + 1))
    tokens.append(Token("EOF", "", Span(n, n)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- machinery ------------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def expect_op(self, op: str) -> Token:
        t = self.peek()
        if t.kind == "OP" and t.text == op:
            return self.next()
        raise ParseError(f"expected {op!r}, found {t.text!r}", t.span)

    def expect_ident(self) -> Token:
        t = self.peek()
        if t.kind == "IDENT" and t.text not in KEYWORDS:
            return self.next()
        raise ParseError(f"expected identifier, found {t.text!r}", t.span)

    def at_op(self, op: str) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.text == op

    # -- statements ------------------------------------------------------

    def program(self) -> SourceProgram:
        prog = SourceProgram()
        while self.peek().kind != "EOF":
            prog.statements.append(self.statement())
            self.expect_op(";")
        return prog

    def statement(self):
        t = self.peek()
        if t.kind == "IDENT" and t.text in ("scalars", "vectors", "functions"):
            self.next()
            names = [self.expect_ident().text]
            while self.at_op(","):
                self.next()
                names.append(self.expect_ident().text)
            return Declaration(t.text, tuple(names), t.span)
        if t.kind == "IDENT" and t.text == "assume":
            self.next()
            return self.assume_body(t.span)
        if t.kind == "IDENT" and t.text == "hypothesis":
            self.next()
            nxt = self.peek()
            if (nxt.kind == "IDENT" and nxt.text not in KEYWORDS
                    and self.peek(1).kind == "OP" and self.peek(1).text == ";"):
                self.next()
                return HypothesisStmt(ref=nxt.text, span=t.span.merge(nxt.span))
            f = self.formula()
            return HypothesisStmt(formula=f, span=t.span)
        if (t.kind == "IDENT" and t.text not in KEYWORDS
                and self.peek(1).kind == "OP" and self.peek(1).text == ":="):
            self.next()
            self.next()
            f = self.formula()
            return Definition(t.text, f, t.span)
        raise ParseError(f"expected a statement, found {t.text!r}", t.span)

    def assume_body(self, span: Span):
        t = self.peek()
        if t.kind == "IDENT" and t.text == "total" and self.peek(1).text == "(":
            self.next()
            self.expect_op("(")
            name = self.expect_ident().text
            self.expect_op(",")
            var = self.expect_ident().text
            close = self.expect_op(")")
            return Assume(total=(name, var), span=span.merge(close.span))
        if (t.kind == "IDENT" and t.text not in KEYWORDS
                and self.peek(1).kind == "OP" and self.peek(1).text == ";"):
            self.next()
            return Assume(ref=t.text, span=span.merge(t.span))
        return Assume(formula=self.formula(), span=span)

    # -- formulas -----------------------------------------------------------

    def formula(self) -> SFormula:
        return self.implies()

    def implies(self) -> SFormula:
        lhs = self.disjunction()
        if self.at_op("==>"):
            self.next()
            rhs = self.implies()
            return SImplies(lhs, rhs, lhs.span.merge(rhs.span))
        return lhs

    def disjunction(self) -> SFormula:
        parts = [self.conjunction()]
        while self.at_op("||"):
            self.next()
            parts.append(self.conjunction())
        if len(parts) == 1:
            return parts[0]
        return SOr(tuple(parts), parts[0].span.merge(parts[-1].span))

    def conjunction(self) -> SFormula:
        parts = [self.funit()]
        while self.at_op("&&"):
            self.next()
            parts.append(self.funit())
        if len(parts) == 1:
            return parts[0]
        return SAnd(tuple(parts), parts[0].span.merge(parts[-1].span))

    def funit(self) -> SFormula:
        t = self.peek()
        if self.at_op("!"):
            self.next()
            return SNot(self.funit(), t.span)
        if t.kind == "IDENT" and t.text in ("true", "false"):
            self.next()
            return SBool(t.text == "true", t.span)
        if self.at_op("("):
            # '(' may open a parenthesized formula or an expression; try the
            # relation route first and fall back on failure.
            saved = self.pos
            try:
                return self.relation()
            except AssignmentConfusionError:
                raise
            except ParseError:
                self.pos = saved
            self.expect_op("(")
            inner = self.formula()
            self.expect_op(")")
            return inner
        return self.relation()

    def relation(self) -> SFormula:
        lhs = self.expr()
        t = self.peek()
        if t.kind == "OP" and t.text == "=":
            raise AssignmentConfusionError(t.span)
        if t.kind == "OP" and t.text in RELOPS:
            self.next()
            rhs = self.expr()
            return SRel(lhs, t.text, rhs, lhs.span.merge(rhs.span))
        raise ParseError(f"expected a relation, found {t.text!r}", t.span)

    # -- expressions -----------------------------------------------------------

    def expr(self) -> SExpr:
        terms = [self.term()]
        signs = [1]
        while self.peek().kind == "OP" and self.peek().text in "+-" and len(self.peek().text) == 1:
            op = self.next().text
            t = self.term()
            if op == "-":
                t = SNeg(t, t.span)
            terms.append(t)
        if len(terms) == 1:
            return terms[0]
        return SAdd(tuple(terms), terms[0].span.merge(terms[-1].span))

    def term(self) -> SExpr:
        factors: list[SExpr] = [self.factor()]
        dens: list[SExpr] = []
        while self.peek().kind == "OP" and self.peek().text in ("*", "/"):
            op = self.next().text
            f = self.factor()
            if op == "*":
                factors.append(f)
            else:
                dens.append(f)
        out: SExpr
        if len(factors) == 1:
            out = factors[0]
        else:
            out = SMul(tuple(factors), factors[0].span.merge(factors[-1].span))
        for d in dens:
            out = SDiv(out, d, out.span.merge(d.span))
        return out

    def factor(self) -> SExpr:
        t = self.peek()
        if t.kind == "OP" and t.text == "-":
            self.next()
            arg = self.factor()
            return SNeg(arg, t.span.merge(arg.span))
        return self.power()

    def power(self) -> SExpr:
        base = self.dotted()
        if self.at_op("^"):
            self.next()
            neg = False
            if self.peek().kind == "OP" and self.peek().text == "-":
                self.next()
                neg = True
            t = self.peek()
            if t.kind != "NUMBER" or "." in t.text:
                raise ParseError("exponent must be an integer literal", t.span)
            self.next()
            exp = int(t.text)
            if neg:
                raise ParseError("negative exponents are not supported", t.span)
            return SPow(base, exp, base.span.merge(t.span))
        return base

    def dotted(self) -> SExpr:
        left = self.primary()
        while self.at_op("."):
            self.next()
            right = self.primary()
            left = SDot(left, right, left.span.merge(right.span))
        return left

    def primary(self) -> SExpr:
        t = self.peek()
        if t.kind == "NUMBER":
            self.next()
            if "." in t.text:
                whole, frac = t.text.split(".")
                value = Fraction(int(whole + frac), 10 ** len(frac))
            else:
                value = Fraction(int(t.text))
            return SNum(value, t.span)
        if t.kind == "IDENT" and t.text == "D" and self.peek(1).text == "(":
            self.next()
            self.expect_op("(")
            target = self.expect_ident().text
            self.expect_op(",")
            wrt = self.expect_ident().text
            close = self.expect_op(")")
            return SDiffSym(target, wrt, t.span.merge(close.span))
        if t.kind == "IDENT" and t.text not in KEYWORDS:
            self.next()
            primes = 0
            while self.peek().kind == "PRIME":
                self.next()
                primes += 1
            if self.at_op("("):
                self.next()
                args = [self.expr()]
                while self.at_op(","):
                    self.next()
                    args.append(self.expr())
                close = self.expect_op(")")
                return SApply(t.text, tuple(args), primes, t.span.merge(close.span))
            if primes:
                raise ParseError("derivative marker needs an application, like f'(x)",
                                 t.span)
            return SVar(t.text, t.span)
        if self.at_op("("):
            self.next()
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"expected an expression, found {t.text!r}", t.span)


def parse_source(text: str) -> SourceProgram:
    """Parse a theory file into statements; raises ParseError with a span."""
    return _Parser(tokenize(text)).program()
