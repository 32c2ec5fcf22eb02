"""Formula algebra: normalization, negation, prenexing, substitution, simplify."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from econprove.algebra import Polynomial
from econprove.formula import (
    And, Atom, CaptureError, FALSE, Implies, Not, Or, Quantifier, TRUE,
    conj, disj, exists, forall, free_vars, negate, nnf, normalize_atom,
    simplify, substitute, to_prenex, truth_at_rational,
)

X = Polynomial.variable("x")
T = Polynomial.variable("t")
D = Polynomial.variable("d")
S = Polynomial.variable("s")


def test_normalize_atom_tax_equation():
    # demand_slope*(t+1) == supply_slope*t  ->  d*t + d - s*t == 0
    lhs = D * (T + 1)
    rhs = S * T
    atom = normalize_atom(lhs, "==", rhs)
    assert isinstance(atom, Atom)
    assert atom.rel == "=="
    assert atom.poly == D * T - S * T + D


def test_normalize_atom_constant_folds():
    assert normalize_atom(Polynomial.constant(3), "<", Polynomial.constant(5)) is TRUE
    assert normalize_atom(X, "<=", X) is TRUE
    assert normalize_atom(Polynomial.constant(2), "==", Polynomial.constant(3)) is FALSE


def test_normalize_atom_sign_canonical():
    a = normalize_atom(-X + 1, ">", 0)      # 1 - x > 0  ->  x - 1 < 0
    b = normalize_atom(X - 1, "<", 0)
    assert a == b
    c = normalize_atom(X.scale(2), "<", 0)  # content normalization
    assert c == normalize_atom(X, "<", 0)


def test_normalize_atom_idempotent():
    a = normalize_atom(X - 1, "<", 0)
    assert normalize_atom(a.poly, a.rel, 0) == a


def test_negate_examples():
    assert negate(normalize_atom(T, "<=", 0)) == normalize_atom(T, ">", 0)
    p = Polynomial.variable("p")
    assert negate(normalize_atom(p, "==", 0)) == normalize_atom(p, "!=", 0)
    f = forall(["x"], normalize_atom(X, ">", 0))
    neg = negate(f)
    assert neg == Quantifier("exists", ("x",), normalize_atom(X, "<=", 0))


def test_double_negation_on_random_points():
    rng = random.Random(1)
    for _ in range(40):
        f = _random_qf(rng, ["x", "t", "d"])
        g = negate(negate(f))
        for _ in range(100):
            pt = {v: Fraction(rng.randint(-8, 8), rng.choice([1, 2, 3]))
                  for v in ["x", "t", "d"]}
            assert truth_at_rational(f, pt) == truth_at_rational(g, pt)


def _random_qf(rng, names, depth=2):
    if depth == 0 or rng.random() < 0.4:
        p = Polynomial.constant(rng.randint(-3, 3))
        for v in names:
            if rng.random() < 0.7:
                p = p + Polynomial.variable(v).scale(rng.randint(-2, 2))
        if p.is_constant:
            p = p + Polynomial.variable(rng.choice(names))
        rel = rng.choice(["==", "!=", "<", "<=", ">", ">="])
        return normalize_atom(p, rel, 0)
    kind = rng.choice(["and", "or", "not", "implies"])
    if kind == "not":
        return Not(_random_qf(rng, names, depth - 1))
    if kind == "implies":
        return Implies(_random_qf(rng, names, depth - 1), _random_qf(rng, names, depth - 1))
    parts = tuple(_random_qf(rng, names, depth - 1) for _ in range(rng.randint(2, 3)))
    return And(parts) if kind == "and" else Or(parts)


def test_to_prenex_tax_shape():
    matrix = conj([
        normalize_atom(D, "<", 0),
        normalize_atom(S, ">", 0),
        normalize_atom(D * (T + 1), "==", S * T),
    ])
    sent = to_prenex(exists(["d", "s", "t"], matrix))
    assert sent.blocks == (("exists", ("d", "s", "t")),)
    assert free_vars(sent.matrix) == {"d", "s", "t"}


def test_to_prenex_quantifier_free():
    f = normalize_atom(X, ">", 0)
    sent = to_prenex(f)
    assert sent.blocks == ()
    assert sent.matrix == f


def test_to_prenex_implication_pulls_dual():
    # (forall x P(x)) ==> Q   ->   exists x (!P(x) || Q)
    p = normalize_atom(X, ">", 0)
    q = normalize_atom(Polynomial.variable("y"), ">=", 0)
    sent = to_prenex(Implies(forall(["x"], p), q))
    assert sent.blocks == (("exists", ("x",)),)
    # semantic check on a small grid
    for xv, yv in product([-2, -1, 0, 1, 2], repeat=2):
        pt = {"x": Fraction(xv), "y": Fraction(yv)}
        orig_inner = all(Fraction(x2) > 0 for x2 in [-2, -1, 0, 1, 2])
        orig = (not orig_inner) or (pt["y"] >= 0)
        got = any(
            truth_at_rational(sent.matrix, {"x": Fraction(x2), "y": pt["y"]})
            for x2 in [-2, -1, 0, 1, 2]
        )
        assert got == orig


def test_to_prenex_rejects_rebinding():
    inner = exists(["x"], normalize_atom(X, ">", 0))
    with pytest.raises(CaptureError):
        to_prenex(And((inner, normalize_atom(X, "<", 0))))
    with pytest.raises(CaptureError):
        to_prenex(And((inner, exists(["x"], normalize_atom(X, "<", 0)))))


def test_prenex_preserves_truth_on_grids():
    rng = random.Random(5)
    grid = [Fraction(v) for v in (-2, -1, 0, 1, 2)]
    for _ in range(25):
        base = _random_qf(rng, ["x", "y"], depth=1)
        f = Quantifier(rng.choice(["exists", "forall"]), ("x",), base)
        g = And((f, _rename_formula(_random_qf(rng, ["z"], depth=1))))
        sent = to_prenex(g)
        for zv in grid:
            def eval_prenex(blocks, assign):
                if not blocks:
                    return truth_at_rational(sent.matrix, assign)
                kind, vs = blocks[0]
                v = vs[0]
                rest = ((kind, vs[1:]),) + tuple(blocks[1:]) if len(vs) > 1 else tuple(blocks[1:])
                vals = [eval_prenex(rest, {**assign, v: g2}) for g2 in grid]
                return any(vals) if kind == "exists" else all(vals)

            def eval_orig(h, assign):
                if isinstance(h, Quantifier):
                    vals = []
                    for g2 in grid:
                        a2 = {**assign, h.variables[0]: g2}
                        body = h.body if len(h.variables) == 1 else Quantifier(h.kind, h.variables[1:], h.body)
                        vals.append(eval_orig(body, a2))
                    return any(vals) if h.kind == "exists" else all(vals)
                if isinstance(h, And):
                    return all(eval_orig(a, assign) for a in h.args)
                return truth_at_rational(h, assign)

            assign = {"z": zv, "y": Fraction(1)}
            assert eval_prenex(sent.blocks, assign) == eval_orig(g, assign)


def _rename_formula(f):
    return f


def test_substitute_examples():
    f = normalize_atom(D, "<", 0)
    assert substitute(f, "d", -1) is TRUE
    eq = normalize_atom(D * (T + 1), "==", S * T)
    step = substitute(substitute(substitute(eq, "d", -1), "s", 1), "t", Fraction(-1, 2))
    assert step is TRUE
    assert substitute(normalize_atom(T, ">", 0), "t", Fraction(-1, 2)) is FALSE


def test_substitute_bound_rejected():
    f = exists(["x"], normalize_atom(X, ">", 0))
    with pytest.raises(ValueError):
        substitute(f, "x", 1)


def test_simplify_examples():
    x_pos = normalize_atom(X, ">", 0)
    assert simplify(And((x_pos, x_pos, TRUE))) == x_pos
    assert simplify(And((x_pos, normalize_atom(X, "<", 0)))) is FALSE
    assert simplify(Or((FALSE, normalize_atom(T, "<=", 0)))) == normalize_atom(T, "<=", 0)


def test_simplify_no_bool_inside_connectives():
    rng = random.Random(9)
    for _ in range(60):
        f = simplify(_random_qf(rng, ["x", "t"], depth=3))

        def check(g):
            if isinstance(g, (And, Or)):
                for a in g.args:
                    assert a is not TRUE and a is not FALSE
                    check(a)
            elif isinstance(g, Not):
                check(g.arg)
            elif isinstance(g, Implies):
                check(g.lhs)
                check(g.rhs)

        check(f)


def test_simplify_preserves_truth():
    rng = random.Random(17)
    for _ in range(50):
        f = _random_qf(rng, ["x", "t"], depth=3)
        g = simplify(f)
        for _ in range(60):
            pt = {v: Fraction(rng.randint(-6, 6), rng.choice([1, 2]))
                  for v in ["x", "t"]}
            assert truth_at_rational(f, pt) == truth_at_rational(g, pt)


@settings(max_examples=80, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4),
       st.sampled_from(["==", "!=", "<", "<=", ">", ">="]))
def test_atom_merging_is_sound(a, b, c, rel):
    p = X.scale(a) + Polynomial.variable("t").scale(b) + c
    if p.is_constant:
        return
    atom = normalize_atom(p, rel, 0)
    merged = simplify(And((atom, atom)))
    assert merged == atom
    opposite = simplify(And((atom, negate(atom))))
    assert opposite is FALSE
    both = simplify(Or((atom, negate(atom))))
    assert both is TRUE
