"""QE engine: virtual substitution, CAD decisions, projections, ordering."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from econprove.algebra import Polynomial
from econprove import formula as F
from econprove.formula import FALSE, TRUE, PrenexSentence
from econprove.qe import (
    NotLinearError,
    RunLimits,
    SolutionSet,
    VariableOrder,
    choose_order,
    decide,
    eliminate_linear,
    project_onto,
)

A = Polynomial.variable("a")
B = Polynomial.variable("b")
C = Polynomial.variable("c")
D = Polynomial.variable("d")
S = Polynomial.variable("s")
T = Polynomial.variable("t")
X = Polynomial.variable("x")
Y = Polynomial.variable("y")


def _tax_matrix(with_supply=True, hyp_rel="<="):
    atoms = [
        F.normalize_atom(D, "<", 0),
        F.normalize_atom(D * (T + 1), "==", S * T),
    ]
    if with_supply:
        atoms.insert(1, F.normalize_atom(S, ">", 0))
    return F.conj(atoms + [F.normalize_atom(T, hyp_rel, 0)])


# -- eliminate_linear ---------------------------------------------------------


def test_vs_interval_nonempty():
    f = F.conj([F.normalize_atom(X, ">", A), F.normalize_atom(X, "<", B)])
    g = eliminate_linear("x", f)
    rng = random.Random(3)
    for _ in range(200):
        av = Fraction(rng.randint(-10, 10), rng.choice([1, 2, 3]))
        bv = Fraction(rng.randint(-10, 10), rng.choice([1, 2, 3]))
        expected = av < bv
        got = F.truth_at_rational(g, {"a": av, "b": bv})
        assert got == expected


def test_vs_solvable_linear_equation():
    f = F.normalize_atom(C * X + 1, "==", 0)
    g = eliminate_linear("x", f)
    rng = random.Random(4)
    for _ in range(100):
        cv = Fraction(rng.randint(-6, 6))
        assert F.truth_at_rational(g, {"c": cv}) == (cv != 0)


def test_vs_unbounded_ray():
    f = F.normalize_atom(X * 2 + 1, ">", 0)
    assert eliminate_linear("x", f) is TRUE


def test_vs_rejects_nonlinear():
    with pytest.raises(NotLinearError):
        eliminate_linear("x", F.normalize_atom(X * X - 2, "==", 0))


def test_vs_full_depth_agrees_with_decide_on_random_linear():
    rng = random.Random(99)
    names = ["x", "y", "z"]
    for trial in range(200):
        nvars = rng.randint(1, 3)
        use = names[:nvars]
        atoms = []
        for _ in range(rng.randint(1, 3)):
            p = Polynomial.constant(rng.randint(-4, 4))
            for v in use:
                p = p + Polynomial.variable(v).scale(rng.randint(-3, 3))
            if p.is_constant:
                p = p + Polynomial.variable(rng.choice(use))
            atoms.append(F.normalize_atom(p, rng.choice(["<", "<=", "==", "!=", ">", ">="]), 0))
        combine = F.conj if rng.random() < 0.7 else F.disj
        matrix = combine(atoms)
        sentence = F.exists(use, matrix)
        d = decide(sentence)
        # direct full-depth VS elimination
        g = matrix
        for v in use:
            g = eliminate_linear(v, g)
        assert isinstance(g, type(TRUE))
        assert g.value == d.truth, f"trial {trial}: VS={g.value} decide={d.truth}"
        if d.truth and d.witness is not None:
            assert F.truth_at_rational(matrix, d.witness)


# -- decide -------------------------------------------------------------------


def test_decide_tax_no_positive_impact():
    m = _tax_matrix(hyp_rel=">")
    d = decide(F.exists(["d", "s", "t"], m))
    assert d.truth is False


def test_decide_tax_negative_impact_with_witness():
    m = _tax_matrix(hyp_rel="<=")
    d = decide(F.exists(["d", "s", "t"], m))
    assert d.truth is True
    assert d.witness is not None
    assert F.truth_at_rational(m, d.witness)


def test_decide_square_negative_false():
    d = decide(F.exists(["x"], F.normalize_atom(X * X, "<", 0)))
    assert d.truth is False


def test_decide_forall_square_nonnegative():
    d = decide(F.forall(["x"], F.normalize_atom(X * X, ">=", 0)))
    assert d.truth is True
    assert d.witness is None


def test_decide_alternation():
    # forall x exists y: y > x
    m = F.normalize_atom(Y, ">", X)
    d = decide(F.forall(["x"], F.exists(["y"], m)))
    assert d.truth is True
    # exists y forall x: y > x
    d2 = decide(F.exists(["y"], F.forall(["x"], m)))
    assert d2.truth is False


def test_decide_nonlinear_circle_line():
    # exists x,y: x^2 + y^2 == 1 and x == y  (point on circle & diagonal)
    m = F.conj([
        F.normalize_atom(X * X + Y * Y, "==", 1),
        F.normalize_atom(X, "==", Y),
    ])
    d = decide(F.exists(["x", "y"], m))
    assert d.truth is True
    # witness is algebraic: check exactly
    from econprove.formula import truth_at
    assert d.witness is not None
    assert truth_at(m, d.witness)


def test_decide_nonlinear_false():
    # exists x,y: x^2 + y^2 < 0
    m = F.normalize_atom(X * X + Y * Y, "<", 0)
    assert decide(F.exists(["x", "y"], m)).truth is False


def test_decide_closed_sentence_requires_no_free_vars():
    with pytest.raises(ValueError):
        decide(F.normalize_atom(X, ">", 0))


def test_negation_duality_random():
    rng = random.Random(21)
    for _ in range(25):
        nvars = rng.randint(1, 2)
        use = ["x", "y"][:nvars]
        atoms = []
        for _ in range(rng.randint(1, 2)):
            p = Polynomial.constant(rng.randint(-3, 3))
            for v in use:
                p = p + Polynomial.variable(v) ** rng.randint(1, 2) * rng.randint(-2, 2)
            if p.is_constant:
                p = p + Polynomial.variable(use[0])
            atoms.append(F.normalize_atom(p, rng.choice(["<", "==", ">="]), 0))
        matrix = F.conj(atoms)
        kinds = [rng.choice(["exists", "forall"]) for _ in use]
        sent = matrix
        for v, k in zip(use, kinds):
            sent = F.Quantifier(k, (v,), sent)
        d1 = decide(sent)
        d2 = decide(F.negate(sent))
        assert d1.truth != d2.truth


# -- sampling-oracle soundness on random existential sentences ----------------


def _random_quadratic(rng, use):
    p = Polynomial.constant(rng.randint(-5, 5))
    for _ in range(rng.randint(1, 3)):
        t = Polynomial.constant(rng.randint(-5, 5))
        for v in use:
            t = t * Polynomial.variable(v) ** rng.randint(0, 2)
        p = p + t
    if p.total_degree() > 2:
        # degree cap: rebuild with per-variable caps summing <= 2
        p = Polynomial.constant(rng.randint(-5, 5))
        for v in use:
            p = p + Polynomial.variable(v).scale(rng.randint(-5, 5))
        p = p + Polynomial.variable(rng.choice(use)) ** 2 * rng.randint(-5, 5)
    return p


def test_decide_vs_sampling_oracle_200_random_existentials():
    rng = random.Random(1234)
    contradictions = 0
    for trial in range(200):
        nvars = rng.randint(1, 3)
        use = ["x", "y", "z"][:nvars]
        atoms = []
        for _ in range(rng.randint(1, 3)):
            p = _random_quadratic(rng, use)
            if p.is_constant:
                p = p + Polynomial.variable(use[0])
            atoms.append(F.normalize_atom(p, rng.choice(["<", "<=", "==", ">", ">="]), 0))
        matrix = F.conj(atoms) if rng.random() < 0.75 else F.disj(atoms)
        d = decide(F.exists(use, matrix), limits=RunLimits(max_cells=200_000))
        # sampling oracle: if a random point satisfies, decide must say True
        found = None
        for _ in range(10_000):
            pt = {v: Fraction(rng.randint(-24, 24), rng.choice([1, 2, 3, 4]))
                  for v in use}
            if F.truth_at_rational(matrix, pt):
                found = pt
                break
        if found is not None and not d.truth:
            contradictions += 1
        if d.truth:
            assert d.witness is not None
            from econprove.formula import truth_at
            assert truth_at(matrix, d.witness), f"witness fails at trial {trial}"
    assert contradictions == 0


# -- one-variable projection ---------------------------------------------------


def test_qe_one_var_tax_t():
    m = F.conj([
        F.normalize_atom(D, "<", 0),
        F.normalize_atom(S, ">", 0),
        F.normalize_atom(D * (T + 1), "==", S * T),
    ])
    sol, _ = project_onto(m, "t")
    assert sol.render() == "-1 < t && t < 0"


def test_qe_one_var_tax_d():
    m = F.conj([
        F.normalize_atom(D, "<", 0),
        F.normalize_atom(S, ">", 0),
        F.normalize_atom(D * (T + 1), "==", S * T),
    ])
    sol, _ = project_onto(m, "d")
    assert sol.render() == "d < 0"


def test_qe_one_var_square_image():
    m = F.normalize_atom(X, "==", Y * Y)
    sol, _ = project_onto(m, "x")
    assert sol.render() == "x >= 0"


def test_qe_one_var_correctness_random_check():
    m = F.conj([
        F.normalize_atom(D, "<", 0),
        F.normalize_atom(S, ">", 0),
        F.normalize_atom(D * (T + 1), "==", S * T),
    ])
    sol, _ = project_onto(m, "t")
    rng = random.Random(7)
    for _ in range(50):
        r = Fraction(rng.randint(-30, 30), rng.choice([1, 2, 3, 5, 7, 11, 13, 16]))
        inst = F.substitute(m, "t", r)
        d = decide(F.exists(["d", "s"], inst))
        assert d.truth == sol.contains(r), f"mismatch at t={r}"


def test_qe_one_var_algebraic_endpoint():
    # exists y: x == y^2 and y^2 <= 2  ->  0 <= x <= 2;  but with x^2 <= 2: root(2)
    m = F.conj([F.normalize_atom(X * X, "<=", 2), F.normalize_atom(X, ">=", 0)])
    sol, _ = project_onto(m, "x")
    text = sol.render()
    assert "root(" in text and "x^2 - 2" in text
    assert sol.contains(Fraction(1))
    assert not sol.contains(Fraction(3, 2))
    ann = sol.annotations()
    assert any(v.startswith("1.4142") for v in ann.values())


# -- variable ordering ----------------------------------------------------------


def test_choose_order_tax_alphabetical_tiebreak():
    m = _tax_matrix()
    sent = F.to_prenex(F.exists(["d", "s", "t"], m))
    order = choose_order(sent)
    assert order.sequence == ("d", "s", "t")


def test_choose_order_degree_first():
    m = F.conj([
        F.normalize_atom(X ** 4 + Y, "<", 0),
        F.normalize_atom(Y, ">", 0),
    ])
    sent = F.to_prenex(F.exists(["x", "y"], m))
    order = choose_order(sent)
    assert order.sequence.index("y") < order.sequence.index("x")


def test_choose_order_search_small():
    m = F.conj([
        F.normalize_atom(X * X + Y, "<", 0),
        F.normalize_atom(Y * Y + Polynomial.variable("z"), ">", 0),
    ])
    sent = F.to_prenex(F.exists(["x", "y", "z"], m))
    order = choose_order(sent, mode="search", budget=6)
    assert sorted(order.sequence) == ["x", "y", "z"]
    # deterministic
    order2 = choose_order(sent, mode="search", budget=6)
    assert order.sequence == order2.sequence


def test_order_does_not_change_truth():
    suite = []
    rng = random.Random(31)
    for _ in range(20):
        use = ["x", "y"]
        atoms = []
        for _ in range(2):
            p = Polynomial.constant(rng.randint(-3, 3))
            p = p + X ** rng.randint(1, 2) * rng.randint(-2, 2)
            p = p + Y ** rng.randint(1, 2) * rng.randint(-2, 2)
            atoms.append(F.normalize_atom(p, rng.choice(["<", "==", ">"]), 0))
        suite.append(F.conj(atoms))
    from econprove.qe.cad import cad_decide
    from econprove.qe.limits import QeStats
    for matrix in suite:
        sent = F.to_prenex(F.exists(["x", "y"], matrix))
        truths = set()
        for seq in (["x", "y"], ["y", "x"]):
            truth, _ = cad_decide(sent, seq, RunLimits(), QeStats())
            truths.add(truth)
        assert len(truths) == 1


# -- resource limits --------------------------------------------------------------


def test_cell_limit_raises_typed_error():
    from econprove.qe import ResourceLimitError
    m = F.conj([
        F.normalize_atom(X * X + Y * Y - 1, "<", 0),
        F.normalize_atom(X * Y - Fraction(1, 7), ">", 0),
        F.normalize_atom(X ** 2 - Y ** 2 + Fraction(1, 5), ">", 0),
    ])
    with pytest.raises(ResourceLimitError):
        decide(F.forall(["x", "y"], m), limits=RunLimits(max_cells=3))


def test_timeout_honored():
    import time
    from econprove.qe import ResourceLimitError
    m = F.conj([
        F.normalize_atom(X ** 2 + Y ** 2 + Polynomial.variable("z") ** 2 - 1, "<", 0),
        F.normalize_atom(X * Y * Polynomial.variable("z") - Fraction(1, 9), ">", 0),
        F.normalize_atom(X ** 2 - Y + Polynomial.variable("z"), "==", 0),
    ])
    t0 = time.monotonic()
    with pytest.raises(ResourceLimitError):
        decide(F.forall(["x", "y", "z"], m),
               limits=RunLimits.with_timeout(0.05), want_witness=False)
    assert time.monotonic() - t0 < 5.0
