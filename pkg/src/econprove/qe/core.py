"""Top-level quantifier elimination entry points.

decide(): truth of a closed sentence (VS fast path for linear steps, CAD
otherwise, exact witness for purely existential truths).
project_onto(): one-free-variable elimination into a SolutionSet.
choose_order(): elimination-order heuristic and bounded search.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from econprove.algebra.algnum import RealAlgebraicNumber
from econprove.algebra.signs import LiftingDegeneracyError
from econprove import formula as F
from econprove.formula import PrenexSentence, _Bool
from econprove.qe.cad import cad_decide, cad_one_var, projection_weight
from econprove.qe.limits import QeStats, ResourceLimitError, RunLimits
from econprove.qe.onevar import SolutionSet
from econprove.qe.vs import NotLinearError, rational_witness, vs_eliminate, vs_project

Value = Union[Fraction, RealAlgebraicNumber]


@dataclass(frozen=True)
class VariableOrder:
    """Elimination order, innermost-first; free variables come last."""

    sequence: tuple[str, ...]


@dataclass
class Decision:
    truth: bool
    witness: Optional[dict[str, Value]]
    stats: QeStats


def _heuristic_key(var: str, polys) -> tuple:
    maxdeg = 0
    occurrences = 0
    for p in polys:
        d = p.degree(var)
        if d > 0:
            occurrences += 1
            maxdeg = max(maxdeg, d)
    return (maxdeg, occurrences, var)


def _block_groups(sentence: PrenexSentence) -> list[list[str]]:
    """Variable groups innermost block first, free variables last."""
    groups = [list(vs) for _, vs in reversed(sentence.blocks)]
    free = sorted(sentence.free())
    if free:
        groups.append(free)
    return groups


def choose_order(sentence: PrenexSentence, mode: str = "heuristic",
                 budget: int = 24, limits: Optional[RunLimits] = None) -> VariableOrder:
    """Pick an elimination order (innermost-first) respecting block boundaries.

    heuristic: per block, ascending (max degree, atom count, name).
    search: score up to `budget` block-respecting permutations by total
    projection size and keep the best; deterministic for a fixed budget.
    """
    polys = [a.poly for a in F.atoms_of(sentence.matrix)]
    groups = _block_groups(sentence)
    heuristic = [sorted(g, key=lambda v: _heuristic_key(v, polys)) for g in groups]
    if mode == "heuristic":
        return VariableOrder(tuple(v for g in heuristic for v in g))
    if mode != "search":
        raise ValueError(f"unknown order mode {mode!r}")
    limits = limits or RunLimits(max_cells=1000)
    candidates = []
    for combo in itertools.islice(
            itertools.product(*(itertools.permutations(sorted(g)) for g in groups)),
            max(budget, 1)):
        candidates.append(tuple(v for g in combo for v in g))
    heuristic_seq = tuple(v for g in heuristic for v in g)
    if heuristic_seq not in candidates:
        candidates.append(heuristic_seq)
    best = None
    best_score = None
    for seq in candidates:
        score = projection_weight(sentence.matrix, list(seq), limits)
        if best_score is None or score < best_score:
            best, best_score = seq, score
    return VariableOrder(tuple(best))


def _sample_witness(sentence: PrenexSentence, seed: int = 0,
                    rounds: int = 80) -> Optional[dict[str, Fraction]]:
    """Cheap exact witness search for purely existential sentences."""
    vs = sentence.quantified_vars()
    rng = random.Random(seed)
    pool = [Fraction(n, d) for n in range(-4, 5) for d in (1, 2, 3)]
    matrix = sentence.matrix
    for _ in range(rounds):
        pt = {v: rng.choice(pool) for v in vs}
        if F.truth_at_rational(matrix, pt):
            return pt
    return None


def decide(sentence: Union[F.Formula, PrenexSentence],
           limits: Optional[RunLimits] = None,
           order_mode: str = "heuristic",
           want_witness: bool = True) -> Decision:
    """Decide a sentence over the reals; witness returned for existential truths."""
    t0 = time.monotonic()
    if not isinstance(sentence, PrenexSentence):
        sentence = F.to_prenex(sentence)
    if sentence.free():
        raise ValueError(f"sentence has free variables: {sorted(sentence.free())}")
    limits = limits or RunLimits()
    stats = QeStats()
    matrix = F.simplify(sentence.matrix)
    sentence = PrenexSentence(sentence.blocks, matrix)
    purely_existential = all(k == "exists" for k, _ in sentence.blocks)

    def finish(truth: bool, witness, method: str) -> Decision:
        stats.method = method
        stats.elapsed_ms = (time.monotonic() - t0) * 1000.0
        return Decision(truth, witness, stats)

    if isinstance(matrix, _Bool):
        w = None
        if matrix.value and purely_existential:
            w = {v: Fraction(0) for v in sentence.quantified_vars()}
        return finish(matrix.value, w, "trivial")

    order = choose_order(sentence, order_mode, limits=limits)
    stats.order = list(order.sequence)

    if purely_existential and want_witness:
        w = _sample_witness(sentence)
        if w is not None:
            return finish(True, dict(w), "sample")

    kind_of = {}
    for k, vs in sentence.blocks:
        for v in vs:
            kind_of[v] = k
    try:
        elimination = [(v, kind_of[v]) for v in order.sequence]
        res = vs_eliminate(matrix, elimination)
        witness = None
        if res.truth and purely_existential and want_witness:
            witness = dict(rational_witness(res.stages))
        return finish(res.truth, witness, "vs")
    except NotLinearError:
        pass

    last_error: Optional[Exception] = None
    for seq in _order_candidates(sentence, order):
        try:
            truth, witness = cad_decide(sentence, list(seq), limits, stats)
            if not want_witness:
                witness = None
            return finish(truth, _clean_witness(witness), "cad")
        except LiftingDegeneracyError as e:  # pragma: no cover - rare corner
            last_error = e
            continue
    raise ResourceLimitError(
        f"degenerate lifting in all attempted orders ({last_error})", stats)


def _clean_witness(witness: Optional[dict[str, Value]]) -> Optional[dict[str, Value]]:
    """Collapse rational-valued algebraic numbers to plain Fractions."""
    if witness is None:
        return None
    out: dict[str, Value] = {}
    for k, v in witness.items():
        if isinstance(v, RealAlgebraicNumber):
            r = v.as_rational()
            out[k] = r if r is not None else v
        else:
            out[k] = Fraction(v)
    return out


def _order_candidates(sentence: PrenexSentence, primary: VariableOrder):
    yield primary.sequence
    groups = _block_groups(sentence)
    seen = {primary.sequence}
    for combo in itertools.islice(
            itertools.product(*(itertools.permutations(g) for g in groups)), 12):
        seq = tuple(v for g in combo for v in g)
        if seq not in seen:
            seen.add(seq)
            yield seq


def project_onto(matrix: F.Formula, free: str,
                 limits: Optional[RunLimits] = None,
                 order_mode: str = "heuristic") -> tuple[SolutionSet, QeStats]:
    """SolutionSet of { free : exists(other vars). matrix }; matrix is QF."""
    t0 = time.monotonic()
    if not F.is_quantifier_free(matrix):
        raise ValueError("project_onto expects a quantifier-free formula")
    limits = limits or RunLimits()
    stats = QeStats()
    matrix = F.simplify(matrix)
    others = sorted(free_vars for free_vars in F.free_vars(matrix) if free_vars != free)
    inner = F.exists(others, matrix)
    sentence = PrenexSentence((("exists", tuple(others)),) if others else (),
                              matrix)
    order = choose_order(sentence, order_mode, limits=limits)
    stats.order = list(order.sequence)
    seq_others = [v for v in order.sequence if v != free]

    def finish(sol: SolutionSet, method: str):
        stats.method = method
        stats.elapsed_ms = (time.monotonic() - t0) * 1000.0
        return sol, stats

    try:
        reduced = vs_project(matrix, [(v, "exists") for v in seq_others])
        if isinstance(reduced, _Bool):
            sol = SolutionSet.all(free) if reduced.value else SolutionSet.empty(free)
            return finish(sol, "vs")
        sol = cad_one_var(reduced, free, [], limits, stats)
        return finish(sol, "vs")
    except NotLinearError:
        pass

    last_error: Optional[Exception] = None
    for seq in _order_candidates(sentence, VariableOrder(tuple(seq_others + [free]))):
        seq_o = [v for v in seq if v != free]
        try:
            sol = cad_one_var(matrix, free, seq_o, limits, stats)
            return finish(sol, "cad")
        except LiftingDegeneracyError as e:  # pragma: no cover - rare corner
            last_error = e
            continue
    raise ResourceLimitError(
        f"degenerate lifting in all attempted orders ({last_error})", stats)
