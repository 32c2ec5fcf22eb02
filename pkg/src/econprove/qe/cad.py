"""Cylindrical algebraic decomposition (Collins projection, full lifting).

Pipeline: the matrix atoms' polynomials are split into a square-free,
pairwise-coprime primitive basis per level (level = highest variable in the
lifting order), the Collins/Hong projection runs top level down, and lifting
walks stacks of sectors and sections with exact algebraic sample points.
Input polynomials are factored over the basis, so their cell signs come from
the basis factors' signs: sections are structural zeros and every other sign
is certified by interval refinement alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from econprove.algebra.poly import (
    Polynomial,
    divexact,
    poly_gcd,
    primitive_wrt,
    principal_subres_coeffs,
    square_free_part,
)
from econprove.algebra.algnum import RealAlgebraicNumber, simplest_rational_between
from econprove.algebra.signs import (
    compare_algebraic,
    isolate_at_point,
    sign_at,
)
from econprove.algebra import roots as _rootmod
from econprove import formula as F
from econprove.formula import Atom, And, Or, _Bool
from econprove.qe.limits import QeStats, ResourceLimitError, RunLimits
from econprove.qe.onevar import SolutionSet

Value = Union[Fraction, RealAlgebraicNumber]


def expand_neq(f: F.Formula) -> F.Formula:
    """Replace p != 0 atoms by (p < 0 || p > 0); CAD cells decide strict signs."""
    if isinstance(f, Atom):
        if f.rel == "!=":
            return Or((Atom(f.poly, "<"), Atom(f.poly, ">")))
        return f
    if isinstance(f, _Bool):
        return f
    if isinstance(f, And):
        return And(tuple(expand_neq(a) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(expand_neq(a) for a in f.args))
    raise TypeError("expand_neq expects an NNF quantifier-free formula")


# -- basis construction -------------------------------------------------------


def insert_candidates(levels: list[list[Polynomial]], polys: list[Polynomial],
                      vars_lift: list[str], limits: RunLimits, stats: QeStats) -> None:
    """Split candidates into square-free primitive factors, route each to the
    level of its highest variable, keep every level pairwise coprime."""
    index = {v: i for i, v in enumerate(vars_lift)}
    queue = list(polys)
    counter = 0
    while queue:
        counter += 1
        if counter % 64 == 0:
            limits.check_time(stats)
        f = queue.pop()
        if f.is_zero or f.is_constant:
            continue
        lvl = max(index[v] for v in f.vars)
        main = vars_lift[lvl]
        cont, pp = primitive_wrt(f, main)
        if not cont.is_constant:
            queue.append(cont)
        pp = square_free_part(pp, main).primitive()
        target = levels[lvl]
        placed = False
        for i, b in enumerate(target):
            if b == pp:
                placed = True
                break
            g = poly_gcd(pp, b)
            if not g.is_constant:
                target.pop(i)
                queue.append(g)
                rb = divexact(b, g).primitive()
                rp = divexact(pp, g).primitive()
                if not rb.is_constant:
                    queue.append(rb)
                if not rp.is_constant:
                    queue.append(rp)
                placed = True
                break
        if not placed:
            target.append(pp)


def build_levels(polys: list[Polynomial], vars_lift: list[str],
                 limits: RunLimits, stats: QeStats) -> list[list[Polynomial]]:
    levels: list[list[Polynomial]] = [[] for _ in vars_lift]
    insert_candidates(levels, polys, vars_lift, limits, stats)
    return levels


def _reducta_chain(f: Polynomial, main: str) -> tuple[list[Polynomial], list[Polynomial]]:
    """(reducta with positive degree, collected coefficients).

    The chain stops early once a reductum has a constant nonzero leading
    coefficient (it can never vanish, so further reducta are not needed).
    """
    chain: list[Polynomial] = []
    coeffs: list[Polynomial] = []
    g = f
    while True:
        d = g.degree(main)
        if d <= 0:
            if not g.is_zero and not g.is_constant:
                coeffs.append(g)
            break
        chain.append(g)
        lc = g.leading_coeff(main)
        coeffs.append(lc)
        if lc.is_constant:
            break
        g = g - lc * Polynomial.variable(main) ** d
    return chain, coeffs


def collins_project(elems: list[Polynomial], main: str) -> list[Polynomial]:
    """Collins-family projection (Hong's PROJ1 + PROJ2*) w.r.t. main."""
    out: list[Polynomial] = []
    chains: list[list[Polynomial]] = []
    for f in elems:
        chain, coeffs = _reducta_chain(f, main)
        chains.append(chain)
        out.extend(coeffs)
        for g in chain:
            if g.degree(main) >= 2:
                out.extend(principal_subres_coeffs(g, g.derivative(main), main))
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            h = elems[j]
            if h.degree(main) < 1:
                continue
            for u in chains[i]:
                if u.degree(main) >= 1:
                    out.extend(principal_subres_coeffs(u, h, main))
    return [c for c in out if not (c.is_zero or c.is_constant)]


def project_all(levels: list[list[Polynomial]], vars_lift: list[str],
                limits: RunLimits, stats: QeStats) -> None:
    """Run projection from the top level down, inserting results below."""
    for i in range(len(vars_lift) - 1, 0, -1):
        limits.check_time(stats)
        cands = collins_project(levels[i], vars_lift[i])
        insert_candidates(levels, cands, vars_lift[:i], limits, stats)
        stats.projection_sizes = [len(l) for l in levels]
        limits.check_projection(stats)
    stats.projection_sizes = [len(l) for l in levels]


def factor_over_basis(p: Polynomial, elems: list[Polynomial]
                      ) -> tuple[int, tuple[tuple[int, int], ...]]:
    """p = const * prod elems[i]^e_i; returns (sign(const), ((i, e_i), ...))."""
    content, prim = p.integer_primitive()
    factors: list[tuple[int, int]] = []
    for idx, b in enumerate(elems):
        if b.is_constant or b.total_degree() > prim.total_degree():
            continue
        e = 0
        while True:
            try:
                q = divexact(prim, b)
            except ValueError:
                break
            prim = q
            e += 1
            if prim.is_constant:
                break
        if e:
            factors.append((idx, e))
        if prim.is_constant:
            break
    if not prim.is_constant:
        raise AssertionError(f"basis does not cover factor {prim} of {p}")
    const = content * prim.constant_value()
    sign = 1 if const > 0 else (-1 if const < 0 else 0)
    return sign, tuple(factors)


# -- lifting -------------------------------------------------------------------


@dataclass
class _Cell:
    sample: Value
    zero_elems: frozenset[int]  # basis elements vanishing on this cell
    is_section: bool
    boundary_index: int         # index into the stack's boundary list (-1 sector)


class CadError(Exception):
    pass


class _Lifter:
    def __init__(self, vars_lift: list[str], kinds: list[str], matrix: F.Formula,
                 levels: list[list[Polynomial]], limits: RunLimits, stats: QeStats):
        self.vars_lift = vars_lift
        self.kinds = kinds
        self.limits = limits
        self.stats = stats
        self.elems: list[Polynomial] = []
        self.elem_level: list[int] = []
        self.level_elems: list[list[int]] = []
        for lvl, es in enumerate(levels):
            ids = []
            for e in es:
                ids.append(len(self.elems))
                self.elems.append(e)
                self.elem_level.append(lvl)
            self.level_elems.append(ids)
        self.matrix = matrix
        self.atom_facts: dict[Atom, tuple[int, tuple[tuple[int, int], ...]]] = {}
        for atom in set(F.atoms_of(matrix)):
            self.atom_facts[atom] = factor_over_basis(atom.poly, self.elems)
        self.pure_existential = all(k == "E" for k in kinds)
        self.witness: Optional[dict[str, Value]] = None

    # -- three-valued evaluation ------------------------------------------

    def _atom_sign(self, atom: Atom, signs: list[Optional[int]]) -> Optional[int]:
        const_sign, factors = self.atom_facts[atom]
        s = const_sign
        unknown = False
        for idx, exp in factors:
            fs = signs[idx]
            if fs == 0:
                return 0
            if fs is None:
                unknown = True
            elif fs < 0 and exp % 2 == 1:
                s = -s
        return None if unknown else s

    def _eval3(self, f: F.Formula, signs) -> Optional[bool]:
        if isinstance(f, _Bool):
            return f.value
        if isinstance(f, Atom):
            s = self._atom_sign(f, signs)
            return None if s is None else f.holds_for_sign(s)
        if isinstance(f, And):
            any_unknown = False
            for a in f.args:
                t = self._eval3(a, signs)
                if t is False:
                    return False
                if t is None:
                    any_unknown = True
            return None if any_unknown else True
        if isinstance(f, Or):
            any_unknown = False
            for a in f.args:
                t = self._eval3(a, signs)
                if t is True:
                    return True
                if t is None:
                    any_unknown = True
            return None if any_unknown else False
        raise TypeError(f"unexpected node {f!r}")

    # -- stacks -------------------------------------------------------------

    def _build_stack(self, lvl: int, point: dict[str, Value]):
        """Returns (boundaries, vanish_state) for this level over `point`.

        boundaries: list of (representative RAN, frozenset of vanishing elem
        ids).  vanish_state: dict elem id -> None (vanishes identically) or
        list of its root positions.
        """
        v = self.vars_lift[lvl]
        ids = self.level_elems[lvl]
        vanish_everywhere: set[int] = set()
        per_root: list[tuple[RealAlgebraicNumber, int]] = []
        for i in ids:
            rts = isolate_at_point(self.elems[i], point, v)
            if rts is None:
                vanish_everywhere.add(i)
                continue
            for r in rts:
                per_root.append((r, i))
        groups: list[tuple[RealAlgebraicNumber, set[int]]] = []
        for r, i in per_root:
            for rep, owners in groups:
                if compare_algebraic(r, rep) == 0:
                    owners.add(i)
                    break
            else:
                groups.append((r, {i}))
        reps = [g[0] for g in groups]
        _rootmod.separate(reps)
        groups.sort(key=lambda g: g[0].lo)
        return groups, vanish_everywhere

    def _cells(self, groups, vanish_everywhere):
        """Yield cells left to right: sector, section, sector, ..."""
        if not groups:
            yield _Cell(Fraction(0), frozenset(vanish_everywhere), False, -1)
            return
        reps = [g[0] for g in groups]
        lo0 = reps[0].lo
        first = Fraction(math.floor(lo0))
        if first >= lo0:  # ensure strictly below the first root
            first -= 1
        yield _Cell(first, frozenset(vanish_everywhere), False, -1)
        for k, (rep, owners) in enumerate(groups):
            yield _Cell(rep, frozenset(vanish_everywhere | owners), True, k)
            if k + 1 < len(groups):
                nxt = groups[k + 1][0]
                while rep.hi > nxt.lo:
                    rep.tighten()
                    nxt.tighten()
                sample = simplest_rational_between(rep.hi, nxt.lo)
                yield _Cell(sample, frozenset(vanish_everywhere), False, -1)
        last = reps[-1]
        top = Fraction(math.ceil(last.hi))
        if top <= last.hi:
            top += 1
        yield _Cell(top, frozenset(vanish_everywhere), False, -1)

    # -- recursion -------------------------------------------------------------

    def run(self):
        n = len(self.vars_lift)
        signs: list[Optional[int]] = [None] * len(self.elems)
        if n == 0:
            t = self._eval3(self.matrix, signs)
            assert t is not None
            return t
        return self._rec(0, {}, signs)

    def _rec(self, lvl: int, point: dict[str, Value], signs: list[Optional[int]]):
        self.limits.check_time(self.stats)
        v = self.vars_lift[lvl]
        kind = self.kinds[lvl]
        groups, vanish_everywhere = self._build_stack(lvl, point)
        collected: Optional[tuple[list, list]] = None
        if kind == "F":
            collected = ([g[0] for g in groups], [])

        result_for_kind = kind != "E"  # E: default False, A: default True
        for cell in self._cells(groups, vanish_everywhere):
            self.stats.cells += 1
            self.limits.check_cells(self.stats)
            self.limits.check_time(self.stats)
            child_point = dict(point)
            child_point[v] = cell.sample
            child_signs = list(signs)
            for i in self.level_elems[lvl]:
                if i in cell.zero_elems:
                    child_signs[i] = 0
                else:
                    child_signs[i] = sign_at(self.elems[i], child_point)
            t = self._eval3(self.matrix, child_signs)
            if t is None:
                t = self._rec(lvl + 1, child_point, child_signs)
            elif t and self.pure_existential and self.witness is None:
                # matrix already true at a partial point: any extension works
                self._complete_witness(child_point, lvl)
            if kind == "E":
                if t:
                    return True
            elif kind == "A":
                if not t:
                    return False
            else:  # free variable at the base level
                collected[1].append(bool(t))
        if kind == "F":
            return collected
        return result_for_kind

    def _complete_witness(self, point: dict[str, Value], lvl: int) -> None:
        full = dict(point)
        for v in self.vars_lift[lvl + 1:]:
            full[v] = Fraction(0)
        self.witness = full


# -- public entry points ---------------------------------------------------------


def _prepare(matrix: F.Formula, vars_lift: list[str], limits: RunLimits,
             stats: QeStats) -> tuple[F.Formula, list[list[Polynomial]]]:
    m = expand_neq(F.simplify(F.nnf(matrix)))
    polys = [a.poly for a in F.atoms_of(m)]
    levels = build_levels(polys, vars_lift, limits, stats)
    project_all(levels, vars_lift, limits, stats)
    return m, levels


def cad_decide(sentence: F.PrenexSentence, sequence: list[str],
               limits: RunLimits, stats: QeStats
               ) -> tuple[bool, Optional[dict[str, Value]]]:
    """Truth of a closed prenex sentence by CAD over the given elimination order."""
    kind_of: dict[str, str] = {}
    for k, vs in sentence.blocks:
        for v in vs:
            kind_of[v] = "E" if k == "exists" else "A"
    vars_lift = list(reversed(sequence))
    kinds = [kind_of[v] for v in vars_lift]
    matrix, levels = _prepare(sentence.matrix, vars_lift, limits, stats)
    if isinstance(matrix, _Bool):
        return matrix.value, ({v: Fraction(0) for v in vars_lift}
                              if matrix.value and all(k == "E" for k in kinds) else None)
    lifter = _Lifter(vars_lift, kinds, matrix, levels, limits, stats)
    result = lifter.run()
    assert isinstance(result, bool)
    witness = lifter.witness if result and all(k == "E" for k in kinds) else None
    return result, witness


def cad_one_var(matrix: F.Formula, free: str, others_sequence: list[str],
                limits: RunLimits, stats: QeStats) -> SolutionSet:
    """SolutionSet of { free : exists others. matrix } by CAD."""
    vars_lift = [free] + list(reversed(others_sequence))
    kinds = ["F"] + ["E"] * len(others_sequence)
    m, levels = _prepare(matrix, vars_lift, limits, stats)
    if isinstance(m, _Bool):
        return SolutionSet.all(free) if m.value else SolutionSet.empty(free)
    lifter = _Lifter(vars_lift, kinds, m, levels, limits, stats)
    result = lifter.run()
    assert isinstance(result, tuple)
    boundaries, truths = result
    return SolutionSet.from_stack(free, boundaries, truths)


def projection_weight(matrix: F.Formula, sequence: list[str], limits: RunLimits) -> int:
    """Total projection size for order scoring (search mode)."""
    stats = QeStats()
    try:
        _, levels = _prepare(matrix, list(reversed(sequence)), limits, stats)
    except ResourceLimitError:
        return 10 ** 9
    return sum(len(l) for l in levels)
