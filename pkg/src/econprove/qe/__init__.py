"""Quantifier elimination: linear virtual substitution + Collins-projection CAD."""

from econprove.qe.limits import QeStats, ResourceLimitError, RunLimits
from econprove.qe.onevar import Piece, SolutionSet, cmp_value
from econprove.qe.vs import NotLinearError, eliminate_linear
from econprove.qe.cad import cad_decide, cad_one_var, collins_project, build_levels, project_all
from econprove.qe.core import Decision, VariableOrder, choose_order, decide, project_onto

__all__ = [
    "QeStats",
    "ResourceLimitError",
    "RunLimits",
    "Piece",
    "SolutionSet",
    "cmp_value",
    "NotLinearError",
    "eliminate_linear",
    "cad_decide",
    "cad_one_var",
    "collins_project",
    "build_levels",
    "project_all",
    "Decision",
    "VariableOrder",
    "choose_order",
    "decide",
    "project_onto",
]
