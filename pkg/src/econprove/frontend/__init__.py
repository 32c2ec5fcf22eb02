"""Theory-file frontend: parsing, lints, differentiation, scalar abstraction."""

from econprove.frontend.ast import (
    SApply, SDiffSym, SDot, SExpr, SNum, SVar, SAdd, SMul, SPow, SNeg, SDiv,
    SRel, SNot, SAnd, SOr, SImplies, SFormula, Span,
)
from econprove.frontend.parser import ParseError, parse_source
from econprove.frontend.analyze import (
    FrontendError,
    Lint,
    SpaceReport,
    TheoryProblem,
    abstract_terms,
    gramian_augment,
    lint_problem,
    load_theory,
    total_diff,
)

__all__ = [
    "SExpr", "SNum", "SVar", "SAdd", "SMul", "SPow", "SNeg", "SDiv",
    "SApply", "SDot", "SDiffSym",
    "SFormula", "SRel", "SNot", "SAnd", "SOr", "SImplies", "Span",
    "ParseError", "parse_source",
    "FrontendError", "Lint", "SpaceReport", "TheoryProblem",
    "abstract_terms", "gramian_augment", "lint_problem", "load_theory",
    "total_diff",
]
