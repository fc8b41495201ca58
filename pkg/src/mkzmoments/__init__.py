"""Moments of the Meyer-Konig and Zeller operators.

Exact symbolic closed forms over a {1, log(1-x), Li_k} basis, a rigorous
truncated-series oracle, an elementary second-moment formula, and the
hypergeometric second-moment representation, all cross-validated.
"""

from .backend import backend_name
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import ConvergenceError, DomainError, PoleError
from .exact_arith import (
    BigRational,
    Polynomial,
    RationalFunction,
    binomial,
    factorial,
    rat_arith,
    ratfun_derivative,
    ratfun_eval,
    ratfun_normalize,
)
from .moments import (
    ComparisonReport,
    MomentSpec,
    compare_representations,
    g_moment_expr,
    hyp2f1_1_2,
    mkz_apply_series,
    moment_eval,
    moment_series_oracle,
    moment_theorem_expr,
    second_moment_alkemade,
    second_moment_corollary,
)
from .polylog import (
    BasisElement,
    SeriesResult,
    SymbolicExpr,
    expr_diff,
    expr_eval,
    expr_eval_exact,
    li1_deriv_closed,
    li2_deriv_closed,
    polylog_deriv_expr,
    polylog_series,
)

__version__ = "0.1.0"

__all__ = [
    "BasisElement",
    "BigRational",
    "ComparisonReport",
    "ConvergenceError",
    "DEFAULT_CONFIG",
    "DomainError",
    "EvalConfig",
    "MomentSpec",
    "PoleError",
    "Polynomial",
    "RationalFunction",
    "SeriesResult",
    "SymbolicExpr",
    "backend_name",
    "binomial",
    "compare_representations",
    "expr_diff",
    "expr_eval",
    "expr_eval_exact",
    "factorial",
    "g_moment_expr",
    "hyp2f1_1_2",
    "li1_deriv_closed",
    "li2_deriv_closed",
    "mkz_apply_series",
    "moment_eval",
    "moment_series_oracle",
    "moment_theorem_expr",
    "polylog_deriv_expr",
    "polylog_series",
    "rat_arith",
    "ratfun_derivative",
    "ratfun_eval",
    "ratfun_normalize",
    "second_moment_alkemade",
    "second_moment_corollary",
]
