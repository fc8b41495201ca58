"""Moments of the Meyer-Konig and Zeller (MKZ) operators.

Four independent routes to (M_n e_r)(x), e_r(t) = t^r:

* a truncated Bernstein-power-series oracle with a rigorous tail bound
  (ground truth for everything else),
* the exact symbolic representation
  1 + (1/n!) (1-x)^{n+1} sum_{s=1}^{r} (-1)^s C(r,s) n^s Li_s^{(n)}(x),
* for r = 2, an elementary logarithm/rational closed form,
* for r = 2, x^2 + x(1-x)^2/(n+1) * 2F1(1, 2; n+2; x).

The front-door evaluator selects between the series oracle (small x, where
the closed forms hide removable x^{-n} cancellation) and rational-assisted
evaluation of the symbolic form, and a comparison harness records all
representations side by side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import mpmath

from . import backend
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import ConvergenceError, DomainError
from .exact_arith import Polynomial, RationalFunction, binomial, factorial
from .polylog import (
    SeriesResult,
    SymbolicExpr,
    _decimal_digits,
    _fraction_to_mpf,
    expr_eval_exact,
    polylog_deriv_expr,
)

_ONE_MINUS_X = Polynomial((1, -1))


@dataclass(frozen=True)
class MomentSpec:
    """Which moment: order r of the monomial and operator index n."""

    r: int
    n: int

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("moment order r must be nonnegative")
        if self.n < 1:
            raise ValueError("operator index n must be >= 1")


@dataclass(frozen=True)
class ComparisonReport:
    """All applicable representation values at one (r, n, x) point."""

    spec: MomentSpec
    x: float
    oracle: float
    theorem: float
    corollary: Optional[float]
    alkemade: Optional[float]
    max_pairwise_dev: float
    oracle_tail_bound: float

    def values(self):
        present = [self.oracle, self.theorem]
        if self.corollary is not None:
            present.append(self.corollary)
        if self.alkemade is not None:
            present.append(self.alkemade)
        return present


# -- series oracle ------------------------------------------------------------


def mkz_apply_series(f: Callable[[float], float], n: int, x: float,
                     cfg: EvalConfig = DEFAULT_CONFIG, f_bound: float = 1.0) -> SeriesResult:
    """Apply the operator to an arbitrary bounded f on [0, 1) by truncation.

    ``f_bound`` must dominate |f| on [0, 1); it enters the tail bound
    f_bound * (1-x)^{n+1} * sum_{v>N} C(v+n, v) x^v, which is estimated
    geometrically once the weight ratio x (v+n+1)/(v+1) drops below 1.
    """
    if n < 1:
        raise DomainError("operator index n must be >= 1")
    if not 0.0 <= x < 1.0:
        raise DomainError(f"operator argument requires 0 <= x < 1, got x = {x}")
    if x == 0.0:
        return SeriesResult(f(0.0), 0.0, 1)
    w = (1.0 - x) ** (n + 1)
    total = 0.0
    comp = 0.0
    nu = 0
    tail = math.inf
    while nu < cfg.max_terms:
        term = w * f(nu / (nu + n))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        w_next = w * x * (nu + n + 1) / (nu + 1)
        q = x * (nu + n + 2) / (nu + 2)
        if q < 1.0:
            tail = f_bound * w_next / (1.0 - q)
            if tail <= cfg.tol:
                return SeriesResult(total, tail, nu + 1)
        w = w_next
        nu += 1
    raise ConvergenceError(
        f"operator series did not reach tol={cfg.tol} within {cfg.max_terms} terms",
        SeriesResult(total, tail, nu),
    )


def moment_series_oracle(spec: MomentSpec, x: float,
                         cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Truncated-series value of (M_n e_r)(x); monomials are bounded by 1."""
    if not 0.0 <= x < 1.0:
        raise DomainError(f"moment oracle requires 0 <= x < 1, got x = {x}")
    value, tail, terms, converged = backend.mkz_moment_series(
        spec.r, spec.n, x, cfg.tol, cfg.max_terms
    )
    result = SeriesResult(value, tail, terms)
    if not converged:
        raise ConvergenceError(
            f"moment series did not reach tol={cfg.tol} within {cfg.max_terms} terms",
            result,
        )
    return result


# -- symbolic representations -------------------------------------------------


def g_moment_expr(s: int, n: int) -> SymbolicExpr:
    """Exact expression of the operator applied to (1-t)^s:
    (n^s / n!) (1-x)^{n+1} Li_s^{(n)}(x); the constant 1 for s = 0."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if n < 1:
        raise ValueError("operator index n must be >= 1")
    if s == 0:
        return SymbolicExpr.constant(1)
    scale = Fraction(n) ** s / factorial(n)
    prefactor = RationalFunction(_ONE_MINUS_X ** (n + 1)).scale(scale)
    return polylog_deriv_expr(s, n).scaled(prefactor)


@lru_cache(maxsize=None)
def _theorem_expr(r: int, n: int) -> SymbolicExpr:
    expr = SymbolicExpr.constant(1)
    if r == 0:
        return expr
    prefactor_poly = _ONE_MINUS_X ** (n + 1)
    for s in range(1, r + 1):
        c = Fraction((-1) ** s) * binomial(r, s) * Fraction(n) ** s / factorial(n)
        expr = expr + polylog_deriv_expr(s, n).scaled(
            RationalFunction(prefactor_poly.scale(c))
        )
    return expr


def moment_theorem_expr(spec: MomentSpec) -> SymbolicExpr:
    """Exact symbolic form of (M_n e_r)(x) in the transcendental basis."""
    return _theorem_expr(spec.r, spec.n)


def second_moment_corollary(n: int, x) -> float:
    """Elementary closed form of the second moment.

    (-1)^n n (1-x)^{n+1} x^{-n} log(1-x) + 2x - 1
      + n (1-x) sum_{k=1}^{n-1} (-1)^{n-1-k} (1/k) ((1-x)/x)^{n-k}

    The rational part is accumulated exactly at the binary-rational value of
    x; the single logarithm enters at a precision sized to the coefficient
    magnitude, which keeps the small-x cancellation harmless.
    """
    if n < 1:
        raise DomainError("operator index n must be >= 1")
    xq = x if isinstance(x, Fraction) else Fraction(x)
    if not 0 < xq < 1:
        raise DomainError(f"closed form requires 0 < x < 1, got x = {x}")
    one_minus = 1 - xq
    log_coeff = Fraction((-1) ** n * n) * one_minus ** (n + 1) / xq**n
    ratio = one_minus / xq
    tail_sum = Fraction(0)
    for k in range(1, n):
        tail_sum += Fraction((-1) ** (n - 1 - k), k) * ratio ** (n - k)
    rational_part = 2 * xq - 1 + n * one_minus * tail_sum
    dps = 25 + _decimal_digits(max(abs(log_coeff), abs(rational_part), Fraction(1)))
    with mpmath.workdps(dps):
        value = _fraction_to_mpf(rational_part) + _fraction_to_mpf(
            log_coeff
        ) * mpmath.log1p(-_fraction_to_mpf(xq))
        return float(value)


def hyp2f1_1_2(n: int, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> SeriesResult:
    """The hypergeometric factor 2F1(1, 2; n+2; x) of the second moment."""
    if n < 1:
        raise DomainError("operator index n must be >= 1")
    if not -1.0 < x < 1.0:
        raise DomainError(f"hypergeometric series requires |x| < 1, got x = {x}")
    if x == 0.0:
        return SeriesResult(1.0, 0.0, 1)
    value, tail, terms, converged = backend.hyp2f1_1_2_series(
        n, x, cfg.tol, cfg.max_terms
    )
    result = SeriesResult(value, tail, terms)
    if not converged:
        raise ConvergenceError(
            f"hypergeometric series did not reach tol={cfg.tol} within "
            f"{cfg.max_terms} terms",
            result,
        )
    return result


def second_moment_alkemade(n: int, x: float,
                           cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Second moment via x^2 + x(1-x)^2/(n+1) * 2F1(1, 2; n+2; x)."""
    if not 0.0 <= x < 1.0:
        raise DomainError(f"second moment requires 0 <= x < 1, got x = {x}")
    if x == 0.0:
        return 0.0
    factor = hyp2f1_1_2(n, x, cfg).value
    return x * x + x * (1.0 - x) ** 2 / (n + 1) * factor


# -- front door ---------------------------------------------------------------


def moment_eval(spec: MomentSpec, x, cfg: EvalConfig = DEFAULT_CONFIG,
                allow_negative_x: bool = False) -> float:
    """Branch-selecting moment evaluation.

    Below cfg.series_branch_threshold the series oracle is used (closed
    forms carry x^{-n} poles that cancel only in the full sum); elsewhere
    the symbolic form is evaluated with exact rational coefficients. The
    negative-x range (-1, 0) is an expert option: the symbolic form remains
    valid there although the operator itself is defined on [0, 1).
    """
    xf = float(x)
    if spec.r == 0:
        if not (-1.0 < xf < 1.0 if allow_negative_x else 0.0 <= xf < 1.0):
            raise DomainError(f"moment evaluation domain violated at x = {x}")
        return 1.0
    if xf < 0.0:
        if not allow_negative_x:
            raise DomainError(
                f"x = {x} is negative; pass allow_negative_x for the symbolic branch"
            )
        if xf <= -1.0:
            raise DomainError(f"moment evaluation requires |x| < 1, got x = {x}")
        return expr_eval_exact(moment_theorem_expr(spec), x, cfg)
    if xf >= 1.0:
        raise DomainError(f"moment evaluation requires 0 <= x < 1, got x = {x}")
    if xf < cfg.series_branch_threshold:
        return moment_series_oracle(spec, xf, cfg).value
    return expr_eval_exact(moment_theorem_expr(spec), x, cfg)


def compare_representations(spec: MomentSpec, x,
                            cfg: EvalConfig = DEFAULT_CONFIG) -> ComparisonReport:
    """Evaluate every applicable representation; report, never raise, on
    disagreement."""
    xf = float(x)
    if not 0.0 < xf < 1.0:
        raise DomainError(f"comparison requires 0 < x < 1, got x = {x}")
    oracle = moment_series_oracle(spec, xf, cfg)
    if spec.r == 0:
        theorem = 1.0
    else:
        theorem = expr_eval_exact(moment_theorem_expr(spec), x, cfg)
    corollary = alkemade = None
    if spec.r == 2:
        corollary = second_moment_corollary(spec.n, x)
        alkemade = second_moment_alkemade(spec.n, xf, cfg)
    present = [oracle.value, theorem]
    if corollary is not None:
        present.append(corollary)
    if alkemade is not None:
        present.append(alkemade)
    max_dev = max(present) - min(present)
    return ComparisonReport(
        spec=spec,
        x=xf,
        oracle=oracle.value,
        theorem=theorem,
        corollary=corollary,
        alkemade=alkemade,
        max_pairwise_dev=max_dev,
        oracle_tail_bound=oracle.tail_bound,
    )
