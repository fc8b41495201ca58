"""Polylogarithm engine.

Numeric side: truncated series evaluation of Li_s(x) = sum x^v / v^s with a
rigorous tail bound. Symbolic side: exact n-th derivatives of Li_s in the
transcendental basis {1, log(1-x), Li_2, Li_3, ...} with rational-function
coefficients, driven by the relation Li_s'(x) = Li_{s-1}(x) / x and
Li_1(x) = -log(1-x).

The basis deliberately has no Li_1 element: weight 1 is log(1-x) itself and
the sign is folded in at construction, which keeps the basis linearly
independent over rational functions. Structural equality of canonical
expressions therefore certifies equality of the represented functions on
(-1, 1) \\ {0}.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

import mpmath

from . import backend
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import ConvergenceError, DomainError
from .exact_arith import (
    BigRational,
    Polynomial,
    RationalFunction,
    factorial,
)

_X = Polynomial.x()
_ONE_MINUS_X = Polynomial((1, -1))


@dataclass(frozen=True, order=True)
class BasisElement:
    """One element of the transcendental basis, identified by weight.

    weight 0 is the constant 1, weight 1 is log(1-x), weight k >= 2 is the
    polylogarithm Li_k. Ordering by weight is the canonical term order.
    """

    weight: int

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("basis weight must be nonnegative")

    @classmethod
    def one(cls) -> "BasisElement":
        return cls(0)

    @classmethod
    def log(cls) -> "BasisElement":
        return cls(1)

    @classmethod
    def li(cls, k: int) -> "BasisElement":
        if k < 2:
            raise ValueError("Li basis elements require weight >= 2; weight 1 is log(1-x)")
        return cls(k)

    def render_plain(self) -> str:
        if self.weight == 0:
            return "1"
        if self.weight == 1:
            return "log(1-x)"
        return f"Li_{self.weight}(x)"

    def render_latex(self) -> str:
        if self.weight == 0:
            return "1"
        if self.weight == 1:
            return "\\log(1-x)"
        return f"\\mathrm{{Li}}_{{{self.weight}}}(x)"


ONE = BasisElement.one()
LOG = BasisElement.log()


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series together with a rigorous tail bound."""

    value: float
    tail_bound: float
    terms_used: int


class SymbolicExpr:
    """Finite linear combination of basis elements over rational functions.

    Zero coefficients are never stored; coefficients are canonical, so dict
    equality is mathematical equality.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[BasisElement, RationalFunction] = None):
        clean = {}
        if terms:
            for b, rf in terms.items():
                if not rf.is_zero:
                    clean[b] = rf
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymbolicExpr is immutable")

    @classmethod
    def zero(cls) -> "SymbolicExpr":
        return cls({})

    @classmethod
    def basis(cls, b: BasisElement, coeff=1) -> "SymbolicExpr":
        if isinstance(coeff, RationalFunction):
            rf = coeff
        else:
            rf = RationalFunction.constant(coeff)
        return cls({b: rf})

    @classmethod
    def constant(cls, c) -> "SymbolicExpr":
        return cls.basis(ONE, c)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Tuple[BasisElement, RationalFunction]]:
        return sorted(self.terms.items(), key=lambda item: item[0].weight)

    def __eq__(self, other):
        if not isinstance(other, SymbolicExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.sorted_terms()))

    def __add__(self, other: "SymbolicExpr") -> "SymbolicExpr":
        out = dict(self.terms)
        for b, rf in other.terms.items():
            out[b] = out[b] + rf if b in out else rf
        return SymbolicExpr(out)

    def __neg__(self) -> "SymbolicExpr":
        return SymbolicExpr({b: -rf for b, rf in self.terms.items()})

    def __sub__(self, other: "SymbolicExpr") -> "SymbolicExpr":
        return self + (-other)

    def scaled(self, factor) -> "SymbolicExpr":
        """Multiply every coefficient by a rational function or scalar."""
        if not isinstance(factor, RationalFunction):
            factor = RationalFunction.constant(factor)
        return SymbolicExpr({b: rf * factor for b, rf in self.terms.items()})

    def __repr__(self):
        return f"SymbolicExpr({self.render_plain()})"

    # -- rendering -------------------------------------------------------

    def render_plain(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for b, rf in self.sorted_terms():
            if b.weight == 0:
                parts.append(rf.render_plain())
            elif rf == RationalFunction.constant(1):
                parts.append(b.render_plain())
            else:
                parts.append(f"{_as_factor(rf.render_plain())}*{b.render_plain()}")
        return " + ".join(parts)

    def render_latex(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for b, rf in self.sorted_terms():
            if b.weight == 0:
                parts.append(rf.render_latex())
            elif rf == RationalFunction.constant(1):
                parts.append(b.render_latex())
            else:
                parts.append(f"{_as_factor_latex(rf)}\\,{b.render_latex()}")
        return " + ".join(parts)


def _as_factor(text: str) -> str:
    if " " in text or text.startswith("-"):
        return f"({text})"
    return text


def _as_factor_latex(rf: RationalFunction) -> str:
    text = rf.render_latex()
    if rf.den == Polynomial.one() and (" " in text or text.startswith("-")):
        return f"\\left({text}\\right)"
    return text


# -- symbolic differentiation ----------------------------------------------


def _div_by(rf: RationalFunction, p: Polynomial) -> RationalFunction:
    return RationalFunction(rf.num, rf.den * p)


def expr_diff(e: SymbolicExpr) -> SymbolicExpr:
    """Exact derivative of an expression in the transcendental basis.

    Product rule per term; the basis elements differentiate as
    (log(1-x))' = -1/(1-x), Li_2' = -log(1-x)/x, Li_k' = Li_{k-1}/x.
    """
    out: Dict[BasisElement, RationalFunction] = {}

    def add(b, rf):
        out[b] = out[b] + rf if b in out else rf

    for b, rf in e.terms.items():
        add(b, rf.derivative())
        if b.weight == 1:
            add(ONE, -_div_by(rf, _ONE_MINUS_X))
        elif b.weight == 2:
            add(LOG, -_div_by(rf, _X))
        elif b.weight >= 3:
            add(BasisElement.li(b.weight - 1), _div_by(rf, _X))
    return SymbolicExpr(out)


@lru_cache(maxsize=None)
def polylog_deriv_expr(s: int, n: int) -> SymbolicExpr:
    """Exact n-th derivative of Li_s as a basis expression.

    Built by iterated differentiation; the closed forms below serve as
    independent oracles for it, not the other way round. Cached per (s, n)
    and reused incrementally.
    """
    if s < 1:
        raise ValueError("polylogarithm weight must be >= 1")
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n == 0:
        if s == 1:
            return SymbolicExpr.basis(LOG, -1)
        return SymbolicExpr.basis(BasisElement.li(s))
    return expr_diff(polylog_deriv_expr(s, n - 1))


def li1_deriv_closed(n: int) -> SymbolicExpr:
    """Closed form (n-1)! / (1-x)^n for the n-th derivative of -log(1-x)."""
    if n < 1:
        raise ValueError("closed form requires n >= 1")
    coeff = RationalFunction(
        Polynomial.constant(factorial(n - 1)), _ONE_MINUS_X**n
    )
    return SymbolicExpr.basis(ONE, coeff)


def li2_deriv_closed(n: int) -> SymbolicExpr:
    """Closed form of the n-th derivative of Li_2.

    Log coefficient (-1)^n (n-1)!/x^n plus the rational part
    ((n-1)!/x^n) * sum_{k=1}^{n-1} (-1)^{n-1-k} (1/k) (x/(1-x))^k.
    """
    if n < 1:
        raise ValueError("closed form requires n >= 1")
    fact = factorial(n - 1)
    prefactor = RationalFunction(Polynomial.constant(fact), _X**n)
    log_coeff = prefactor.scale((-1) ** n)
    rational_part = RationalFunction.constant(0)
    for k in range(1, n):
        term = RationalFunction(_X**k, _ONE_MINUS_X**k).scale(
            BigRational((-1) ** (n - 1 - k), k)
        )
        rational_part = rational_part + term
    return SymbolicExpr({LOG: log_coeff, ONE: prefactor * rational_part})


# -- numeric evaluation ------------------------------------------------------


def polylog_series(s: int, x: float, cfg: EvalConfig = DEFAULT_CONFIG, *,
                   tol: float = None) -> SeriesResult:
    """Numeric Li_s(x) for |x| < 1, s >= 1, with a rigorous tail bound."""
    if s < 1:
        raise DomainError("polylog series requires weight s >= 1")
    if not -1.0 < x < 1.0:
        raise DomainError(f"polylog series requires |x| < 1, got x = {x}")
    if x == 0.0:
        return SeriesResult(0.0, 0.0, 0)
    effective_tol = cfg.tol if tol is None else tol
    value, tail, terms, converged = backend.polylog_series(
        s, x, effective_tol, cfg.max_terms
    )
    result = SeriesResult(value, tail, terms)
    if not converged:
        raise ConvergenceError(
            f"polylog series did not reach tol={effective_tol} within "
            f"{cfg.max_terms} terms (tail bound {tail})",
            result,
        )
    return result


def expr_eval(e: SymbolicExpr, x: float, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Double-precision evaluation of a basis expression at |x| < 1.

    Coefficients go through compensated Horner evaluation; log(1-x) uses
    log1p; Li_k series tolerances are tightened by the number of terms and
    the largest coefficient magnitude so the total error stays near cfg.tol.
    Coefficient poles (x = 0 with x^{-n} coefficients) are reported, not
    patched: the singularity is removable only in full moment combinations.
    """
    if not -1.0 < x < 1.0:
        raise DomainError(f"expression evaluation requires |x| < 1, got x = {x}")
    if e.is_zero:
        return 0.0
    terms = e.sorted_terms()
    coeff_values = [rf.eval_float(x, cfg.pole_guard) for _, rf in terms]
    max_coeff = max((abs(v) for v in coeff_values), default=1.0)
    li_tol = cfg.tol / (len(terms) * max(1.0, max_coeff))
    contributions = []
    for (b, _), cv in zip(terms, coeff_values):
        if b.weight == 0:
            contributions.append(cv)
        elif b.weight == 1:
            contributions.append(cv * math.log1p(-x))
        else:
            contributions.append(cv * polylog_series(b.weight, x, cfg, tol=li_tol).value)
    return math.fsum(contributions)


def expr_eval_exact(e: SymbolicExpr, x, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Rational-assisted evaluation for cancellation-heavy expressions.

    The rational coefficients are evaluated exactly at the (binary-exact)
    rational point; log(1-x) and Li_k enter at a working precision sized to
    the largest coefficient magnitude, so cross-basis cancellation of tens
    of digits is absorbed before rounding to double.
    """
    xq = x if isinstance(x, Fraction) else Fraction(x)
    if not -1 < xq < 1:
        raise DomainError(f"expression evaluation requires |x| < 1, got x = {x}")
    if e.is_zero:
        return 0.0
    coeffs = [(b, rf.eval_exact(xq)) for b, rf in e.sorted_terms()]
    magnitude = max(abs(c) for _, c in coeffs)
    dps = 25 + _decimal_digits(magnitude)
    with mpmath.workdps(dps):
        total = mpmath.mpf(0)
        for b, c in coeffs:
            total += _fraction_to_mpf(c) * _basis_value_mp(b, xq, dps)
        return float(total)


def _decimal_digits(q: Fraction) -> int:
    if q == 0:
        return 0
    bits = q.numerator.bit_length() - q.denominator.bit_length()
    return max(0, int(bits * 0.30103) + 1)


def _fraction_to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


_li_mp_cache: Dict[Tuple[int, Fraction, int], object] = {}
_li_mp_lock = threading.Lock()


def _basis_value_mp(b: BasisElement, xq: Fraction, dps: int):
    if b.weight == 0:
        return mpmath.mpf(1)
    if b.weight == 1:
        return mpmath.log1p(-_fraction_to_mpf(xq))
    bucket = 10 * math.ceil(dps / 10)
    key = (b.weight, xq, bucket)
    with _li_mp_lock:
        cached = _li_mp_cache.get(key)
    if cached is not None:
        return +cached
    with mpmath.workdps(bucket + 10):
        value = _polylog_mp(b.weight, xq, bucket + 10)
    with _li_mp_lock:
        _li_mp_cache[key] = value
    return +value


def _polylog_mp(k: int, xq: Fraction, dps: int):
    """Li_k series at working precision; same tail bound as the double kernel."""
    x = _fraction_to_mpf(xq)
    ax = abs(x)
    target = mpmath.mpf(10) ** (-(dps + 2))
    total = mpmath.mpf(0)
    p = mpmath.mpf(1)
    nu = 0
    while nu < DEFAULT_CONFIG.max_terms:
        nu += 1
        p *= x
        total += p / mpmath.mpf(nu) ** k
        tail = abs(p) * ax / (mpmath.mpf(nu + 1) ** k * (1 - ax))
        if tail <= target:
            return total
    raise ConvergenceError(f"high-precision Li_{k} series stalled at x = {xq}")
