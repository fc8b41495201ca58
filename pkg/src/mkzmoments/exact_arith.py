"""Exact arithmetic substrate: rational scalars, dense univariate polynomials,
and canonically normalized rational functions.

Every symbolic coefficient in the package lives here. Scalars are
arbitrary-precision rationals (``fractions.Fraction``), polynomials are dense
coefficient vectors over them, and rational functions are kept in a canonical
reduced form so that equality is a plain structural comparison:

* numerator and denominator have integer coefficients,
* they share no polynomial factor (gcd = 1) and no integer content,
* the denominator's leading coefficient is positive.

All values are immutable after construction; every operation is a pure
function, so sharing across threads is safe.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

from .errors import PoleError

# Arbitrary-precision exact rational scalar. The stdlib type already
# maintains the required invariants (reduced form, positive denominator).
BigRational = Fraction

Scalar = Union[int, Fraction]

# Degree of the zero polynomial. A distinguished marker, not -1.
NEG_INFINITY = float("-inf")


def rat_arith(a: Scalar, b: Scalar, op: str) -> Fraction:
    """Exact rational arithmetic with an explicit division-by-zero signal."""
    a = Fraction(a)
    b = Fraction(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero in exact rational arithmetic")
        return a / b
    raise ValueError(f"unknown rational operation {op!r}")


def factorial(n: int) -> Fraction:
    """Exact n! as a rational with denominator 1."""
    if n < 0:
        raise ValueError("factorial requires a nonnegative integer")
    return Fraction(math.factorial(n))


def binomial(n: int, k: int) -> Fraction:
    """Exact binomial coefficient C(n, k); zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial requires nonnegative integers")
    return Fraction(math.comb(n, k))


def _trim(coeffs: Sequence[Fraction]) -> tuple:
    last = len(coeffs)
    while last > 0 and coeffs[last - 1] == 0:
        last -= 1
    return tuple(coeffs[:last])


class Polynomial:
    """Dense univariate polynomial over exact rationals.

    ``coeffs[i]`` is the coefficient of x^i; the highest stored entry is
    nonzero and the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar] = ()):
        object.__setattr__(self, "coeffs", _trim([Fraction(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        return cls((c,))

    # -- structure ----------------------------------------------------

    @property
    def degree(self):
        """Degree, with a minus-infinity marker for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({self.render_plain()})"

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return Polynomial.zero()
        return Polynomial([a * c for a in self.coeffs])

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, divisor: "Polynomial"):
        """Exact division with remainder over the rationals."""
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dcoeffs = divisor.coeffs
        dn = len(dcoeffs)
        if len(rem) < dn:
            return Polynomial.zero(), Polynomial(rem)
        quot = [Fraction(0)] * (len(rem) - dn + 1)
        lead = dcoeffs[-1]
        for i in range(len(rem) - dn, -1, -1):
            q = rem[i + dn - 1] / lead
            if q == 0:
                continue
            quot[i] = q
            for j, d in enumerate(dcoeffs):
                rem[i + j] -= q * d
        return Polynomial(quot), Polynomial(rem)

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        q, r = self.divmod(divisor)
        if not r.is_zero:
            raise ValueError("polynomial division was not exact")
        return q

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    # -- evaluation ----------------------------------------------------

    def eval_exact(self, x: Scalar) -> Fraction:
        """Horner evaluation over exact rationals."""
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        """Compensated floating-point evaluation (exact summation of terms)."""
        if not self.coeffs:
            return 0.0
        return math.fsum(float(c) * x**i for i, c in enumerate(self.coeffs) if c)

    # -- rendering ------------------------------------------------------

    def render_plain(self) -> str:
        return self._render(latex=False)

    def render_latex(self) -> str:
        return self._render(latex=True)

    def _render(self, latex: bool) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            term = _render_term(abs(c), i, latex)
            parts.append((sign, term))
        sign0, term0 = parts[0]
        text = ("-" if sign0 == "-" else "") + term0
        for sign, term in parts[1:]:
            text += f" {sign} {term}"
        return text


def _render_term(c: Fraction, power: int, latex: bool) -> str:
    if power == 0:
        return _render_coeff(c, latex)
    if power == 1:
        xpart = "x"
    elif latex:
        xpart = f"x^{{{power}}}"
    else:
        xpart = f"x^{power}"
    if c == 1:
        return xpart
    if latex:
        return _render_coeff(c, latex) + xpart
    return _render_coeff(c, latex) + "*" + xpart


def _render_coeff(c: Fraction, latex: bool) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    if latex:
        sign = "-" if c < 0 else ""
        return sign + f"\\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    return f"({c.numerator}/{c.denominator})"


# -- integer gcd machinery (primitive PRS) ------------------------------


def _int_content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _int_primitive(coeffs):
    """Primitive part of an integer coefficient list, positive leading sign."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs:
        return []
    g = _int_content(coeffs)
    if coeffs[-1] < 0:
        g = -g
    return [c // g for c in coeffs]


def _int_pseudo_rem(a, b):
    """Pseudo-remainder of integer coefficient lists (deg a >= deg b)."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - db
        top = a[-1]
        a = [c * lead for c in a]
        for j in range(db + 1):
            a[shift + j] -= top * b[j]
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _to_int_coeffs(p: Polynomial):
    """Clear denominators: integer coefficient list of a scalar multiple."""
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in p.coeffs]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Gcd via the primitive-remainder-sequence Euclid over integers.

    Returns the integer-primitive gcd with positive leading coefficient;
    gcd(p, 0) = primitive part of p, gcd(0, 0) = 0.
    """
    ca = _int_primitive(_to_int_coeffs(a))
    cb = _int_primitive(_to_int_coeffs(b))
    while cb:
        ca, cb = cb, _int_primitive(_int_pseudo_rem(ca, cb))
    return Polynomial(ca)


class RationalFunction:
    """Quotient of two polynomials in canonical reduced form.

    Canonical form: integer coefficients, coprime numerator/denominator with
    coprime contents, denominator leading coefficient positive. Structural
    equality of canonical forms is mathematical equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = None):
        if den is None:
            den = Polynomial.one()
        num, den = _normalize(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def constant(cls, c: Scalar) -> "RationalFunction":
        return cls(Polynomial.constant(c))

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RationalFunction":
        return cls(p)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.render_plain()})"

    # -- field operations ----------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def scale(self, c: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.scale(c), self.den)

    def derivative(self) -> "RationalFunction":
        """Quotient-rule derivative, renormalized."""
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    # -- evaluation ------------------------------------------------------

    def eval_exact(self, x: Scalar) -> Fraction:
        den = self.den.eval_exact(x)
        if den == 0:
            raise PoleError(f"rational function has a pole at x = {x}")
        return self.num.eval_exact(x) / den

    def eval_float(self, x: float, pole_guard: float = 1e-300) -> float:
        den = self.den.eval_float(x)
        scale = max((abs(float(c)) for c in self.den.coeffs), default=1.0)
        if abs(den) < pole_guard * max(1.0, scale):
            raise PoleError(f"rational function evaluated too close to a pole at x = {x}")
        return self.num.eval_float(x) / den

    # -- rendering ---------------------------------------------------------

    def render_plain(self) -> str:
        if self.den == Polynomial.one():
            return self.num.render_plain()
        return f"({self.num.render_plain()})/({self.den.render_plain()})"

    def render_latex(self) -> str:
        if self.den == Polynomial.one():
            return self.num.render_latex()
        return f"\\frac{{{self.num.render_latex()}}}{{{self.den.render_latex()}}}"


_ONE_MINUS_X_FACTOR = Polynomial((1, -1))


def _split_power_of_x(p: Polynomial):
    """p = x^a * rest with rest(0) != 0; returns (a, rest)."""
    a = 0
    for c in p.coeffs:
        if c != 0:
            break
        a += 1
    return a, Polynomial(p.coeffs[a:])


def _split_power_of_one_minus_x(p: Polynomial):
    """p = (1-x)^b * rest with rest(1) != 0; returns (b, rest)."""
    if all(c.denominator == 1 for c in p.coeffs):
        # Integer synthetic division by (x - 1), sign-adjusted, is much
        # cheaper than general polynomial division on this hot path.
        coeffs = [c.numerator for c in p.coeffs]
        b = 0
        while coeffs and sum(coeffs) == 0:
            quot = [0] * (len(coeffs) - 1)
            acc = 0
            for i in range(len(coeffs) - 1, 0, -1):
                acc += coeffs[i]
                quot[i - 1] = -acc
            coeffs = quot
            b += 1
        return b, Polynomial(coeffs)
    b = 0
    while p.eval_exact(1) == 0:
        p = p.exact_div(_ONE_MINUS_X_FACTOR)
        b += 1
    return b, p


def _structured_cancel(num: Polynomial, den: Polynomial):
    """Fast cancellation when den = c * x^a * (1-x)^b.

    Every denominator arising in this package has that shape, which makes
    the general gcd unnecessary on the hot path. Returns None when the
    denominator is not of this form.
    """
    a, rest = _split_power_of_x(den)
    b, rest = _split_power_of_one_minus_x(rest)
    if rest.degree != 0:
        return None
    na, num = _split_power_of_x(num)
    drop = min(a, na)
    a -= drop
    num = Polynomial((0,) * (na - drop) + num.coeffs)
    nb, num_core = _split_power_of_one_minus_x(num)
    drop = min(b, nb)
    b -= drop
    if drop:
        num = num_core * _ONE_MINUS_X_FACTOR ** (nb - drop)
    den = (Polynomial((0, 1)) ** a * _ONE_MINUS_X_FACTOR**b).scale(
        rest.leading_coefficient
    )
    return num, den


def _normalize(num: Polynomial, den: Polynomial):
    if den.is_zero:
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero:
        return Polynomial.zero(), Polynomial.one()

    # Clear denominators with one common factor so the value is unchanged.
    lcm = 1
    for c in num.coeffs + den.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    inum = Polynomial([c * lcm for c in num.coeffs])
    iden = Polynomial([c * lcm for c in den.coeffs])

    structured = _structured_cancel(inum, iden)
    if structured is not None:
        inum, iden = structured
    else:
        g = poly_gcd(inum, iden)
        if g.degree != 0 or g.leading_coefficient != 1:
            inum = inum.exact_div(g)
            iden = iden.exact_div(g)

    cn = _int_content([int(c) for c in inum.coeffs])
    cd = _int_content([int(c) for c in iden.coeffs])
    c = math.gcd(cn, cd)
    if iden.leading_coefficient < 0:
        c = -c
    if c != 1:
        inum = Polynomial([a / c for a in inum.coeffs])
        iden = Polynomial([a / c for a in iden.coeffs])
    return inum, iden


def ratfun_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Canonical reduced rational function; idempotent."""
    return RationalFunction(num, den)


def ratfun_derivative(f: RationalFunction) -> RationalFunction:
    return f.derivative()


def ratfun_eval(f: RationalFunction, x: float, pole_guard: float = 1e-300) -> float:
    return f.eval_float(x, pole_guard)
