"""Pure-Python series kernels.

These are the hot inner loops of the numeric tier. A compiled twin with
identical signatures lives in ``_speedups.pyx``; ``backend`` picks whichever
is importable. Each kernel returns ``(value, tail_bound, terms_used,
converged)`` and leaves error signalling to the wrappers.

All tail bounds are rigorous geometric dominations of the dropped remainder,
derived from the term ratios of the respective series.
"""

from __future__ import annotations

IMPLEMENTATION = "python"


def polylog_series(s: int, x: float, tol: float, max_terms: int):
    """Truncated sum of x^v / v^s for v >= 1, |x| < 1.

    Tail after N terms: |sum_{v>N} x^v/v^s| <= |x|^{N+1} / ((N+1)^s (1-|x|)).
    """
    ax = abs(x)
    total = 0.0
    comp = 0.0
    p = 1.0  # x^v, updated incrementally
    pa = 1.0  # |x|^v
    nu = 0
    tail = 0.0
    while nu < max_terms:
        nu += 1
        p *= x
        pa *= ax
        term = p / float(nu) ** s
        # Kahan-compensated accumulation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        tail = pa * ax / (float(nu + 1) ** s * (1.0 - ax))
        if tail <= tol:
            return total, tail, nu, True
    return total, tail, nu, False


def mkz_moment_series(r: int, n: int, x: float, tol: float, max_terms: int):
    """Truncated Bernstein power series of the r-th monomial moment.

    Sums (1-x)^{n+1} * C(v+n, v) * (v/(v+n))^r * x^v over v >= 0. The weight
    ratio w_{v+1}/w_v = x (v+n+1)/(v+1) decreases in v, so once it drops
    below 1 the remainder is dominated by the geometric series with ratio
    q = x (v+n+2)/(v+2); monomial values on [0, 1) are bounded by 1.
    """
    if x == 0.0:
        return (1.0 if r == 0 else 0.0), 0.0, 1, True
    w = (1.0 - x) ** (n + 1)  # (1-x)^{n+1} C(v+n,v) x^v, updated incrementally
    total = 0.0
    comp = 0.0
    nu = 0
    tail = 0.0
    while nu < max_terms:
        term = w if r == 0 else w * (nu / (nu + n)) ** r
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        w_next = w * x * (nu + n + 1) / (nu + 1)
        q = x * (nu + n + 2) / (nu + 2)
        if q < 1.0:
            tail = w_next / (1.0 - q)
            if tail <= tol:
                return total, tail, nu + 1, True
        w = w_next
        nu += 1
    return total, tail, nu, False


def hyp2f1_1_2_series(n: int, x: float, tol: float, max_terms: int):
    """Gauss series of the (1, 2; n+2) hypergeometric instance, |x| < 1.

    Terms c_k = (n+1)! (k+1)! / (n+k+1)! x^k with c_0 = 1 and ratio
    c_{k+1}/c_k = (k+2) x / (n+k+2); |ratio| < |x|, so the remainder after
    K terms is at most |c_{K+1}| / (1 - |x|).
    """
    ax = abs(x)
    total = 0.0
    comp = 0.0
    c = 1.0
    k = 0
    tail = 0.0
    while k < max_terms:
        y = c - comp
        t = total + y
        comp = (t - total) - y
        total = t
        c_next = c * (k + 2) * x / (n + k + 2)
        tail = abs(c_next) / (1.0 - ax)
        if tail <= tol:
            return total, tail, k + 1, True
        c = c_next
        k += 1
    return total, tail, k, False
