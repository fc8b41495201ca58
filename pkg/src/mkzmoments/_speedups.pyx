# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled series kernels; signature-compatible twin of ``kernels``.

See ``kernels.py`` for the tail-bound derivations. Keep both files in sync.
"""

IMPLEMENTATION = "cython"


def polylog_series(int s, double x, double tol, long max_terms):
    cdef double ax = x if x >= 0 else -x
    cdef double total = 0.0, comp = 0.0, p = 1.0, pa = 1.0
    cdef double term, y, t, tail = 0.0
    cdef long nu = 0
    while nu < max_terms:
        nu += 1
        p *= x
        pa *= ax
        term = p / (<double> nu) ** s
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        tail = pa * ax / ((<double> (nu + 1)) ** s * (1.0 - ax))
        if tail <= tol:
            return total, tail, nu, True
    return total, tail, nu, False


def mkz_moment_series(int r, int n, double x, double tol, long max_terms):
    cdef double w, total = 0.0, comp = 0.0
    cdef double term, y, t, w_next, q, tail = 0.0
    cdef long nu = 0
    if x == 0.0:
        return (1.0 if r == 0 else 0.0), 0.0, 1, True
    w = (1.0 - x) ** (n + 1)
    while nu < max_terms:
        if r == 0:
            term = w
        else:
            term = w * ((<double> nu) / (<double> (nu + n))) ** r
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        w_next = w * x * (<double> (nu + n + 1)) / (<double> (nu + 1))
        q = x * (<double> (nu + n + 2)) / (<double> (nu + 2))
        if q < 1.0:
            tail = w_next / (1.0 - q)
            if tail <= tol:
                return total, tail, nu + 1, True
        w = w_next
        nu += 1
    return total, tail, nu, False


def hyp2f1_1_2_series(int n, double x, double tol, long max_terms):
    cdef double ax = x if x >= 0 else -x
    cdef double total = 0.0, comp = 0.0, c = 1.0
    cdef double y, t, c_next, tail = 0.0
    cdef long k = 0
    while k < max_terms:
        y = c - comp
        t = total + y
        comp = (t - total) - y
        total = t
        c_next = c * (<double> (k + 2)) * x / (<double> (n + k + 2))
        tail = (c_next if c_next >= 0 else -c_next) / (1.0 - ax)
        if tail <= tol:
            return total, tail, k + 1, True
        c = c_next
        k += 1
    return total, tail, k, False
