# cython: language_level=3, boundscheck=False, wraparound=False
"""Cython kernels mirroring ``powerpoly._kernels_pure``.

Coefficients stay generic Python objects (Fraction/int) so exactness is
untouched; the speedup comes from tight C loops over the tuple monomials
and dict plumbing.
"""

BACKEND = "cython"


def mono_deg(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef object s = 0
    for i in range(n):
        s += a[i]
    return s


def mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] + b[i]
    return tuple(out)


def mono_div(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef long d
    cdef list out = [0] * n
    for i in range(n):
        d = a[i] - b[i]
        if d < 0:
            return None
        out[i] = d
    return tuple(out)


def mono_divides(tuple b, tuple a):
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if b[i] > a[i]:
            return False
    return True


def mono_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = a[i] if a[i] >= b[i] else b[i]
    return tuple(out)


def grlex_key(tuple a):
    return (mono_deg(a), a)


def grevlex_key(tuple a):
    cdef Py_ssize_t i, n = len(a)
    cdef list rev = [0] * n
    for i in range(n):
        rev[i] = -a[n - 1 - i]
    return (mono_deg(a), tuple(rev))


def poly_mul(dict ta, dict tb):
    cdef dict out = {}
    cdef tuple ma, mb, m
    cdef object ca, cb, c
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            m = mono_mul(ma, mb)
            c = out.get(m)
            if c is None:
                out[m] = ca * cb
            else:
                c = c + ca * cb
                if c:
                    out[m] = c
                else:
                    del out[m]
    return out


def poly_addmul(dict acc, object coeff, tuple mono, dict tb):
    cdef tuple mb, m
    cdef object cb, c
    for mb, cb in tb.items():
        m = mono_mul(mono, mb)
        c = acc.get(m)
        if c is None:
            acc[m] = coeff * cb
        else:
            c = c + coeff * cb
            if c:
                acc[m] = c
            else:
                del acc[m]


def vec_dot(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef object s = 0
    for i in range(n):
        s += a[i] * b[i]
    return s


def vec_combine(object ca, tuple a, object cb, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = ca * a[i] + cb * b[i]
    return tuple(out)
