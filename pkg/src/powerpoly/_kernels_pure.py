"""Pure-Python kernels for monomial and sparse-term arithmetic.

These are the hot inner loops of polynomial multiplication, division and
double-description ray arithmetic.  `powerpoly._kernels` swaps in the
compiled Cython version when available; both implementations must be
behaviourally identical (same inputs, same outputs, bit for bit).

Monomials are tuples of non-negative ints, term maps are dicts from
monomial to a nonzero coefficient (Fraction or int).
"""

BACKEND = "pure"


def mono_deg(a):
    return sum(a)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """a / b, or None when b does not divide a."""
    out = []
    for x, y in zip(a, b):
        d = x - y
        if d < 0:
            return None
        out.append(d)
    return tuple(out)


def mono_divides(b, a):
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def grlex_key(a):
    return (sum(a), a)


def grevlex_key(a):
    return (sum(a), tuple(-e for e in reversed(a)))


def poly_mul(ta, tb):
    """Product of two term maps."""
    out = {}
    for ma, ca in ta.items():
        for mb, cb in tb.items():
            m = tuple(x + y for x, y in zip(ma, mb))
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


def poly_addmul(acc, coeff, mono, tb):
    """In place: acc += coeff * x^mono * tb."""
    for mb, cb in tb.items():
        m = tuple(x + y for x, y in zip(mono, mb))
        c = acc.get(m)
        if c is None:
            acc[m] = coeff * cb
        else:
            c = c + coeff * cb
            if c:
                acc[m] = c
            else:
                del acc[m]


def vec_dot(a, b):
    s = 0
    for x, y in zip(a, b):
        s += x * y
    return s


def vec_combine(ca, a, cb, b):
    """ca*a + cb*b, componentwise."""
    return tuple(ca * x + cb * y for x, y in zip(a, b))
