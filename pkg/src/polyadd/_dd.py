"""Double-double arithmetic built from error-free transforms.

A double-double is a pair ``(hi, lo)`` with ``|lo| <= ulp(hi)/2``
representing ``hi + lo`` (about 106 significant bits). All routines assume
round-to-nearest binary64 with no fused multiply-add contraction.

Relative error bounds used by the oracle (u = 2**-53):

=========  ===========
operation  bound
=========  ===========
add        3 u^2
mul        8 u^2
div        10 u^2
=========  ===========
"""

from fractions import Fraction

U2 = 2.0 ** -106
_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    return s, b - (s - a)


def split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add(a, b):
    s, e = two_sum(a[0], b[0])
    t, f = two_sum(a[1], b[1])
    e += t
    s, e = quick_two_sum(s, e)
    e += f
    return quick_two_sum(s, e)


def neg(a):
    return -a[0], -a[1]


def sub(a, b):
    return add(a, (-b[0], -b[1]))


def mul(a, b):
    p, e = two_prod(a[0], b[0])
    e += a[0] * b[1] + a[1] * b[0]
    return quick_two_sum(p, e)


def mul_d(a, d):
    p, e = two_prod(a[0], d)
    e += a[1] * d
    return quick_two_sum(p, e)


def div(a, b):
    q1 = a[0] / b[0]
    r = sub(a, mul_d(b, q1))
    q2 = r[0] / b[0]
    r = sub(r, mul_d(b, q2))
    q3 = r[0] / b[0]
    q = quick_two_sum(q1, q2)
    return add(q, (q3, 0.0))


def from_fraction(q):
    hi = float(q)
    return hi, float(q - Fraction(hi))


def to_fraction(a):
    return Fraction(a[0]) + Fraction(a[1])
