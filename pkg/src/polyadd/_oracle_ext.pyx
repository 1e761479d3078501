# cython: language_level=3, cdivision=True
"""Compiled double-double Hurwitz partial sums; mirrors ``_oracle_py``."""


cdef struct dd:
    double hi
    double lo


cdef inline dd _two_sum(double a, double b) noexcept nogil:
    cdef dd r
    cdef double bb
    r.hi = a + b
    bb = r.hi - a
    r.lo = (a - (r.hi - bb)) + (b - bb)
    return r


cdef inline dd _quick_two_sum(double a, double b) noexcept nogil:
    cdef dd r
    r.hi = a + b
    r.lo = b - (r.hi - a)
    return r


cdef inline void _split(double a, double *hi, double *lo) noexcept nogil:
    cdef double t = 134217729.0 * a
    hi[0] = t - (t - a)
    lo[0] = a - hi[0]


cdef inline dd _two_prod(double a, double b) noexcept nogil:
    cdef dd r
    cdef double ah, al, bh, bl
    r.hi = a * b
    _split(a, &ah, &al)
    _split(b, &bh, &bl)
    r.lo = ((ah * bh - r.hi) + ah * bl + al * bh) + al * bl
    return r


cdef inline dd _add(dd a, dd b) noexcept nogil:
    cdef dd s = _two_sum(a.hi, b.hi)
    cdef dd t = _two_sum(a.lo, b.lo)
    s.lo += t.hi
    s = _quick_two_sum(s.hi, s.lo)
    s.lo += t.lo
    return _quick_two_sum(s.hi, s.lo)


cdef inline dd _mul(dd a, dd b) noexcept nogil:
    cdef dd p = _two_prod(a.hi, b.hi)
    p.lo += a.hi * b.lo + a.lo * b.hi
    return _quick_two_sum(p.hi, p.lo)


cdef inline dd _mul_d(dd a, double d) noexcept nogil:
    cdef dd p = _two_prod(a.hi, d)
    p.lo += a.lo * d
    return _quick_two_sum(p.hi, p.lo)


cdef inline dd _div(dd a, dd b) noexcept nogil:
    cdef double q1, q2, q3
    cdef dd r, m, q, t
    q1 = a.hi / b.hi
    m = _mul_d(b, q1)
    m.hi = -m.hi
    m.lo = -m.lo
    r = _add(a, m)
    q2 = r.hi / b.hi
    m = _mul_d(b, q2)
    m.hi = -m.hi
    m.lo = -m.lo
    r = _add(r, m)
    q3 = r.hi / b.hi
    q = _quick_two_sum(q1, q2)
    t.hi = q3
    t.lo = 0.0
    return _add(q, t)


def hurwitz_head(double xh, double xl, int s, long n_terms):
    cdef dd x, one, base, nn, r, term, acc
    cdef long n
    cdef int j
    x.hi = xh
    x.lo = xl
    one.hi = 1.0
    one.lo = 0.0
    acc.hi = 0.0
    acc.lo = 0.0
    nn.lo = 0.0
    with nogil:
        n = n_terms - 1
        while n >= 0:
            nn.hi = <double>n
            base = _add(x, nn)
            r = _div(one, base)
            term = r
            for j in range(s - 1):
                term = _mul(term, r)
            acc = _add(acc, term)
            n -= 1
    return acc.hi, acc.lo
