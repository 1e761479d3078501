"""Pure-Python polygamma kernels (fallback for ``_polygamma_ext``).

Operation order matches the Cython kernels exactly so both backends
round identically.
"""

import math

import numpy as np


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def digamma_kernel(x, shift, coef, nterms, rel_tol):
    # psi(x) = psi(x + m) - sum_{n<m} 1/(x + n)
    s = 0.0
    c = 0.0
    n = 0
    z = x
    while z < shift:
        s, e = _two_sum(s, 1.0 / z)
        c += e
        n += 1
        z = x + n
    w = 1.0 / (z * z)
    wp = 1.0
    tail = 0.0
    cut = 1e-3 * rel_tol
    for j in range(nterms):
        wp *= w
        t = coef[j] * wp
        tail += t
        if abs(t) <= cut * abs(tail):
            break
    return (math.log(z) - 0.5 / z - tail) - (s + c)


def polygamma_abs_kernel(k, x, shift, fact, lead0, lead1, coef, nterms, rel_tol):
    # |psi^(k)(x)| = sum_{n<m} k!/(x+n)^(k+1) + |psi^(k)(x+m)|
    s = 0.0
    c = 0.0
    n = 0
    z = x
    while z < shift:
        s, e = _two_sum(s, fact / z ** k / z)
        c += e
        n += 1
        z = x + n
    iz = 1.0 / z
    w = iz * iz
    wp = 1.0
    series = 0.0
    head = lead0 + lead1 * iz
    cut = 1e-3 * rel_tol * head
    for j in range(nterms):
        wp *= w
        t = coef[j] * wp
        series += t
        if abs(t) <= cut:
            break
    tail = (head + series) / z ** k
    s, e = _two_sum(s, tail)
    return s + (c + e)


def polygamma_abs_array(k, xs, shift, fact, lead0, lead1, coef, nterms, rel_tol):
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    out = np.empty_like(xs)
    flat_in = xs.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.shape[0]):
        flat_out[i] = polygamma_abs_kernel(
            k, float(flat_in[i]), shift, fact, lead0, lead1, coef, nterms, rel_tol
        )
    return out
