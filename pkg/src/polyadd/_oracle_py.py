"""Pure-Python double-double Hurwitz partial sums (fallback for ``_oracle_ext``)."""

from . import _dd


def hurwitz_head(xh, xl, s, n_terms):
    """Return sum_{n=0}^{n_terms-1} (x + n)^(-s) as a double-double.

    Terms are added smallest first.
    """
    one = (1.0, 0.0)
    acc = (0.0, 0.0)
    for n in range(n_terms - 1, -1, -1):
        base = _dd.add((xh, xl), (float(n), 0.0))
        r = _dd.div(one, base)
        term = r
        for _ in range(s - 1):
            term = _dd.mul(term, r)
        acc = _dd.add(acc, term)
    return acc
