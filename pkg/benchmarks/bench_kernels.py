"""Compare the compiled and pure-Python kernels.

Usage::

    python benchmarks/bench_kernels.py [--n 20000] [--repeat 3]

Times the vectorised |psi^(k)| kernel, the double-double Hurwitz sum used
by the oracle, and checks the two backends return identical bits.
"""

import argparse
import time

import numpy as np

from polyadd import polygamma_core as pg
from polyadd.config import EvalConfig
from polyadd.kernels import load_backend


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--order", type=int, default=3)
    args = ap.parse_args()

    try:
        c_poly, c_orc = load_backend("cython")
    except ImportError:
        raise SystemExit("compiled kernels not built; run `pip install -e . --no-build-isolation`")
    p_poly, p_orc = load_backend("python")

    cfg = EvalConfig()
    k = args.order
    xs = np.exp(np.random.default_rng(0).uniform(np.log(1e-2), np.log(50.0), args.n))
    fact, lead0, lead1, coef = pg._polygamma_coef(k, cfg.asymptotic_terms)
    call = (cfg.shift_for(k), fact, lead0, lead1, coef, cfg.asymptotic_terms, cfg.rel_tol)

    out_c = c_poly.polygamma_abs_array(k, xs, *call)
    out_p = p_poly.polygamma_abs_array(k, xs, *call)
    same = np.array_equal(out_c, out_p)
    t_c = best_of(lambda: c_poly.polygamma_abs_array(k, xs, *call), args.repeat)
    t_p = best_of(lambda: p_poly.polygamma_abs_array(k, xs, *call), args.repeat)

    print(f"|psi^({k})(x)|, {args.n} points")
    print(f"  cython  {t_c * 1e3:9.2f} ms  ({t_c / args.n * 1e9:8.1f} ns/pt)")
    print(f"  python  {t_p * 1e3:9.2f} ms  ({t_p / args.n * 1e9:8.1f} ns/pt)")
    print(f"  speedup {t_p / t_c:9.1f}x   identical bits: {same}")

    terms = 2000
    hc = c_orc.hurwitz_head(0.3, 0.0, k + 1, terms)
    hp = p_orc.hurwitz_head(0.3, 0.0, k + 1, terms)
    t_c = best_of(lambda: c_orc.hurwitz_head(0.3, 0.0, k + 1, terms), args.repeat)
    t_p = best_of(lambda: p_orc.hurwitz_head(0.3, 0.0, k + 1, terms), args.repeat)
    print(f"double-double Hurwitz head, {terms} terms, s={k + 1}")
    print(f"  cython  {t_c * 1e3:9.3f} ms")
    print(f"  python  {t_p * 1e3:9.3f} ms")
    print(f"  speedup {t_p / t_c:9.1f}x   identical bits: {hc == hp}")


if __name__ == "__main__":
    main()
