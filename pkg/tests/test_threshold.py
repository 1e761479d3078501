import math

import numpy as np
import pytest

from polyadd.config import EvalConfig
from polyadd.errors import DomainError, SolverError
from polyadd.oracle import oracle_gap
from polyadd.threshold import gap, solve_theta, theta_table


def oracle_bisect(i, lo, hi, tol):
    """Bisection driven only by the double-double oracle."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if oracle_gap(i, mid).value < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestGap:
    def test_at_one(self):
        assert gap(1, 1.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-15)

    def test_at_half(self):
        assert gap(1, 0.5) == pytest.approx(oracle_gap(1, 0.5).value, rel=1e-14)
        assert gap(1, 0.5) < 0

    def test_overflow_sentinel(self):
        assert gap(2, 1e-160) == -math.inf
        vals = [gap(2, t) for t in (1e-2, 1e-5, 1e-20, 1e-60)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("theta", [0.0, 1.0000001, -0.5])
    def test_domain(self, theta):
        with pytest.raises(DomainError):
            gap(1, theta)

    @pytest.mark.parametrize("i", range(1, 9))
    def test_diagonal_increasing(self, i):
        vals = [gap(i, float(t)) for t in np.linspace(0.05, 1.0, 100)]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestSolve:
    def test_first_order_bracket(self):
        # hand bracket: gap(1, 0.6) < 0 < gap(1, 0.7), confirmed by the oracle
        assert oracle_gap(1, 0.6).value < 0 < oracle_gap(1, 0.7).value
        r = solve_theta(1, 1e-12)
        assert 0.6 < r.lo < r.hi < 0.7
        assert r.certified
        assert r.hi - r.lo <= 1e-12

    def test_against_oracle_bisection(self):
        r = solve_theta(1, 1e-12)
        assert r.mid == pytest.approx(oracle_bisect(1, 0.6, 0.7, 1e-12), abs=2e-12)

    def test_nested_brackets(self):
        coarse = solve_theta(1, 1e-6)
        fine = solve_theta(1, 1e-12)
        assert coarse.lo <= fine.lo < fine.hi <= coarse.hi

    @pytest.mark.parametrize("i", range(1, 13))
    def test_sign_change_all_orders(self, i):
        r = solve_theta(i, 1e-12)
        assert r.certified
        assert gap(i, r.lo) < 0 < gap(i, r.hi)
        assert 0 < r.lo < r.hi < 1

    @pytest.mark.parametrize("i", range(1, 9))
    def test_sign_change_off_bracket(self, i):
        tol = 1e-12
        r = solve_theta(i, tol)
        assert gap(i, r.mid - 10 * tol) < 0 < gap(i, r.mid + 10 * tol)

    def test_matches_mpmath_roots(self):
        mp = pytest.importorskip("mpmath")
        mp.mp.dps = 30
        for i in (1, 4, 9):
            g = lambda t: 2 * abs(mp.polygamma(i, t)) - abs(mp.polygamma(i, t * t))  # noqa: E731
            root = mp.findroot(g, (mp.mpf("0.5"), mp.mpf("0.99")), solver="bisect")
            r = solve_theta(i, 1e-12)
            assert r.lo <= float(root) <= r.hi

    def test_tightest_tolerance(self):
        r = solve_theta(1, 1e-15)
        assert r.hi - r.lo <= 1e-15 and r.certified

    def test_rel_tol_stationarity(self):
        for i in range(1, 9):
            a = solve_theta(i, 1e-12, EvalConfig(rel_tol=1e-13)).mid
            b = solve_theta(i, 1e-12, EvalConfig(rel_tol=1e-10)).mid
            assert abs(a - b) <= 1e-9

    @pytest.mark.parametrize("i", range(1, 9))
    def test_oracle_slope_certificate(self, i):
        r = solve_theta(i, 1e-12)
        d = 1e-6
        slope = (oracle_gap(i, r.mid + d).value - oracle_gap(i, r.mid - d).value) / (2 * d)
        assert abs(oracle_gap(i, r.mid).value) <= slope * (r.hi - r.lo)

    @pytest.mark.parametrize("args", [(0, 1e-12), (13, 1e-12), (1, 1e-2), (1, 1e-16), (1.5, 1e-12)])
    def test_bad_args(self, args):
        with pytest.raises(DomainError):
            solve_theta(*args)


class TestTable:
    def test_singleton(self):
        assert theta_table(1, 1e-12) == [solve_theta(1, 1e-12)]

    def test_eight_orders(self):
        rows = theta_table(8, 1e-12)
        assert [r.order for r in rows] == list(range(1, 9))
        assert all(r.certified and 0 < r.lo < r.hi < 1 for r in rows)

    def test_parallel_matches_serial(self):
        assert theta_table(6, 1e-12, workers=4) == theta_table(6, 1e-12)

    def test_oracle_only_bisection(self):
        for r in theta_table(3, 1e-10):
            assert abs(r.mid - oracle_bisect(r.order, 0.5, 1.0, 1e-11)) <= 1e-9

    def test_thresholds_increase_with_order(self):
        # empirical trend only; nothing in the theory requires it
        mids = [r.mid for r in theta_table(12, 1e-10)]
        assert mids == sorted(mids)

    def test_errors_name_the_order(self, monkeypatch):
        import polyadd.threshold as th

        real = th.solve_theta

        def fake(i, tol, cfg):
            r = real(i, tol, cfg)
            return r if i != 2 else type(r)(i, r.lo, r.hi, r.residual, False, r.iterations)

        monkeypatch.setattr(th, "solve_theta", fake)
        with pytest.raises(SolverError) as info:
            th.theta_table(3, 1e-10)
        assert info.value.order == 2 and "order 2" in str(info.value)

    def test_bad_imax(self):
        with pytest.raises(DomainError):
            theta_table(0)
