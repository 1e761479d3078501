import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyadd.errors import DomainError, PreconditionError
from polyadd.oracle import oracle_polygamma
from polyadd.polygamma_core import abs_polygamma, polygamma_exp
from polyadd.threshold import ThresholdResult, solve_theta
from polyadd.verifier import (
    AdditivityReport,
    Monotonicity,
    Region,
    SampleSpec,
    boundary_defect,
    check_additivity,
    check_case_inequalities,
    check_derivative_fd,
    check_derivative_sign,
    check_limit,
    check_limit_report,
    check_monotone_alpha,
    check_monotone_report,
    check_positivity,
    deficit,
    draw_pairs,
    log_grid,
    partial_x,
    region_bounds,
)

TRIGAMMA_1 = math.pi ** 2 / 6


def oracle_deficit(i, x, y):
    o = lambda v: oracle_polygamma(i, v).value  # noqa: E731
    return o(x) + o(y) - o(x * y)


@pytest.fixture(scope="module")
def thetas():
    return {i: solve_theta(i, 1e-12) for i in range(1, 9)}


class TestDeficit:
    def test_unit_point(self):
        assert deficit(1, 1.0, 1.0) == pytest.approx(TRIGAMMA_1, rel=1e-15)
        for i in range(1, 7):
            assert deficit(i, 1.0, 1.0) == pytest.approx(abs_polygamma(i, 1.0), rel=1e-15)

    def test_against_oracle(self):
        d = deficit(1, 2.0, 3.0)
        assert d > 0
        assert d == pytest.approx(0.85854517795933754758, rel=1e-14)
        assert d == pytest.approx(oracle_deficit(1, 2.0, 3.0), rel=1e-14)

    @given(i=st.integers(1, 8), x=st.floats(1e-3, 1e3), y=st.floats(1e-3, 1e3))
    @settings(max_examples=200, deadline=None)
    def test_symmetry_bit_exact(self, i, x, y):
        assert deficit(i, x, y) == deficit(i, y, x)

    @given(i=st.integers(1, 8), x=st.floats(1e-2, 1e2), y=st.floats(1.0 + 1e-9, 1e2))
    @settings(max_examples=200, deadline=None)
    def test_positive_for_y_above_one(self, i, x, y):
        assert deficit(i, x, y) > 0


class TestPartial:
    @pytest.mark.parametrize("i", [1, 3, 7])
    @pytest.mark.parametrize("x", [0.1, 1.0, 30.0])
    def test_zero_at_y_one(self, i, x):
        assert partial_x(i, x, 1.0) == 0.0

    def test_finite_difference(self):
        h = 1e-6
        fd = (deficit(1, 2 + h, 3.0) - deficit(1, 2 - h, 3.0)) / (2 * h)
        p = partial_x(1, 2.0, 3.0)
        assert p == pytest.approx(-0.30574460958384508062, rel=1e-14)
        assert fd == pytest.approx(p, rel=1e-5)

    @given(i=st.integers(1, 8), x=st.floats(1e-2, 1e2), y=st.floats(1e-2, 1e2))
    @settings(max_examples=300, deadline=None)
    def test_sign_law(self, i, x, y):
        if abs(y - 1) <= 1e-6:
            return
        assert np.sign(partial_x(i, x, y)) == np.sign(1 - y)

    def test_order_cap(self):
        with pytest.raises(DomainError):
            partial_x(12, 1.0, 2.0)


class TestScaledMonotonicity:
    @pytest.mark.parametrize("i", range(1, 9))
    def test_iff_both_directions(self, i):
        g = log_grid()
        assert check_monotone_alpha(i, i + 1, g) is Monotonicity.INCREASING
        assert check_monotone_alpha(i, i + 2, g) is Monotonicity.INCREASING
        assert check_monotone_alpha(i, i, g) is Monotonicity.DECREASING
        assert check_monotone_alpha(i, i - 1, g) is Monotonicity.DECREASING
        assert check_monotone_alpha(i, i + 0.5, g) is Monotonicity.NON_MONOTONE

    def test_half_step_has_rise_and_fall(self):
        g = log_grid()
        v = g ** 1.5 * np.array([abs_polygamma(1, float(x)) for x in g])
        d = np.diff(v)
        assert (d > 0).any() and (d < 0).any()
        assert check_monotone_alpha(1, 1.5, g) is Monotonicity.NON_MONOTONE

    def test_grid_preconditions(self):
        with pytest.raises(PreconditionError):
            check_monotone_alpha(1, 2, log_grid(49))
        with pytest.raises(PreconditionError):
            check_monotone_alpha(1, 2, log_grid(100, 1e-1, 1e2))
        with pytest.raises(PreconditionError):
            check_monotone_alpha(1, 2, log_grid()[::-1])

    @pytest.mark.parametrize("i", [1, 6, 12])
    def test_report_clean(self, i):
        assert check_monotone_report(i).ok


class TestLimit:
    def test_trigamma_at_two(self):
        seq = check_limit(1, 2.0)
        target = TRIGAMMA_1 - 1
        dist = [abs(v - target) for v in seq]
        assert all(b < a for a, b in zip(dist, dist[1:]))
        # psi'(1e4) - psi'(2e4) ~ 1e-4 - 5e-5
        assert dist[-1] == pytest.approx(5e-5, rel=1e-3)

    @pytest.mark.parametrize("i", [1, 2, 3])
    @pytest.mark.parametrize("y", [0.5, 2.0, 7.0])
    def test_triangle_bound(self, i, y):
        lhs = abs(check_limit(i, y)[-1] - abs_polygamma(i, y))
        rounding = 4 * math.ulp(abs_polygamma(i, y))
        assert lhs <= abs_polygamma(i, 1e4 * y) + abs_polygamma(i, 1e4) + rounding

    def test_order_two_half_trend(self):
        # oracle values: 16.7910567, 16.8284896, 16.8287936, 16.8287966 -> 16.8287966442
        seq = check_limit(2, 0.5)
        ref = [oracle_deficit(2, x, 0.5) for x in (1e1, 1e2, 1e3, 1e4)]
        assert seq == pytest.approx(ref, rel=1e-13)
        assert seq[-2] < seq[-1] < abs_polygamma(2, 0.5)

    @pytest.mark.parametrize("i", range(1, 13))
    def test_report(self, i):
        assert check_limit_report(i).ok


class TestCases:
    def test_case_one_example(self):
        f = deficit(1, 2.0, 0.5)
        assert TRIGAMMA_1 < f < math.pi ** 2 / 2
        assert f == pytest.approx(3.9348022005446793094, rel=1e-14)

    def test_case_two_example(self):
        assert deficit(1, 0.5, 0.9) < TRIGAMMA_1
        assert deficit(1, 0.5, 0.9) == pytest.approx(0.94099176648934491953, rel=1e-13)

    def test_case_three_example(self):
        # oracle: f(0.4, 0.4) = -25.84, f(0.7, 0.4) = -3.80
        assert deficit(1, 0.4, 0.4) == pytest.approx(oracle_deficit(1, 0.4, 0.4), rel=1e-13)
        assert deficit(1, 0.4, 0.4) < deficit(1, 0.7, 0.4)

    @pytest.mark.parametrize("i", range(1, 9))
    def test_sampled(self, i):
        rep = check_case_inequalities(i, SampleSpec(Region.SUB, 3000, seed=i))
        assert rep.ok and rep.samples == 3000

    def test_needs_small_y(self):
        with pytest.raises(PreconditionError):
            check_case_inequalities(1, SampleSpec(Region.SUB, 10, log_range=(0.1, 2.0)))


class TestAdditivity:
    @pytest.mark.parametrize("i", range(1, 7))
    @pytest.mark.parametrize("region", [Region.SUB, Region.SUPER])
    def test_regions_clean(self, thetas, i, region):
        rep = check_additivity(i, thetas[i], SampleSpec(region, 2000, seed=100 + i))
        assert rep.ok, rep.violations[:3]
        assert rep.worst_margin > -rep.slack
        assert rep.samples == 2000

    def test_sub_closure(self, thetas):
        th = thetas[1]
        s, t = draw_pairs(SampleSpec(Region.SUB, 5000, seed=3), th)
        ln_lo, ln_hi = region_bounds(th)
        assert np.all(s > ln_hi) and np.all(t > ln_hi) and np.all(s + t > ln_hi)

    def test_super_window(self, thetas):
        s, t = draw_pairs(SampleSpec(Region.SUPER, 5000, seed=3), thetas[2])
        ln_lo, _ = region_bounds(thetas[2])
        assert np.all(s < ln_lo) and np.all(t < ln_lo) and s.min() >= -20

    def test_mixed_reports_only(self, thetas):
        rep = check_additivity(1, thetas[1], SampleSpec(Region.MIXED, 2000, seed=1))
        assert rep.violations == []
        assert 0 < rep.positive < 2000  # both signs occur
        assert rep.worst_margin < 0

    def test_boundary(self, thetas):
        for i in range(1, 9):
            th = thetas[i]
            s = math.log(th.mid)
            direct = polygamma_exp(i, 2 * s) - 2 * polygamma_exp(i, s)
            bound = 1e4 * abs_polygamma(i, th.mid) * 1e-12 + 1e-10 * abs_polygamma(i, th.mid ** 2)
            assert abs(boundary_defect(i, th)) <= bound
            assert abs(direct) <= bound

    def test_deterministic(self, thetas):
        spec = SampleSpec(Region.SUB, 500, seed=9)
        assert check_additivity(1, thetas[1], spec) == check_additivity(1, thetas[1], spec)

    def test_uncertified_rejected(self, thetas):
        th = thetas[1]
        bad = ThresholdResult(1, th.lo, th.hi, th.residual, False, th.iterations)
        with pytest.raises(PreconditionError):
            check_additivity(1, bad, SampleSpec(Region.SUB, 10))
        with pytest.raises(PreconditionError):
            check_additivity(2, th, SampleSpec(Region.SUB, 10))

    def test_window_must_respect_threshold(self, thetas):
        with pytest.raises(PreconditionError):
            check_additivity(1, thetas[1], SampleSpec(Region.SUB, 10, log_range=(-1.0, 2.0)))
        with pytest.raises(PreconditionError):
            check_additivity(1, thetas[1], SampleSpec(Region.SUPER, 10, log_range=(-5.0, 0.0)))

    def test_violation_detected_with_wrong_threshold(self, thetas):
        # pretend theta_1 sits at 0.3: SUB samples now reach into the super-additive zone
        th = thetas[1]
        fake = ThresholdResult(1, 0.3, 0.3 + th.width, 0.0, True, 0)
        rep = check_additivity(1, fake, SampleSpec(Region.SUB, 4000, seed=5))
        assert not rep.ok
        assert rep.worst_margin <= -rep.slack
        assert rep.violations == sorted(rep.violations)


class TestOtherChecks:
    @pytest.mark.parametrize("i", [1, 4, 8, 11])
    def test_derivative_sign(self, i):
        assert check_derivative_sign(i, 1000, seed=i).ok

    @pytest.mark.parametrize("i", [1, 4, 8, 11])
    def test_derivative_fd(self, i):
        rep = check_derivative_fd(i, 1000, seed=i)
        assert rep.ok and rep.samples > 800

    @pytest.mark.parametrize("i", [1, 4, 8, 12])
    def test_positivity(self, i):
        assert check_positivity(i, 1000, seed=i).ok


class TestSpecAndReport:
    def test_spec_validation(self):
        with pytest.raises(DomainError):
            SampleSpec(Region.SUB, 0)
        with pytest.raises(DomainError):
            SampleSpec(Region.SUB, 1, seed=2 ** 64)
        with pytest.raises(DomainError):
            SampleSpec(Region.SUB, 1, log_range=(2.0, 1.0))
        assert SampleSpec("SUPER", 1).region is Region.SUPER

    def test_report_dict(self):
        rep = AdditivityReport("additivity", 1, Region.SUB, 3, [(0.1, 0.2, -1.0)], -1.0, 1e-9)
        d = rep.as_dict()
        assert d["region"] == "SUB" and d["violations"] == [[0.1, 0.2, -1.0]]
        assert not rep.ok
