import math
from fractions import Fraction

import pytest

from polyadd import _dd
from polyadd.errors import DomainError
from polyadd.oracle import oracle_gap, oracle_polygamma

mp = pytest.importorskip("mpmath")


@pytest.fixture(autouse=True)
def _precision():
    mp.mp.dps = 50


def exact(o):
    return mp.mpf(o.value) + mp.mpf(o.tail)


def test_zeta2_to_25_digits():
    o = oracle_polygamma(1, 1.0, 30)
    assert abs(exact(o) - mp.pi ** 2 / 6) < 1e-25
    assert abs(exact(o) - mp.pi ** 2 / 6) <= o.abs_error_bound


def test_half_argument():
    # zeta(3, 1/2) = 7 zeta(3)
    o = oracle_polygamma(2, 0.5, 30)
    assert o.value == pytest.approx(16.828796644234319, rel=1e-15)
    assert abs(exact(o) - 14 * mp.zeta(3)) <= o.abs_error_bound


def test_bound_is_tight_and_consistent():
    a = oracle_polygamma(1, 0.3, 30)
    b = oracle_polygamma(1, 0.3, 45)
    assert a.abs_error_bound < 1e-22 * a.value
    assert abs(a.as_fraction() - b.as_fraction()) <= Fraction(a.abs_error_bound)


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("x", [1e-3, 0.05, 0.3, 1.0, 2.5, 40.0, 1e4])
def test_two_precision_self_consistency(k, x):
    lo = oracle_polygamma(k, x, 25)
    hi = oracle_polygamma(k, x, 40)
    assert abs(lo.as_fraction() - hi.as_fraction()) < Fraction(lo.abs_error_bound)


@pytest.mark.parametrize("k", range(1, 7))
def test_identity_suite(k):
    fk = math.factorial(k)
    at_one = oracle_polygamma(k, 1.0, 30)
    at_half = oracle_polygamma(k, 0.5, 30)
    assert abs(exact(at_one) - fk * mp.zeta(k + 1)) <= at_one.abs_error_bound
    assert abs(exact(at_half) - (2 ** (k + 1) - 1) * fk * mp.zeta(k + 1)) <= at_half.abs_error_bound


@pytest.mark.parametrize("k", [1, 4, 8, 12])
@pytest.mark.parametrize("x", [1e-4, 0.01, 0.77, 3.0, 123.0])
def test_bound_holds_against_mpmath(k, x):
    o = oracle_polygamma(k, x)
    ref = abs(mp.polygamma(k, x))
    assert abs(exact(o) - ref) <= o.abs_error_bound
    assert o.abs_error_bound <= 1e-20 * o.value + 1e-300


def test_gap_at_one():
    o = oracle_gap(1, 1.0, 30)
    assert abs(exact(o) - mp.pi ** 2 / 6) <= o.abs_error_bound


def test_gap_negative_at_half():
    # 2 psi'(0.5) = pi^2 ~ 9.87 while psi'(0.25) ~ 17.2
    o = oracle_gap(1, 0.5, 30)
    assert o.value + o.abs_error_bound < 0
    assert o.value == pytest.approx(-7.3277247534177521204, rel=1e-15)


def test_gap_uses_exact_square():
    theta = 0.6618988401768102
    o = oracle_gap(1, theta, 30)
    t = mp.mpf(theta)
    ref = 2 * mp.polygamma(1, t) - mp.polygamma(1, t * t)
    assert abs(exact(o) - ref) <= o.abs_error_bound


@pytest.mark.parametrize("i", [1, 2, 5])
def test_gap_tends_to_minus_infinity(i):
    vals = [oracle_gap(i, t).value for t in (0.3, 0.1, 0.03, 0.01)]
    assert all(b < a < 0 for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("args", [(0, 1.0, 30), (1, 0.0, 30), (1, -1.0, 30), (1, 1.0, 19), (1, 1.0, 51)])
def test_domain_errors(args):
    with pytest.raises(DomainError):
        oracle_polygamma(*args)


def test_gap_domain():
    with pytest.raises(DomainError):
        oracle_gap(1, 1.5)
    with pytest.raises(DomainError):
        oracle_gap(1, 0.0)


class TestDoubleDouble:
    def test_two_prod_exact(self):
        a, b = 0.1, 3.7
        p, e = _dd.two_prod(a, b)
        assert Fraction(p) + Fraction(e) == Fraction(a) * Fraction(b)

    def test_two_sum_exact(self):
        s, e = _dd.two_sum(1e16, 1.2345)
        assert Fraction(s) + Fraction(e) == Fraction(1e16) + Fraction(1.2345)

    @pytest.mark.parametrize("op, bound", [(_dd.add, 3), (_dd.mul, 8), (_dd.div, 10)])
    def test_relative_error_bounds(self, op, bound):
        import random

        rnd = random.Random(5)
        pyop = {_dd.add: lambda a, b: a + b, _dd.mul: lambda a, b: a * b, _dd.div: lambda a, b: a / b}[op]
        for _ in range(500):
            a = _dd.from_fraction(Fraction(rnd.random() + 0.5) / 3)
            b = _dd.from_fraction(Fraction(rnd.random() + 0.5) / 7)
            got = _dd.to_fraction(op(a, b))
            want = pyop(_dd.to_fraction(a), _dd.to_fraction(b))
            assert abs(got - want) <= bound * Fraction(_dd.U2) * abs(want)
