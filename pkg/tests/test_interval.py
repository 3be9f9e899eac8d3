"""Interval kernel: frozen examples, brute-force oracles, inclusion properties."""

import math

import numpy as np
import pytest

from krigbounds import interval as iv
from krigbounds.interval import Interval, IntervalVector


def brute_range(fn, x: Interval, n=2001):
    """Independent oracle: pointwise image of fn over a dense grid of x.

    Zero is appended when the interval straddles it, so interior extrema of
    even powers and absolute values are captured exactly.
    """
    grid = np.linspace(x.lo, x.hi, n)
    if x.lo < 0.0 < x.hi:
        grid = np.append(grid, 0.0)
    values = fn(grid)
    return float(values.min()), float(values.max())


class TestConstruction:
    def test_rejects_inverted_endpoints(self):
        with pytest.raises(ValueError):
            Interval(2.0, 1.0)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValueError):
            Interval(bad, 1.0)
        with pytest.raises(ValueError):
            Interval(0.0, bad)

    def test_degenerate_allowed(self):
        x = Interval.degenerate(3.5)
        assert x.lo == x.hi == 3.5
        assert x.width == 0.0


class TestAdd:
    def test_direct_endpoint_sum(self):
        assert iv.add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)

    def test_identity(self):
        x = Interval(-0.7, 2.3)
        assert iv.add(x, Interval(0, 0)) == x

    def test_symmetric(self):
        assert iv.add(Interval(-1, 1), Interval(-2, 2)) == Interval(-3, 3)

    def test_overflow_rejected(self):
        big = Interval(0, 1e308)
        with pytest.raises(OverflowError):
            iv.add(big, big)

    def test_commutative_exact(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            a, b = sorted(rng.uniform(-10, 10, 2))
            c, d = sorted(rng.uniform(-10, 10, 2))
            x, y = Interval(a, b), Interval(c, d)
            assert iv.add(x, y) == iv.add(y, x)

    def test_associative_within_tolerance(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            xs = [Interval(*sorted(rng.uniform(-5, 5, 2))) for _ in range(3)]
            left = iv.add(iv.add(xs[0], xs[1]), xs[2])
            right = iv.add(xs[0], iv.add(xs[1], xs[2]))
            assert left.lo == pytest.approx(right.lo, rel=1e-12, abs=1e-12)
            assert left.hi == pytest.approx(right.hi, rel=1e-12, abs=1e-12)


class TestPower:
    def test_positive_branch(self):
        assert iv.power(Interval(2, 3), 2) == Interval(4, 9)

    def test_negative_even_branch(self):
        assert iv.power(Interval(-3, -1), 2) == Interval(1, 9)

    def test_zero_crossing_branch(self):
        assert iv.power(Interval(-2, 1), 2) == Interval(0, 4)

    def test_odd_keeps_order(self):
        assert iv.power(Interval(-2, 1), 3) == Interval(-8, 1)

    def test_rejects_nonpositive_alpha(self):
        with pytest.raises(ValueError):
            iv.power(Interval(0, 1), 0)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            x = Interval(*sorted(rng.uniform(-4, 4, 2)))
            alpha = int(rng.integers(1, 6))
            lo, hi = brute_range(lambda g: g**alpha, x)
            result = iv.power(x, alpha)
            assert result.lo == pytest.approx(lo, abs=1e-9)
            assert result.hi == pytest.approx(hi, abs=1e-9)


class TestAbsolute:
    def test_positive_unchanged(self):
        assert iv.absolute(Interval(1, 2)) == Interval(1, 2)

    def test_negative_flips(self):
        # oracle: |p| over a dense grid of p in [-3, -1] spans [1, 3]
        lo, hi = brute_range(np.abs, Interval(-3, -1))
        assert (lo, hi) == (1.0, 3.0)
        assert iv.absolute(Interval(-3, -1)) == Interval(1, 3)

    def test_zero_crossing(self):
        lo, hi = brute_range(np.abs, Interval(-2, 1))
        assert (lo, hi) == (0.0, 2.0)
        assert iv.absolute(Interval(-2, 1)) == Interval(0, 2)

    def test_result_always_nonnegative(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            x = Interval(*sorted(rng.uniform(-5, 5, 2)))
            assert iv.absolute(x).lo >= 0.0


class TestPowerAbs:
    def test_positive_branch(self):
        assert iv.power_abs(Interval(1, 2), 2.0) == Interval(1, 4)

    def test_negative_branch(self):
        lo, hi = brute_range(lambda g: np.abs(g) ** 2, Interval(-3, -1))
        assert (lo, hi) == (1.0, 9.0)
        assert iv.power_abs(Interval(-3, -1), 2.0) == Interval(1, 9)

    def test_zero_crossing(self):
        lo, hi = brute_range(lambda g: np.abs(g) ** 2, Interval(-2, 1))
        assert (lo, hi) == (0.0, 4.0)
        assert iv.power_abs(Interval(-2, 1), 2.0) == Interval(0, 4)

    def test_fractional_exponent_brute_force(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            x = Interval(*sorted(rng.uniform(-4, 4, 2)))
            alpha = rng.uniform(0.3, 3.5)
            lo, hi = brute_range(lambda g: np.abs(g) ** alpha, x)
            result = iv.power_abs(x, alpha)
            assert result.lo == pytest.approx(lo, abs=1e-7)
            assert result.hi == pytest.approx(hi, abs=1e-7)
            assert result.lo >= 0.0

    def test_rejects_nonpositive_alpha(self):
        with pytest.raises(ValueError):
            iv.power_abs(Interval(0, 1), 0.0)


class TestExp:
    def test_exp_zero(self):
        assert iv.exp(Interval(0, 0)) == Interval(1, 1)

    def test_monotone_image(self):
        result = iv.exp(Interval(math.log(2), math.log(3)))
        assert result.lo == pytest.approx(2.0)
        assert result.hi == pytest.approx(3.0)

    def test_symmetric(self):
        result = iv.exp(Interval(-1, 1))
        assert result.lo == pytest.approx(math.exp(-1))
        assert result.hi == pytest.approx(math.e)

    def test_overflow_rejected(self):
        with pytest.raises(OverflowError):
            iv.exp(Interval(0, 1e6))


class TestScaleContainsWidth:
    def test_scale_sign_flip(self):
        assert iv.scale(Interval(1, 2), -1.0) == Interval(-2, -1)

    def test_contains(self):
        assert iv.contains(Interval(0.8, 1.2), 1.0)
        assert not iv.contains(Interval(0.8, 1.2), 1.3)
        assert 1.0 in Interval(0.8, 1.2)

    def test_width(self):
        assert iv.width(Interval(0.8, 1.2)) == pytest.approx(0.4)


class TestInclusionProperty:
    """Pointwise results always land inside the interval result."""

    def test_unary_operations(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            x = Interval(*sorted(rng.uniform(-5, 5, 2)))
            samples = rng.uniform(x.lo, x.hi, 1000)
            alpha_i = int(rng.integers(1, 5))
            alpha_f = rng.uniform(0.5, 3.0)
            c = rng.uniform(-3, 3)
            cases = [
                (iv.power(x, alpha_i), samples**alpha_i),
                (iv.absolute(x), np.abs(samples)),
                (iv.power_abs(x, alpha_f), np.abs(samples) ** alpha_f),
                (iv.exp(x), np.exp(samples)),
                (iv.scale(x, c), samples * c),
            ]
            for result, values in cases:
                assert values.min() >= result.lo - 1e-12
                assert values.max() <= result.hi + 1e-12

    def test_binary_add(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            x = Interval(*sorted(rng.uniform(-5, 5, 2)))
            y = Interval(*sorted(rng.uniform(-5, 5, 2)))
            vs = rng.uniform(x.lo, x.hi, 1000)
            ws = rng.uniform(y.lo, y.hi, 1000)
            result = iv.add(x, y)
            assert (vs + ws).min() >= result.lo - 1e-12
            assert (vs + ws).max() <= result.hi + 1e-12


class TestDegenerateConsistency:
    """Zero-width intervals behave as the crisp number (1e-12 relative)."""

    def test_all_operations(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            v = rng.uniform(-3, 3)
            w = rng.uniform(-3, 3)
            x, y = Interval.degenerate(v), Interval.degenerate(w)
            alpha = int(rng.integers(1, 5))
            checks = [
                (iv.add(x, y), v + w),
                (iv.power(x, alpha), v**alpha),
                (iv.absolute(x), abs(v)),
                (iv.power_abs(x, 1.7), abs(v) ** 1.7),
                (iv.exp(x), math.exp(v)),
                (iv.scale(x, w), v * w),
            ]
            for result, crisp in checks:
                assert result.lo == pytest.approx(crisp, rel=1e-12, abs=1e-12)
                assert result.hi == pytest.approx(crisp, rel=1e-12, abs=1e-12)


class TestIntervalVector:
    def test_roundtrip_entries(self):
        vec = IntervalVector([0.8, -1.0], [1.2, 1.0])
        assert len(vec) == 2
        assert vec[0] == Interval(0.8, 1.2)
        assert vec.entries[1] == Interval(-1.0, 1.0)

    def test_from_intervals(self):
        vec = IntervalVector.from_intervals([Interval(0, 1), Interval(2, 3)])
        assert np.array_equal(vec.lo, [0, 2])
        assert np.array_equal(vec.hi, [1, 3])

    def test_rejects_bad_entry(self):
        with pytest.raises(ValueError):
            IntervalVector([1.0], [0.5])
        with pytest.raises(ValueError):
            IntervalVector([np.nan], [1.0])

    def test_contains_point(self):
        vec = IntervalVector([0, 0], [1, 1])
        assert vec.contains_point([0.5, 1.0])
        assert not vec.contains_point([0.5, 1.1])

    def test_degenerate(self):
        vec = IntervalVector.degenerate([1.0, 2.0])
        assert vec.is_degenerate()
        assert np.array_equal(vec.widths(), [0.0, 0.0])
