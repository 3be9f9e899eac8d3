"""Tolerance expansion and sampling determinism/stratification."""

import numpy as np
import pytest

from krigbounds.interval import Interval, IntervalVector
from krigbounds.sampling import ToleranceSpec, expand, latin_hypercube, substream, uniform_draws


class TestExpand:
    def test_unit_nominal_twenty_percent(self):
        box = expand(ToleranceSpec(np.array([1.0]), 0.20))
        assert box[0].lo == pytest.approx(0.8)
        assert box[0].hi == pytest.approx(1.2)

    def test_patch_width_three_percent(self):
        # 2.04e-2 m at 3% -> [1.9788e-2, 2.1012e-2] m
        box = expand(ToleranceSpec(np.array([2.04e-2]), 0.03))
        assert box[0].lo == pytest.approx(1.9788e-2, rel=1e-12)
        assert box[0].hi == pytest.approx(2.1012e-2, rel=1e-12)

    def test_zero_delta_degenerate(self):
        box = expand(ToleranceSpec(np.array([1.0, -2.0, 0.5]), 0.0))
        assert box.is_degenerate()

    def test_negative_nominal_keeps_order(self):
        box = expand(ToleranceSpec(np.array([-2.0]), 0.1))
        assert box[0] == Interval(-2.2, -1.8)

    def test_zero_nominal_warns(self):
        with pytest.warns(UserWarning):
            box = expand(ToleranceSpec(np.array([0.0]), 0.1))
        assert box[0].width == 0.0

    def test_override_replaces_expansion(self):
        spec = ToleranceSpec(np.array([1.0, 1.0]), 0.2, overrides={1: Interval(0.5, 3.0)})
        box = expand(spec)
        assert box[1] == Interval(0.5, 3.0)
        assert box[0].lo == pytest.approx(0.8)
        assert box[0].hi == pytest.approx(1.2)

    def test_delta_must_be_below_one(self):
        with pytest.raises(ValueError):
            ToleranceSpec(np.array([1.0]), 1.0)


class TestLatinHypercube:
    def test_single_point_inside_box(self):
        box = IntervalVector([0.0, 2.0], [1.0, 4.0])
        pts = latin_hypercube(box, 1, 0)
        assert pts.shape == (1, 2)
        assert box.contains_point(pts[0])

    def test_one_sample_per_stratum(self):
        box = IntervalVector([0.0], [1.0])
        pts = latin_hypercube(box, 4, 1)[:, 0]
        strata = np.floor(pts * 4).astype(int)
        assert sorted(strata.tolist()) == [0, 1, 2, 3]

    def test_projection_property(self):
        # sorting each dimension and taking stratum indices yields 0..S-1
        rng_cases = [(5, 1, 0), (17, 3, 4), (60, 10, 9)]
        for count, n_dim, seed in rng_cases:
            box = IntervalVector(np.full(n_dim, -2.0), np.full(n_dim, 5.0))
            pts = latin_hypercube(box, count, seed)
            unit = (pts - box.lo) / (box.hi - box.lo)
            strata = np.floor(unit * count).astype(int)
            strata = np.clip(strata, 0, count - 1)
            for n in range(n_dim):
                assert sorted(strata[:, n].tolist()) == list(range(count))

    def test_deterministic_and_seed_sensitive(self):
        box = IntervalVector([0.0], [1.0])
        a = latin_hypercube(box, 8, 42)
        b = latin_hypercube(box, 8, 42)
        c = latin_hypercube(box, 8, 43)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_zero_count_rejected(self):
        with pytest.raises(ValueError):
            latin_hypercube(IntervalVector([0.0], [1.0]), 0, 0)

    def test_degenerate_box(self):
        box = IntervalVector([1.0], [1.0])
        pts = latin_hypercube(box, 5, 0)
        assert np.all(pts == 1.0)


class TestUniformDraws:
    def test_degenerate_box_returns_nominal(self):
        box = IntervalVector([1.5, -2.0], [1.5, -2.0])
        draws = uniform_draws(box, 7, 0)
        assert np.all(draws == [1.5, -2.0])

    def test_containment(self):
        box = IntervalVector([0.8], [1.2])
        draws = uniform_draws(box, 1000, 3)
        assert np.all(draws >= 0.8) and np.all(draws <= 1.2)

    def test_empirical_mean_within_three_sigma(self):
        # standard error of the mean of U(lo, hi) is width / sqrt(12 M)
        box = IntervalVector([0.8], [1.2])
        m = 100_000
        draws = uniform_draws(box, m, 11)
        se = 0.4 / np.sqrt(12 * m)
        assert abs(draws.mean() - 1.0) < 3 * se

    def test_deterministic(self):
        box = IntervalVector([0.0], [1.0])
        assert np.array_equal(uniform_draws(box, 10, 5), uniform_draws(box, 10, 5))


class TestSubstream:
    def test_independent_of_order(self):
        a = substream(7, 0, 3).uniform(size=4)
        substream(7, 0, 2).uniform(size=100)  # interleaved work elsewhere
        b = substream(7, 0, 3).uniform(size=4)
        assert np.array_equal(a, b)

    def test_distinct_keys_distinct_streams(self):
        a = substream(7, 0, 1).uniform(size=4)
        b = substream(7, 0, 2).uniform(size=4)
        assert not np.array_equal(a, b)
