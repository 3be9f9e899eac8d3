"""Kriging surrogate: interpolation identity, trend/weight structure, rate search."""

import numpy as np
import pytest

from krigbounds.benchmarks import PolyBenchmark, sample_training_set
from krigbounds.interval import IntervalVector
from krigbounds.kriging import (
    KrigingModel,
    TrainingSet,
    calibrated_rates,
    correlation,
    fit_kriging_model,
    loo_residuals,
    optimize_rate,
    train_ensemble,
)
from krigbounds.sampling import latin_hypercube


def random_training(rng, n_dim, count):
    inputs = rng.uniform(-1, 1, size=(count, n_dim))
    outputs = np.sin(inputs.sum(axis=1)) + 0.3 * (inputs**2).sum(axis=1)
    return inputs, outputs


class TestCorrelation:
    def test_identical_points(self):
        assert correlation([1.0, 2.0], [1.0, 2.0], 2.0, 1.0) == pytest.approx(1.0)

    def test_unit_distance(self):
        assert correlation([0.0], [1.0], 2.0, 1.0) == pytest.approx(np.exp(-1))

    def test_zero_rate(self):
        assert correlation([0.0, 3.0], [5.0, -1.0], 2.0, [0.0, 0.0]) == pytest.approx(1.0)

    def test_symmetry_and_range(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            p, q = rng.uniform(-2, 2, (2, 3))
            rate = rng.uniform(0.1, 5, 3)
            c_pq = correlation(p, q, 2.0, rate)
            c_qp = correlation(q, p, 2.0, rate)
            assert c_pq == pytest.approx(c_qp, rel=1e-14)
            assert 0.0 < c_pq <= 1.0


class TestFit:
    def test_single_sample(self):
        model = fit_kriging_model(np.array([[1.0]]), np.array([4.2]), rate=1.0)
        assert model.trend == pytest.approx(4.2)
        assert model.weights[0] == pytest.approx(0.0)
        assert model.predict(np.array([9.9])) == pytest.approx(4.2)

    def test_constant_outputs(self):
        rng = np.random.default_rng(1)
        inputs = rng.uniform(0, 1, size=(8, 2))
        model = fit_kriging_model(inputs, np.full(8, 3.3), rate=2.0, nugget=0.0)
        assert model.trend == pytest.approx(3.3)
        np.testing.assert_allclose(model.weights, 0.0, atol=1e-9)
        assert model.predict(np.array([0.5, 0.5])) == pytest.approx(3.3)

    def test_interpolation_identity(self):
        rng = np.random.default_rng(2)
        inputs, outputs = random_training(rng, 2, 12)
        model = fit_kriging_model(inputs, outputs, rate=4.0, nugget=0.0)
        preds = model.predict(inputs)
        np.testing.assert_allclose(preds, outputs, rtol=1e-6)

    def test_model_invariants(self):
        # corr_inv times the rebuilt correlation matrix is the identity,
        # the trend matches its closed form, weights are recomputable
        rng = np.random.default_rng(3)
        inputs, outputs = random_training(rng, 2, 10)
        nugget = 1e-10
        model = fit_kriging_model(inputs, outputs, rate=3.0, nugget=nugget)
        s = len(inputs)
        c = np.empty((s, s))
        for a in range(s):
            for b in range(s):
                c[a, b] = correlation(inputs[a], inputs[b], model.power, model.rate)
        c += nugget * np.eye(s)
        assert np.abs(model.corr_inv @ c - np.eye(s)).max() < 1e-8
        w = model.corr_inv
        trend = (w.sum(axis=0) @ outputs) / w.sum()
        assert model.trend == pytest.approx(trend, rel=1e-10)
        np.testing.assert_allclose(model.weights, w @ (outputs - trend), atol=1e-10)

    def test_prediction_far_away_returns_trend(self):
        rng = np.random.default_rng(4)
        inputs, outputs = random_training(rng, 1, 6)
        model = fit_kriging_model(inputs, outputs, rate=1.0)
        assert model.predict(np.array([500.0])) == pytest.approx(model.trend)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(5)
        inputs, outputs = random_training(rng, 2, 9)
        model = fit_kriging_model(inputs, outputs, rate=2.5)
        perm = rng.permutation(9)
        permuted = fit_kriging_model(inputs[perm], outputs[perm], rate=2.5)
        probe = rng.uniform(-1, 1, size=(20, 2))
        np.testing.assert_allclose(model.predict(probe), permuted.predict(probe), atol=1e-10)

    def test_correlation_matrix_positive_definite(self):
        rng = np.random.default_rng(6)
        inputs, _ = random_training(rng, 2, 7)
        from krigbounds.kriging import _corr_matrix

        c = _corr_matrix(inputs, np.array([2.0, 2.0]), np.array([1.0, 1.0]), 1e-10)
        assert np.linalg.eigvalsh(c).min() > 0

    def test_singular_matrix_raises_with_context(self):
        inputs = np.array([[0.0], [1e-16]])
        with pytest.raises(np.linalg.LinAlgError, match="singular"):
            fit_kriging_model(inputs, np.array([0.0, 1.0]), rate=1.0, nugget=0.0)

    def test_duplicate_rows_rejected_by_training_set(self):
        with pytest.raises(ValueError, match="duplicate"):
            TrainingSet(np.array([[1.0], [1.0]]), np.zeros((2, 3)), np.arange(3.0))


class TestCalibratedRates:
    def test_scale_over_variance(self):
        inputs = np.array([[0.0], [1.0], [2.0]])
        rates = calibrated_rates(inputs, scale=1.2)
        assert rates[0] == pytest.approx(1.2 / inputs.var())

    def test_zero_variance_dimension(self):
        inputs = np.array([[1.0, 0.0], [1.0, 1.0]])
        rates = calibrated_rates(inputs)
        assert rates[0] == 0.0
        assert rates[1] > 0


class TestOptimizeRate:
    def test_flat_objective_returns_finite_within_bounds(self):
        inputs = np.array([[0.0], [1.0]])
        outputs = np.array([2.0, 2.0])
        rate = optimize_rate(inputs, outputs, rate_bounds=(1e-3, 1e3))
        var = inputs.var()
        assert np.isfinite(rate).all()
        assert 1e-3 / var <= rate[0] <= 1e3 / var

    def test_loo_prefers_better_candidate(self):
        # 1-D quadratic data; compare candidate rates by their LOO error
        rng = np.random.default_rng(7)
        inputs = np.sort(rng.uniform(0, 1, 10))[:, None]
        outputs = (inputs[:, 0] - 0.4) ** 2
        var = inputs.var()
        candidates = [1e-3 / var, 1e3 / var]
        errors = [float((loo_residuals(inputs, outputs, rate=c) ** 2).sum()) for c in candidates]
        chosen = optimize_rate(inputs, outputs, objective="loo", budget=100)
        chosen_err = float((loo_residuals(inputs, outputs, rate=chosen) ** 2).sum())
        assert chosen_err <= min(errors) + 1e-12

    def test_within_bounds_always(self):
        rng = np.random.default_rng(8)
        for _ in range(5):
            inputs, outputs = random_training(rng, 2, 8)
            var = inputs.var(axis=0)
            rate = optimize_rate(inputs, outputs, rate_bounds=(1e-2, 1e2), budget=60)
            norm = rate * var
            assert np.all(norm >= 1e-2 * (1 - 1e-9)) and np.all(norm <= 1e2 * (1 + 1e-9))

    def test_width_objective_needs_box(self):
        inputs = np.array([[0.0], [1.0]])
        with pytest.raises(ValueError, match="box"):
            optimize_rate(inputs, np.array([0.0, 1.0]), objective="width")

    def test_width_objective_runs(self):
        rng = np.random.default_rng(9)
        inputs, outputs = random_training(rng, 1, 6)
        box = IntervalVector([-1.0], [1.0])
        rate = optimize_rate(inputs, outputs, objective="width", box=box, budget=60)
        assert np.isfinite(rate).all()


class TestTrainEnsemble:
    def test_single_grid_sample_reduces_to_fit(self):
        rng = np.random.default_rng(10)
        inputs, outputs = random_training(rng, 2, 8)
        ts = TrainingSet(inputs, outputs[:, None], np.array([0.0]))
        ensemble = train_ensemble(ts)
        single = fit_kriging_model(inputs, outputs)
        assert ensemble.n_models == 1
        assert ensemble.trends[0] == pytest.approx(single.trend)
        np.testing.assert_allclose(ensemble.weights[:, 0], single.weights, atol=1e-12)

    def test_models_independent_under_column_permutation(self):
        rng = np.random.default_rng(11)
        inputs = rng.uniform(0, 1, size=(8, 1))
        outputs = rng.normal(size=(8, 5))
        grid = np.arange(5.0)
        base = train_ensemble(TrainingSet(inputs, outputs, grid))
        perm = np.array([3, 1, 4, 0, 2])
        shuffled = train_ensemble(TrainingSet(inputs, outputs[:, perm], grid[perm]))
        np.testing.assert_allclose(shuffled.trends, base.trends[perm], atol=1e-12)
        np.testing.assert_allclose(shuffled.weights, base.weights[:, perm], atol=1e-12)

    @staticmethod
    def _max_relative_error(preds, truth):
        # denominator floored at 1% of the response scale: the polynomial
        # response is exactly zero at theta=0, where a ratio is meaningless
        floor = 0.01 * np.abs(truth).max()
        return float((np.abs(preds - truth) / np.maximum(np.abs(truth), floor)).max())

    def test_poly_generalization_below_five_percent_default(self):
        # OK on S=6N samples predicts the polynomial response within 5%
        # relative error at 100 fresh LHS points (calibrated default, N=1)
        benchmark = PolyBenchmark(n_params=1, grid_size=41)
        box = IntervalVector([0.8], [1.2])
        ts = sample_training_set(benchmark, box, 6, 123)
        ensemble = train_ensemble(ts)
        fresh = latin_hypercube(box, 100, 321)
        rel = self._max_relative_error(ensemble.predict(fresh), benchmark.curve(fresh))
        assert rel < 0.05

    def test_poly_generalization_below_five_percent_optimized(self):
        # same check on the likelihood-optimized path at N=2
        benchmark = PolyBenchmark(n_params=2, grid_size=41)
        box = IntervalVector([0.8, 0.8], [1.2, 1.2])
        ts = sample_training_set(benchmark, box, 12, 123)
        ensemble = train_ensemble(ts, objective="likelihood", budget=150)
        fresh = latin_hypercube(box, 100, 321)
        rel = self._max_relative_error(ensemble.predict(fresh), benchmark.curve(fresh))
        assert rel < 0.05

    def test_per_theta_mode(self):
        rng = np.random.default_rng(12)
        inputs = rng.uniform(0, 1, size=(6, 1))
        outputs = np.column_stack([np.sin(3 * inputs[:, 0]), np.cos(2 * inputs[:, 0])])
        ts = TrainingSet(inputs, outputs, np.array([0.0, 1.0]))
        ensemble = train_ensemble(ts, rate_mode="per-theta", budget=40)
        assert ensemble.rates.shape == (2, 1)
        preds = ensemble.predict(inputs)
        np.testing.assert_allclose(preds, outputs, rtol=1e-5, atol=1e-8)

    def test_predict_matches_per_model_predict(self):
        rng = np.random.default_rng(13)
        inputs, _ = random_training(rng, 2, 9)
        outputs = rng.normal(size=(9, 4))
        ts = TrainingSet(inputs, outputs, np.arange(4.0))
        ensemble = train_ensemble(ts)
        probe = rng.uniform(-1, 1, size=(7, 2))
        batch = ensemble.predict(probe)
        for k in range(4):
            np.testing.assert_allclose(batch[:, k], ensemble.model(k).predict(probe), atol=1e-12)
