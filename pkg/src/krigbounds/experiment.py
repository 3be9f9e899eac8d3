"""End-to-end experiments: repeated trainings, bound selection, metrics, files.

The pipeline draws L independent Latin hypercube training sets, trains one
surrogate ensemble per draw, keeps the bounds curve with minimal tolerance
index, and compares it against a Monte Carlo reference band (for the
benchmarks, also against the exact interval oracle).

Randomness is fully determined by the experiment seed: training repeat ``l``
uses substream (STREAM_TRAINING, l) and the Monte Carlo band uses
STREAM_MC, so results do not depend on execution order.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .benchmarks import ArrayBenchmark, PolyBenchmark, sample_training_set
from .bounds import BoundsCurve, ensemble_bounds
from .dataset import ExternalDataset, read_validation_curves
from .interval import IntervalVector
from .kriging import DEFAULT_NUGGET, SurrogateEnsemble, TrainingSet, train_ensemble
from .metrics import (
    FeatureIntervals,
    InclusionReport,
    array_tolerance_index,
    inclusion_metric,
    pattern_features,
    select_min_delta,
    tolerance_index,
)
from .montecarlo import MCBand, band_from_curves, mc_band
from .sampling import STREAM_MC, STREAM_TRAINING, ToleranceSpec, expand, substream
from .validation import unique_rows


@dataclass
class ExperimentConfig:
    """Settings of one experiment run."""

    kind: str                      # "poly" | "array" | "external"
    n_params: int = 1
    n_train: int | None = None     # S; defaults to 6 * n_params
    grid_size: int | None = None   # K; benchmark default when None
    delta: float = 0.20
    mc_draws: int = 10_000         # M
    repeats: int = 100             # L
    seed: int = 0
    beta_mode: str = "shared"      # "shared" | "per-k"
    beta_objective: str = "calibrated"
    nugget: float = DEFAULT_NUGGET
    sll_db: float = -20.0
    spacing_over_lambda: float = 0.5
    dataset_path: str | None = None
    validation_path: str | None = None
    out_dir: str | None = None
    plotdata: bool = False

    def __post_init__(self):
        if self.kind not in ("poly", "array", "external"):
            raise ValueError(f"unknown experiment kind {self.kind!r}")
        if self.n_train is None:
            self.n_train = 6 * self.n_params
        if self.n_train < 1 or self.repeats < 1:
            raise ValueError("n_train and repeats must be >= 1")
        if self.kind == "external" and not self.dataset_path:
            raise ValueError("external experiments need a dataset path")

    def echo(self) -> dict:
        return {
            "kind": self.kind,
            "n_params": self.n_params,
            "n_train": self.n_train,
            "grid_size": self.grid_size,
            "delta": self.delta,
            "mc_draws": self.mc_draws,
            "repeats": self.repeats,
            "seed": self.seed,
            "beta_mode": self.beta_mode,
            "beta_objective": self.beta_objective,
            "nugget": self.nugget,
            "sll_db": self.sll_db,
            "spacing_over_lambda": self.spacing_over_lambda,
            "dataset_path": self.dataset_path,
            "validation_path": self.validation_path,
        }


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    theta_grid: np.ndarray
    nominal_curve: np.ndarray
    ia_lbe: BoundsCurve
    mc: MCBand
    report_lbe: InclusionReport
    delta_lbe: float
    selected_repeat: int
    ensemble: SurrogateEnsemble
    box: IntervalVector
    ia_e: BoundsCurve | None = None
    report_e: InclusionReport | None = None
    delta_e: float | None = None
    features_lbe: FeatureIntervals | None = None
    features_e: FeatureIntervals | None = None
    features_nominal: FeatureIntervals | None = None
    runtime_seconds: float = 0.0


def _rate_kwargs(config: ExperimentConfig) -> dict:
    mode = {"per-k": "per-theta"}.get(config.beta_mode, config.beta_mode)
    return dict(rate_mode=mode, objective=config.beta_objective, nugget=config.nugget)


def _train_min_delta(config, box, nominal_curve, make_training_set, delta_grid=None):
    """L trainings, one per substream, keeping the min-tolerance-index bounds."""
    candidates = []
    ensembles = {}
    for repeat in range(config.repeats):
        rng = substream(config.seed, STREAM_TRAINING, repeat)
        ts = make_training_set(rng)
        ensemble = train_ensemble(ts, **_rate_kwargs(config))
        curve = ensemble_bounds(ensemble, box)
        candidates.append((curve, repeat))
        ensembles[repeat] = ensemble
    selected, repeat = select_min_delta(candidates, nominal_curve, grid=delta_grid)
    return selected, ensembles[repeat], repeat


def make_benchmark(config: ExperimentConfig):
    if config.kind == "poly":
        kwargs = {} if config.grid_size is None else {"grid_size": config.grid_size}
        return PolyBenchmark(config.n_params, **kwargs)
    if config.kind == "array":
        return ArrayBenchmark(
            config.n_params,
            spacing_over_lambda=config.spacing_over_lambda,
            grid_size=config.grid_size,
            nominal_sll_db=config.sll_db,
        )
    raise ValueError("external experiments build no benchmark")


def run_benchmark(config: ExperimentConfig) -> ExperimentResult:
    """Full pipeline on a closed-form benchmark (kind 'poly' or 'array')."""
    start = time.perf_counter()
    benchmark = make_benchmark(config)
    spec = ToleranceSpec(benchmark.nominal(), config.delta)
    box = expand(spec)
    theta = benchmark.theta_grid
    nominal_curve = benchmark.curve(spec.nominal[None, :])[0]
    is_array = config.kind == "array"
    delta_grid = np.sin(theta) if is_array else None
    delta_reference = np.sqrt(nominal_curve) if is_array else nominal_curve

    ia_lbe, ensemble, repeat = _train_min_delta(
        config, box, delta_reference,
        lambda rng: sample_training_set(benchmark, box, config.n_train, rng),
        delta_grid=delta_grid,
    )
    mc = mc_band(benchmark.curve, theta, box, config.mc_draws, substream(config.seed, STREAM_MC))
    ia_e = benchmark.ia_e(box)

    report_lbe = inclusion_metric(ia_lbe, mc, nominal_curve)
    report_e = inclusion_metric(ia_e, mc, nominal_curve)
    if is_array:
        delta_lbe = array_tolerance_index(ia_lbe, nominal_curve)
        delta_e = array_tolerance_index(ia_e, nominal_curve)
        features_lbe = pattern_features(ia_lbe, nominal_curve)
        features_e = pattern_features(ia_e, nominal_curve)
        features_nom = pattern_features(nominal_curve, theta_grid=theta)
    else:
        delta_lbe = tolerance_index(ia_lbe, nominal_curve)
        delta_e = tolerance_index(ia_e, nominal_curve)
        features_lbe = features_e = features_nom = None

    return ExperimentResult(
        config=config,
        theta_grid=theta,
        nominal_curve=nominal_curve,
        ia_lbe=ia_lbe,
        mc=mc,
        report_lbe=report_lbe,
        delta_lbe=delta_lbe,
        selected_repeat=repeat,
        ensemble=ensemble,
        box=box,
        ia_e=ia_e,
        report_e=report_e,
        delta_e=delta_e,
        features_lbe=features_lbe,
        features_e=features_e,
        features_nominal=features_nom,
        runtime_seconds=time.perf_counter() - start,
    )


def run_external(config: ExperimentConfig, dataset: ExternalDataset) -> ExperimentResult:
    """Pipeline on an ingested dataset: bounds from the samples themselves.

    The transfer function is unknown, so there is no exact oracle and no
    fresh Monte Carlo; the reference band comes from the validation sample
    file, and the nominal reference curve is the surrogate prediction at the
    nominal parameter vector.
    """
    start = time.perf_counter()
    box = dataset.box()
    theta = dataset.theta_grid_deg
    if config.validation_path is None:
        raise ValueError("external experiments need a validation sample file for the reference band")
    curves = read_validation_curves(config.validation_path, dataset.n_params, dataset.n_grid)
    mc = band_from_curves(theta, curves)

    inputs = unique_rows(dataset.inputs)
    outputs = dataset.outputs if inputs.shape[0] == dataset.inputs.shape[0] else None
    if outputs is None:
        # degenerate boxes can collapse rows; keep first occurrences
        keep = [int(np.flatnonzero(np.all(dataset.inputs == row, axis=1))[0]) for row in inputs]
        outputs = dataset.outputs[keep]
    ts = TrainingSet(inputs, outputs, theta)
    ensemble = train_ensemble(ts, **_rate_kwargs(config))
    ia_lbe = ensemble_bounds(ensemble, box)
    nominal_curve = ensemble.predict(dataset.nominal[None, :])[0]

    report_lbe = inclusion_metric(ia_lbe, mc, nominal_curve)
    delta_lbe = tolerance_index(ia_lbe, nominal_curve)
    return ExperimentResult(
        config=config,
        theta_grid=theta,
        nominal_curve=nominal_curve,
        ia_lbe=ia_lbe,
        mc=mc,
        report_lbe=report_lbe,
        delta_lbe=delta_lbe,
        selected_repeat=0,
        ensemble=ensemble,
        box=box,
        runtime_seconds=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# artifact files


def _feature_dict(features: FeatureIntervals | None):
    if features is None:
        return None
    return {
        "sll_db": [features.sll_db.lo, features.sll_db.hi],
        "beamwidth_u": [features.beamwidth.lo, features.beamwidth.hi],
        "peak_db": [features.peak_db.lo, features.peak_db.hi],
    }


def _report_dict(report: InclusionReport | None):
    if report is None:
        return None
    return {
        "psi": report.psi,
        "psi_int": report.psi_int,
        "psi_ext": report.psi_ext,
        "psi_pen": report.psi_pen,
    }


def emit(result: ExperimentResult, out_dir) -> dict[str, Path]:
    """Write bounds.csv, metrics.json and optional plotdata/ series.

    Numeric content is written with full round-trip precision, so a rerun
    with the same config and seed reproduces the values byte-identically
    (timing fields excepted).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {}

    columns = [
        ("theta", result.theta_grid),
        ("inf_ia_lbe", result.ia_lbe.inf),
        ("sup_ia_lbe", result.ia_lbe.sup),
        ("inf_mc", result.mc.inf),
        ("sup_mc", result.mc.sup),
        ("nominal", result.nominal_curve),
    ]
    if result.ia_e is not None:
        columns += [("inf_ia_e", result.ia_e.inf), ("sup_ia_e", result.ia_e.sup)]
    bounds_path = out / "bounds.csv"
    with bounds_path.open("w") as handle:
        handle.write(",".join(name for name, _ in columns) + "\n")
        for k in range(result.theta_grid.shape[0]):
            handle.write(",".join(repr(float(values[k])) for _, values in columns) + "\n")
    paths["bounds"] = bounds_path

    metrics = {
        "ia_lbe": _report_dict(result.report_lbe),
        "ia_e": _report_dict(result.report_e),
        "delta_ia_lbe": result.delta_lbe,
        "delta_ia_e": result.delta_e,
        "selected_repeat": result.selected_repeat,
        "features": {
            "nominal": _feature_dict(result.features_nominal),
            "ia_lbe": _feature_dict(result.features_lbe),
            "ia_e": _feature_dict(result.features_e),
        },
        "runtime_seconds": result.runtime_seconds,
        "config_echo": result.config.echo(),
    }
    metrics_path = out / "metrics.json"
    metrics_path.write_text(json.dumps(metrics, indent=2, sort_keys=True) + "\n")
    paths["metrics"] = metrics_path

    if result.config.plotdata:
        plot_dir = out / "plotdata"
        plot_dir.mkdir(exist_ok=True)
        series = {
            "nominal": result.nominal_curve,
            "inf_ia_lbe": result.ia_lbe.inf,
            "sup_ia_lbe": result.ia_lbe.sup,
            "inf_mc": result.mc.inf,
            "sup_mc": result.mc.sup,
        }
        if result.ia_e is not None:
            series["inf_ia_e"] = result.ia_e.inf
            series["sup_ia_e"] = result.ia_e.sup
        for name, values in series.items():
            series_path = plot_dir / f"{name}.csv"
            with series_path.open("w") as handle:
                handle.write("theta,value\n")
                for k in range(result.theta_grid.shape[0]):
                    handle.write(f"{result.theta_grid[k]!r},{float(values[k])!r}\n")
        paths["plotdata"] = plot_dir
    return paths
