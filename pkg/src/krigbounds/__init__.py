"""Guaranteed worst-case response bounds for sampled black-box systems.

Train an ordinary-kriging surrogate on input/output samples, then extend it
to interval arithmetic to obtain inclusive, finite lower/upper bounds of the
response when the inputs carry bounded tolerances.
"""

from .benchmarks import (
    ArrayBenchmark,
    PolyBenchmark,
    array_ia_e,
    array_power_pattern,
    dolph_chebyshev,
    poly_eval,
    poly_ia_e,
    sample_training_set,
)
from .bounds import (
    BoundsCurve,
    curve_bounds,
    distance_power_bounds,
    ensemble_bounds,
    exponent_bounds,
    model_bounds,
)
from .dataset import ExternalDataset, read_dataset, write_dataset
from .estimator import IntervalKrigingRegressor
from .experiment import ExperimentConfig, ExperimentResult, emit, run_benchmark, run_external
from .interval import Interval, IntervalVector
from .kriging import (
    KrigingModel,
    SurrogateEnsemble,
    TrainingSet,
    calibrated_rates,
    correlation,
    fit_kriging_model,
    loo_residuals,
    optimize_rate,
    train_ensemble,
)
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
from .sampling import ToleranceSpec, expand, latin_hypercube, substream, uniform_draws

__version__ = "0.1.0"

__all__ = [
    "ArrayBenchmark",
    "BoundsCurve",
    "ExperimentConfig",
    "ExperimentResult",
    "ExternalDataset",
    "FeatureIntervals",
    "InclusionReport",
    "Interval",
    "IntervalKrigingRegressor",
    "IntervalVector",
    "KrigingModel",
    "MCBand",
    "PolyBenchmark",
    "SurrogateEnsemble",
    "ToleranceSpec",
    "TrainingSet",
    "array_ia_e",
    "array_power_pattern",
    "array_tolerance_index",
    "band_from_curves",
    "calibrated_rates",
    "correlation",
    "curve_bounds",
    "distance_power_bounds",
    "dolph_chebyshev",
    "emit",
    "ensemble_bounds",
    "expand",
    "exponent_bounds",
    "fit_kriging_model",
    "inclusion_metric",
    "latin_hypercube",
    "loo_residuals",
    "mc_band",
    "model_bounds",
    "optimize_rate",
    "pattern_features",
    "poly_eval",
    "poly_ia_e",
    "read_dataset",
    "run_benchmark",
    "run_external",
    "sample_training_set",
    "select_min_delta",
    "substream",
    "tolerance_index",
    "train_ensemble",
    "uniform_draws",
    "write_dataset",
]
