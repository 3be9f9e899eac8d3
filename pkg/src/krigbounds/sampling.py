"""Tolerance expansion, Latin hypercube designs and seeded uniform draws.

Reproducibility contract: all randomness flows through numpy's PCG64
generator seeded with ``SeedSequence(entropy=seed, spawn_key=key)``.  The
``spawn_key`` identifies the task (training repeat, Monte Carlo stream, ...)
so parallel or reordered execution cannot change any result.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .interval import Interval, IntervalVector
from .validation import as_float_array, ensure_finite

# spawn_key stream ids used by the experiment pipeline
STREAM_TRAINING = 0
STREAM_MC = 1
STREAM_VALIDATION = 2


def substream(seed: int, *key: int) -> np.random.Generator:
    """Independent generator for task ``key`` under the experiment ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=tuple(key)))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(np.random.SeedSequence(entropy=seed))


@dataclass
class ToleranceSpec:
    """Nominal parameter vector with a relative tolerance.

    ``delta`` is dimensionless (0.03 means +/-3%).  Individual parameters may
    carry an explicit interval in ``overrides`` (indexed by position), which
    replaces the relative expansion for that entry.
    """

    nominal: np.ndarray
    delta: float = 0.0
    overrides: dict[int, Interval] = field(default_factory=dict)

    def __post_init__(self):
        self.nominal = ensure_finite(as_float_array(self.nominal, "nominal", ndim=1), "nominal")
        self.delta = float(self.delta)
        if not 0.0 <= self.delta < 1.0:
            raise ValueError(f"delta must lie in [0, 1), got {self.delta}")
        for n in self.overrides:
            if not 0 <= n < len(self.nominal):
                raise KeyError(f"override index {n} outside parameter range 0..{len(self.nominal) - 1}")


def expand(spec: ToleranceSpec) -> IntervalVector:
    """Expand a tolerance spec into the parameter box.

    Each entry becomes [p*(1-delta), p*(1+delta)] around its nominal value
    (half-width |p|*delta, so negative nominals keep ordered endpoints).
    A zero nominal with a relative tolerance degenerates to a point and is
    flagged with a warning.
    """
    half = np.abs(spec.nominal) * spec.delta
    lo = spec.nominal - half
    hi = spec.nominal + half
    if spec.delta > 0 and np.any(spec.nominal == 0.0):
        warnings.warn("zero nominal with relative tolerance yields a degenerate interval", stacklevel=2)
    for n, iv in spec.overrides.items():
        lo[n], hi[n] = iv.lo, iv.hi
    return IntervalVector(lo, hi)


def latin_hypercube(box: IntervalVector, count: int, seed) -> np.ndarray:
    """Stratified LHS design over ``box``: one sample per stratum per dimension.

    Placement within each stratum is uniform random.  Returns a (count, N)
    array; deterministic for a given seed.
    """
    if count < 1:
        raise ValueError(f"sample count must be >= 1, got {count}")
    rng = _as_rng(seed)
    n_dim = len(box)
    samples = np.empty((count, n_dim))
    for n in range(n_dim):
        strata = rng.permutation(count)
        offsets = rng.uniform(size=count)
        unit = (strata + offsets) / count
        samples[:, n] = box.lo[n] + (box.hi[n] - box.lo[n]) * unit
    return samples


def uniform_draws(box: IntervalVector, count: int, seed) -> np.ndarray:
    """(count, N) i.i.d. uniform samples from ``box``; deterministic per seed."""
    if count < 1:
        raise ValueError(f"draw count must be >= 1, got {count}")
    rng = _as_rng(seed)
    return rng.uniform(box.lo, box.hi, size=(count, len(box)))
