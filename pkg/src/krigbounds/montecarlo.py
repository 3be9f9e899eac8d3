"""Monte Carlo reference band: the pointwise envelope of sampled curves."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .interval import IntervalVector
from .sampling import uniform_draws


@dataclass
class MCBand:
    """Pointwise min/max of Monte Carlo response curves over the grid."""

    theta_grid: np.ndarray
    inf: np.ndarray
    sup: np.ndarray
    m_realizations: int

    def __post_init__(self):
        self.theta_grid = np.asarray(self.theta_grid, dtype=float)
        self.inf = np.asarray(self.inf, dtype=float)
        self.sup = np.asarray(self.sup, dtype=float)
        if not (self.theta_grid.shape == self.inf.shape == self.sup.shape):
            raise ValueError("grid and band arrays must share one shape")
        if self.m_realizations < 1:
            raise ValueError("band needs at least one realization")
        if np.any(self.inf > self.sup):
            raise ValueError("band inf exceeds sup")

    def widths(self) -> np.ndarray:
        return self.sup - self.inf


def band_from_curves(theta_grid, curves) -> MCBand:
    """Envelope of explicitly given realization curves, shape (m, K)."""
    curves = np.asarray(curves, dtype=float)
    if curves.ndim != 2:
        raise ValueError(f"curves must be (m, K), got shape {curves.shape}")
    return MCBand(theta_grid, curves.min(axis=0), curves.max(axis=0), curves.shape[0])


def mc_band(
    curve_fn,
    theta_grid,
    box: IntervalVector,
    count: int,
    seed,
    include_nominal: bool = False,
    nominal_point=None,
    chunk: int = 2048,
) -> MCBand:
    """Envelope of ``count`` uniform in-box realizations of ``curve_fn``.

    ``curve_fn`` maps (m, N) parameter points to (m, K) curves.  Min/max are
    reduced streaming per chunk, so memory stays O(K).  ``include_nominal``
    appends one extra realization at ``nominal_point`` (box midpoint by
    default) so the nominal curve is always inside the band.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    theta_grid = np.asarray(theta_grid, dtype=float)
    lo = np.full(theta_grid.shape, np.inf)
    hi = np.full(theta_grid.shape, -np.inf)
    draws = uniform_draws(box, count, seed)
    for start in range(0, count, chunk):
        values = np.asarray(curve_fn(draws[start : start + chunk]), dtype=float)
        lo = np.minimum(lo, values.min(axis=0))
        hi = np.maximum(hi, values.max(axis=0))
    m_total = count
    if include_nominal:
        point = box.midpoints() if nominal_point is None else np.asarray(nominal_point, dtype=float)
        values = np.asarray(curve_fn(point[None, :]), dtype=float)
        lo = np.minimum(lo, values[0])
        hi = np.maximum(hi, values[0])
        m_total += 1
    return MCBand(theta_grid, lo, hi, m_total)
