"""Bound-quality metrics: tolerance index, inclusion metric, pattern features.

All integrals use one composite trapezoidal rule on the sampled grid, so
every metric is invariant under grid reversal.  The Heaviside gate treats
zero as zero, which keeps exact-coverage cases on the non-penalized branch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import BoundsCurve
from .interval import Interval
from .montecarlo import MCBand

MAIN_LOBE_NULL_DB = -30.0  # nominal-curve level below which a local minimum counts as a null


def _integral(values, grid) -> float:
    """|trapezoid| so ascending and descending grids agree."""
    return float(abs(np.trapezoid(values, grid)))


def _gated(diff: np.ndarray) -> np.ndarray:
    """diff * H(diff) with H(0) = 0."""
    return np.where(diff > 0, diff, 0.0)


def tolerance_index(bounds: BoundsCurve, nominal, grid=None) -> float:
    """Integrated bound width over the integrated |nominal| response.

    ``grid`` overrides the curve's own grid as the integration variable (the
    array pipeline integrates pattern curves in u = sin theta).
    """
    nominal = np.asarray(nominal, dtype=float)
    x = bounds.theta_grid if grid is None else np.asarray(grid, dtype=float)
    if nominal.shape != x.shape or bounds.inf.shape != x.shape:
        raise ValueError("bounds, nominal and grid must share one shape")
    denom = _integral(np.abs(nominal), x)
    if denom == 0.0:
        raise ValueError("tolerance index undefined: integral of |nominal| is zero")
    return _integral(np.abs(bounds.sup - bounds.inf), x) / denom


@dataclass
class InclusionReport:
    """Signed inclusion metric and its three nonnegative components.

    ``psi`` equals ``psi_ext`` when the bounds fully cover the reference band
    and ``-(psi_int + psi_pen)`` otherwise.
    """

    psi: float
    psi_int: float
    psi_ext: float
    psi_pen: float


def inclusion_metric(ia: BoundsCurve, mc: MCBand, nominal) -> InclusionReport:
    """How the IA bounds sit relative to the Monte Carlo band.

    ``psi_int`` integrates the one-sided areas where the bounds fall inside
    the band (under-estimation), ``psi_ext`` where they fall outside
    (over-estimation), and ``psi_pen`` the area of the nominal curve escaping
    the bounds; all are normalized by the integrated band width.
    """
    nominal = np.asarray(nominal, dtype=float)
    x = ia.theta_grid
    if mc.theta_grid.shape != x.shape or not np.array_equal(mc.theta_grid, x):
        raise ValueError("IA bounds and MC band must share the theta grid")
    if nominal.shape != x.shape:
        raise ValueError("nominal curve must live on the shared theta grid")
    norm = _integral(mc.sup - mc.inf, x)
    if norm == 0.0:
        raise ValueError("inclusion metric undefined: MC band has zero total width")
    psi_int = (_integral(_gated(ia.inf - mc.inf), x) + _integral(_gated(mc.sup - ia.sup), x)) / norm
    psi_ext = (_integral(_gated(mc.inf - ia.inf), x) + _integral(_gated(ia.sup - mc.sup), x)) / norm
    psi_pen = (_integral(_gated(ia.inf - nominal), x) + _integral(_gated(nominal - ia.sup), x)) / norm
    psi = psi_ext if psi_int == 0.0 else -(psi_int + psi_pen)
    return InclusionReport(psi=psi, psi_int=psi_int, psi_ext=psi_ext, psi_pen=psi_pen)


def select_min_delta(candidates, nominal, grid=None):
    """Candidate (bounds, seed) pair with minimal tolerance index.

    Ties break toward the lowest seed, so the choice is independent of the
    candidate ordering.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("need at least one candidate")
    scored = [(tolerance_index(bc, nominal, grid=grid), seed, bc) for bc, seed in candidates]
    delta, seed, bc = min(scored, key=lambda t: (t[0], t[1]))
    return bc, seed


@dataclass
class FeatureIntervals:
    """Pattern feature ranges: sidelobe level, half-power beamwidth, peak."""

    sll_db: Interval
    beamwidth: Interval  # in u = sin(theta) units
    peak_db: Interval


def _main_lobe_nulls(nominal: np.ndarray) -> tuple[int, int]:
    """Indices of the first nulls on each side of the nominal peak.

    A null is a local minimum below MAIN_LOBE_NULL_DB relative to the peak.
    """
    k_peak = int(np.argmax(nominal))
    threshold = nominal[k_peak] * 10.0 ** (MAIN_LOBE_NULL_DB / 10.0)
    size = nominal.shape[0]

    def scan(direction: int) -> int | None:
        k = k_peak
        while 0 < k + direction < size - 1:
            k += direction
            if nominal[k] < threshold and nominal[k] <= nominal[k - 1] and nominal[k] <= nominal[k + 1]:
                return k
        return None

    left, right = scan(-1), scan(+1)
    if left is None or right is None:
        raise ValueError("no sidelobe region found: nominal curve has no null on one side of the peak")
    return left, right


def _half_power_width(env: np.ndarray, level: float, u: np.ndarray) -> float:
    """Width (in u) of the main-lobe region of ``env`` above ``level``."""
    k_peak = int(np.argmax(env))
    if env[k_peak] <= level:
        return 0.0
    k = k_peak
    while k > 0 and env[k] > level:
        k -= 1
    u_left = np.interp(level, [env[k], env[k + 1]], [u[k], u[k + 1]])
    k = k_peak
    while k < env.shape[0] - 1 and env[k] > level:
        k += 1
    u_right = np.interp(level, [env[k], env[k - 1]], [u[k], u[k - 1]])
    return float(u_right - u_left)


def pattern_features(curve, nominal=None, theta_grid=None) -> FeatureIntervals:
    """Feature intervals of a power-pattern bounds curve.

    ``curve`` may be a BoundsCurve (then ``nominal`` is required to delimit
    the main lobe) or a plain nominal curve array (with ``theta_grid``).
    Worst-case ratios pair opposite envelopes: the sidelobe level and
    half-power beamwidth of each envelope are referenced to the other
    envelope's peak, while the peak interval is absolute dB.
    """
    if isinstance(curve, BoundsCurve):
        if nominal is None:
            raise ValueError("a nominal curve is required to delimit the main lobe")
        env_lo, env_hi, grid = curve.inf, curve.sup, curve.theta_grid
        nominal = np.asarray(nominal, dtype=float)
    else:
        env_lo = env_hi = nominal = np.asarray(curve, dtype=float)
        if theta_grid is None:
            raise ValueError("theta_grid is required for a plain curve")
        grid = np.asarray(theta_grid, dtype=float)

    k_left, k_right = _main_lobe_nulls(nominal)
    side = np.zeros(nominal.shape, dtype=bool)
    side[:k_left] = True
    side[k_right + 1 :] = True

    peak_lo, peak_hi = float(env_lo.max()), float(env_hi.max())
    if peak_lo <= 0.0:
        raise ValueError("lower envelope peak is not positive; features undefined in dB")
    side_lo, side_hi = float(env_lo[side].max()), float(env_hi[side].max())
    if side_lo <= 0.0 or side_hi <= 0.0:
        raise ValueError("no positive sidelobe level in the lower envelope")

    sll = Interval(10.0 * np.log10(side_lo / peak_hi), 10.0 * np.log10(side_hi / peak_lo))
    u = np.sin(grid)
    bw_values = sorted(
        (
            _half_power_width(env_lo, peak_hi / 2.0, u),
            _half_power_width(env_hi, peak_lo / 2.0, u),
        )
    )
    beamwidth = Interval(bw_values[0], bw_values[1])
    peak = Interval(10.0 * np.log10(peak_lo), 10.0 * np.log10(peak_hi))
    return FeatureIntervals(sll_db=sll, beamwidth=beamwidth, peak_db=peak)


def array_tolerance_index(bounds: BoundsCurve, nominal_power) -> float:
    """Array-pattern tolerance index convention.

    Power-pattern bound widths integrated in u = sin(theta), normalized by
    the integrated field amplitude sqrt(nominal) of the nominal pattern.
    """
    nominal_power = np.asarray(nominal_power, dtype=float)
    if np.any(nominal_power < 0):
        raise ValueError("nominal power pattern must be nonnegative")
    u = np.sin(bounds.theta_grid)
    return tolerance_index(bounds, np.sqrt(nominal_power), grid=u)
