"""Closed-form test systems: a polynomial response and a linear-array pattern.

Both expose the same surface: a uniform evaluation grid, batch curve
evaluation for Monte Carlo, and an exact interval oracle built from the
interval kernel.  Curve evaluation and the oracle accumulate their sums over
the parameter axis with the same reduction order, so the float-level
inclusion of sampled curves inside the oracle bounds is exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.signal.windows import chebwin

from . import interval as iv
from .bounds import IA_E, BoundsCurve
from .interval import Interval, IntervalVector
from .kriging import TrainingSet
from .sampling import latin_hypercube
from .validation import unique_rows

_CHUNK_ELEMS = 2_000_000  # elementwise work buffer cap for batch evaluation


def _batch_curve(points, coeff_terms):
    """sum_n points[m, n] * coeff_terms[k, n] with a fixed reduction order.

    Chunks over the batch axis only; the per-row sum over n keeps one
    reduction tree so interval endpoint sums bound these values exactly.
    """
    points = np.asarray(points, dtype=float)
    n_grid, n_par = coeff_terms.shape
    out = np.empty((points.shape[0], n_grid))
    step = max(1, _CHUNK_ELEMS // (n_grid * n_par))
    for start in range(0, points.shape[0], step):
        chunk = points[start : start + step]
        out[start : start + chunk.shape[0]] = np.sum(
            chunk[:, None, :] * coeff_terms[None, :, :], axis=-1
        )
    return out


def _term_sum_bounds(box: IntervalVector, coeff_terms):
    """Endpoints of sum_n [p_n] * coeff_terms[k, n], same reduction order."""
    lo_terms = np.minimum(box.lo[None, :] * coeff_terms, box.hi[None, :] * coeff_terms)
    hi_terms = np.maximum(box.lo[None, :] * coeff_terms, box.hi[None, :] * coeff_terms)
    return np.sum(lo_terms, axis=-1), np.sum(hi_terms, axis=-1)


# ---------------------------------------------------------------------------
# polynomial benchmark


@dataclass
class PolyBenchmark:
    """Response sum_n p_n * theta^n (n = 1..N, no constant term) on [-1, 1]."""

    n_params: int
    grid_size: int = 201

    def __post_init__(self):
        if self.n_params < 1:
            raise ValueError("n_params must be >= 1")
        if self.grid_size < 2:
            raise ValueError("grid_size must be >= 2")

    @property
    def theta_grid(self) -> np.ndarray:
        return np.linspace(-1.0, 1.0, self.grid_size)

    def nominal(self) -> np.ndarray:
        return np.ones(self.n_params)

    def _powers(self, theta) -> np.ndarray:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        return theta[:, None] ** np.arange(1, self.n_params + 1)[None, :]

    def curve(self, points) -> np.ndarray:
        """(m, K) response curves for (m, N) parameter points."""
        return _batch_curve(points, self._powers(self.theta_grid))

    def ia_e(self, box: IntervalVector) -> BoundsCurve:
        """Exact interval bounds; tight because each parameter occurs once."""
        lo, hi = _term_sum_bounds(box, self._powers(self.theta_grid))
        return BoundsCurve(self.theta_grid, lo, hi, IA_E)


def poly_eval(p, theta: float) -> float:
    """Polynomial response at one angle."""
    p = np.asarray(p, dtype=float)
    if abs(theta) > 1:
        raise ValueError(f"theta must satisfy |theta| <= 1, got {theta}")
    return float(np.sum(p * theta ** np.arange(1, p.shape[0] + 1)))


def poly_ia_e(box: IntervalVector, theta: float) -> Interval:
    """Exact interval of the polynomial response at one angle."""
    if abs(theta) > 1:
        raise ValueError(f"theta must satisfy |theta| <= 1, got {theta}")
    total = Interval.degenerate(0.0)
    for n in range(len(box)):
        total = iv.add(total, iv.scale(box[n], theta ** (n + 1)))
    return total


# ---------------------------------------------------------------------------
# linear-array benchmark


def dolph_chebyshev(n_elements: int, sll_db: float = -20.0) -> np.ndarray:
    """Dolph-Chebyshev excitation amplitudes, max-normalized.

    Symmetric, positive, and the broadside pattern of a half-wavelength
    array shows equiripple sidelobes at ``sll_db`` below the peak.
    """
    if n_elements < 2:
        raise ValueError("need at least 2 elements")
    if not sll_db < 0:
        raise ValueError("sidelobe level must be negative dB")
    with warnings.catch_warnings():
        # chebwin warns about noise-bandwidth behavior irrelevant to arrays
        warnings.simplefilter("ignore", UserWarning)
        w = chebwin(n_elements, at=-sll_db)
    w = np.asarray(w, dtype=float)
    return w / w.max()


@dataclass
class ArrayBenchmark:
    """Far-field power pattern of a uniform linear array of N isotropic elements.

    The response is |sum_n p_n exp(j 2 pi (d/lambda) (n-1) sin theta)|^2 over
    theta in [-pi/2, pi/2].  The default grid is 20x the Nyquist rate 2N-1;
    nominal excitations are Dolph-Chebyshev at ``nominal_sll_db``.
    """

    n_elements: int
    spacing_over_lambda: float = 0.5
    grid_size: int | None = None
    nominal_sll_db: float = -20.0

    def __post_init__(self):
        if self.n_elements < 2:
            raise ValueError("n_elements must be >= 2")
        if not self.spacing_over_lambda > 0:
            raise ValueError("spacing must be positive")
        nyquist = 2 * self.n_elements - 1
        if self.grid_size is None:
            self.grid_size = 20 * nyquist
        if self.grid_size < 2 * nyquist:
            raise ValueError(f"grid_size must be >= {2 * nyquist} (twice the Nyquist rate)")

    @property
    def n_params(self) -> int:
        return self.n_elements

    @property
    def theta_grid(self) -> np.ndarray:
        return np.linspace(-np.pi / 2, np.pi / 2, self.grid_size)

    def nominal(self) -> np.ndarray:
        return dolph_chebyshev(self.n_elements, self.nominal_sll_db)

    def _phase_terms(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        psi = (
            2.0 * np.pi * self.spacing_over_lambda
            * np.arange(self.n_elements)[None, :] * np.sin(theta)[:, None]
        )
        return np.cos(psi), np.sin(psi)

    def curve(self, points) -> np.ndarray:
        """(m, K) power patterns for (m, N) excitation points."""
        cos_t, sin_t = self._phase_terms(self.theta_grid)
        re = _batch_curve(points, cos_t)
        im = _batch_curve(points, sin_t)
        return re**2 + im**2

    def ia_e(self, box: IntervalVector) -> BoundsCurve:
        """Interval power-pattern bounds from the real/imaginary part sums."""
        cos_t, sin_t = self._phase_terms(self.theta_grid)
        re_lo, re_hi = _term_sum_bounds(box, cos_t)
        im_lo, im_hi = _term_sum_bounds(box, sin_t)
        re2_lo, re2_hi = _square_bounds(re_lo, re_hi)
        im2_lo, im2_hi = _square_bounds(im_lo, im_hi)
        return BoundsCurve(self.theta_grid, re2_lo + im2_lo, re2_hi + im2_hi, IA_E)


def _square_bounds(lo, hi):
    """Vectorized interval square (the even-power rule)."""
    lo2, hi2 = lo**2, hi**2
    out_lo = np.where(lo > 0, lo2, np.where(hi < 0, hi2, 0.0))
    out_hi = np.maximum(lo2, hi2)
    return out_lo, out_hi


def array_power_pattern(p, theta: float, spacing_over_lambda: float = 0.5) -> float:
    """Power pattern value at one angle, via real/imaginary accumulation."""
    p = np.asarray(p, dtype=float)
    if abs(theta) > np.pi / 2:
        raise ValueError(f"theta must satisfy |theta| <= pi/2, got {theta}")
    psi = 2.0 * np.pi * spacing_over_lambda * np.arange(p.shape[0]) * np.sin(theta)
    re = float(np.sum(p * np.cos(psi)))
    im = float(np.sum(p * np.sin(psi)))
    return re**2 + im**2


def array_ia_e(box: IntervalVector, theta: float, spacing_over_lambda: float = 0.5) -> Interval:
    """Exact-form interval of the power pattern at one angle."""
    if abs(theta) > np.pi / 2:
        raise ValueError(f"theta must satisfy |theta| <= pi/2, got {theta}")
    psi = 2.0 * np.pi * spacing_over_lambda * np.arange(len(box)) * np.sin(theta)
    re = Interval.degenerate(0.0)
    im = Interval.degenerate(0.0)
    for n in range(len(box)):
        re = iv.add(re, iv.scale(box[n], float(np.cos(psi[n]))))
        im = iv.add(im, iv.scale(box[n], float(np.sin(psi[n]))))
    return iv.add(iv.power(re, 2), iv.power(im, 2))


# ---------------------------------------------------------------------------


def sample_training_set(benchmark, box: IntervalVector, count: int, seed) -> TrainingSet:
    """LHS inputs with exact benchmark outputs on the benchmark grid.

    Coincident LHS rows (possible only when the box is degenerate) are
    collapsed so the training inputs stay distinct.
    """
    inputs = latin_hypercube(box, count, seed)
    inputs = unique_rows(inputs)
    outputs = benchmark.curve(inputs)
    return TrainingSet(inputs, outputs, benchmark.theta_grid)
