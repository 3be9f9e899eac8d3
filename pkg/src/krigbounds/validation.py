"""Input validation helpers shared by the data containers and the estimator."""

from __future__ import annotations

import numpy as np


def as_float_array(x, name: str, ndim: int | None = None) -> np.ndarray:
    """Convert to a float64 ndarray and optionally enforce dimensionality."""
    arr = np.asarray(x, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {arr.shape}")
    return arr


def ensure_finite(arr: np.ndarray, name: str) -> np.ndarray:
    if not np.isfinite(arr).all():
        bad = np.argwhere(~np.isfinite(np.atleast_1d(arr)))
        raise ValueError(f"{name} contains a non-finite entry at index {tuple(bad[0])}")
    return arr


def as_matrix(x, name: str) -> np.ndarray:
    """Coerce to a finite 2-D float matrix; 1-D input becomes a single column."""
    arr = as_float_array(x, name)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a matrix, got shape {arr.shape}")
    return ensure_finite(arr, name)


def find_duplicate_rows(matrix: np.ndarray) -> tuple[int, int] | None:
    """Return the first (i, j) pair of identical rows, or None."""
    order = np.lexsort(matrix.T[::-1])
    sorted_rows = matrix[order]
    equal = np.all(sorted_rows[1:] == sorted_rows[:-1], axis=1)
    hits = np.flatnonzero(equal)
    if hits.size == 0:
        return None
    i, j = order[hits[0]], order[hits[0] + 1]
    return (min(i, j), max(i, j))


def reject_duplicate_rows(matrix: np.ndarray, name: str) -> None:
    dup = find_duplicate_rows(matrix)
    if dup is not None:
        raise ValueError(f"{name} has duplicate rows {dup[0]} and {dup[1]}")


def unique_rows(matrix: np.ndarray) -> np.ndarray:
    """Deduplicate rows preserving first-occurrence order."""
    _, idx = np.unique(matrix, axis=0, return_index=True)
    return matrix[np.sort(idx)]
