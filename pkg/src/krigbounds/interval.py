"""Closed real intervals and the arithmetic kernel used throughout the package.

Every operation returns an interval that contains the pointwise image of its
argument interval(s) (the inclusion property).  Endpoints are plain floats;
no outward rounding is applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with finite, ordered endpoints."""

    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: lo={self.lo} > hi={self.hi}")

    @classmethod
    def degenerate(cls, value: float) -> "Interval":
        return cls(value, value)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return add(self, other)

    def __iter__(self):
        yield self.lo
        yield self.hi


def add(a: Interval, b: Interval) -> Interval:
    """Endpoint-wise interval sum."""
    lo, hi = a.lo + b.lo, a.hi + b.hi
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise OverflowError("interval sum overflowed to a non-finite endpoint")
    return Interval(lo, hi)


def scale(x: Interval, c: float) -> Interval:
    """Multiply by a crisp constant; endpoints swap when c < 0."""
    a, b = x.lo * c, x.hi * c
    return Interval(a, b) if a <= b else Interval(b, a)


def power(x: Interval, alpha: int) -> Interval:
    """Integer power of an interval.

    Three cases: positive interval or odd exponent keeps endpoint order;
    a negative interval with even exponent swaps endpoints; an interval
    containing zero maps to [0, max of the endpoint powers].
    """
    if alpha < 1 or alpha != int(alpha):
        raise ValueError(f"alpha must be a positive integer, got {alpha}")
    alpha = int(alpha)
    plo, phi = x.lo**alpha, x.hi**alpha
    if x.lo > 0 or alpha % 2 != 0:
        return Interval(plo, phi)
    if x.hi < 0:
        return Interval(phi, plo)
    return Interval(0.0, max(plo, phi))


def absolute(x: Interval) -> Interval:
    """Absolute value; the image is always a nonnegative interval."""
    if x.lo > 0:
        return x
    if x.hi < 0:
        return Interval(-x.hi, -x.lo)
    return Interval(0.0, max(-x.lo, x.hi))


def power_abs(x: Interval, alpha: float) -> Interval:
    """|x| raised to a positive real exponent.

    Monotone on each sign region, so the same three branches as ``power``
    apply; the result is always contained in [0, inf).
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if x.lo > 0:
        return Interval(x.lo**alpha, x.hi**alpha)
    if x.hi < 0:
        return Interval((-x.hi) ** alpha, (-x.lo) ** alpha)
    return Interval(0.0, max((-x.lo) ** alpha, x.hi**alpha))


def exp(x: Interval) -> Interval:
    """Exponential of an interval (monotone image)."""
    lo, hi = math.exp(x.lo), math.exp(x.hi)
    if not math.isfinite(hi):
        raise OverflowError(f"exp overflowed for endpoint {x.hi}")
    return Interval(lo, hi)


def contains(x: Interval, value: float) -> bool:
    return value in x


def width(x: Interval) -> float:
    return x.width


class IntervalVector:
    """Ordered collection of N intervals, stored as endpoint arrays."""

    def __init__(self, lo, hi):
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError(f"endpoint arrays must be 1-D with equal shape, got {lo.shape} and {hi.shape}")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("interval vector endpoints must be finite")
        if np.any(lo > hi):
            n = int(np.argmax(lo > hi))
            raise ValueError(f"entry {n} has lo={lo[n]} > hi={hi[n]}")
        self._lo = lo.copy()
        self._hi = hi.copy()
        self._lo.flags.writeable = False
        self._hi.flags.writeable = False

    @classmethod
    def from_intervals(cls, intervals) -> "IntervalVector":
        ivs = list(intervals)
        return cls([iv.lo for iv in ivs], [iv.hi for iv in ivs])

    @classmethod
    def degenerate(cls, values) -> "IntervalVector":
        values = np.asarray(values, dtype=float)
        return cls(values, values)

    @property
    def lo(self) -> np.ndarray:
        return self._lo

    @property
    def hi(self) -> np.ndarray:
        return self._hi

    @property
    def entries(self) -> list[Interval]:
        return [Interval(a, b) for a, b in zip(self._lo, self._hi)]

    def __len__(self) -> int:
        return self._lo.shape[0]

    def __getitem__(self, n: int) -> Interval:
        return Interval(self._lo[n], self._hi[n])

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalVector):
            return NotImplemented
        return np.array_equal(self._lo, other._lo) and np.array_equal(self._hi, other._hi)

    def __repr__(self) -> str:
        inner = ", ".join(f"[{a:g}, {b:g}]" for a, b in zip(self._lo, self._hi))
        return f"IntervalVector({inner})"

    def widths(self) -> np.ndarray:
        return self._hi - self._lo

    def midpoints(self) -> np.ndarray:
        return 0.5 * (self._lo + self._hi)

    def is_degenerate(self) -> bool:
        return bool(np.all(self._lo == self._hi))

    def contains_point(self, point) -> bool:
        point = np.asarray(point, dtype=float)
        return bool(np.all(self._lo <= point) and np.all(point <= self._hi))

    def contains_vector(self, other: "IntervalVector") -> bool:
        return bool(np.all(self._lo <= other.lo) and np.all(other.hi <= self._hi))
