"""Derived performance metrics and curve-comparison utilities."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import CcdfCurve


@dataclass(frozen=True)
class GainReport:
    """Horizontal (dB) and vertical (percent) gain read off two curves."""

    level: float
    shift_db: float
    relative_gain_pct: float

    def __post_init__(self) -> None:
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must be in (0, 1), got {self.level}")


def throughput(theta: float, coverage: float, log_base: str = "natural") -> float:
    """Fixed-rate throughput log(1 + theta) * coverage (rate discounted by
    the outage probability)."""
    if theta <= 0:
        raise ValueError("theta must be > 0")
    if not 0.0 <= coverage <= 1.0:
        raise ValueError("coverage must lie in [0, 1]")
    if log_base == "natural":
        rate = math.log1p(theta)
    elif log_base == "base2":
        rate = math.log2(1.0 + theta)
    else:
        raise ValueError(f"log_base must be 'natural' or 'base2', got {log_base!r}")
    return rate * coverage


def crossing_theta_db(curve: CcdfCurve, level: float) -> float:
    """Threshold (dB) at which a nonincreasing ccdf curve crosses a level,
    by linear interpolation in (dB, probability)."""
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0, 1), got {level}")
    v = np.asarray(curve.values, dtype=float)
    th_db = 10.0 * np.log10(np.asarray(curve.theta_grid, dtype=float))
    if v[0] < level or v[-1] > level:
        raise ValueError(
            f"level {level} not bracketed by curve range [{v[-1]:.4g}, {v[0]:.4g}]"
        )
    idx = int(np.argmax(v <= level))
    if v[idx] == level or idx == 0:
        return float(th_db[idx])
    lo, hi = idx - 1, idx
    frac = (v[lo] - level) / (v[lo] - v[hi])
    return float(th_db[lo] + frac * (th_db[hi] - th_db[lo]))


def horizontal_shift_db(curve_a: CcdfCurve, curve_b: CcdfCurve,
                        level: float = 0.5) -> float:
    """Horizontal dB distance between two ccdf curves at a level; positive
    means curve_a sustains the level at a higher threshold (better)."""
    return crossing_theta_db(curve_a, level) - crossing_theta_db(curve_b, level)


def relative_gain_pct(a: float, b: float) -> float:
    """Vertical relative gain 100 (a - b) / b at a fixed threshold."""
    if b == 0:
        raise ZeroDivisionError("relative gain undefined for a zero baseline")
    return 100.0 * (a - b) / b


def ks_distance(samples, cdf_fn) -> float:
    """Exact sup distance between the empirical cdf of the samples and a
    reference cdf."""
    s = np.sort(np.asarray(samples, dtype=float))
    n = s.size
    if n == 0:
        raise ValueError("ks_distance requires at least one sample")
    f = np.asarray(cdf_fn(s), dtype=float)
    grid = np.arange(1, n + 1) / n
    return float(max(np.max(grid - f), np.max(f - (grid - 1.0 / n))))


def find_interior_extremum(xs, ys, kind: str = "any") -> int | None:
    """Index of the first strict interior local extremum of ys, or None.

    kind selects 'min', 'max' or 'any'.  xs is only used for length
    validation; the grid spacing is irrelevant to strict local extremes.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape:
        raise ValueError("xs and ys must have the same shape")
    if ys.size < 3:
        raise ValueError("need at least 3 points")
    if kind not in ("min", "max", "any"):
        raise ValueError(f"kind must be 'min', 'max' or 'any', got {kind!r}")
    for i in range(1, ys.size - 1):
        is_min = ys[i] < ys[i - 1] and ys[i] < ys[i + 1]
        is_max = ys[i] > ys[i - 1] and ys[i] > ys[i + 1]
        if kind == "min" and is_min:
            return i
        if kind == "max" and is_max:
            return i
        if kind == "any" and (is_min or is_max):
            return i
    return None


def gain_report(curve_a: CcdfCurve, curve_b: CcdfCurve, level: float = 0.5,
                theta: float | None = None) -> GainReport:
    """Bundle the horizontal shift at a level with the vertical relative
    gain at a threshold (defaults to the level-crossing threshold of b)."""
    shift = horizontal_shift_db(curve_a, curve_b, level)
    if theta is None:
        theta = 10.0 ** (crossing_theta_db(curve_b, level) / 10.0)
    a_val = float(np.interp(theta, curve_a.theta_grid, curve_a.values))
    b_val = float(np.interp(theta, curve_b.theta_grid, curve_b.values))
    return GainReport(level=level, shift_db=shift,
                      relative_gain_pct=relative_gain_pct(a_val, b_val))
