import math

import numpy as np
import pytest

from isacsim import (
    CcdfCurve,
    SinrMode,
    find_interior_extremum,
    horizontal_shift_db,
    ks_distance,
    relative_gain_pct,
    throughput,
)
from isacsim.metrics import GainReport, crossing_theta_db, gain_report


def _curve(theta_db, values):
    return CcdfCurve(theta_grid=10.0 ** (np.asarray(theta_db) / 10.0),
                     values=np.asarray(values, dtype=float),
                     mode=SinrMode.COMM_AVG, provenance="analytic")


class TestThroughput:
    def test_examples(self):
        assert throughput(1.0, 0.0) == 0.0
        assert throughput(1e-9, 1.0) == pytest.approx(0.0, abs=1e-8)
        assert throughput(1.0, 0.6234) == pytest.approx(math.log(2) * 0.6234, rel=1e-12)
        assert throughput(1.0, 0.6234) == pytest.approx(0.4321, abs=1e-4)

    def test_base2(self):
        assert throughput(3.0, 0.5, log_base="base2") == pytest.approx(1.0)

    def test_monotone_in_coverage(self):
        assert throughput(2.0, 0.8) > throughput(2.0, 0.5)

    def test_validation(self):
        with pytest.raises(ValueError):
            throughput(0.0, 0.5)
        with pytest.raises(ValueError):
            throughput(1.0, 1.5)
        with pytest.raises(ValueError):
            throughput(1.0, 0.5, log_base="ln")


class TestHorizontalShift:
    def test_identical_curves(self):
        c = _curve([-10, -5, 0, 5], [0.9, 0.7, 0.3, 0.1])
        assert horizontal_shift_db(c, c) == 0.0

    def test_constructed_decade_shift(self):
        th = np.arange(-20.0, 21.0, 1.0)
        base = 1.0 / (1.0 + 10.0 ** (th / 10.0))
        a = _curve(th, base)          # crosses 0.5 at 0 dB
        b = _curve(th, 1.0 / (1.0 + 10.0 ** ((th + 10.0) / 10.0)))  # at -10 dB
        assert horizontal_shift_db(a, b) == pytest.approx(10.0, abs=1e-9)

    def test_antisymmetry(self):
        a = _curve([-10, 0, 10], [0.95, 0.5, 0.02])
        b = _curve([-10, 0, 10], [0.85, 0.35, 0.01])
        assert horizontal_shift_db(a, b) == pytest.approx(
            -horizontal_shift_db(b, a), abs=1e-12)

    def test_level_not_bracketed(self):
        c = _curve([-10, 0, 10], [0.45, 0.30, 0.20])
        with pytest.raises(ValueError, match="not bracketed"):
            crossing_theta_db(c, 0.5)
        with pytest.raises(ValueError):
            crossing_theta_db(c, 0.1)

    def test_level_validation(self):
        c = _curve([-10, 0, 10], [0.9, 0.5, 0.1])
        with pytest.raises(ValueError):
            crossing_theta_db(c, 1.5)


class TestRelativeGain:
    def test_examples(self):
        assert relative_gain_pct(0.4, 0.4) == 0.0
        assert relative_gain_pct(0.8, 0.4) == pytest.approx(100.0)
        assert relative_gain_pct(0.2, 0.4) == pytest.approx(-50.0)

    def test_zero_baseline(self):
        with pytest.raises(ZeroDivisionError):
            relative_gain_pct(0.4, 0.0)

    def test_report_bundle(self):
        a = _curve([-10, 0, 10], [0.95, 0.60, 0.10])
        b = _curve([-10, 0, 10], [0.90, 0.40, 0.05])
        report = gain_report(a, b, level=0.5)
        assert isinstance(report, GainReport)
        assert report.shift_db > 0
        assert report.relative_gain_pct > 0
        with pytest.raises(ValueError):
            GainReport(level=0.0, shift_db=1.0, relative_gain_pct=1.0)


class TestKsDistance:
    def test_matching_law(self, rng):
        samples = rng.random(1_000_000)
        assert ks_distance(samples, lambda x: np.clip(x, 0, 1)) < 0.002

    def test_constant_samples(self):
        # empirical cdf is a unit step at c
        cdf = lambda x: np.clip(np.asarray(x, dtype=float) / 10.0, 0, 1)
        c = 4.0
        expected = max(cdf(c), 1.0 - cdf(c))
        assert ks_distance(np.full(1000, c), cdf) == pytest.approx(expected, abs=1e-9)

    def test_empty(self):
        with pytest.raises(ValueError):
            ks_distance([], lambda x: x)


class TestInteriorExtremum:
    def test_monotone_has_none(self):
        xs = np.arange(6.0)
        assert find_interior_extremum(xs, np.array([1, 2, 3, 4, 5, 6.0])) is None
        assert find_interior_extremum(xs, np.array([6, 5, 4, 3, 2, 1.0])) is None

    def test_v_shape(self):
        xs = np.arange(5.0)
        ys = np.array([3.0, 1.5, 1.0, 1.7, 2.5])
        assert find_interior_extremum(xs, ys, kind="min") == 2
        assert find_interior_extremum(xs, ys, kind="max") is None
        assert find_interior_extremum(xs, ys) == 2

    def test_peak(self):
        xs = np.arange(5.0)
        ys = np.array([0.0, 2.0, 5.0, 2.0, 0.0])
        assert find_interior_extremum(xs, ys, kind="max") == 2
        assert find_interior_extremum(xs, ys, kind="min") is None

    def test_validation(self):
        with pytest.raises(ValueError):
            find_interior_extremum([1, 2], [1, 2])
        with pytest.raises(ValueError):
            find_interior_extremum([1, 2, 3], [1, 2, 3], kind="saddle")
