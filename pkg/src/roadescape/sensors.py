"""Inertial dead reckoning and sensor-noise threshold derivation.

Traces are assumed pre-calibrated and rotated into the vehicle frame:
x = forward, z = yaw axis (right-handed). Calibration is out of scope.

From a trace and ground-truth annotations, three error populations are
built: distance ratios (dead-reckoned / actual), absolute turn errors, and
pointwise curvature-profile errors. Percentiles of these populations become
the ThresholdSet gating escape-path validity.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DegenerateInput,
    EmptyDistribution,
    LengthMismatch,
    NonPositiveActual,
    OutOfRange,
    ParseError,
)
from .escape import DEFAULT_CURVATURE_SAMPLES, ThresholdSet, curvature_curve
from .geo import wrap_unsigned

DEFAULT_SMOOTH_WINDOW = 5

TRACE_HEADER = ["t", "ax", "ay", "az", "gx", "gy", "gz"]
ANNOTATION_HEADER = ["t_start", "t_end", "kind"]


@dataclass(frozen=True)
class ImuTrace:
    """Time series of accelerometer (m/s^2) and gyroscope (rad/s) samples."""

    timestamps: np.ndarray
    accel: np.ndarray
    gyro: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.timestamps, dtype=float)
        a = np.asarray(self.accel, dtype=float)
        g = np.asarray(self.gyro, dtype=float)
        if t.ndim != 1 or len(t) < 2:
            raise DegenerateInput("trace needs at least two samples")
        if a.shape != (len(t), 3) or g.shape != (len(t), 3):
            raise DegenerateInput("accel and gyro must be (n, 3) arrays")
        if not np.all(np.diff(t) > 0):
            raise DegenerateInput("timestamps must be strictly increasing")
        if np.any(np.isnan(t)) or np.any(np.isnan(a)) or np.any(np.isnan(g)):
            raise DegenerateInput("NaN sample component")
        object.__setattr__(self, "timestamps", t)
        object.__setattr__(self, "accel", a)
        object.__setattr__(self, "gyro", g)

    @property
    def forward_accel(self) -> np.ndarray:
        return self.accel[:, 0]

    @property
    def yaw_rate(self) -> np.ndarray:
        return self.gyro[:, 2]

    @property
    def span(self) -> tuple[float, float]:
        return float(self.timestamps[0]), float(self.timestamps[-1])


@dataclass(frozen=True)
class ErrorDistributions:
    """The three sensor-error populations thresholds are derived from."""

    distance_ratios: tuple[float, ...]
    turn_errors: tuple[float, ...]
    curvature_errors: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(r <= 0 for r in self.distance_ratios):
            raise DegenerateInput("distance ratios must be positive")
        if any(e < 0 for e in self.turn_errors) or any(e < 0 for e in self.curvature_errors):
            raise DegenerateInput("angle errors must be non-negative")


def moving_average(values, window: int = DEFAULT_SMOOTH_WINDOW) -> np.ndarray:
    """Centered moving average; edge windows are truncated, so constant
    input is preserved exactly."""
    if window < 1:
        raise DegenerateInput("window must be >= 1")
    x = np.asarray(values, dtype=float)
    if window == 1:
        return x.copy()
    half_left = (window - 1) // 2
    half_right = window // 2
    csum = np.concatenate([[0.0], np.cumsum(x)])
    n = len(x)
    idx = np.arange(n)
    lo = np.maximum(idx - half_left, 0)
    hi = np.minimum(idx + half_right, n - 1)
    return (csum[hi + 1] - csum[lo]) / (hi - lo + 1)


def _window_series(trace, values, t_start: float, t_end: float):
    """Sample times and values covering [t_start, t_end], endpoints
    linearly interpolated."""
    t = trace.timestamps
    lo, hi = trace.span
    if t_start < lo or t_end > hi or t_end < t_start:
        raise OutOfRange(f"window [{t_start}, {t_end}] outside trace span [{lo}, {hi}]")
    inside = (t > t_start) & (t < t_end)
    ts = np.concatenate([[t_start], t[inside], [t_end]])
    vs = np.concatenate(
        [
            [np.interp(t_start, t, values)],
            values[inside],
            [np.interp(t_end, t, values)],
        ]
    )
    return ts, vs


def _cumulative_trapezoid(ts: np.ndarray, vs: np.ndarray) -> np.ndarray:
    dt = np.diff(ts)
    increments = 0.5 * (vs[:-1] + vs[1:]) * dt
    return np.concatenate([[0.0], np.cumsum(increments)])


def dead_reckon_distances(
    trace: ImuTrace, intersections, smooth_window: int = 1
) -> list[float]:
    """Distance traveled between consecutive intersection timestamps.

    Forward acceleration is integrated twice (trapezoidal); velocity resets
    to zero at each interval start, so per-leg drift does not accumulate.
    """
    times = list(intersections)
    if len(times) < 2:
        raise DegenerateInput("need at least two intersection timestamps")
    if any(b < a for a, b in zip(times, times[1:])):
        raise DegenerateInput("intersection timestamps must be sorted")
    accel = moving_average(trace.forward_accel, smooth_window)
    distances = []
    for t0, t1 in zip(times, times[1:]):
        ts, vs = _window_series(trace, accel, t0, t1)
        velocity = _cumulative_trapezoid(ts, vs)
        position = _cumulative_trapezoid(ts, velocity)
        distances.append(float(position[-1]))
    return distances


def integrate_turns(trace: ImuTrace, turn_windows, smooth_window: int = 1) -> list[float]:
    """Yaw rotation over each (t_start, t_end) window, in degrees."""
    rate = moving_average(trace.yaw_rate, smooth_window)
    angles = []
    for t0, t1 in turn_windows:
        ts, vs = _window_series(trace, rate, t0, t1)
        angles.append(float(np.degrees(_cumulative_trapezoid(ts, vs)[-1])))
    return angles


def distance_error_ratios(derived, actual) -> list[float]:
    """Elementwise derived/actual leg distances."""
    if len(derived) != len(actual):
        raise LengthMismatch(f"{len(derived)} derived vs {len(actual)} actual")
    if any(a <= 0 for a in actual):
        raise NonPositiveActual("actual distances must be positive")
    return [d / a for d, a in zip(derived, actual)]


def turn_errors(derived, actual) -> list[float]:
    """Elementwise wrapped absolute angle differences, in [0, 180]."""
    if len(derived) != len(actual):
        raise LengthMismatch(f"{len(derived)} derived vs {len(actual)} actual")
    return [wrap_unsigned(d, a) for d, a in zip(derived, actual)]


def curvature_errors(
    sensor_bearings, map_bearings, samples: int = DEFAULT_CURVATURE_SAMPLES
) -> list[float]:
    """Pointwise absolute differences between sensed and map curvature
    profiles, pooled across legs into one population."""
    if len(sensor_bearings) != len(map_bearings):
        raise LengthMismatch(f"{len(sensor_bearings)} sensor legs vs {len(map_bearings)} map legs")
    pooled: list[float] = []
    for sensed, mapped in zip(sensor_bearings, map_bearings):
        cs = curvature_curve(sensed, samples)
        cm = curvature_curve(mapped, samples)
        pooled.extend(np.abs(cs - cm).tolist())
    return pooled


def derive_thresholds(dists: ErrorDistributions, percentile: float) -> ThresholdSet:
    """Percentile-based tolerances: angle tolerances at `percentile`, the
    distance window at the two-sided (100 -/+ percentile)/2 quantiles of the
    ratio population. Linear interpolation between order statistics."""
    if not (0.0 < percentile < 100.0):
        raise DegenerateInput("percentile must lie in (0, 100)")
    for name in ("distance_ratios", "turn_errors", "curvature_errors"):
        if len(getattr(dists, name)) == 0:
            raise EmptyDistribution(name)
    turn_tol = float(np.percentile(dists.turn_errors, percentile, method="linear"))
    curv_tol = float(np.percentile(dists.curvature_errors, percentile, method="linear"))
    low = float(np.percentile(dists.distance_ratios, (100.0 - percentile) / 2.0, method="linear"))
    high = float(np.percentile(dists.distance_ratios, (100.0 + percentile) / 2.0, method="linear"))
    return ThresholdSet(
        turn_tolerance=turn_tol,
        curvature_tolerance=curv_tol,
        distance_low=low,
        distance_high=high,
    )


def read_trace_csv(path: str | Path) -> ImuTrace:
    """Read a `t,ax,ay,az,gx,gy,gz` CSV (SI units, one row per sample)."""
    rows = _read_csv(path, TRACE_HEADER)
    data = np.array(rows, dtype=float)
    return ImuTrace(timestamps=data[:, 0], accel=data[:, 1:4], gyro=data[:, 4:7])


def read_annotations_csv(path: str | Path) -> list[tuple[float, float, str]]:
    """Read a `t_start,t_end,kind` sidecar CSV of trace annotations."""
    out = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ANNOTATION_HEADER:
            raise ParseError(f"expected header {ANNOTATION_HEADER}, got {header}")
        for line_no, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise ParseError(f"expected 3 fields, got {len(row)}", line=line_no)
            try:
                out.append((float(row[0]), float(row[1]), row[2]))
            except ValueError as exc:
                raise ParseError(str(exc), line=line_no) from exc
    return out


def intersection_times(annotations) -> list[float]:
    """Start times of `intersection` annotations, in file order."""
    return [t0 for t0, _, kind in annotations if kind == "intersection"]


def turn_windows(annotations) -> list[tuple[float, float]]:
    """(start, end) windows of `turn` annotations, in file order."""
    return [(t0, t1) for t0, t1, kind in annotations if kind == "turn"]


def _read_csv(path, expected_header):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected_header:
            raise ParseError(f"expected header {expected_header}, got {header}")
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(expected_header):
                raise ParseError(
                    f"expected {len(expected_header)} fields, got {len(row)}", line=line_no
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ParseError(str(exc), line=line_no) from exc
    if not rows:
        raise ParseError("no samples")
    return rows
