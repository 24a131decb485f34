"""Figure builders.

Each function draws one figure, writes exactly one image file (.png or
.svg), and returns the summary statistics behind the drawn artists so
callers and tests can check the numbers without decoding pixels.

``by_city`` switches between one pooled series (labelled "all") and one
series per city label; it never changes how the statistics themselves
are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from statistics import fmean, median

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import EmptyInput, InvalidOutput
from .rows import EvalRow

PERCENTILE_LEVELS = (25.0, 50.0, 75.0, 90.0)
POOLED_LABEL = "all"
IMAGE_SUFFIXES = (".png", ".svg")
DEFAULT_BINS = 8


@dataclass(frozen=True)
class CdfSeries:
    """Empirical-CDF summary for one curve. ``percentiles`` is parallel
    to PERCENTILE_LEVELS (linear interpolation between order statistics)."""

    label: str
    count: int
    percentiles: tuple[float, ...]


@dataclass(frozen=True)
class CoverageBin:
    """Mean coverage of the rows whose route length falls in [low, high).
    The last bin of a series is closed on the right."""

    label: str
    low: float
    high: float
    mean: float
    count: int


@dataclass(frozen=True)
class RadiusPoint:
    label: str
    r_prime_m: float
    mean: float
    median: float
    count: int


def _checked_out(out_path: Path | str) -> Path:
    out = Path(out_path)
    if out.suffix.lower() not in IMAGE_SUFFIXES:
        raise InvalidOutput(f"unsupported image format {out.suffix!r}, use .png or .svg")
    return out


def _series(rows: list[EvalRow], by_city: bool) -> list[tuple[str, list[EvalRow]]]:
    if not rows:
        raise EmptyInput("no data rows")
    if not by_city:
        return [(POOLED_LABEL, list(rows))]
    groups: dict[str, list[EvalRow]] = {}
    for row in rows:
        groups.setdefault(row.city, []).append(row)
    return sorted(groups.items())


def plot_displacement_cdf(
    rows: list[EvalRow], out_path: Path | str, by_city: bool = False
) -> list[CdfSeries]:
    """Empirical CDF of attacker displacement, one step curve per series.

    x is displacement in metres, y the fraction of trials at or below it.
    """
    out = _checked_out(out_path)
    series = _series(rows, by_city)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    summaries = []
    for label, group in series:
        values = np.sort([row.displacement_m for row in group])
        fractions = np.arange(1, len(values) + 1) / len(values)
        ax.step(values, fractions, where="post", label=label)
        summaries.append(
            CdfSeries(
                label=label,
                count=len(values),
                percentiles=tuple(float(np.percentile(values, p)) for p in PERCENTILE_LEVELS),
            )
        )
    ax.set_xlabel("displacement (m)")
    ax.set_ylabel("fraction of trials")
    ax.set_ylim(0.0, 1.05)
    ax.grid(True, alpha=0.3)
    if len(series) > 1:
        ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return summaries


def plot_coverage_vs_distance(
    rows: list[EvalRow],
    out_path: Path | str,
    bins: int = DEFAULT_BINS,
    by_city: bool = False,
) -> list[CoverageBin]:
    """Mean coverage per fixed-width route-length bin, one curve per series.

    Bin edges span the pooled route-length range so every series sits on
    the same axis. Empty bins are skipped. If all route lengths are equal
    the single degenerate bin holds everything.
    """
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    out = _checked_out(out_path)
    series = _series(rows, by_city)
    low = min(row.route_length_m for row in rows)
    high = max(row.route_length_m for row in rows)
    edges = np.linspace(low, high, bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    summaries = []
    for label, group in series:
        lengths = np.array([row.route_length_m for row in group])
        coverage = np.array([row.coverage_percent for row in group])
        if high == low:
            indices = np.zeros(len(group), dtype=int)
        else:
            indices = np.minimum(np.digitize(lengths, edges[1:]), bins - 1)
        xs, ys = [], []
        for b in range(bins):
            mask = indices == b
            if not mask.any():
                continue
            mean = float(coverage[mask].mean())
            summaries.append(
                CoverageBin(
                    label=label,
                    low=float(edges[b]),
                    high=float(edges[b + 1]),
                    mean=mean,
                    count=int(mask.sum()),
                )
            )
            xs.append(float(centers[b]))
            ys.append(mean)
        ax.plot(xs, ys, marker="o", label=label)
    ax.set_xlabel("route length (m)")
    ax.set_ylabel("mean coverage (%)")
    ax.grid(True, alpha=0.3)
    if len(series) > 1:
        ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return summaries


def plot_radius_sweep(
    rows: list[EvalRow], out_path: Path | str, by_city: bool = False
) -> list[RadiusPoint]:
    """Mean and median coverage versus the coverage radius column.

    Rows are grouped by radius within each series; points are returned
    (and drawn) in ascending radius order.
    """
    out = _checked_out(out_path)
    series = _series(rows, by_city)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    summaries = []
    for label, group in series:
        by_radius: dict[float, list[float]] = {}
        for row in group:
            by_radius.setdefault(row.r_prime_m, []).append(row.coverage_percent)
        points = [
            RadiusPoint(
                label=label,
                r_prime_m=radius,
                mean=fmean(by_radius[radius]),
                median=median(by_radius[radius]),
                count=len(by_radius[radius]),
            )
            for radius in sorted(by_radius)
        ]
        summaries.extend(points)
        xs = [p.r_prime_m for p in points]
        ax.plot(xs, [p.mean for p in points], marker="o", label=f"{label} mean")
        ax.plot(xs, [p.median for p in points], marker="s", linestyle="--", label=f"{label} median")
    ax.set_xlabel("coverage radius (m)")
    ax.set_ylabel("coverage (%)")
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out)
    plt.close(fig)
    return summaries
