"""Independent tabular statistics for checking plot summaries.

Written from scratch on plain sorted lists so they share no code with
the package under test (which goes through numpy and statistics).
"""

import math


def quantile_ref(values, pct):
    """Linear-interpolation percentile on a sorted copy."""
    ordered = sorted(values)
    if len(ordered) == 1:
        return ordered[0]
    rank = pct / 100.0 * (len(ordered) - 1)
    below = math.floor(rank)
    above = min(below + 1, len(ordered) - 1)
    weight = rank - below
    return ordered[below] + (ordered[above] - ordered[below]) * weight


def mean_ref(values):
    return sum(values) / len(values)


def median_ref(values):
    ordered = sorted(values)
    n = len(ordered)
    if n % 2:
        return ordered[n // 2]
    return (ordered[n // 2 - 1] + ordered[n // 2]) / 2.0


def bins_ref(pairs, low, high, bins):
    """Fixed-width binning of (x, y) pairs over [low, high]; the last bin
    is closed on the right. Returns (bin index, count, mean y) tuples in
    index order, empty bins omitted."""
    width = (high - low) / bins
    buckets = {}
    for x, y in pairs:
        index = 0 if width == 0.0 else min(int((x - low) / width), bins - 1)
        buckets.setdefault(index, []).append(y)
    return [(index, len(ys), mean_ref(ys)) for index, ys in sorted(buckets.items())]
