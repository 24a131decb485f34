"""Impact metrics: worst-case displacement and Monte-Carlo area coverage.

Coverage asks: of the land inside the interest circle (center = trip source,
radius = straight-line trip distance), what fraction lies within walking
range of some escape destination? Estimated by uniform rejection-free disc
sampling with three counters: P total points, P_L on land (within walk
radius of a road), P_C covered (within walk radius of an escape
destination).

Geometry runs in a local tangent plane anchored at the source; distances
there are planar. Destinations beyond the circle are excluded from the
counters and reported as a separate fraction.

The point stream comes from a counter-based generator (Philox), so any
chunking of the workload reproduces the exact single-stream sample: chunk
k starting at point index p consumes draws [2p, 2p + 2n) and Philox can
seek there directly. Chunk starts must sit on even point indices (Philox
advances in blocks of four doubles; each point costs two).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np
from numpy.random import Generator, Philox

from . import geo
from .errors import DegenerateInput, DegenerateRadius, EmptyInput
from .graph import RoadGraph

DEFAULT_WALK_RADIUS_M = 100.0
DEFAULT_POINT_COUNT = 1_000_000

#: points per evaluation chunk; must be even so chunk starts align with
#: Philox's four-double counter blocks
CHUNK_POINTS = 1 << 16

COVERAGE_CSV_HEADER = "city,source,dest,r_prime,P,P_L,P_C,coverage_percent"


@dataclass(frozen=True)
class CoverageParams:
    walk_radius: float = DEFAULT_WALK_RADIUS_M
    point_count: int = DEFAULT_POINT_COUNT
    seed: int = 0

    def __post_init__(self) -> None:
        if self.walk_radius <= 0:
            raise DegenerateInput("walk_radius must be > 0")
        if self.point_count < 1:
            raise DegenerateInput("point_count must be >= 1")


@dataclass(frozen=True)
class CoverageResult:
    total_points: int
    land_points: int
    covered_points: int
    coverage_percent: float
    land_area_m2: float
    covered_area_m2: float
    circle_radius_m: float
    outside_destination_fraction: float

    def __post_init__(self) -> None:
        if not (0 <= self.covered_points <= self.land_points <= self.total_points):
            raise DegenerateInput("counter ordering violated")
        expected = (
            self.covered_points / self.land_points * 100.0 if self.land_points else 0.0
        )
        if self.coverage_percent != expected:
            raise DegenerateInput("coverage_percent inconsistent with counters")


def displacement(escape_destinations, intended: geo.GeoPoint) -> float:
    """Farthest straight-line distance from any escape destination to the
    intended destination."""
    destinations = list(escape_destinations)
    if not destinations:
        raise EmptyInput("no escape destinations")
    return max(geo.geo_distance(dest, intended) for dest in destinations)


# -- spatial grid indexes -----------------------------------------------------
#
# Cell size equals the query radius, so every match for a point lies in the
# 3x3 cell block around it; the block is then checked with exact planar
# distances. Sub-segments register every cell their bounding box overlaps,
# a superset of the cells they pass through, which keeps the lookup exact.


class _SegmentIndex:
    def __init__(self, graph: RoadGraph, origin: geo.GeoPoint, cell: float):
        ax, ay, bx, by = [], [], [], []
        for segment in graph.vertices.values():
            pts = [geo.project_local(p, origin) for p in segment.geometry.points]
            for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
                ax.append(x0)
                ay.append(y0)
                bx.append(x1)
                by.append(y1)
        self.ax = np.array(ax)
        self.ay = np.array(ay)
        self.bx = np.array(bx)
        self.by = np.array(by)
        self.cell = cell
        self.cells: dict[tuple[int, int], list[int]] = {}
        for j in range(len(ax)):
            cx0 = math.floor(min(ax[j], bx[j]) / cell)
            cx1 = math.floor(max(ax[j], bx[j]) / cell)
            cy0 = math.floor(min(ay[j], by[j]) / cell)
            cy1 = math.floor(max(ay[j], by[j]) / cell)
            for cx in range(cx0, cx1 + 1):
                for cy in range(cy0, cy1 + 1):
                    self.cells.setdefault((cx, cy), []).append(j)
        self._neighborhood: dict[tuple[int, int], np.ndarray] = {}

    def _candidates(self, cx: int, cy: int) -> np.ndarray:
        cached = self._neighborhood.get((cx, cy))
        if cached is None:
            found: set[int] = set()
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    found.update(self.cells.get((cx + dx, cy + dy), ()))
            cached = np.fromiter(sorted(found), dtype=np.int64, count=len(found))
            self._neighborhood[(cx, cy)] = cached
        return cached

    def within(self, px: np.ndarray, py: np.ndarray, radius: float) -> np.ndarray:
        """Boolean mask: point within `radius` of any indexed sub-segment."""
        mask = np.zeros(len(px), dtype=bool)
        r2 = radius * radius
        cx = np.floor(px / self.cell).astype(np.int64)
        cy = np.floor(py / self.cell).astype(np.int64)
        order = np.lexsort((cy, cx))
        sx, sy = cx[order], cy[order]
        boundaries = np.flatnonzero((np.diff(sx) != 0) | (np.diff(sy) != 0)) + 1
        starts = np.concatenate([[0], boundaries])
        ends = np.concatenate([boundaries, [len(order)]])
        for s, e in zip(starts, ends):
            idx = order[s:e]
            cand = self._candidates(int(sx[s]), int(sy[s]))
            if len(cand) == 0:
                continue
            qx, qy = px[idx], py[idx]
            sax, say = self.ax[cand], self.ay[cand]
            dx, dy = self.bx[cand] - sax, self.by[cand] - say
            seg_len2 = dx * dx + dy * dy
            seg_len2 = np.where(seg_len2 == 0.0, 1.0, seg_len2)
            t = ((qx[:, None] - sax) * dx + (qy[:, None] - say) * dy) / seg_len2
            t = np.clip(t, 0.0, 1.0)
            ex = qx[:, None] - (sax + t * dx)
            ey = qy[:, None] - (say + t * dy)
            mask[idx] = np.min(ex * ex + ey * ey, axis=1) <= r2
        return mask


class _PointIndex:
    def __init__(self, xs: np.ndarray, ys: np.ndarray, cell: float):
        self.xs = xs
        self.ys = ys
        self.cell = cell
        self.cells: dict[tuple[int, int], list[int]] = {}
        for j in range(len(xs)):
            key = (math.floor(xs[j] / cell), math.floor(ys[j] / cell))
            self.cells.setdefault(key, []).append(j)
        self._neighborhood: dict[tuple[int, int], np.ndarray] = {}

    def _candidates(self, cx: int, cy: int) -> np.ndarray:
        cached = self._neighborhood.get((cx, cy))
        if cached is None:
            found: list[int] = []
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    found.extend(self.cells.get((cx + dx, cy + dy), ()))
            cached = np.array(sorted(found), dtype=np.int64)
            self._neighborhood[(cx, cy)] = cached
        return cached

    def within(self, px: np.ndarray, py: np.ndarray, radius: float) -> np.ndarray:
        mask = np.zeros(len(px), dtype=bool)
        if len(self.xs) == 0:
            return mask
        r2 = radius * radius
        cx = np.floor(px / self.cell).astype(np.int64)
        cy = np.floor(py / self.cell).astype(np.int64)
        order = np.lexsort((cy, cx))
        sx, sy = cx[order], cy[order]
        boundaries = np.flatnonzero((np.diff(sx) != 0) | (np.diff(sy) != 0)) + 1
        starts = np.concatenate([[0], boundaries])
        ends = np.concatenate([boundaries, [len(order)]])
        for s, e in zip(starts, ends):
            idx = order[s:e]
            cand = self._candidates(int(sx[s]), int(sy[s]))
            if len(cand) == 0:
                continue
            dx = px[idx][:, None] - self.xs[cand]
            dy = py[idx][:, None] - self.ys[cand]
            mask[idx] = np.min(dx * dx + dy * dy, axis=1) <= r2
        return mask


def _sample_disc_chunk(seed: int, start: int, count: int, radius: float):
    """Points [start, start+count) of the seed's disc-sample stream.

    Each point consumes two doubles (u for radius, v for angle) from one
    logical Philox stream; `start` must be even so the counter seek lands
    on a block boundary.
    """
    if start % 2 != 0:
        raise DegenerateInput("chunk start must be an even point index")
    bit_gen = Philox(key=seed)
    bit_gen.advance(start // 2)  # one counter block = 4 doubles = 2 points
    draws = Generator(bit_gen).random(2 * count)
    rho = radius * np.sqrt(draws[0::2])
    theta = 2.0 * math.pi * draws[1::2]
    return rho * np.cos(theta), rho * np.sin(theta)


def monte_carlo_coverage(
    graph: RoadGraph,
    source: geo.GeoPoint,
    intended: geo.GeoPoint,
    escape_destinations,
    params: CoverageParams,
    n_jobs: int = 1,
) -> CoverageResult:
    """Estimate land and covered areas inside the interest circle.

    Deterministic for fixed (inputs, seed) regardless of n_jobs: chunks
    reproduce disjoint slices of one counter-based stream and merge by
    integer counter sums.
    """
    radius = geo.geo_distance(source, intended)
    if radius <= 0.0:
        raise DegenerateRadius("source and intended destination coincide")
    destinations = list(escape_destinations)

    roads = _SegmentIndex(graph, source, params.walk_radius)
    inside = [d for d in destinations if geo.geo_distance(d, source) <= radius]
    outside_fraction = 1.0 - len(inside) / len(destinations) if destinations else 0.0
    dest_xy = [geo.project_local(d, source) for d in inside]
    dests = _PointIndex(
        np.array([x for x, _ in dest_xy]),
        np.array([y for _, y in dest_xy]),
        params.walk_radius,
    )

    def evaluate(start: int) -> tuple[int, int]:
        count = min(CHUNK_POINTS, params.point_count - start)
        px, py = _sample_disc_chunk(params.seed, start, count, radius)
        land = roads.within(px, py, params.walk_radius)
        covered = dests.within(px, py, params.walk_radius)
        # destinations sit on road geometry, so coverage implies land
        assert not np.any(covered & ~land)
        return int(np.count_nonzero(land)), int(np.count_nonzero(covered))

    starts = range(0, params.point_count, CHUNK_POINTS)
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            partials = list(pool.map(evaluate, starts))
    else:
        partials = [evaluate(s) for s in starts]
    land_total = sum(p[0] for p in partials)
    covered_total = sum(p[1] for p in partials)

    circle_area = math.pi * radius * radius
    return CoverageResult(
        total_points=params.point_count,
        land_points=land_total,
        covered_points=covered_total,
        coverage_percent=covered_total / land_total * 100.0 if land_total else 0.0,
        land_area_m2=land_total / params.point_count * circle_area,
        covered_area_m2=covered_total / params.point_count * circle_area,
        circle_radius_m=radius,
        outside_destination_fraction=outside_fraction,
    )


def coverage_radius_sweep(
    graph: RoadGraph,
    source: geo.GeoPoint,
    intended: geo.GeoPoint,
    escape_destinations,
    params: CoverageParams,
    radii,
    n_jobs: int = 1,
) -> list[tuple[float, CoverageResult]]:
    """Coverage at each walk radius, same seed throughout (common random
    numbers, so results are comparable point for point)."""
    radii = list(radii)
    if any(r <= 0 for r in radii):
        raise DegenerateInput("radii must be > 0")
    out = []
    for r in radii:
        result = monte_carlo_coverage(
            graph, source, intended, escape_destinations, replace(params, walk_radius=r), n_jobs
        )
        out.append((r, result))
    return out


def coverage_csv_row(
    city: str, source_label: str, dest_label: str, r_prime: float, result: CoverageResult
) -> str:
    return ",".join(
        [
            city,
            source_label,
            dest_label,
            repr(float(r_prime)),
            str(result.total_points),
            str(result.land_points),
            str(result.covered_points),
            repr(result.coverage_percent),
        ]
    )


def coverage_json_dict(result: CoverageResult) -> dict:
    return {
        "total_points": result.total_points,
        "land_points": result.land_points,
        "covered_points": result.covered_points,
        "coverage_percent": result.coverage_percent,
        "land_area_m2": result.land_area_m2,
        "covered_area_m2": result.covered_area_m2,
        "circle_radius_m": result.circle_radius_m,
        "outside_destination_fraction": result.outside_destination_fraction,
    }
