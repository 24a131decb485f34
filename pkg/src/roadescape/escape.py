"""Escape-route search: paths an inertial sensor cannot tell apart.

A route is summarized by its signature: leg distances between turns, the
signed turn angles, and per-leg curvature (bearing profile). A candidate
escape path is valid when, leg by leg and turn by turn, it matches a given
route's signature within sensor-noise tolerances:

  * every turn angle within turn_tolerance,
  * every leg length within [d_k * distance_low, d_k * distance_high],
  * every leg's curvature profile within curvature_tolerance.

Legs shorter than 10 m are merged into their neighbor before comparison;
near-zero legs would otherwise make the distance window degenerate. The
merge applies to both sides through the shared signature extraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geo
from .errors import DegenerateInput
from .graph import RoadGraph
from .spoof import DEFAULT_TURN_THRESHOLD_DEG, PathCandidate, path_driven_distance

#: legs shorter than this merge into a neighbor before signature comparison
MIN_LEG_LENGTH_M = 10.0
DEFAULT_CURVATURE_SAMPLES = 100


@dataclass(frozen=True)
class ThresholdSet:
    """Sensor-noise tolerances gating escape-path validity."""

    turn_tolerance: float
    curvature_tolerance: float
    distance_low: float
    distance_high: float

    def __post_init__(self) -> None:
        if self.turn_tolerance < 0 or self.curvature_tolerance < 0:
            raise DegenerateInput("angle tolerances must be >= 0")
        if not (0.0 < self.distance_low <= 1.0 <= self.distance_high):
            raise DegenerateInput(
                f"distance window [{self.distance_low}, {self.distance_high}] must straddle 1"
            )


#: 75th-percentile noise tolerances (shipped defaults)
DEFAULT_THRESHOLDS = ThresholdSet(5.5, 2.8, 0.2, 3.3)
#: 25th-percentile variant for low-noise sensors
LOW_NOISE_THRESHOLDS = ThresholdSet(1.4, 0.2, 0.6, 1.6)


@dataclass(frozen=True)
class PathSignature:
    """(leg distances, per-leg bearings, turn angles) fingerprint of a route."""

    leg_distances: tuple[float, ...]
    leg_bearings: tuple[tuple[float, ...], ...]
    turn_angles: tuple[float, ...]
    turn_count: int

    def __post_init__(self) -> None:
        if len(self.leg_distances) != self.turn_count + 1:
            raise DegenerateInput("signature needs turn_count + 1 legs")
        if len(self.turn_angles) != self.turn_count:
            raise DegenerateInput("signature needs turn_count turn angles")
        if len(self.leg_bearings) != len(self.leg_distances):
            raise DegenerateInput("one bearing list per leg required")
        if any(d <= 0 for d in self.leg_distances):
            raise DegenerateInput("leg distances must be positive")


def _merge_short_legs(
    legs: list[tuple[float, list[float]]], turns: list[float]
) -> tuple[list[tuple[float, list[float]]], list[float]]:
    """Fold legs under MIN_LEG_LENGTH_M into a neighbor (previous preferred),
    dropping the turn between them. Runs to a fixpoint, leftmost first."""
    legs = [(d, list(b)) for d, b in legs]
    turns = list(turns)
    while len(legs) > 1:
        idx = next((i for i, (d, _) in enumerate(legs) if d < MIN_LEG_LENGTH_M), None)
        if idx is None:
            break
        if idx > 0:
            keep_d, keep_b = legs[idx - 1]
            drop_d, drop_b = legs[idx]
            legs[idx - 1] = (keep_d + drop_d, keep_b + drop_b)
            del legs[idx]
            del turns[idx - 1]
        else:
            drop_d, drop_b = legs[0]
            keep_d, keep_b = legs[1]
            legs[1] = (drop_d + keep_d, drop_b + keep_b)
            del legs[0]
            del turns[0]
    return legs, turns


def path_signature(
    graph: RoadGraph,
    path: PathCandidate | tuple[str, ...] | list[str],
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG,
) -> PathSignature:
    """Extract a route's signature. Connections with |turn| > turn_threshold
    are turns; legs are the maximal turn-free runs between them. Leg distance
    sums every segment length in the leg; leg bearings concatenate the
    consecutive-point bearings of the leg's geometry."""
    vertices = path.vertices if isinstance(path, PathCandidate) else tuple(path)
    legs: list[tuple[float, list[float]]] = []
    turns: list[float] = []
    seg = graph.segment(vertices[0])
    current_d = seg.length
    current_b = geo.polyline_bearings(seg.geometry)
    for a, b in zip(vertices, vertices[1:]):
        conn = graph.connection(a, b)
        if conn is None:
            raise DegenerateInput(f"no connection {a} -> {b}")
        nxt = graph.segment(b)
        if abs(conn.turn_angle) > turn_threshold:
            legs.append((current_d, current_b))
            turns.append(conn.turn_angle)
            current_d = nxt.length
            current_b = list(geo.polyline_bearings(nxt.geometry))
        else:
            current_d += nxt.length
            current_b.extend(geo.polyline_bearings(nxt.geometry))
    legs.append((current_d, current_b))
    legs, turns = _merge_short_legs(legs, turns)
    return PathSignature(
        leg_distances=tuple(d for d, _ in legs),
        leg_bearings=tuple(tuple(b) for _, b in legs),
        turn_angles=tuple(turns),
        turn_count=len(turns),
    )


def curvature_curve(bearings, samples: int) -> np.ndarray:
    """Unwrap a bearing sequence, resample it to `samples` points, and zero it
    at its first value. The result is the leg's curvature profile."""
    if len(bearings) == 0:
        raise DegenerateInput("empty bearing list")
    if samples < 1:
        raise DegenerateInput("need at least one sample")
    unwrapped = np.unwrap(np.asarray(bearings, dtype=float), period=360.0)
    positions = np.linspace(0.0, 1.0, samples)
    grid = np.linspace(0.0, 1.0, len(unwrapped))
    resampled = np.interp(positions, grid, unwrapped)
    return resampled - resampled[0]


def curvature_similarity(bearings_a, bearings_b, samples: int = DEFAULT_CURVATURE_SAMPLES) -> float:
    """Largest pointwise gap between two curvature profiles, degrees."""
    ca = curvature_curve(bearings_a, samples)
    cb = curvature_curve(bearings_b, samples)
    return float(np.max(np.abs(ca - cb)))


def signature_within(
    reference: PathSignature,
    candidate: PathSignature,
    thresholds: ThresholdSet,
    samples: int = DEFAULT_CURVATURE_SAMPLES,
) -> bool:
    """True when the candidate signature matches the reference within tolerances."""
    if candidate.turn_count != reference.turn_count:
        return False
    for ref_turn, cand_turn in zip(reference.turn_angles, candidate.turn_angles):
        if geo.wrap_unsigned(ref_turn, cand_turn) > thresholds.turn_tolerance:
            return False
    for ref_d, cand_d in zip(reference.leg_distances, candidate.leg_distances):
        if not (ref_d * thresholds.distance_low <= cand_d <= ref_d * thresholds.distance_high):
            return False
    for ref_b, cand_b in zip(reference.leg_bearings, candidate.leg_bearings):
        if curvature_similarity(ref_b, cand_b, samples) > thresholds.curvature_tolerance:
            return False
    return True


def escape_destination_point(graph: RoadGraph, path: PathCandidate) -> "geo.GeoPoint":
    """Where a driven path ends: the final segment's end point."""
    return graph.segment(path.vertices[-1]).end


class _EscapeSearch:
    """DFS over simple paths from the source with signature-matching pruning.

    Pruning must never drop a branch that could still emit a valid path.
    A completed leg is only held to exact checks once it is final: once the
    following leg has reached MIN_LEG_LENGTH_M, no later merge can reach back
    across it. Branches that have produced a short completed leg fall back to
    conservative pruning (turn-count and total-length bounds only); the full
    signature comparison at emission is always exact.
    """

    def __init__(self, graph, reference: PathSignature, thresholds, samples, turn_threshold):
        self.graph = graph
        self.ref = reference
        self.thresholds = thresholds
        self.samples = samples
        self.turn_threshold = turn_threshold
        self.max_total = sum(d * thresholds.distance_high for d in reference.leg_distances)
        self.max_leg = max(d * thresholds.distance_high for d in reference.leg_distances)
        self.results: list[tuple[str, ...]] = []
        # mutable branch state
        self.path: list[str] = []
        self.visited: set[str] = set()
        self.completed: list[float] = []  # completed leg lengths
        self.completed_bearings: list[list[float]] = []
        self.turns: list[float] = []
        self.open_len = 0.0
        self.open_bearings: list[float] = []

    # -- pruning ---------------------------------------------------------

    def _min_possible_turns(self, shorts: int) -> int:
        open_short = self.open_len < MIN_LEG_LENGTH_M
        return len(self.turns) - shorts - (1 if open_short else 0)

    def _prunable(self, finalized: int) -> tuple[bool, int]:
        """Returns (prune?, updated finalized-leg count)."""
        ref = self.ref
        th = self.thresholds
        shorts = sum(1 for d in self.completed if d < MIN_LEG_LENGTH_M)
        if self._min_possible_turns(shorts) > ref.turn_count:
            return True, finalized
        total = sum(self.completed) + self.open_len
        if total > self.max_total:
            return True, finalized
        if self.open_len > self.max_leg:
            # no merge shrinks a leg, and any candidate leg must fit some window
            return True, finalized
        if shorts:
            return False, finalized  # conservative mode; emission check decides
        m = len(self.completed)
        open_final = self.open_len >= MIN_LEG_LENGTH_M
        target = m if open_final else max(m - 1, 0)
        for j in range(finalized, target):
            if j > ref.turn_count:
                return True, finalized
            window_low = ref.leg_distances[j] * th.distance_low
            window_high = ref.leg_distances[j] * th.distance_high
            if not (window_low <= self.completed[j] <= window_high):
                return True, finalized
            if j >= ref.turn_count:
                return True, finalized  # more turns than the reference allows
            if geo.wrap_unsigned(ref.turn_angles[j], self.turns[j]) > th.turn_tolerance:
                return True, finalized
            if (
                curvature_similarity(ref.leg_bearings[j], self.completed_bearings[j], self.samples)
                > th.curvature_tolerance
            ):
                return True, finalized
        finalized = target
        # open leg's upper window, only once its index is pinned down
        if open_final and m <= ref.turn_count:
            if self.open_len > ref.leg_distances[m] * th.distance_high:
                return True, finalized
        return False, finalized

    def _emit_if_valid(self) -> None:
        ref = self.ref
        raw_turns = len(self.turns)
        if raw_turns < ref.turn_count:
            return
        shorts = sum(1 for d in self.completed if d < MIN_LEG_LENGTH_M)
        if self._min_possible_turns(shorts) > ref.turn_count:
            return
        candidate_sig = path_signature(self.graph, tuple(self.path), self.turn_threshold)
        if signature_within(ref, candidate_sig, self.thresholds, self.samples):
            self.results.append(tuple(self.path))

    # -- traversal -------------------------------------------------------

    def run(self, source: str) -> list[tuple[str, ...]]:
        seg = self.graph.segment(source)
        self.path = [source]
        self.visited = {source}
        self.open_len = seg.length
        self.open_bearings = list(geo.polyline_bearings(seg.geometry))
        prune, finalized = self._prunable(0)
        if not prune:
            self._emit_if_valid()
            self._visit(finalized)
        return sorted(self.results)

    def _visit(self, finalized: int) -> None:
        current = self.path[-1]
        for conn in self.graph.out_edges(current):
            nxt_id = conn.to_id
            if nxt_id in self.visited:
                continue
            nxt = self.graph.segment(nxt_id)
            nxt_bearings = geo.polyline_bearings(nxt.geometry)
            is_turn = abs(conn.turn_angle) > self.turn_threshold
            # extend state
            self.path.append(nxt_id)
            self.visited.add(nxt_id)
            if is_turn:
                self.completed.append(self.open_len)
                self.completed_bearings.append(self.open_bearings)
                self.turns.append(conn.turn_angle)
                saved_open = (self.open_len, self.open_bearings)
                self.open_len = nxt.length
                self.open_bearings = list(nxt_bearings)
            else:
                saved_open = (self.open_len, self.open_bearings)
                self.open_len = self.open_len + nxt.length
                self.open_bearings = self.open_bearings + nxt_bearings

            prune, new_finalized = self._prunable(finalized)
            if not prune:
                self._emit_if_valid()
                self._visit(new_finalized)

            # backtrack
            if is_turn:
                self.completed.pop()
                self.completed_bearings.pop()
                self.turns.pop()
            self.open_len, self.open_bearings = saved_open
            self.path.pop()
            self.visited.remove(nxt_id)


def generate_escape_paths(
    graph: RoadGraph,
    spoofed: PathCandidate | tuple[str, ...] | list[str],
    thresholds: ThresholdSet = DEFAULT_THRESHOLDS,
    samples: int = DEFAULT_CURVATURE_SAMPLES,
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG,
) -> list[PathCandidate]:
    """All simple paths from the spoofed path's source whose signatures match
    the spoofed signature within the thresholds. Results are sorted by vertex
    sequence and every score is exactly 1 (validity is binary, not ranked).
    """
    vertices = spoofed.vertices if isinstance(spoofed, PathCandidate) else tuple(spoofed)
    reference = path_signature(graph, vertices, turn_threshold)
    search = _EscapeSearch(graph, reference, thresholds, samples, turn_threshold)
    found = search.run(vertices[0])
    out = []
    for vs in found:
        raw_turns = sum(
            1
            for a, b in zip(vs, vs[1:])
            if abs(graph.connection(a, b).turn_angle) > turn_threshold
        )
        out.append(
            PathCandidate(
                vertices=vs,
                score=1.0,
                total_distance=path_driven_distance(graph, vs),
                turn_count=raw_turns,
            )
        )
    return out
