"""Plausible-path search: depth-first enumeration with score-based pruning.

A candidate route's score is the product of occurrence probabilities of its
(segment curvature, turn angle) pairs; the final segment contributes its
curvature paired with turn 0. Because every factor is at most 1, a prefix's
running score can only shrink, which makes pruning against the current
N-th best complete score exact rather than heuristic.

The same engine, ranked ascending and with pruning disabled, selects the
rarest-signature path for the countermeasure module.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from heapq import heappop, heappush

from . import geo
from .errors import MissingNode, NoPath
from .graph import ProbabilityTable, RoadGraph

DEFAULT_TURN_THRESHOLD_DEG = 30.0


@dataclass(frozen=True)
class PathCandidate:
    """A simple vertex path with its score and travel summary.

    total_distance covers every segment except the last: the route is driven
    from the first segment's start to the entry of the final segment, so a
    single-vertex path has zero length (zero edges, zero meters driven).
    """

    vertices: tuple[str, ...]
    score: float
    total_distance: float
    turn_count: int

    def __post_init__(self) -> None:
        if not self.vertices:
            raise NoPath("empty vertex sequence")
        if len(set(self.vertices)) != len(self.vertices):
            raise NoPath(f"path repeats a vertex: {self.vertices}")
        if not (0.0 <= self.score <= 1.0):
            raise NoPath(f"score {self.score} outside [0, 1]")
        object.__setattr__(self, "vertices", tuple(self.vertices))


@dataclass(frozen=True)
class SpoofSearchParams:
    """Search knobs: result cap, distance budget factor, bounding-box padding.

    n_paths=None lifts the result cap; distance_factor may be math.inf and
    bbox_padding=None disables the box filter (both used by oracle tests).
    """

    n_paths: int | None = 100
    distance_factor: float = 1.2
    bbox_padding: float | None = 1000.0

    def __post_init__(self) -> None:
        if self.n_paths is not None and self.n_paths < 1:
            raise ValueError("n_paths must be >= 1 (or None for unbounded)")
        if not self.distance_factor >= 1.0:
            raise ValueError("distance_factor must be >= 1")
        if self.bbox_padding is not None and self.bbox_padding < 0:
            raise ValueError("bbox_padding must be >= 0 (or None to disable)")


def _require_vertex(graph: RoadGraph, vertex_id: str) -> None:
    if vertex_id not in graph.vertices:
        raise MissingNode(f"vertex {vertex_id} not in graph")


def path_edges(graph: RoadGraph, vertices: tuple[str, ...]):
    """Connections along a vertex sequence; raises NoPath on a gap."""
    conns = []
    for a, b in zip(vertices, vertices[1:]):
        conn = graph.connection(a, b)
        if conn is None:
            raise NoPath(f"no connection {a} -> {b}")
        conns.append(conn)
    return conns


def path_driven_distance(graph: RoadGraph, vertices: tuple[str, ...]) -> float:
    """Meters driven reaching the final segment's entry (all lengths but the last)."""
    return sum(graph.segment(v).length for v in vertices[:-1])


def count_turns(graph: RoadGraph, vertices: tuple[str, ...], turn_threshold: float) -> int:
    return sum(1 for c in path_edges(graph, vertices) if abs(c.turn_angle) > turn_threshold)


def make_candidate(
    graph: RoadGraph,
    vertices: tuple[str, ...],
    score: float,
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG,
) -> PathCandidate:
    return PathCandidate(
        vertices=tuple(vertices),
        score=score,
        total_distance=path_driven_distance(graph, tuple(vertices)),
        turn_count=count_turns(graph, tuple(vertices), turn_threshold),
    )


def path_score(graph: RoadGraph, table: ProbabilityTable, path) -> float:
    """Product of table probabilities along the path; the last vertex pairs its
    curvature with turn 0. Unseen pairs contribute 0 (not an error)."""
    vertices = path.vertices if isinstance(path, PathCandidate) else tuple(path)
    score = 1.0
    for a, b in zip(vertices, vertices[1:]):
        conn = graph.connection(a, b)
        if conn is None:
            raise NoPath(f"no connection {a} -> {b}")
        score *= table.lookup(graph.segment(a).curvature, conn.turn_angle)
    score *= table.lookup(graph.segment(vertices[-1]).curvature, 0.0)
    return score


def shortest_time_path(
    graph: RoadGraph,
    s: str,
    d: str,
    table: ProbabilityTable | None = None,
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG,
) -> PathCandidate:
    """Minimum travel-time path, Σ length/speed over traversed segments.

    Ties are broken toward the lexicographically smallest vertex sequence,
    which keeps results reproducible across runs. Score is taken from the
    probability table when one is supplied, else reported as 1.

    Raises:
        NoPath: d is unreachable from s.
        MissingNode: either endpoint is not a graph vertex.
    """
    _require_vertex(graph, s)
    _require_vertex(graph, d)
    # lexicographic tie-break is prefix-decided, so the first settle is final
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (s,))]
    settled: set[str] = set()
    while heap:
        cost, path = heappop(heap)
        current = path[-1]
        if current in settled:
            continue
        settled.add(current)
        if current == d:
            score = path_score(graph, table, path) if table is not None else 1.0
            return make_candidate(graph, path, score, turn_threshold)
        hop = graph.segment(current).length / graph.segment(current).speed_limit
        for conn in graph.out_edges(current):
            if conn.to_id not in settled:
                heappush(heap, (cost + hop, path + (conn.to_id,)))
    raise NoPath(f"no route from {s} to {d}")


class _TopPaths:
    """Keeps the best `cap` complete paths ordered by (score desc, vertices asc)."""

    def __init__(self, cap: int | None, ascending: bool):
        self.cap = cap
        self.ascending = ascending
        self._keys: list[tuple[float, tuple[str, ...]]] = []

    def key(self, score: float, vertices: tuple[str, ...]):
        return (score if self.ascending else -score, vertices)

    def offer(self, score: float, vertices: tuple[str, ...]) -> None:
        k = self.key(score, vertices)
        if self.cap is not None and len(self._keys) >= self.cap:
            if k >= self._keys[-1]:
                return
            self._keys.pop()
        bisect.insort(self._keys, k)

    def worst_score(self) -> float | None:
        """Score of the current cutoff entry, only meaningful when full."""
        if self.cap is None or len(self._keys) < self.cap:
            return None
        return -self._keys[-1][0] if not self.ascending else self._keys[-1][0]

    def paths(self) -> list[tuple[float, tuple[str, ...]]]:
        return [((-k if not self.ascending else k), v) for k, v in self._keys]


def _search(
    graph: RoadGraph,
    table: ProbabilityTable,
    s: str,
    d: str,
    params: SpoofSearchParams,
    ascending: bool,
    cap: int | None,
    prune_by_score: bool,
) -> list[tuple[float, tuple[str, ...]]]:
    reference = shortest_time_path(graph, s, d)
    budget = params.distance_factor * reference.total_distance
    box = None
    if params.bbox_padding is not None:
        ref_points = [p for v in reference.vertices for p in graph.segment(v).geometry.points]
        box = geo.bounds_of(ref_points).padded(params.bbox_padding)
    dest_entry = graph.segment(d).start

    def inside_box(vertex_id: str) -> bool:
        if box is None:
            return True
        return all(box.contains(p) for p in graph.segment(vertex_id).geometry.points)

    top = _TopPaths(cap, ascending)
    path: list[str] = [s]
    visited = {s}

    def visit(driven: float, prefix_score: float) -> None:
        current = path[-1]
        if current == d:
            # extensions can never return to d (simple paths), so stop here
            top.offer(prefix_score * table.lookup(graph.segment(current).curvature, 0.0), tuple(path))
            return
        current_len = graph.segment(current).length
        current_curv = graph.segment(current).curvature
        for conn in graph.out_edges(current):
            nxt = conn.to_id
            if nxt in visited:
                continue
            new_driven = driven + current_len
            if new_driven + geo.geo_distance(graph.segment(nxt).start, dest_entry) > budget:
                continue
            if not inside_box(nxt):
                continue
            new_score = prefix_score * table.lookup(current_curv, conn.turn_angle)
            if prune_by_score:
                cutoff = top.worst_score()
                # factors are <= 1: a strictly worse prefix can never climb back
                if cutoff is not None and new_score < cutoff:
                    continue
            path.append(nxt)
            visited.add(nxt)
            visit(new_driven, new_score)
            path.pop()
            visited.remove(nxt)

    if inside_box(s):
        visit(0.0, 1.0)
    results = top.paths()
    if not results:
        raise NoPath(f"no path from {s} to {d} survives the filters")
    return results


def generate_spoofed_paths(
    graph: RoadGraph,
    table: ProbabilityTable,
    s: str,
    d: str,
    params: SpoofSearchParams = SpoofSearchParams(),
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG,
) -> list[PathCandidate]:
    """Enumerate simple s→d paths passing the distance and box filters and
    return the top n_paths by score, descending, ties by vertex sequence.

    The distance filter is applied at every prefix: meters driven to the
    prefix's last segment entry, plus the straight-line distance from that
    entry to the destination entry, must stay within
    distance_factor × (reference shortest-time path length).
    """
    _require_vertex(graph, s)
    _require_vertex(graph, d)
    scored = _search(
        graph, table, s, d, params, ascending=False, cap=params.n_paths, prune_by_score=True
    )
    return [make_candidate(graph, v, score, turn_threshold) for score, v in scored]
