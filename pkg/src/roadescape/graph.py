"""Directed road graph: atomic segments as vertices, intersection turns as edges.

An atomic segment is a directed stretch of road between two intersections.
It preserves the road's shape (curvature) but contains no interior junction.
Two-way roads contribute one segment per travel direction; a segment and its
reversed twin are never connected to each other (no U-turns).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import geo
from .errors import DegenerateInput, EmptyGraph, MissingNode
from .geo import GeoPoint, Polyline

#: default speed per highway class, meters/second (motorway = 65 mph)
ROAD_CLASS_SPEEDS_MS = {
    "motorway": 29.1,
    "trunk": 24.6,
    "primary": 20.1,
    "secondary": 17.9,
    "tertiary": 15.6,
    "residential": 11.2,
    "service": 6.7,
}
FALLBACK_SPEED_MS = 11.2
#: non-vehicle classes dropped at graph build
DROPPED_HIGHWAY_CLASSES = {"footway", "path", "cycleway", "steps", "pedestrian"}

MPH_TO_MS = 0.44704
KMH_TO_MS = 1.0 / 3.6


def round_degrees(value: float) -> int:
    """Round to the nearest integer degree, halves upward. Single rule for
    table keys and score lookups so the two can never disagree."""
    return int(math.floor(value + 0.5))


def road_class_speed(road_class: str) -> float:
    """Default speed for a highway class; `*_link` ramps inherit the parent class."""
    if road_class.endswith("_link"):
        road_class = road_class[: -len("_link")]
    return ROAD_CLASS_SPEEDS_MS.get(road_class, FALLBACK_SPEED_MS)


def parse_maxspeed(value: str) -> float | None:
    """Parse an OSM maxspeed tag to m/s. Bare numbers are km/h by OSM
    convention; 'NN mph' and 'NN km/h' are explicit. None when unparseable."""
    text = value.strip().lower()
    factor = KMH_TO_MS
    if text.endswith("mph"):
        factor = MPH_TO_MS
        text = text[:-3].strip()
    elif text.endswith("km/h"):
        text = text[:-4].strip()
    elif text.endswith("kmh"):
        text = text[:-3].strip()
    try:
        number = float(text)
    except ValueError:
        return None
    if number <= 0:
        return None
    return number * factor


@dataclass(frozen=True)
class AtomicSegment:
    """One directed road piece between intersections.

    Attributes:
        id: opaque, unique, deterministic across rebuilds.
        geometry: the piece's polyline in travel order.
        length: meters, equal to the haversine sum over the geometry.
        speed_limit: meters/second.
        curvature: cached mean bearing deviation of the geometry, degrees.
        road_class: the source highway tag value.
    """

    id: str
    geometry: Polyline
    length: float
    speed_limit: float
    curvature: float
    road_class: str

    def __post_init__(self) -> None:
        if self.length <= 0:
            raise DegenerateInput(f"segment {self.id}: non-positive length")
        if self.speed_limit <= 0:
            raise DegenerateInput(f"segment {self.id}: non-positive speed limit")
        true_length = geo.polyline_length(self.geometry)
        if abs(true_length - self.length) > 1e-6 * max(true_length, 1.0):
            raise DegenerateInput(f"segment {self.id}: length does not match geometry")

    @property
    def start(self) -> GeoPoint:
        return self.geometry.start

    @property
    def end(self) -> GeoPoint:
        return self.geometry.end


def make_segment(seg_id: str, geometry: Polyline, speed_limit: float, road_class: str) -> AtomicSegment:
    """Build a segment with derived length and cached curvature."""
    return AtomicSegment(
        id=seg_id,
        geometry=geometry,
        length=geo.polyline_length(geometry),
        speed_limit=speed_limit,
        curvature=geo.segment_curvature(geometry),
        road_class=road_class,
    )


@dataclass(frozen=True)
class Connection:
    """Directed edge: leaving `from_id` onto `to_id` with a signed turn angle."""

    from_id: str
    to_id: str
    turn_angle: float


class RoadGraph:
    """Immutable directed graph over atomic segments.

    Vertices are stored in sorted-id order and edges sorted by (from, to),
    which makes every traversal and serialization deterministic. Start-point
    coordinate arrays are kept as the endpoint index for spatial queries.
    """

    def __init__(
        self,
        segments: list[AtomicSegment],
        connections: list[Connection],
        reverse_twins: dict[str, str] | None = None,
    ):
        vertices: dict[str, AtomicSegment] = {}
        for seg in sorted(segments, key=lambda s: s.id):
            if seg.id in vertices:
                raise DegenerateInput(f"duplicate segment id {seg.id}")
            vertices[seg.id] = seg
        self._vertices = vertices

        edges = sorted(connections, key=lambda c: (c.from_id, c.to_id))
        for conn in edges:
            if conn.from_id not in vertices or conn.to_id not in vertices:
                raise MissingNode(f"connection {conn.from_id}->{conn.to_id} references unknown segment")
            if vertices[conn.from_id].end != vertices[conn.to_id].start:
                raise DegenerateInput(
                    f"connection {conn.from_id}->{conn.to_id} is not geometrically adjacent"
                )
        self._edges = tuple(edges)
        self._twins = dict(reverse_twins or {})

        adjacency: dict[str, list[Connection]] = {vid: [] for vid in vertices}
        edge_map: dict[tuple[str, str], Connection] = {}
        for conn in self._edges:
            adjacency[conn.from_id].append(conn)
            edge_map[(conn.from_id, conn.to_id)] = conn
        self._adjacency = {vid: tuple(conns) for vid, conns in adjacency.items()}
        self._edge_map = edge_map

    # pickling keeps only the defining data; derived structures are rebuilt
    def __getstate__(self):
        return {
            "segments": list(self._vertices.values()),
            "connections": list(self._edges),
            "reverse_twins": self._twins,
        }

    def __setstate__(self, state):
        self.__init__(state["segments"], state["connections"], state["reverse_twins"])

    def __eq__(self, other):
        if not isinstance(other, RoadGraph):
            return NotImplemented
        return (
            self._vertices == other._vertices
            and self._edges == other._edges
            and self._twins == other._twins
        )

    def __len__(self) -> int:
        return len(self._vertices)

    @property
    def vertices(self) -> dict[str, AtomicSegment]:
        return self._vertices

    @property
    def edges(self) -> tuple[Connection, ...]:
        return self._edges

    def segment(self, vertex_id: str) -> AtomicSegment:
        return self._vertices[vertex_id]

    def out_edges(self, vertex_id: str) -> tuple[Connection, ...]:
        return self._adjacency[vertex_id]

    def connection(self, from_id: str, to_id: str) -> Connection | None:
        return self._edge_map.get((from_id, to_id))

    def twin_of(self, vertex_id: str) -> str | None:
        return self._twins.get(vertex_id)


def nearest_vertex(graph: RoadGraph, p: GeoPoint) -> str:
    """Vertex whose segment start point is closest to p, ties to the smallest id.

    Deterministic linear scan in id order; exactness of the tie rule matters
    more than speed here (lookups are per-query, not per-sample).
    """
    if len(graph) == 0:
        raise EmptyGraph("nearest_vertex on an empty graph")
    best_id = None
    best_dist = math.inf
    for vid, seg in graph.vertices.items():
        d = geo.geo_distance(seg.start, p)
        if d < best_dist:
            best_dist = d
            best_id = vid
    return best_id


class ProbabilityTable:
    """Occurrence probabilities of (curvature, turn) pairs, integer degrees."""

    def __init__(self, entries: dict[tuple[int, int], float]):
        total = sum(entries.values())
        if entries and abs(total - 1.0) > 1e-9:
            raise DegenerateInput(f"probabilities sum to {total}, not 1")
        for key in entries:
            if not (isinstance(key[0], int) and isinstance(key[1], int)):
                raise DegenerateInput(f"non-integer table key {key}")
        self._entries = dict(sorted(entries.items()))

    @property
    def entries(self) -> dict[tuple[int, int], float]:
        return dict(self._entries)

    def lookup(self, curvature_deg: float, turn_deg: float) -> float:
        """Probability of the rounded (curvature, turn) pair; unseen pairs are 0."""
        return self._entries.get((round_degrees(curvature_deg), round_degrees(turn_deg)), 0.0)

    def rescaled(self, factor: float) -> "ProbabilityTable":
        """Scale every raw entry by a constant, then renormalize."""
        total = sum(v * factor for v in self._entries.values())
        return ProbabilityTable({k: v * factor / total for k, v in self._entries.items()})


def build_probability_table(graph: RoadGraph) -> ProbabilityTable:
    """One observation per edge: the rounded curvature of the segment being
    left, paired with the rounded turn taken. Probabilities are counts over
    the total edge count."""
    if not graph.edges:
        raise EmptyGraph("probability table needs at least one connection")
    counts: dict[tuple[int, int], int] = {}
    for conn in graph.edges:
        seg = graph.segment(conn.from_id)
        key = (round_degrees(seg.curvature), round_degrees(conn.turn_angle))
        counts[key] = counts.get(key, 0) + 1
    total = len(graph.edges)
    return ProbabilityTable({k: c / total for k, c in counts.items()})


def build_graph(nodes: dict[str, "object"], ways: list["object"]) -> RoadGraph:
    """Split highway ways at intersections and assemble the directed graph.

    An intersection is a node shared by at least two highway ways, or an
    interior node where one way meets itself. Every split piece yields one
    AtomicSegment per travel direction (honoring oneway tags) and edges are
    created between each incoming/outgoing segment pair at a shared node,
    excluding the segment's own reverse twin.

    `nodes` maps node id to an object with .lat/.lon; `ways` is a list of
    objects with .id, .node_refs, .tags (see osm.parse_osm).
    """
    highway_ways = [
        w
        for w in ways
        if w.tags.get("highway") and w.tags["highway"] not in DROPPED_HIGHWAY_CLASSES
    ]
    if not highway_ways:
        raise EmptyGraph("no usable highway ways in input")

    way_count_per_node: dict[str, int] = {}
    self_intersections: set[str] = set()
    for way in highway_ways:
        seen_in_way: set[str] = set()
        for ref in way.node_refs:
            if ref in seen_in_way:
                self_intersections.add(ref)
            else:
                seen_in_way.add(ref)
                way_count_per_node[ref] = way_count_per_node.get(ref, 0) + 1
    intersections = {n for n, c in way_count_per_node.items() if c >= 2} | self_intersections

    def node_point(ref: str) -> GeoPoint:
        try:
            n = nodes[ref]
        except KeyError:
            raise MissingNode(f"way references absent node {ref}") from None
        return GeoPoint(n.lat, n.lon)

    segments: list[AtomicSegment] = []
    twins: dict[str, str] = {}
    starts_at: dict[str, list[str]] = {}
    ends_at: dict[str, list[str]] = {}
    seg_by_id: dict[str, AtomicSegment] = {}

    for way in highway_ways:
        oneway = way.tags.get("oneway", "no").strip().lower()
        forward_only = oneway in {"yes", "true", "1"}
        reverse_only = oneway in {"-1", "reverse"}

        speed = None
        if "maxspeed" in way.tags:
            speed = parse_maxspeed(way.tags["maxspeed"])
        road_class = way.tags["highway"]
        if speed is None:
            speed = road_class_speed(road_class)

        # split the node sequence at interior intersection nodes
        refs = list(way.node_refs)
        boundaries = [0]
        for i in range(1, len(refs) - 1):
            if refs[i] in intersections:
                boundaries.append(i)
        boundaries.append(len(refs) - 1)

        pieces: list[list[str]] = []
        for a, b in zip(boundaries, boundaries[1:]):
            if b > a:
                pieces.append(refs[a : b + 1])
        # closed pieces (loops with no interior junction) get halved so each
        # half has distinct endpoints and a defined curvature
        split_pieces: list[list[str]] = []
        queue = list(pieces)
        while queue:
            piece = queue.pop(0)
            if piece[0] == piece[-1] and len(piece) >= 3:
                mid = len(piece) // 2
                queue.insert(0, piece[mid:])
                queue.insert(0, piece[: mid + 1])
            else:
                split_pieces.append(piece)

        for index, piece in enumerate(split_pieces):
            points: list[GeoPoint] = []
            for ref in piece:
                pt = node_point(ref)
                if points and pt == points[-1]:
                    continue
                points.append(pt)
            if len(points) < 2:
                continue
            directions = []
            if not reverse_only:
                directions.append(("f", points, piece[0], piece[-1]))
            if not forward_only:
                directions.append(("r", list(reversed(points)), piece[-1], piece[0]))
            made: list[str] = []
            for suffix, pts, start_ref, end_ref in directions:
                seg_id = f"{way.id}:{index:03d}:{suffix}"
                seg = make_segment(seg_id, Polyline(tuple(pts)), speed, road_class)
                segments.append(seg)
                seg_by_id[seg_id] = seg
                starts_at.setdefault(start_ref, []).append(seg_id)
                ends_at.setdefault(end_ref, []).append(seg_id)
                made.append(seg_id)
            if len(made) == 2:
                twins[made[0]] = made[1]
                twins[made[1]] = made[0]

    if not segments:
        raise EmptyGraph("all highway ways degenerated to zero-length pieces")

    connections: list[Connection] = []
    for node_ref, incoming_ids in ends_at.items():
        outgoing_ids = starts_at.get(node_ref, [])
        for in_id in incoming_ids:
            for out_id in outgoing_ids:
                if out_id == in_id or twins.get(in_id) == out_id:
                    continue
                angle = geo.turn_angle(seg_by_id[in_id].geometry, seg_by_id[out_id].geometry)
                connections.append(Connection(in_id, out_id, angle))

    return RoadGraph(segments, connections, twins)
