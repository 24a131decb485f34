"""Shared fixture builders: synthetic OSM documents and hand-built graphs.

Coordinates are laid out in a local tangent plane (meters east/north of an
anchor) and converted to lat/lon through the package's own projection; the
geometry-level oracles in oracles.py do their own spherical math, so this
does not couple test inputs to the code under test.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from roadescape.geo import GeoPoint, Polyline, turn_angle, unproject_local
from roadescape.graph import Connection, RoadGraph, build_graph, make_segment
from roadescape.osm import parse_osm

ANCHOR = GeoPoint(47.0, 8.0)


# -- OSM XML builders ----------------------------------------------------


def osm_xml(nodes: dict[int, tuple[float, float]], ways: list[tuple[int, list[int], dict]]) -> bytes:
    """Assemble a minimal OSM XML document. nodes: id -> (lat, lon);
    ways: (id, node refs, tags)."""
    parts = ['<?xml version="1.0" encoding="UTF-8"?>', '<osm version="0.6">']
    for nid, (lat, lon) in nodes.items():
        parts.append(f'<node id="{nid}" lat="{lat!r}" lon="{lon!r}"/>')
    for wid, refs, tags in ways:
        tag_xml = "".join(f'<tag k="{k}" v="{v}"/>' for k, v in tags.items())
        ref_xml = "".join(f'<nd ref="{r}"/>' for r in refs)
        parts.append(f'<way id="{wid}">{ref_xml}{tag_xml}</way>')
    parts.append("</osm>")
    return "\n".join(parts).encode()


def local_node(x: float, y: float, anchor: GeoPoint = ANCHOR) -> tuple[float, float]:
    p = unproject_local(x, y, anchor)
    return p.lat, p.lon


def grid_osm_xml(
    n: int = 3,
    spacing: float = 200.0,
    highway: str = "residential",
    jitter: float = 0.0,
    seed: int = 0,
) -> bytes:
    """n x n grid; one way per row and per column, two-way, so every inner
    node is an intersection. Optional coordinate jitter in meters."""
    rng = np.random.default_rng(seed)
    nodes = {}
    nid = lambda r, c: r * n + c + 1
    for r in range(n):
        for c in range(n):
            dx = rng.uniform(-jitter, jitter) if jitter else 0.0
            dy = rng.uniform(-jitter, jitter) if jitter else 0.0
            nodes[nid(r, c)] = local_node(c * spacing + dx, r * spacing + dy)
    ways = []
    wid = 1000
    for r in range(n):
        ways.append((wid, [nid(r, c) for c in range(n)], {"highway": highway}))
        wid += 1
    for c in range(n):
        ways.append((wid, [nid(r, c) for r in range(n)], {"highway": highway}))
        wid += 1
    return osm_xml(nodes, ways)


def cross_osm_xml(arm_m: float = 1000.0, step_m: float = 100.0) -> bytes:
    """Four straight arms (N, E, S, W) meeting at the origin; one way per
    arm plus a center node shared by all."""
    nodes = {1: local_node(0.0, 0.0)}
    nid = 2
    ways = []
    wid = 500
    for dx, dy in ((0, 1), (1, 0), (0, -1), (-1, 0)):
        refs = [1]
        k = 1
        while k * step_m <= arm_m:
            nodes[nid] = local_node(dx * k * step_m, dy * k * step_m)
            refs.append(nid)
            nid += 1
            k += 1
        ways.append((wid, refs, {"highway": "residential"}))
        wid += 1
    return osm_xml(nodes, ways)


def graph_from_xml(xml: bytes) -> RoadGraph:
    nodes, ways = parse_osm(xml)
    return build_graph(nodes, ways)


# -- direct graph construction --------------------------------------------


def graph_from_points(
    points: dict[str, tuple[float, float]],
    edges: list[tuple[str, str]],
    via: dict[tuple[str, str], list[tuple[float, float]]] | None = None,
    speed: float = 11.2,
    anchor: GeoPoint = ANCHOR,
) -> RoadGraph:
    """Build a two-way road graph from named planar points (meters) and
    undirected edges. `via` adds interior geometry points to an edge.
    Segment ids are '<a>-<b>:f' and '<a>-<b>:r' with a, b in given order."""
    geo_points = {name: unproject_local(x, y, anchor) for name, (x, y) in points.items()}
    via = via or {}
    segments = []
    twins = {}
    for a, b in edges:
        interior = [unproject_local(x, y, anchor) for x, y in via.get((a, b), [])]
        forward = Polyline(tuple([geo_points[a]] + interior + [geo_points[b]]))
        fid, rid = f"{a}-{b}:f", f"{a}-{b}:r"
        segments.append(make_segment(fid, forward, speed, "residential"))
        segments.append(make_segment(rid, forward.reversed(), speed, "residential"))
        twins[fid] = rid
        twins[rid] = fid

    connections = []
    for x in segments:
        for y in segments:
            if x.id == y.id or twins[x.id] == y.id:
                continue
            if x.end == y.start:
                connections.append(Connection(x.id, y.id, turn_angle(x.geometry, y.geometry)))
    return RoadGraph(segments, connections, twins)


def random_road_graph(seed: int, max_undirected_edges: int = 6) -> RoadGraph:
    """Random connected two-way network with at most 2 * max_undirected_edges
    directed vertices. Straight or slightly bent segment geometry."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 7))
    while True:
        xy = rng.uniform(0.0, 1200.0, size=(n, 2))
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if np.hypot(*(xy[i] - xy[j])) < 80.0:
                    ok = False
        if ok:
            break
    names = [f"n{i}" for i in range(n)]
    points = {names[i]: (float(xy[i][0]), float(xy[i][1])) for i in range(n)}

    edges: list[tuple[str, str]] = []
    seen = set()
    for i in range(1, n):
        j = int(rng.integers(0, i))
        edges.append((names[j], names[i]))
        seen.add(frozenset((i, j)))
    while len(edges) < max_undirected_edges:
        i, j = int(rng.integers(0, n)), int(rng.integers(0, n))
        if i == j or frozenset((i, j)) in seen:
            if len(seen) == n * (n - 1) // 2:
                break
            continue
        edges.append((names[min(i, j)], names[max(i, j)]))
        seen.add(frozenset((i, j)))

    via = {}
    for a, b in edges:
        if rng.random() < 0.4:
            ax, ay = points[a]
            bx, by = points[b]
            mx, my = (ax + bx) / 2.0, (ay + by) / 2.0
            ux, uy = by - ay, ax - bx  # perpendicular
            norm = math.hypot(ux, uy)
            off = float(rng.uniform(-25.0, 25.0))
            via[(a, b)] = [(mx + ux / norm * off, my + uy / norm * off)]
    speed = float(rng.choice([6.7, 11.2, 15.6]))
    return graph_from_points(points, edges, via, speed=speed)


# -- pytest fixtures -------------------------------------------------------


@pytest.fixture(scope="session")
def grid3() -> RoadGraph:
    return graph_from_xml(grid_osm_xml(3))


@pytest.fixture(scope="session")
def grid6() -> RoadGraph:
    return graph_from_xml(grid_osm_xml(6))


@pytest.fixture(scope="session")
def cross_graph() -> RoadGraph:
    return graph_from_xml(cross_osm_xml())
