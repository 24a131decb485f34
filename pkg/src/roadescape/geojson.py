"""GeoJSON serialization of paths and destination points.

Coordinates follow the format's [longitude, latitude] order. Each path
feature carries the vertex-id sequence in its properties so downstream
consumers can recompute path metrics against the graph instead of trusting
the serialized numbers.
"""

from __future__ import annotations

import json
from pathlib import Path

from .geo import GeoPoint
from .graph import RoadGraph
from .spoof import PathCandidate


def path_coordinates(graph: RoadGraph, candidate: PathCandidate) -> list[list[float]]:
    """Concatenated geometry of the path's segments; shared junction points
    are emitted once."""
    coords: list[list[float]] = []
    for vertex in candidate.vertices:
        points = graph.segment(vertex).geometry.points
        start = 1 if coords else 0
        coords.extend([p.lon, p.lat] for p in points[start:])
    return coords


def path_feature(graph: RoadGraph, candidate: PathCandidate, **properties) -> dict:
    props = {
        "vertices": list(candidate.vertices),
        "score": candidate.score,
        "distance": candidate.total_distance,
        "turn_count": candidate.turn_count,
    }
    props.update(properties)
    return {
        "type": "Feature",
        "geometry": {
            "type": "LineString",
            "coordinates": path_coordinates(graph, candidate),
        },
        "properties": props,
    }


def point_feature(point: GeoPoint, **properties) -> dict:
    return {
        "type": "Feature",
        "geometry": {"type": "Point", "coordinates": [point.lon, point.lat]},
        "properties": dict(properties),
    }


def feature_collection(features) -> dict:
    return {"type": "FeatureCollection", "features": list(features)}


def dump_geojson(obj: dict, path: str | Path) -> None:
    """Write with sorted keys and fixed formatting so identical inputs give
    byte-identical files."""
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


def load_geojson(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)
