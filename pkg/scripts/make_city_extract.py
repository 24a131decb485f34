#!/usr/bin/env python3
"""Generate data/gridville.osm, the deterministic grid-city extract used by
the smoke test and the demo scripts.

The layout mimics a small US downtown: an 8x8 block grid with slightly
imperfect intersections, one diagonal boulevard, and a handful of tagged
buildings so home/work sampling has something to find. Regenerating the
file always produces identical bytes.
"""

import math
import random
from pathlib import Path

ANCHOR_LAT, ANCHOR_LON = 45.52, -100.35
SPHERE_R = 6_371_000.0
N = 8
SPACING = 190.0
JITTER = 5.0

STREETS = ["Ash", "Birch", "Cedar", "Dogwood", "Elm", "Fir", "Hawthorn", "Juniper"]


def to_latlon(x: float, y: float) -> tuple[float, float]:
    lat = ANCHOR_LAT + math.degrees(y / SPHERE_R)
    lon = ANCHOR_LON + math.degrees(x / (SPHERE_R * math.cos(math.radians(ANCHOR_LAT))))
    return lat, lon


def ordinal(k: int) -> str:
    suffix = {1: "st", 2: "nd", 3: "rd"}.get(k if k < 20 else k % 10, "th")
    return f"{k}{suffix}"


def main() -> None:
    rng = random.Random(20)
    nodes: dict[int, tuple[float, float]] = {}
    grid: dict[tuple[int, int], int] = {}
    node_id = 1
    for r in range(N):
        for c in range(N):
            x = c * SPACING + rng.uniform(-JITTER, JITTER)
            y = r * SPACING + rng.uniform(-JITTER, JITTER)
            grid[(c, r)] = node_id
            nodes[node_id] = to_latlon(x, y)
            node_id += 1

    ways: list[tuple[int, list[int], dict[str, str]]] = []
    way_id = 100
    for r in range(N):
        tags = {"highway": "residential", "name": f"{ordinal(r + 1)} Avenue"}
        if r == 3:
            tags = {"highway": "secondary", "name": "Central Avenue", "maxspeed": "40"}
        ways.append((way_id, [grid[(c, r)] for c in range(N)], tags))
        way_id += 1
    for c in range(N):
        tags = {"highway": "residential", "name": f"{STREETS[c]} Street"}
        if c == 4:
            tags = {"highway": "tertiary", "name": f"{STREETS[c]} Street", "maxspeed": "35 mph"}
        ways.append((way_id, [grid[(c, r)] for r in range(N)], tags))
        way_id += 1
    ways.append(
        (way_id, [grid[(k, k)] for k in range(N)], {"highway": "tertiary", "name": "Meridian Boulevard"})
    )
    way_id += 1

    def building(cell: tuple[int, int], kind: str) -> None:
        nonlocal node_id, way_id
        cx = cell[0] * SPACING + 95.0 + rng.uniform(-20.0, 20.0)
        cy = cell[1] * SPACING + 95.0 + rng.uniform(-20.0, 20.0)
        half = rng.uniform(8.0, 16.0)
        corners = [(cx - half, cy - half), (cx + half, cy - half), (cx + half, cy + half), (cx - half, cy + half)]
        refs = []
        for x, y in corners:
            nodes[node_id] = to_latlon(x, y)
            refs.append(node_id)
            node_id += 1
        refs.append(refs[0])
        ways.append((way_id, refs, {"building": kind}))
        way_id += 1

    for cell, kind in [
        ((0, 0), "house"),
        ((1, 5), "apartments"),
        ((6, 1), "residential"),
        ((5, 6), "bungalow"),
        ((6, 6), "commercial"),
        ((0, 6), "commercial"),
        ((6, 0), "industrial"),
        ((3, 2), "industrial"),
    ]:
        building(cell, kind)

    lines = ['<?xml version="1.0" encoding="UTF-8"?>', '<osm version="0.6" generator="make_city_extract">']
    for nid in sorted(nodes):
        lat, lon = nodes[nid]
        lines.append(f'  <node id="{nid}" lat="{lat:.7f}" lon="{lon:.7f}"/>')
    for wid, refs, tags in ways:
        lines.append(f'  <way id="{wid}">')
        for ref in refs:
            lines.append(f'    <nd ref="{ref}"/>')
        for key in sorted(tags):
            lines.append(f'    <tag k="{key}" v="{tags[key]}"/>')
        lines.append("  </way>")
    lines.append("</osm>")

    out = Path(__file__).resolve().parent.parent / "data" / "gridville.osm"
    out.parent.mkdir(exist_ok=True)
    out.write_text("\n".join(lines) + "\n")
    print(f"{len(nodes)} nodes, {len(ways)} ways -> {out}")


if __name__ == "__main__":
    main()
