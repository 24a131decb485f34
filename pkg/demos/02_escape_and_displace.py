"""Where can the victim actually end up while the app shows the fake route?

Given a spoofed route, an escape path is any real drive whose IMU
signature (leg lengths, turns, curvature) stays within the detector's
tolerances of the spoofed one. Every escape path ends somewhere else;
the spread of those endpoints is the attacker's room for manoeuvre.
Tightening the tolerances (the countermeasure) shrinks both the number
of escapes and how far they reach.
"""

from pathlib import Path
from statistics import fmean

from roadescape import (
    DEFAULT_THRESHOLDS,
    LOW_NOISE_THRESHOLDS,
    GeoPoint,
    build_graph,
    build_probability_table,
    escape_destination_point,
    generate_escape_paths,
    generate_spoofed_paths,
    geo_distance,
    nearest_vertex,
    parse_osm,
)

DATA = Path(__file__).resolve().parent.parent / "data" / "gridville.osm"


def main():
    nodes, ways = parse_osm(DATA)
    graph = build_graph(nodes, ways)
    lats = [seg.start.lat for seg in graph.vertices.values()]
    lons = [seg.start.lon for seg in graph.vertices.values()]
    home = nearest_vertex(graph, GeoPoint(min(lats), min(lons)))
    work = nearest_vertex(graph, GeoPoint(max(lats), max(lons)))

    table = build_probability_table(graph)
    spoofed = generate_spoofed_paths(graph, table, home, work)[0]
    intended = escape_destination_point(graph, spoofed)
    print(
        f"spoofed route: {spoofed.total_distance:.0f} m, {spoofed.turn_count} turns, "
        f"shown destination ({intended.lat:.5f}, {intended.lon:.5f})"
    )

    for label, thresholds in (("default", DEFAULT_THRESHOLDS), ("tightened", LOW_NOISE_THRESHOLDS)):
        escapes = generate_escape_paths(graph, spoofed, thresholds, samples=30)
        dests = [escape_destination_point(graph, path) for path in escapes]
        spread = [geo_distance(d, intended) for d in dests]
        print(f"\n{label} thresholds {thresholds}:")
        print(f"  {len(escapes)} escape paths (identity included)")
        if spread:
            print(f"  mean endpoint displacement {fmean(spread):.0f} m, max {max(spread):.0f} m")
        for path, dist in sorted(zip(escapes, spread), key=lambda pair: -pair[1])[:3]:
            print(f"    {dist:>5.0f} m away after {path.total_distance:.0f} m driven")


if __name__ == "__main__":
    main()
