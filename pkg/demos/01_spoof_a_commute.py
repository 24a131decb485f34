"""Rank plausible fake routes between two points on the bundled city map.

The attacker scenario: a victim drives from home to work while their
navigation app is fed spoofed GPS fixes. The spoofed route must be
geometrically consistent with what the car's IMU records (leg lengths,
turn angles, curvature), so candidates are scored by how common their
turn/curvature combinations are on this road network. Higher score =
harder to tell apart from an honest drive.
"""

from pathlib import Path

from roadescape import (
    GeoPoint,
    SpoofSearchParams,
    build_graph,
    build_probability_table,
    generate_spoofed_paths,
    nearest_vertex,
    parse_osm,
    shortest_time_path,
)

DATA = Path(__file__).resolve().parent.parent / "data" / "gridville.osm"


def corner_points(graph):
    lats = [seg.start.lat for seg in graph.vertices.values()]
    lons = [seg.start.lon for seg in graph.vertices.values()]
    south_west = GeoPoint(min(lats), min(lons))
    north_east = GeoPoint(max(lats), max(lons))
    return south_west, north_east


def main():
    nodes, ways = parse_osm(DATA)
    graph = build_graph(nodes, ways)
    print(f"graph: {len(graph)} directed segments from {DATA.name}")

    home_area, work_area = corner_points(graph)
    home = nearest_vertex(graph, home_area)
    work = nearest_vertex(graph, work_area)
    print(f"home segment {home}, work segment {work}")

    honest = shortest_time_path(graph, home, work)
    print(f"honest route: {honest.total_distance:.0f} m, {honest.turn_count} turns")

    table = build_probability_table(graph)
    candidates = generate_spoofed_paths(
        graph, table, home, work, SpoofSearchParams(n_paths=10)
    )
    print(f"\ntop {len(candidates)} spoofable routes (most plausible first):")
    print(f"{'rank':>4}  {'score':>12}  {'length m':>9}  {'turns':>5}")
    for rank, cand in enumerate(candidates, start=1):
        print(
            f"{rank:>4}  {cand.score:>12.3e}  {cand.total_distance:>9.0f}  {cand.turn_count:>5}"
        )

    best = candidates[0]
    print(f"\nbest candidate visits {len(best.vertices)} segments:")
    print("  " + " -> ".join(best.vertices[:6]) + (" ..." if len(best.vertices) > 6 else ""))


if __name__ == "__main__":
    main()
