"""How much of the map can the attacker reach without tripping the detector?

Monte-Carlo estimate: sample points uniformly over the map's bounding
box, keep those within walking distance r' of any road (land the victim
could plausibly be standing on), and count how many are within r' of
some escape-path endpoint. Coverage = covered / land. Larger r' means
the victim walks further from the car, so coverage grows with it.
"""

from pathlib import Path

from roadescape import (
    CoverageParams,
    GeoPoint,
    build_graph,
    build_probability_table,
    coverage_radius_sweep,
    escape_destination_point,
    generate_escape_paths,
    generate_spoofed_paths,
    monte_carlo_coverage,
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
    escapes = generate_escape_paths(graph, spoofed, samples=30)
    dests = [escape_destination_point(graph, path) for path in escapes]
    source = graph.vertices[spoofed.vertices[0]].start
    intended = escape_destination_point(graph, spoofed)
    print(f"{len(dests)} escape endpoints from the top spoofed route")

    params = CoverageParams(walk_radius=100.0, point_count=200_000, seed=11)
    result = monte_carlo_coverage(graph, source, intended, dests, params)
    print(f"\nat r' = {params.walk_radius:.0f} m:")
    print(f"  land area    {result.land_area_m2 / 1e6:.3f} km^2")
    print(f"  covered area {result.covered_area_m2 / 1e6:.3f} km^2")
    print(f"  coverage     {result.coverage_percent:.1f} %")
    print(f"  endpoints outside the shown-destination circle: "
          f"{result.outside_destination_fraction:.0%}")

    print("\nsweep (same sample points at every radius):")
    print(f"{'r_prime_m':>9}  {'coverage_%':>10}")
    for radius, swept in coverage_radius_sweep(
        graph, source, intended, dests, params, radii=(50.0, 100.0, 200.0)
    ):
        print(f"{radius:>9.0f}  {swept.coverage_percent:>10.2f}")


if __name__ == "__main__":
    main()
