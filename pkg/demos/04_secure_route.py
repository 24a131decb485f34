"""Route planning for the defender: pick the drive that is hardest to spoof.

Flipping the attacker's scoring around: a route whose turn/curvature
combinations are rare on this network leaves the fewest look-alike
routes for a spoofer to hide behind. The secure path is the lowest-score
member of the same candidate set the attacker would search, audited here
against the fastest route.
"""

from pathlib import Path

from roadescape import (
    DEFAULT_THRESHOLDS,
    GeoPoint,
    audit_secure_path,
    build_graph,
    build_probability_table,
    generate_secure_path,
    nearest_vertex,
    parse_osm,
    shortest_time_path,
)

DATA = Path(__file__).resolve().parent.parent / "data" / "gridville.osm"


def describe(name, report):
    path = report.path
    print(f"\n{name}:")
    print(f"  length {path.total_distance:.0f} m, {path.turn_count} turns, score {path.score:.3e}")
    print(f"  residual escape paths   {report.residual_escapes}")
    print(f"  residual displacement   {report.residual_displacement:.0f} m")


def main():
    nodes, ways = parse_osm(DATA)
    graph = build_graph(nodes, ways)
    lats = [seg.start.lat for seg in graph.vertices.values()]
    lons = [seg.start.lon for seg in graph.vertices.values()]
    home = nearest_vertex(graph, GeoPoint(min(lats), min(lons)))
    work = nearest_vertex(graph, GeoPoint(max(lats), max(lons)))
    table = build_probability_table(graph)

    fastest = shortest_time_path(graph, home, work, table)
    secure = generate_secure_path(graph, table, home, work)

    describe("fastest route", audit_secure_path(graph, fastest, DEFAULT_THRESHOLDS, samples=30))
    describe("secure route", audit_secure_path(graph, secure, DEFAULT_THRESHOLDS, samples=30))


if __name__ == "__main__":
    main()
