"""Command-line front end.

Subcommands mirror the workflow: build-graph (one-time per map), spoof,
escape, eval (batch trials feeding the plotting component), secure-path.
Every command is deterministic given (inputs, seed); outputs are pure
serializations of library results.

Exit codes: 0 on success, 2 on failure with the error's class name on
stderr so callers can branch without parsing prose.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import geojson as gj
from .cache import load_graph_cache, save_graph_cache
from .config import RunConfig, load_config
from .errors import InvalidConfig, ToolkitError
from .escape import escape_destination_point, generate_escape_paths
from .geo import GeoPoint, geo_distance
from .graph import RoadGraph, build_graph, build_probability_table, nearest_vertex
from .metrics import monte_carlo_coverage, displacement
from .osm import parse_osm
from .secure import audit_secure_path, generate_secure_path, report_json_dict
from .spoof import generate_spoofed_paths

EVAL_CSV_HEADER = "city,trial,route_length_m,displacement_m,coverage_percent,r_prime_m"
SPOOF_CSV_HEADER = "rank,score,distance,turn_count"

HOME_BUILDING_TAGS = {"apartments", "house", "residential", "bungalow"}
WORK_BUILDING_TAGS = {"commercial", "industrial"}


def _parse_latlon(text: str) -> GeoPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidConfig(f"expected 'lat,lon', got {text!r}")
    try:
        return GeoPoint(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise InvalidConfig(f"expected 'lat,lon', got {text!r}") from exc


def _resolve_graph(config: RunConfig, osm: str | None, cache: str | None) -> RoadGraph:
    """Load the graph from cache when present; otherwise build from OSM XML
    (and populate the cache if a location was given). A cache that fails
    its version or hash check is an error, never silently rebuilt."""
    osm_path = Path(osm) if osm else config.osm_path
    cache_path = Path(cache) if cache else config.cache_path
    if osm_path is None:
        raise InvalidConfig("no OSM file configured (cache checks hash against the source)")
    if cache_path is not None and cache_path.exists():
        return load_graph_cache(cache_path, osm_path)
    nodes, ways = parse_osm(osm_path)
    graph = build_graph(nodes, ways)
    if cache_path is not None:
        save_graph_cache(graph, cache_path, osm_path)
    return graph


def _route_length(graph: RoadGraph, vertices) -> float:
    return sum(graph.segment(v).length for v in vertices)


def _write_lines(path: Path, lines) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")


# -- subcommands ---------------------------------------------------------


def cmd_build_graph(args) -> int:
    nodes, ways = parse_osm(Path(args.osm))
    graph = build_graph(nodes, ways)
    save_graph_cache(graph, Path(args.cache), Path(args.osm))
    print(f"{len(graph)} segments -> {args.cache}")
    return 0


def cmd_spoof(args) -> int:
    config = load_config(args.config)
    graph = _resolve_graph(config, args.osm, args.cache)
    source = nearest_vertex(graph, _parse_latlon(args.source))
    dest = nearest_vertex(graph, _parse_latlon(args.dest))
    table = build_probability_table(graph)
    paths = generate_spoofed_paths(graph, table, source, dest, config.params, config.turn_threshold)

    out = Path(args.out)
    features = [
        gj.path_feature(graph, p, rank=i + 1) for i, p in enumerate(paths)
    ]
    out.mkdir(parents=True, exist_ok=True)
    gj.dump_geojson(gj.feature_collection(features), out / "spoofed.geojson")
    rows = [SPOOF_CSV_HEADER] + [
        f"{i + 1},{p.score!r},{p.total_distance!r},{p.turn_count}" for i, p in enumerate(paths)
    ]
    _write_lines(out / "spoofed.csv", rows)
    print(f"{len(paths)} spoofed paths -> {out}")
    return 0


def cmd_escape(args) -> int:
    config = load_config(args.config)
    graph = _resolve_graph(config, args.osm, args.cache)
    collection = gj.load_geojson(args.spoofed)
    chosen = None
    for feature in collection.get("features", []):
        if feature.get("properties", {}).get("rank") == args.rank:
            chosen = feature
            break
    if chosen is None:
        raise InvalidConfig(f"no feature with rank {args.rank} in {args.spoofed}")
    vertices = tuple(chosen["properties"]["vertices"])

    escapes = generate_escape_paths(
        graph, vertices, config.thresholds, config.samples, config.turn_threshold
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path_features = [gj.path_feature(graph, e, rank=i + 1) for i, e in enumerate(escapes)]
    gj.dump_geojson(gj.feature_collection(path_features), out / "escape.geojson")
    dest_features = [
        gj.point_feature(escape_destination_point(graph, e), rank=i + 1)
        for i, e in enumerate(escapes)
    ]
    gj.dump_geojson(gj.feature_collection(dest_features), out / "escape_destinations.geojson")
    print(f"{len(escapes)} escape paths -> {out}")
    return 0


def _building_vertices(graph: RoadGraph, nodes, ways, tags: set[str]) -> list[str]:
    found = []
    for way in ways:
        if way.tags.get("building") not in tags:
            continue
        lat = sum(nodes[r].lat for r in way.node_refs) / len(way.node_refs)
        lon = sum(nodes[r].lon for r in way.node_refs) / len(way.node_refs)
        found.append(nearest_vertex(graph, GeoPoint(lat, lon)))
    return sorted(set(found))


def _run_trial(graph, table, config, homes, works, seed, trial, dist_range):
    rng = np.random.default_rng(np.random.SeedSequence([seed, trial]))
    target = rng.uniform(dist_range[0], dist_range[1])
    source = homes[int(rng.integers(len(homes)))]
    source_point = graph.segment(source).start

    def crow(vertex: str) -> float:
        return geo_distance(graph.segment(vertex).start, source_point)

    candidates = [w for w in works if w != source]
    if not candidates:
        raise InvalidConfig("need at least two distinct route endpoints")
    dest = min(candidates, key=lambda w: (abs(crow(w) - target), w))

    spoofed = generate_spoofed_paths(graph, table, source, dest, config.params, config.turn_threshold)
    top = spoofed[0]
    escapes = generate_escape_paths(
        graph, top, config.thresholds, config.samples, config.turn_threshold
    )
    destinations = [escape_destination_point(graph, e) for e in escapes]
    intended = escape_destination_point(graph, top)
    moved = displacement(destinations, intended)
    coverage = monte_carlo_coverage(graph, source_point, intended, destinations, config.coverage)

    artifacts = {
        f"trial_{trial:03d}_spoofed.geojson": gj.feature_collection(
            [gj.path_feature(graph, p, rank=i + 1) for i, p in enumerate(spoofed)]
        ),
        f"trial_{trial:03d}_escape.geojson": gj.feature_collection(
            [gj.path_feature(graph, e, rank=i + 1) for i, e in enumerate(escapes)]
        ),
        f"trial_{trial:03d}_destinations.geojson": gj.feature_collection(
            [gj.point_feature(p, rank=i + 1) for i, p in enumerate(destinations)]
        ),
    }
    length = _route_length(graph, top.vertices)
    return trial, length, moved, coverage.coverage_percent, artifacts


def cmd_eval(args) -> int:
    config = load_config(args.config)
    graph = _resolve_graph(config, args.osm, args.cache)
    table = build_probability_table(graph)
    seed = args.seed if args.seed is not None else config.coverage.seed

    nodes, ways = parse_osm(Path(args.osm) if args.osm else config.osm_path)
    homes = _building_vertices(graph, nodes, ways, HOME_BUILDING_TAGS)
    works = _building_vertices(graph, nodes, ways, WORK_BUILDING_TAGS)
    if not homes or not works:
        homes = works = sorted(graph.vertices)

    dist_range = (args.dist_min, args.dist_max)
    if not (0 < dist_range[0] <= dist_range[1]):
        raise InvalidConfig("need 0 < dist-min <= dist-max")

    trials = range(args.trials)

    def run(trial: int):
        return _run_trial(graph, table, config, homes, works, seed, trial, dist_range)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run, trials))
    else:
        results = [run(t) for t in trials]
    results.sort(key=lambda r: r[0])

    out = Path(args.out)
    trial_dir = out / "trials"
    rows = [EVAL_CSV_HEADER]
    r_prime = config.coverage.walk_radius
    for trial, length, moved, coverage_percent, artifacts in results:
        rows.append(
            f"{args.city},{trial},{length!r},{moved!r},{coverage_percent!r},{r_prime!r}"
        )
        for name, collection in artifacts.items():
            trial_dir.mkdir(parents=True, exist_ok=True)
            gj.dump_geojson(collection, trial_dir / name)
    _write_lines(out / "eval.csv", rows)
    print(f"{args.trials} trials -> {out / 'eval.csv'}")
    return 0


def cmd_secure_path(args) -> int:
    config = load_config(args.config)
    graph = _resolve_graph(config, args.osm, args.cache)
    source = nearest_vertex(graph, _parse_latlon(args.source))
    dest = nearest_vertex(graph, _parse_latlon(args.dest))
    table = build_probability_table(graph)
    secure = generate_secure_path(graph, table, source, dest, config.params, config.turn_threshold)
    report = audit_secure_path(
        graph, secure, config.thresholds, config.samples, config.turn_threshold
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    gj.dump_geojson(
        gj.feature_collection([gj.path_feature(graph, secure, rank=1)]), out / "secure.geojson"
    )
    gj.dump_geojson(report_json_dict(report), out / "secure_report.json")
    print(
        f"secure path: {report.residual_escapes} residual escapes, "
        f"{report.residual_displacement:.1f} m residual displacement -> {out}"
    )
    return 0


# -- argument parsing ----------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roadescape")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-graph", help="parse OSM XML into a cached road graph")
    p.add_argument("osm")
    p.add_argument("--cache", required=True)
    p.set_defaults(func=cmd_build_graph)

    def common(p):
        p.add_argument("--config", default=None)
        p.add_argument("--osm", default=None)
        p.add_argument("--cache", default=None)
        p.add_argument("--out", required=True)

    p = sub.add_parser("spoof", help="generate ranked spoofed paths")
    common(p)
    p.add_argument("--source", required=True, help="lat,lon")
    p.add_argument("--dest", required=True, help="lat,lon")
    p.set_defaults(func=cmd_spoof)

    p = sub.add_parser("escape", help="generate escape paths for a spoofed path")
    common(p)
    p.add_argument("--spoofed", required=True, help="spoofed.geojson from the spoof command")
    p.add_argument("--rank", type=int, default=1)
    p.set_defaults(func=cmd_escape)

    p = sub.add_parser("eval", help="batch displacement/coverage trials")
    common(p)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--dist-min", type=float, default=1000.0)
    p.add_argument("--dist-max", type=float, default=21000.0)
    p.add_argument("--city", default="fixture")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("secure-path", help="pick and audit the rarest-signature path")
    common(p)
    p.add_argument("--source", required=True, help="lat,lon")
    p.add_argument("--dest", required=True, help="lat,lon")
    p.set_defaults(func=cmd_secure_path)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ToolkitError as exc:
        print(type(exc).__name__, file=sys.stderr)
        print(str(exc), file=sys.stderr)
        return 2
    except OSError as exc:
        print("IoError", file=sys.stderr)
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
