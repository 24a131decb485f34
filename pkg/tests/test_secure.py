import math

import pytest

import oracles
from conftest import graph_from_points, random_road_graph
from roadescape.errors import MissingNode, NoPath
from roadescape.escape import ThresholdSet, generate_escape_paths
from roadescape.graph import build_probability_table
from roadescape.secure import (
    SecurePathReport,
    audit_secure_path,
    generate_secure_path,
    report_json_dict,
)
from roadescape.spoof import SpoofSearchParams, generate_spoofed_paths, shortest_time_path

UNBOUNDED = SpoofSearchParams(n_paths=None, distance_factor=math.inf, bbox_padding=None)
IDENTITY_ONLY = ThresholdSet(0.0, 0.0, 1.0, 1.0)


class TestSecurePathSelection:
    def test_single_route_graph_returns_it(self):
        g = graph_from_points(
            {"a": (0, 0), "b": (300, 0), "c": (600, 0)}, [("a", "b"), ("b", "c")]
        )
        table = build_probability_table(g)
        got = generate_secure_path(g, table, "a-b:f", "b-c:f")
        assert got.vertices == ("a-b:f", "b-c:f")

    @pytest.mark.parametrize("seed", range(6))
    def test_exhaustive_argmin_when_unfiltered(self, seed):
        g = random_road_graph(seed)
        table = build_probability_table(g)
        entries = table.entries
        vids = sorted(g.vertices)
        source, dest = vids[0], vids[-1]
        routes = oracles.all_simple_paths(g, source, dest)
        if not routes:
            with pytest.raises(NoPath):
                generate_secure_path(g, table, source, dest, UNBOUNDED)
            return
        want = min(
            (oracles.score_ref(g, entries, p), tuple(p)) for p in routes
        )
        got = generate_secure_path(g, table, source, dest, UNBOUNDED)
        assert got.vertices == want[1]
        assert got.score == pytest.approx(want[0], abs=1e-15)

    @pytest.mark.parametrize("seed", [0, 3])
    def test_opposite_end_of_attack_ranking(self, seed):
        g = random_road_graph(seed)
        table = build_probability_table(g)
        vids = sorted(g.vertices)
        source, dest = vids[0], vids[-1]
        try:
            attack = generate_spoofed_paths(g, table, source, dest, UNBOUNDED)
        except NoPath:
            return
        secure = generate_secure_path(g, table, source, dest, UNBOUNDED)
        assert secure.score <= min(c.score for c in attack)
        assert secure.vertices in {c.vertices for c in attack}

    def test_respects_distance_filter(self, grid3):
        table = build_probability_table(grid3)
        vids = sorted(grid3.vertices)
        source, dest = vids[0], vids[-1]
        budget = 1.2 * shortest_time_path(grid3, source, dest).total_distance
        got = generate_secure_path(grid3, table, source, dest)
        assert got.total_distance <= budget + 1e-9

    def test_rescaled_table_does_not_change_choice(self, grid6):
        table = build_probability_table(grid6)
        vids = sorted(grid6.vertices)
        source, dest = vids[0], vids[-1]
        base = generate_secure_path(grid6, table, source, dest)
        scaled = generate_secure_path(grid6, table.rescaled(7.3), source, dest)
        assert base.vertices == scaled.vertices

    def test_unknown_vertex(self, grid3):
        table = build_probability_table(grid3)
        with pytest.raises(MissingNode):
            generate_secure_path(grid3, table, "ghost", sorted(grid3.vertices)[0])


class TestAudit:
    def test_identity_only_thresholds(self, grid3):
        # zero tolerances leave exactly the path itself
        table = build_probability_table(grid3)
        vids = sorted(grid3.vertices)
        path = generate_secure_path(grid3, table, vids[0], vids[-1])
        report = audit_secure_path(grid3, path, IDENTITY_ONLY)
        assert report.residual_escapes == 1
        assert report.residual_displacement == 0.0
        assert report.path == path

    def test_residuals_match_escape_search(self, grid3):
        from roadescape.escape import DEFAULT_THRESHOLDS, escape_destination_point
        from roadescape.metrics import displacement

        table = build_probability_table(grid3)
        vids = sorted(grid3.vertices)
        path = generate_secure_path(grid3, table, vids[0], vids[-1])
        report = audit_secure_path(grid3, path, DEFAULT_THRESHOLDS, samples=20)
        escapes = generate_escape_paths(grid3, path, DEFAULT_THRESHOLDS, samples=20)
        assert report.residual_escapes == len(escapes)
        intended = escape_destination_point(grid3, path)
        dests = [escape_destination_point(grid3, e) for e in escapes]
        assert report.residual_displacement == displacement(dests, intended)

    def test_json_dict(self, grid3):
        table = build_probability_table(grid3)
        vids = sorted(grid3.vertices)
        path = generate_secure_path(grid3, table, vids[0], vids[-1])
        report = audit_secure_path(grid3, path, IDENTITY_ONLY)
        d = report_json_dict(report)
        assert d["path"]["vertices"] == list(path.vertices)
        assert d["path"]["score"] == path.score
        assert d["residual_escapes"] == 1
        assert d["residual_displacement"] == 0.0


class TestReportShape:
    def test_report_is_frozen(self, grid3):
        table = build_probability_table(grid3)
        vids = sorted(grid3.vertices)
        path = generate_secure_path(grid3, table, vids[0], vids[-1])
        report = SecurePathReport(path, 1, 0.0)
        with pytest.raises(AttributeError):
            report.residual_escapes = 2
