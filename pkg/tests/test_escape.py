import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import graph_from_points, random_road_graph
from roadescape.errors import DegenerateInput
from roadescape.escape import (
    DEFAULT_THRESHOLDS,
    LOW_NOISE_THRESHOLDS,
    PathSignature,
    ThresholdSet,
    curvature_curve,
    curvature_similarity,
    escape_destination_point,
    generate_escape_paths,
    path_signature,
    signature_within,
)
from roadescape.spoof import PathCandidate, path_driven_distance


def jog_graph():
    """Straight run with an 8 m sideways jog; exercises short-leg merging."""
    pts = {
        "a": (0, 0),
        "b": (100, 0),
        "c": (100, 8),
        "d": (200, 8),
        "e": (300, 8),
    }
    return graph_from_points(pts, [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")])


class TestThresholdSet:
    def test_shipped_values(self):
        assert DEFAULT_THRESHOLDS == ThresholdSet(5.5, 2.8, 0.2, 3.3)
        assert LOW_NOISE_THRESHOLDS == ThresholdSet(1.4, 0.2, 0.6, 1.6)

    def test_rejects_negative_tolerance(self):
        with pytest.raises(DegenerateInput):
            ThresholdSet(-1.0, 0.2, 0.5, 2.0)

    def test_window_must_straddle_one(self):
        with pytest.raises(DegenerateInput):
            ThresholdSet(1.0, 1.0, 1.1, 2.0)
        with pytest.raises(DegenerateInput):
            ThresholdSet(1.0, 1.0, 0.5, 0.9)
        with pytest.raises(DegenerateInput):
            ThresholdSet(1.0, 1.0, 0.0, 2.0)


class TestPathSignature:
    def test_straight_run_single_leg(self, grid3):
        vids = sorted(grid3.vertices)
        source = vids[0]
        straight = [
            c.to_id for c in grid3.out_edges(source) if abs(c.turn_angle) <= 30
        ]
        assert len(straight) == 1
        sig = path_signature(grid3, (source, straight[0]))
        assert sig.turn_count == 0
        assert sig.turn_angles == ()
        want = grid3.segment(source).length + grid3.segment(straight[0]).length
        assert sig.leg_distances[0] == pytest.approx(want, rel=1e-12)

    def test_turn_splits_legs(self, grid3):
        vids = sorted(grid3.vertices)
        source = vids[0]
        turning = [c for c in grid3.out_edges(source) if abs(c.turn_angle) > 30]
        conn = turning[0]
        sig = path_signature(grid3, (source, conn.to_id))
        assert sig.turn_count == 1
        assert sig.turn_angles[0] == pytest.approx(conn.turn_angle)
        assert len(sig.leg_distances) == 2

    def test_short_leg_merges_into_previous(self):
        g = jog_graph()
        sig = path_signature(g, ("a-b:f", "b-c:f", "c-d:f"))
        # pre-merge legs 100 / 8 / 100 with turns -90, +90; the 8 m leg folds
        # backward and drops the turn between the merged pair
        assert sig.turn_count == 1
        assert sig.turn_angles[0] == pytest.approx(90.0, abs=0.05)
        assert sig.leg_distances[0] == pytest.approx(108.0, abs=0.1)
        assert sig.leg_distances[1] == pytest.approx(100.0, abs=0.1)

    def test_short_head_leg_merges_forward(self):
        pts = {"a": (0, 0), "b": (8, 0), "c": (8, 100), "d": (8, 200)}
        g = graph_from_points(pts, [("a", "b"), ("b", "c"), ("c", "d")])
        sig = path_signature(g, ("a-b:f", "b-c:f", "c-d:f"))
        assert sig.turn_count == 0
        assert sig.leg_distances[0] == pytest.approx(208.0, abs=0.1)

    def test_bearings_concatenate_in_travel_order(self, grid3):
        vids = sorted(grid3.vertices)
        source = vids[0]
        straight = [c.to_id for c in grid3.out_edges(source) if abs(c.turn_angle) <= 30][0]
        sig = path_signature(grid3, (source, straight))
        want = oracles.bearings_ref(
            oracles.geometry_latlon(grid3, source)
        ) + oracles.bearings_ref(oracles.geometry_latlon(grid3, straight))
        assert list(sig.leg_bearings[0]) == pytest.approx(want, abs=1e-9)

    def test_accepts_candidate_and_tuple(self, grid3):
        vids = sorted(grid3.vertices)
        source = vids[0]
        cand = PathCandidate((source,), 1.0, 0.0, 0)
        assert path_signature(grid3, cand) == path_signature(grid3, (source,))

    def test_disconnected_pair_rejected(self, grid3):
        vids = sorted(grid3.vertices)
        with pytest.raises(DegenerateInput):
            path_signature(grid3, (vids[0], vids[-1]))

    @pytest.mark.parametrize("seed", [0, 2, 5])
    def test_matches_reference_everywhere(self, seed):
        g = random_road_graph(seed)
        source = sorted(g.vertices)[0]
        for p in oracles.all_simple_paths(g, source):
            legs_ref, turns_ref = oracles.signature_ref(g, p, 30.0)
            sig = path_signature(g, p)
            assert sig.turn_count == len(turns_ref)
            assert list(sig.turn_angles) == pytest.approx(turns_ref, abs=1e-9)
            assert list(sig.leg_distances) == pytest.approx(
                [d for d, _ in legs_ref], rel=1e-9
            )
            for got_b, (_, want_b) in zip(sig.leg_bearings, legs_ref):
                assert list(got_b) == pytest.approx(want_b, abs=1e-9)

    def test_validation(self):
        with pytest.raises(DegenerateInput):
            PathSignature((100.0,), ((0.0,),), (90.0,), 1)  # missing second leg
        with pytest.raises(DegenerateInput):
            PathSignature((100.0, -5.0), ((0.0,), (0.0,)), (90.0,), 1)


class TestCurvatureProfiles:
    def test_supersampled_straight_ramp_matches(self):
        assert curvature_similarity([0.0, 90.0], [0.0, 45.0, 90.0], samples=5) == pytest.approx(0.0, abs=1e-12)

    def test_early_vs_late_turn(self):
        got = curvature_similarity([0.0, 90.0, 90.0], [0.0, 45.0, 90.0], samples=5)
        assert got == pytest.approx(45.0, abs=1e-12)

    def test_constant_offset_is_ignored(self):
        assert curvature_similarity([10.0, 100.0, 100.0], [0.0, 90.0, 90.0], samples=7) == pytest.approx(0.0, abs=1e-12)

    def test_wraparound_bearings_unwrap(self):
        # 350 -> 10 is a 20-degree right swing, not a 340-degree left one
        assert curvature_similarity([350.0, 10.0], [170.0, 190.0], samples=4) == pytest.approx(0.0, abs=1e-12)

    def test_single_bearing_profile_is_flat(self):
        profile = curvature_curve([42.0], samples=6)
        assert np.all(profile == 0.0)

    def test_empty_rejected(self):
        with pytest.raises(DegenerateInput):
            curvature_curve([], samples=5)
        with pytest.raises(DegenerateInput):
            curvature_curve([1.0], samples=0)

    @settings(max_examples=150, deadline=None)
    @given(
        a=st.lists(st.floats(min_value=-700, max_value=700), min_size=1, max_size=10),
        b=st.lists(st.floats(min_value=-700, max_value=700), min_size=1, max_size=10),
        n=st.integers(min_value=2, max_value=40),
    )
    def test_matches_reference(self, a, b, n):
        got = curvature_similarity(a, b, samples=n)
        want = oracles.curvature_similarity_ref(a, b, n)
        assert got == pytest.approx(want, abs=1e-9)


def make_sig(distances, turns, bearings=None):
    if bearings is None:
        bearings = tuple((0.0,) for _ in distances)
    return PathSignature(tuple(distances), tuple(bearings), tuple(turns), len(turns))


class TestSignatureWithin:
    def test_identity(self):
        sig = make_sig((100.0, 50.0), (90.0,))
        assert signature_within(sig, sig, DEFAULT_THRESHOLDS)

    def test_turn_count_mismatch(self):
        assert not signature_within(
            make_sig((100.0, 50.0), (90.0,)), make_sig((150.0,), ()), DEFAULT_THRESHOLDS
        )

    def test_turn_tolerance_boundary(self):
        ref = make_sig((100.0, 50.0), (90.0,))
        assert signature_within(ref, make_sig((100.0, 50.0), (95.4,)), DEFAULT_THRESHOLDS)
        assert not signature_within(ref, make_sig((100.0, 50.0), (95.6,)), DEFAULT_THRESHOLDS)

    def test_turn_gap_wraps(self):
        ref = make_sig((100.0, 50.0), (175.0,))
        cand = make_sig((100.0, 50.0), (-175.0,))
        wide = ThresholdSet(12.0, 2.8, 0.2, 3.3)
        narrow = ThresholdSet(8.0, 2.8, 0.2, 3.3)
        assert signature_within(ref, cand, wide)
        assert not signature_within(ref, cand, narrow)

    def test_distance_window(self):
        ref = make_sig((100.0,), ())
        assert signature_within(ref, make_sig((20.0,), ()), DEFAULT_THRESHOLDS)
        assert not signature_within(ref, make_sig((19.9,), ()), DEFAULT_THRESHOLDS)
        assert signature_within(ref, make_sig((330.0,), ()), DEFAULT_THRESHOLDS)
        assert not signature_within(ref, make_sig((330.1,), ()), DEFAULT_THRESHOLDS)

    def test_curvature_gate(self):
        ref = make_sig((100.0,), (), bearings=((0.0, 0.0),))
        hot = make_sig((100.0,), (), bearings=((0.0, 3.0),))
        mild = make_sig((100.0,), (), bearings=((0.0, 2.5),))
        assert not signature_within(ref, hot, DEFAULT_THRESHOLDS)
        assert signature_within(ref, mild, DEFAULT_THRESHOLDS)


class TestEscapeSearch:
    def straightest_successor(self, graph, source):
        return [c.to_id for c in graph.out_edges(source) if abs(c.turn_angle) <= 30][0]

    def test_grid_straight_run_exact_set(self, grid3):
        source = sorted(grid3.vertices)[0]
        nxt = self.straightest_successor(grid3, source)
        got = generate_escape_paths(grid3, (source, nxt))
        assert {c.vertices for c in got} == {(source,), (source, nxt)}

    def test_identity_always_included(self, grid6):
        source = sorted(grid6.vertices)[0]
        nxt = self.straightest_successor(grid6, source)
        spoofed = (source, nxt)
        got = generate_escape_paths(grid6, spoofed)
        assert spoofed in {c.vertices for c in got}

    def test_scores_and_summaries(self, grid3):
        source = sorted(grid3.vertices)[0]
        nxt = self.straightest_successor(grid3, source)
        got = generate_escape_paths(grid3, (source, nxt))
        assert [c.vertices for c in got] == sorted(c.vertices for c in got)
        for cand in got:
            assert cand.score == 1.0
            assert cand.total_distance == pytest.approx(
                path_driven_distance(grid3, cand.vertices), rel=1e-12
            )

    @pytest.mark.parametrize("seed", range(6))
    def test_matches_brute_force(self, seed):
        g = random_road_graph(seed)
        source = sorted(g.vertices)[0]
        routes = oracles.all_simple_paths(g, source)
        # a mid-length reference keeps the search non-trivial
        routes.sort(key=lambda p: (len(p), tuple(p)))
        spoofed = tuple(routes[len(routes) // 2])
        got = [c.vertices for c in generate_escape_paths(g, spoofed, samples=10)]
        want = [tuple(p) for p in oracles.escape_set_ref(
            g, spoofed, DEFAULT_THRESHOLDS, 10, 30.0
        )]
        assert got == want
        assert spoofed in set(got)

    @pytest.mark.parametrize("seed", [1, 3])
    def test_low_noise_is_subset_of_default(self, seed):
        g = random_road_graph(seed)
        source = sorted(g.vertices)[0]
        routes = oracles.all_simple_paths(g, source)
        routes.sort(key=lambda p: (len(p), tuple(p)))
        spoofed = tuple(routes[len(routes) // 2])
        wide = {c.vertices for c in generate_escape_paths(g, spoofed, samples=10)}
        tight = {
            c.vertices
            for c in generate_escape_paths(g, spoofed, LOW_NOISE_THRESHOLDS, samples=10)
        }
        assert tight <= wide
        assert spoofed in tight

    def test_merge_aware_search_matches_brute_force(self):
        # the jog graph plants sub-10 m legs in both the reference and the
        # candidates, forcing the conservative pruning mode
        g = jog_graph()
        spoofed = ("a-b:f", "b-c:f", "c-d:f")
        got = [c.vertices for c in generate_escape_paths(g, spoofed, samples=10)]
        want = [tuple(p) for p in oracles.escape_set_ref(
            g, spoofed, DEFAULT_THRESHOLDS, 10, 30.0
        )]
        assert got == want
        assert spoofed in set(got)

    def test_longer_tail_within_window_is_valid(self):
        g = jog_graph()
        spoofed = ("a-b:f", "b-c:f", "c-d:f")
        got = {c.vertices for c in generate_escape_paths(g, spoofed)}
        # extending the final 100 m leg to 200 m stays inside the 3.3x window
        assert ("a-b:f", "b-c:f", "c-d:f", "d-e:f") in got

    def test_turn_count_in_results_is_raw(self):
        g = jog_graph()
        spoofed = ("a-b:f", "b-c:f", "c-d:f")
        by_vertices = {
            c.vertices: c for c in generate_escape_paths(g, spoofed)
        }
        # raw connection turns, before any merging: the jog contributes two
        assert by_vertices[spoofed].turn_count == 2


class TestDestinationPoint:
    def test_end_of_last_segment(self, grid3):
        vids = sorted(grid3.vertices)
        cand = PathCandidate((vids[0],), 1.0, 0.0, 0)
        assert escape_destination_point(grid3, cand) == grid3.segment(vids[0]).end
