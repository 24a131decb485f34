"""Countermeasure: pick the route whose signature is rarest on the map.

The attack ranks candidate routes by how commonly their (curvature, turn)
pairs occur; the defense runs the same filtered search but keeps the path
whose occurrence score is LOWEST, making it hard to find a lookalike. The
chosen path is then audited by running the escape search against itself:
the identity path always remains (count >= 1), anything further is residual
exposure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .escape import (
    DEFAULT_CURVATURE_SAMPLES,
    ThresholdSet,
    escape_destination_point,
    generate_escape_paths,
)
from .graph import ProbabilityTable, RoadGraph
from .metrics import displacement
from .spoof import (
    DEFAULT_TURN_THRESHOLD_DEG,
    PathCandidate,
    SpoofSearchParams,
    _require_vertex,
    _search,
    make_candidate,
)


@dataclass(frozen=True)
class SecurePathReport:
    path: PathCandidate
    residual_escapes: int
    residual_displacement: float


def generate_secure_path(
    graph: RoadGraph,
    table: ProbabilityTable,
    s: str,
    d: str,
    params: SpoofSearchParams = SpoofSearchParams(),
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG,
) -> PathCandidate:
    """Lowest-scoring s→d path under the same distance and box filters as
    the attack search; ties broken by vertex sequence.

    Prefix pruning is off: a low prefix score says nothing about the final
    MINIMUM, so only the distance and box filters bound the search.
    """
    _require_vertex(graph, s)
    _require_vertex(graph, d)
    scored = _search(graph, table, s, d, params, ascending=True, cap=1, prune_by_score=False)
    score, vertices = scored[0]
    return make_candidate(graph, vertices, score, turn_threshold)


def audit_secure_path(
    graph: RoadGraph,
    path: PathCandidate,
    thresholds: ThresholdSet,
    samples: int = DEFAULT_CURVATURE_SAMPLES,
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG,
) -> SecurePathReport:
    """How exposed is a chosen route: count escape paths against it and the
    farthest their destinations stray from the route's own destination."""
    escapes = generate_escape_paths(graph, path, thresholds, samples, turn_threshold)
    intended = escape_destination_point(graph, path)
    destinations = [escape_destination_point(graph, e) for e in escapes]
    return SecurePathReport(
        path=path,
        residual_escapes=len(escapes),
        residual_displacement=displacement(destinations, intended),
    )


def report_json_dict(report: SecurePathReport) -> dict:
    return {
        "path": {
            "vertices": list(report.path.vertices),
            "score": report.path.score,
            "total_distance": report.path.total_distance,
            "turn_count": report.path.turn_count,
        },
        "residual_escapes": report.residual_escapes,
        "residual_displacement": report.residual_displacement,
    }
