"""Road-network route spoofing, escape-route search, and coverage analysis.

The attack model: a vehicle reports a fake GPS route (the spoofed path)
while physically driving an escape path whose inertial signature (leg
distances, turn angles, per-leg curvature) stays within sensor-noise
thresholds of the reported one. This package builds road graphs from OSM
XML, searches for both path kinds, derives the noise thresholds from IMU
traces, quantifies attacker impact (displacement, Monte-Carlo coverage),
and picks rare-signature secure routes as a countermeasure.
"""

__version__ = "0.1.0"

from .errors import (
    CacheMismatch,
    DegenerateInput,
    DegenerateRadius,
    EmptyDistribution,
    EmptyGraph,
    EmptyInput,
    InvalidConfig,
    LengthMismatch,
    MissingNode,
    NonPositiveActual,
    NoPath,
    OutOfRange,
    ParseError,
    ToolkitError,
)
from .geo import (
    EARTH_RADIUS_M,
    BoundingBox,
    GeoPoint,
    Polyline,
    destination_point,
    geo_distance,
    initial_bearing,
    polyline_length,
    segment_curvature,
    turn_angle,
    wrap_signed,
    wrap_unsigned,
)
from .graph import (
    AtomicSegment,
    Connection,
    ProbabilityTable,
    RoadGraph,
    build_graph,
    build_probability_table,
    make_segment,
    nearest_vertex,
    round_degrees,
)
from .osm import OsmNode, OsmWay, parse_osm
from .cache import load_graph_cache, save_graph_cache
from .spoof import (
    DEFAULT_TURN_THRESHOLD_DEG,
    PathCandidate,
    SpoofSearchParams,
    generate_spoofed_paths,
    path_score,
    shortest_time_path,
)
from .escape import (
    DEFAULT_CURVATURE_SAMPLES,
    DEFAULT_THRESHOLDS,
    LOW_NOISE_THRESHOLDS,
    MIN_LEG_LENGTH_M,
    PathSignature,
    ThresholdSet,
    curvature_similarity,
    escape_destination_point,
    generate_escape_paths,
    path_signature,
    signature_within,
)
from .sensors import (
    ErrorDistributions,
    ImuTrace,
    dead_reckon_distances,
    derive_thresholds,
    distance_error_ratios,
    integrate_turns,
    moving_average,
    read_annotations_csv,
    read_trace_csv,
    turn_errors,
)
from .metrics import (
    CoverageParams,
    CoverageResult,
    coverage_radius_sweep,
    displacement,
    monte_carlo_coverage,
)
from .secure import SecurePathReport, audit_secure_path, generate_secure_path
from .config import RunConfig, load_config

__all__ = [
    "__version__",
    # errors
    "ToolkitError",
    "CacheMismatch",
    "DegenerateInput",
    "DegenerateRadius",
    "EmptyDistribution",
    "EmptyGraph",
    "EmptyInput",
    "InvalidConfig",
    "LengthMismatch",
    "MissingNode",
    "NonPositiveActual",
    "NoPath",
    "OutOfRange",
    "ParseError",
    # geometry
    "EARTH_RADIUS_M",
    "BoundingBox",
    "GeoPoint",
    "Polyline",
    "destination_point",
    "geo_distance",
    "initial_bearing",
    "polyline_length",
    "segment_curvature",
    "turn_angle",
    "wrap_signed",
    "wrap_unsigned",
    # graph
    "AtomicSegment",
    "Connection",
    "ProbabilityTable",
    "RoadGraph",
    "build_graph",
    "build_probability_table",
    "make_segment",
    "nearest_vertex",
    "round_degrees",
    "OsmNode",
    "OsmWay",
    "parse_osm",
    "load_graph_cache",
    "save_graph_cache",
    # spoofed paths
    "DEFAULT_TURN_THRESHOLD_DEG",
    "PathCandidate",
    "SpoofSearchParams",
    "generate_spoofed_paths",
    "path_score",
    "shortest_time_path",
    # escape paths
    "DEFAULT_CURVATURE_SAMPLES",
    "DEFAULT_THRESHOLDS",
    "LOW_NOISE_THRESHOLDS",
    "MIN_LEG_LENGTH_M",
    "PathSignature",
    "ThresholdSet",
    "curvature_similarity",
    "escape_destination_point",
    "generate_escape_paths",
    "path_signature",
    "signature_within",
    # sensors
    "ErrorDistributions",
    "ImuTrace",
    "dead_reckon_distances",
    "derive_thresholds",
    "distance_error_ratios",
    "integrate_turns",
    "moving_average",
    "read_annotations_csv",
    "read_trace_csv",
    "turn_errors",
    # metrics
    "CoverageParams",
    "CoverageResult",
    "coverage_radius_sweep",
    "displacement",
    "monte_carlo_coverage",
    # countermeasure
    "SecurePathReport",
    "audit_secure_path",
    "generate_secure_path",
    # config
    "RunConfig",
    "load_config",
]
