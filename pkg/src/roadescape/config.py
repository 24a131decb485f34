"""Run configuration: one INI file covering every tunable constant.

Unknown sections or keys are rejected rather than ignored; a typo in a
threshold name must not silently fall back to a default.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DegenerateInput, InvalidConfig
from .escape import DEFAULT_CURVATURE_SAMPLES, DEFAULT_THRESHOLDS, ThresholdSet
from .metrics import CoverageParams
from .spoof import DEFAULT_TURN_THRESHOLD_DEG, SpoofSearchParams

_SCHEMA: dict[str, tuple[str, ...]] = {
    "graph": ("osm_path", "cache_path"),
    "search": ("n_paths", "distance_factor", "bbox_padding", "turn_threshold"),
    "thresholds": ("turn_tolerance", "curvature_tolerance", "distance_low", "distance_high"),
    "curvature": ("samples",),
    "coverage": ("walk_radius", "point_count", "seed"),
    "sensors": ("smooth_window",),
    "output": ("output_dir",),
}


@dataclass(frozen=True)
class RunConfig:
    osm_path: Path | None = None
    cache_path: Path | None = None
    params: SpoofSearchParams = field(default_factory=SpoofSearchParams)
    turn_threshold: float = DEFAULT_TURN_THRESHOLD_DEG
    thresholds: ThresholdSet = DEFAULT_THRESHOLDS
    samples: int = DEFAULT_CURVATURE_SAMPLES
    coverage: CoverageParams = field(default_factory=CoverageParams)
    smooth_window: int = 5
    output_dir: Path = Path(".")


def _get(parser, section, key, cast, default):
    if not parser.has_option(section, key):
        return default
    raw = parser.get(section, key)
    try:
        return cast(raw)
    except ValueError as exc:
        raise InvalidConfig(f"{section}.{key}: {exc}") from exc


def _optional_float(raw: str) -> float | None:
    if raw.strip().lower() == "none":
        return None
    return float(raw)


def load_config(path: str | Path | None = None) -> RunConfig:
    """Read an INI config; a missing path yields all defaults."""
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.is_file():
        raise InvalidConfig(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise InvalidConfig(str(exc)) from exc

    for section in parser.sections():
        if section not in _SCHEMA:
            raise InvalidConfig(f"unknown section [{section}]")
        for key in parser.options(section):
            if key not in _SCHEMA[section]:
                raise InvalidConfig(f"unknown key {section}.{key}")

    osm_path = _get(parser, "graph", "osm_path", Path, None)
    cache_path = _get(parser, "graph", "cache_path", Path, None)
    if osm_path is not None:
        osm_path = (path.parent / osm_path).resolve() if not osm_path.is_absolute() else osm_path
        if not osm_path.is_file():
            raise InvalidConfig(f"graph.osm_path does not exist: {osm_path}")
    if cache_path is not None and not cache_path.is_absolute():
        cache_path = (path.parent / cache_path).resolve()

    defaults = RunConfig()
    try:
        params = SpoofSearchParams(
            n_paths=_get(parser, "search", "n_paths", int, defaults.params.n_paths),
            distance_factor=_get(
                parser, "search", "distance_factor", float, defaults.params.distance_factor
            ),
            bbox_padding=_get(
                parser, "search", "bbox_padding", _optional_float, defaults.params.bbox_padding
            ),
        )
        thresholds = ThresholdSet(
            turn_tolerance=_get(
                parser, "thresholds", "turn_tolerance", float, DEFAULT_THRESHOLDS.turn_tolerance
            ),
            curvature_tolerance=_get(
                parser,
                "thresholds",
                "curvature_tolerance",
                float,
                DEFAULT_THRESHOLDS.curvature_tolerance,
            ),
            distance_low=_get(
                parser, "thresholds", "distance_low", float, DEFAULT_THRESHOLDS.distance_low
            ),
            distance_high=_get(
                parser, "thresholds", "distance_high", float, DEFAULT_THRESHOLDS.distance_high
            ),
        )
        coverage = CoverageParams(
            walk_radius=_get(
                parser, "coverage", "walk_radius", float, defaults.coverage.walk_radius
            ),
            point_count=_get(
                parser, "coverage", "point_count", int, defaults.coverage.point_count
            ),
            seed=_get(parser, "coverage", "seed", int, defaults.coverage.seed),
        )
        samples = _get(parser, "curvature", "samples", int, DEFAULT_CURVATURE_SAMPLES)
        if samples < 1:
            raise DegenerateInput("curvature.samples must be >= 1")
        turn_threshold = _get(
            parser, "search", "turn_threshold", float, DEFAULT_TURN_THRESHOLD_DEG
        )
        if turn_threshold < 0:
            raise DegenerateInput("search.turn_threshold must be >= 0")
        smooth_window = _get(parser, "sensors", "smooth_window", int, defaults.smooth_window)
        if smooth_window < 1:
            raise DegenerateInput("sensors.smooth_window must be >= 1")
    except DegenerateInput as exc:
        raise InvalidConfig(str(exc)) from exc

    output_dir = _get(parser, "output", "output_dir", Path, defaults.output_dir)

    return RunConfig(
        osm_path=osm_path,
        cache_path=cache_path,
        params=params,
        turn_threshold=turn_threshold,
        thresholds=thresholds,
        samples=samples,
        coverage=coverage,
        smooth_window=smooth_window,
        output_dir=output_dir,
    )
