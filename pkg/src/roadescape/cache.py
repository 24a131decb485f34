"""Versioned binary graph cache keyed by the source file's content hash.

Layout: one JSON header line (format version, tool version, source sha256),
then a pickled RoadGraph. A cache whose version or hash does not match the
input is an error; it is never silently reused or refreshed.
"""

from __future__ import annotations

import hashlib
import json
import pickle
from pathlib import Path

from .errors import CacheMismatch
from .graph import RoadGraph

CACHE_FORMAT_VERSION = 1
_PICKLE_PROTOCOL = 4


def file_sha256(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def tool_version() -> str:
    from . import __version__

    return __version__


def save_graph_cache(graph: RoadGraph, cache_path: str | Path, source_path: str | Path) -> None:
    """Write the graph snapshot. Deterministic: same graph + source, same bytes."""
    header = {
        "format_version": CACHE_FORMAT_VERSION,
        "tool_version": tool_version(),
        "source_sha256": file_sha256(source_path),
    }
    header_line = json.dumps(header, sort_keys=True).encode("utf-8") + b"\n"
    payload = pickle.dumps(graph, protocol=_PICKLE_PROTOCOL)
    with open(cache_path, "wb") as fh:
        fh.write(header_line)
        fh.write(payload)


def load_graph_cache(cache_path: str | Path, source_path: str | Path) -> RoadGraph:
    """Load a snapshot, refusing version or content-hash mismatches."""
    with open(cache_path, "rb") as fh:
        header_line = fh.readline()
        payload = fh.read()
    try:
        header = json.loads(header_line.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CacheMismatch(f"unreadable cache header in {cache_path}") from exc

    if header.get("format_version") != CACHE_FORMAT_VERSION:
        raise CacheMismatch(
            f"cache format version {header.get('format_version')} != {CACHE_FORMAT_VERSION}"
        )
    if header.get("tool_version") != tool_version():
        raise CacheMismatch(
            f"cache written by tool version {header.get('tool_version')}, running {tool_version()}"
        )
    actual_hash = file_sha256(source_path)
    if header.get("source_sha256") != actual_hash:
        raise CacheMismatch("cache source hash does not match the OSM input file")
    try:
        graph = pickle.loads(payload)
    except Exception as exc:
        raise CacheMismatch(f"corrupt cache payload in {cache_path}") from exc
    if not isinstance(graph, RoadGraph):
        raise CacheMismatch("cache payload is not a road graph")
    return graph
