"""Streaming parser for OpenStreetMap XML extracts.

Only the XML flavor is supported (no PBF). Elements are processed one at a
time and released, so document size is bounded by the node table, not the
file. Tags are kept verbatim for every node and way; downstream consumers
pick what they need (highway/oneway for the graph, building for sampling).
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from io import BytesIO
from pathlib import Path
from typing import BinaryIO

from .errors import MissingNode, ParseError


@dataclass(frozen=True)
class OsmNode:
    id: str
    lat: float
    lon: float
    tags: dict[str, str]


@dataclass(frozen=True)
class OsmWay:
    id: str
    node_refs: tuple[str, ...]
    tags: dict[str, str]


def _element_tags(elem: ET.Element) -> dict[str, str]:
    return {t.attrib["k"]: t.attrib["v"] for t in elem.findall("tag")}


def parse_osm(source: str | Path | bytes | BinaryIO) -> tuple[dict[str, OsmNode], list[OsmWay]]:
    """Parse an OSM XML document into node and way tables.

    Args:
        source: file path, raw bytes, or a binary file object.

    Returns:
        (nodes keyed by id, ways in document order).

    Raises:
        ParseError: malformed XML, with line/column from the parser.
        MissingNode: a way references a node id absent from the document.
    """
    if isinstance(source, (str, Path)):
        stream: BinaryIO = open(source, "rb")
        owns = True
    elif isinstance(source, bytes):
        stream = BytesIO(source)
        owns = True
    else:
        stream = source
        owns = False

    nodes: dict[str, OsmNode] = {}
    ways: list[OsmWay] = []
    try:
        for _, elem in ET.iterparse(stream, events=("end",)):
            if elem.tag == "node":
                attrib = elem.attrib
                try:
                    node = OsmNode(
                        id=attrib["id"],
                        lat=float(attrib["lat"]),
                        lon=float(attrib["lon"]),
                        tags=_element_tags(elem),
                    )
                except (KeyError, ValueError) as exc:
                    raise ParseError(f"node element missing or bad attribute: {exc}") from exc
                nodes[node.id] = node
                elem.clear()
            elif elem.tag == "way":
                try:
                    way = OsmWay(
                        id=elem.attrib["id"],
                        node_refs=tuple(nd.attrib["ref"] for nd in elem.findall("nd")),
                        tags=_element_tags(elem),
                    )
                except KeyError as exc:
                    raise ParseError(f"way element missing attribute: {exc}") from exc
                ways.append(way)
                elem.clear()
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ParseError(f"malformed OSM XML: {exc.msg if hasattr(exc, 'msg') else exc}", line, column) from exc
    finally:
        if owns:
            stream.close()

    for way in ways:
        for ref in way.node_refs:
            if ref not in nodes:
                raise MissingNode(f"way {way.id} references absent node {ref}")
    return nodes, ways
