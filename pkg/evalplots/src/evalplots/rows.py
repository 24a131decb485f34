"""Strict reader for the evaluation CSV emitted by the route toolkit's
eval command.

The six-column schema is the whole contract between the two packages, so
anything off-schema is rejected up front with the offending line number
instead of leaking into a silently skewed figure.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError

HEADER = ("city", "trial", "route_length_m", "displacement_m", "coverage_percent", "r_prime_m")


@dataclass(frozen=True)
class EvalRow:
    city: str
    trial: int
    route_length_m: float
    displacement_m: float
    coverage_percent: float
    r_prime_m: float


def _non_negative(name: str, text: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise ParseError(f"line {line}: {name} is not a number: {text!r}") from exc
    if not math.isfinite(value) or value < 0.0:
        raise ParseError(f"line {line}: {name} must be finite and non-negative, got {text!r}")
    return value


def read_rows(path: Path | str) -> list[EvalRow]:
    """Parse an evaluation CSV into typed rows.

    The header must equal ``HEADER`` exactly and every data row must carry
    six fields: a city label, an integer trial id, and four finite
    non-negative numbers. A header-only file (an eval run with zero
    trials) yields an empty list; anything else off-schema raises
    ParseError. The file is only ever read.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file, expected the eval CSV header") from None
        if tuple(header) != HEADER:
            raise ParseError(
                f"header mismatch: expected {','.join(HEADER)!r}, got {','.join(header)!r}"
            )
        rows: list[EvalRow] = []
        for line, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(HEADER):
                raise ParseError(f"line {line}: expected {len(HEADER)} fields, got {len(record)}")
            try:
                trial = int(record[1])
            except ValueError as exc:
                raise ParseError(f"line {line}: trial is not an integer: {record[1]!r}") from exc
            if trial < 0:
                raise ParseError(f"line {line}: trial must be non-negative, got {trial}")
            rows.append(
                EvalRow(
                    city=record[0],
                    trial=trial,
                    route_length_m=_non_negative("route_length_m", record[2], line),
                    displacement_m=_non_negative("displacement_m", record[3], line),
                    coverage_percent=_non_negative("coverage_percent", record[4], line),
                    r_prime_m=_non_negative("r_prime_m", record[5], line),
                )
            )
        return rows
