"""Shared fixtures: CSV writers and a canned two-city, three-radius
evaluation dataset with hand-checkable statistics."""

import csv

import pytest

from evalplots.rows import HEADER, EvalRow

# (city, trial, route_length_m, displacement_m, coverage_percent, r_prime_m)
# Coverage rises with radius within each city, and route lengths stay well
# clear of the 5-bin edges used by the oracle tests.
FIXTURE_ROWS = [
    ("gridville", 0, 123.4, 210.0, 4.25, 50.0),
    ("gridville", 1, 257.9, 880.5, 6.75, 50.0),
    ("gridville", 2, 341.2, 355.25, 5.5, 50.0),
    ("gridville", 3, 412.8, 1290.75, 9.25, 100.0),
    ("gridville", 4, 488.1, 640.0, 11.5, 100.0),
    ("gridville", 5, 555.5, 2105.5, 10.0, 100.0),
    ("gridville", 6, 629.3, 3304.25, 18.75, 200.0),
    ("gridville", 7, 704.6, 150.125, 16.25, 200.0),
    ("gridville", 8, 781.9, 990.625, 20.5, 200.0),
    ("riverton", 0, 141.7, 95.5, 3.25, 50.0),
    ("riverton", 1, 233.0, 425.75, 2.75, 50.0),
    ("riverton", 2, 318.6, 1501.25, 4.0, 50.0),
    ("riverton", 3, 399.9, 777.125, 8.5, 100.0),
    ("riverton", 4, 473.2, 1888.0, 7.25, 100.0),
    ("riverton", 5, 541.8, 60.25, 9.75, 100.0),
    ("riverton", 6, 612.4, 2750.5, 15.25, 200.0),
    ("riverton", 7, 688.0, 505.375, 14.0, 200.0),
    ("riverton", 8, 766.3, 3999.875, 17.5, 200.0),
]


def eval_rows(raw):
    return [
        EvalRow(city, trial, float(length), float(disp), float(cov), float(radius))
        for city, trial, length, disp, cov, radius in raw
    ]


@pytest.fixture
def write_csv(tmp_path):
    def _write(rows, name="eval.csv", header=None):
        path = tmp_path / name
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(list(HEADER) if header is None else header)
            writer.writerows(rows)
        return path

    return _write


@pytest.fixture
def fixture_csv(write_csv):
    return write_csv(FIXTURE_ROWS)


@pytest.fixture
def out_dir(tmp_path):
    directory = tmp_path / "figs"
    directory.mkdir()
    return directory
