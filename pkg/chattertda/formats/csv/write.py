# -*- coding:utf-8 -*-

#  ************************** Copyrights and license ***************************
#
# This file is part of chattertda 1.0+master, a topological chatter classifier
# for simulated turning processes.
#
# _____________________________________________________________________________
#
# Copyright (c) 2023 the chattertda authors
#
# This software is distributed under the 3-clause BSD License.
# For more information, see the README.rst file.
#
# ****************************************************************************

import csv
from typing import Iterable, Sequence

from ...classifier import Dataset
from ...embedding import PointCloud
from ...features import FEATURE_NAMES
from ...persistence import PersistenceDiagram
from ...stability_oracle import LabelGrid, LobeBoundary
from ...turning_models import TimeSeries
from ...utils import format_float, open_text_for_writing

DATASET_COLUMNS = ("i", "j", "speed_ratio", "b", *FEATURE_NAMES, "label", "status")
GRID_CORNER = "speed_ratio\\b"
MISCLASSIFIED_COLUMNS = (
    "i",
    "j",
    "speed_ratio",
    "b",
    "label",
    "predicted",
    "distance_b",
    "distance_cells",
)
FAILURE_COLUMNS = (
    "i",
    "j",
    "delta",
    "realization",
    "speed_ratio",
    "b",
    "status",
    "message",
)


def write_time_series(ts: TimeSeries, output_file: str) -> None:
    """produce a two column csv of the sampled signal"""

    with open_text_for_writing(output_file, "series.csv", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("t", "y"))
        for t, y in zip(ts.times.tolist(), ts.values.tolist()):
            writer.writerow((format_float(t), format_float(y)))


def write_point_cloud(cloud: PointCloud, output_file: str) -> None:
    with open_text_for_writing(output_file, "cloud.csv", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{k}" for k in range(cloud.dimension)])
        for point in cloud.points.tolist():
            writer.writerow([format_float(x) for x in point])


def write_diagrams(diagrams: Iterable[PersistenceDiagram], output_file: str) -> None:
    with open_text_for_writing(output_file, "diagrams.csv", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("dim", "birth", "death"))
        for pd in diagrams:
            for birth, death in pd.sorted_pairs().tolist():
                writer.writerow((pd.dim, format_float(birth), format_float(death)))


def write_dataset(data: Dataset, output_file: str) -> None:
    """produce the feature matrix, one row per grid point"""

    with open_text_for_writing(output_file, "features.csv", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(DATASET_COLUMNS)
        for n in range(len(data)):
            i, j = data.grid_index[n].tolist()
            writer.writerow(
                [
                    i,
                    j,
                    format_float(data.speed_ratio[n]),
                    format_float(data.b[n]),
                    *[format_float(x) for x in data.features[n].tolist()],
                    int(data.labels[n]),
                    data.status[n],
                ]
            )


def _write_matrix(
    speed_axis: Sequence[float],
    depth_axis: Sequence[float],
    rows,
    output_file: str,
    default_filename: str,
) -> None:
    with open_text_for_writing(output_file, default_filename, newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([GRID_CORNER, *[format_float(b) for b in depth_axis]])
        for speed, row in zip(speed_axis, rows):
            writer.writerow([format_float(speed), *row])


def write_label_grid(grid: LabelGrid, output_file: str) -> None:
    """produce the label matrix, speeds down the first column, depths along the first row"""

    _write_matrix(
        grid.speed_axis.tolist(),
        grid.depth_axis.tolist(),
        [[int(v) for v in row] for row in grid.labels.tolist()],
        output_file,
        "labels.csv",
    )


def write_votes(grid: LabelGrid, votes, output_file: str) -> None:
    _write_matrix(
        grid.speed_axis.tolist(),
        grid.depth_axis.tolist(),
        [[format_float(v) for v in row] for row in votes.tolist()],
        output_file,
        "votes.csv",
    )


def write_boundary(boundary: LobeBoundary, output_file: str) -> None:
    with open_text_for_writing(output_file, "boundary.csv", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("speed_ratio", "b_lim"))
        for speed, b_lim in boundary.samples:
            writer.writerow((format_float(speed), format_float(b_lim)))


def write_misclassified(rows: Iterable[dict], output_file: str) -> None:
    with open_text_for_writing(output_file, "misclassified.csv", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(MISCLASSIFIED_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row["i"],
                    row["j"],
                    format_float(row["speed_ratio"]),
                    format_float(row["b"]),
                    int(row["label"]),
                    int(row["predicted"]),
                    format_float(row["distance_b"]),
                    format_float(row["distance_cells"]),
                ]
            )


def write_failures(failures: Iterable[dict], output_file: str) -> None:
    with open_text_for_writing(output_file, "failures.csv", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(FAILURE_COLUMNS)
        for failure in failures:
            delta = failure.get("delta")
            realization = failure.get("realization")
            writer.writerow(
                [
                    failure["i"],
                    failure["j"],
                    "" if delta is None else format_float(delta),
                    "" if realization is None else realization,
                    format_float(failure["speed_ratio"]),
                    format_float(failure["b"]),
                    failure["status"],
                    failure["message"],
                ]
            )
