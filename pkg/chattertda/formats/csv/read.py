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
import logging

import numpy as np

from ...classifier import Dataset
from ...features import FEATURE_NAMES
from ...stability_oracle import LabelGrid, LobeBoundary
from .write import DATASET_COLUMNS

LOGGER = logging.getLogger("chattertda")


def _rows(input_file: str):
    with open(input_file, "r", encoding="utf-8", newline="") as fh:
        return list(csv.reader(fh))


def read_dataset(input_file: str) -> Dataset:
    """load a feature matrix written by ``write_dataset``"""

    rows = _rows(input_file)
    if not rows or tuple(rows[0]) != DATASET_COLUMNS:
        raise ValueError(f"{input_file}: unexpected feature file header.")
    body = rows[1:]
    column = {name: k for k, name in enumerate(DATASET_COLUMNS)}
    return Dataset(
        features=[[float(r[column[name]]) for name in FEATURE_NAMES] for r in body],
        labels=[r[column["label"]] == "1" for r in body],
        speed_ratio=[float(r[column["speed_ratio"]]) for r in body],
        b=[float(r[column["b"]]) for r in body],
        grid_index=[(int(r[column["i"]]), int(r[column["j"]])) for r in body],
        status=[r[column["status"]] for r in body],
    )


def read_label_grid(input_file: str) -> LabelGrid:
    rows = _rows(input_file)
    if len(rows) < 2:
        raise ValueError(f"{input_file}: a label grid needs a header and one row.")
    depth_axis = [float(v) for v in rows[0][1:]]
    speed_axis = [float(r[0]) for r in rows[1:]]
    labels = np.array([[v == "1" for v in r[1:]] for r in rows[1:]], dtype=bool)
    return LabelGrid(speed_axis=speed_axis, depth_axis=depth_axis, labels=labels)


def read_boundary(input_file: str) -> LobeBoundary:
    rows = _rows(input_file)
    if not rows or rows[0] != ["speed_ratio", "b_lim"]:
        raise ValueError(f"{input_file}: unexpected boundary file header.")
    return LobeBoundary(
        speed_ratio=[float(r[0]) for r in rows[1:]],
        b_lim=[float(r[1]) for r in rows[1:]],
    )
