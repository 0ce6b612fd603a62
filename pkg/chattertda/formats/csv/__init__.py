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

import logging
from typing import List

from ...options import ChatterConfigOption
from ...formats.base import BaseHandler

LOGGER = logging.getLogger("chattertda")


class CsvHandler(BaseHandler):
    def get_options() -> List[ChatterConfigOption]:
        return []

    def write_time_series(self, ts, output_file: str) -> None:
        from .write import write_time_series

        write_time_series(ts, output_file)

    def write_point_cloud(self, cloud, output_file: str) -> None:
        from .write import write_point_cloud

        write_point_cloud(cloud, output_file)

    def write_diagrams(self, diagrams, output_file: str) -> None:
        from .write import write_diagrams

        write_diagrams(diagrams, output_file)

    def write_dataset(self, data, output_file: str) -> None:
        from .write import write_dataset

        write_dataset(data, output_file)

    def write_label_grid(self, grid, output_file: str) -> None:
        from .write import write_label_grid

        write_label_grid(grid, output_file)

    def write_votes(self, grid, votes, output_file: str) -> None:
        from .write import write_votes

        write_votes(grid, votes, output_file)

    def write_boundary(self, boundary, output_file: str) -> None:
        from .write import write_boundary

        write_boundary(boundary, output_file)

    def write_misclassified(self, rows, output_file: str) -> None:
        from .write import write_misclassified

        write_misclassified(rows, output_file)

    def write_failures(self, failures, output_file: str) -> None:
        from .write import write_failures

        write_failures(failures, output_file)

    def read_dataset(self, input_file: str):
        from .read import read_dataset

        return read_dataset(input_file)

    def read_label_grid(self, input_file: str):
        from .read import read_label_grid

        return read_label_grid(input_file)

    def read_boundary(self, input_file: str):
        from .read import read_boundary

        return read_boundary(input_file)
