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

from ...options import ChatterConfigOption, check_positive_int
from ...formats.base import BaseHandler

LOGGER = logging.getLogger("chattertda")


class SvgHandler(BaseHandler):
    def get_options() -> List[ChatterConfigOption]:
        return [
            ChatterConfigOption(
                "svg_cell_size",
                ["--svg-cell-size"],
                group="output_options",
                metavar="PIXELS",
                help="Edge length of one grid cell in the SVG maps. Default is {default!s}.",
                type=check_positive_int,
                default=6,
            ),
        ]

    def write_map(
        self, grid, boundary, output_file: str, misclassified=None, title: str = ""
    ) -> None:
        from .write import write_map

        write_map(
            grid,
            boundary,
            output_file,
            misclassified=misclassified,
            title=title,
            cell_size=self.options.svg_cell_size or 6,
        )
