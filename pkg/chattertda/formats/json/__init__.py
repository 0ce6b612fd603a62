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
from typing import Any, List

from ...options import ChatterConfigOption
from ...formats.base import BaseHandler

LOGGER = logging.getLogger("chattertda")


class JsonHandler(BaseHandler):
    def get_options() -> List[ChatterConfigOption]:
        return [
            ChatterConfigOption(
                "json_pretty",
                ["--json-pretty"],
                group="output_options",
                help="Pretty-print the JSON documents.",
                action="store_true",
            ),
        ]

    def write_document(self, data: Any, output_file: str) -> None:
        from .write import write_document

        write_document(data, output_file, self.options)

    def read_document(self, input_file: str) -> Any:
        from .read import read_document

        return read_document(input_file)
