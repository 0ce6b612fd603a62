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
from typing import Any, Dict, List

from ...options import ChatterConfigOption
from ...formats.base import BaseHandler

LOGGER = logging.getLogger("chattertda")


class HtmlHandler(BaseHandler):
    def get_options() -> List[ChatterConfigOption]:
        return [
            ChatterConfigOption(
                "html_title",
                ["--html-title"],
                group="output_options",
                metavar="TITLE",
                help="Use TITLE as title for the HTML report. Default is '{default!s}'.",
                default="Chatter classification report",
            ),
        ]

    def write_report(self, context: Dict[str, Any], output_file: str) -> None:
        from .write import write_report

        write_report(context, output_file, self.options)
