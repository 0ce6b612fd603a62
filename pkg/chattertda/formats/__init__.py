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

from ..options import ChatterConfigOption

from .csv import CsvHandler
from .html import HtmlHandler
from .json import JsonHandler
from .svg import SvgHandler

LOGGER = logging.getLogger("chattertda")


def get_options() -> List[ChatterConfigOption]:
    return [
        o
        for o in [
            *CsvHandler.get_options(),
            *HtmlHandler.get_options(),
            *JsonHandler.get_options(),
            *SvgHandler.get_options(),
        ]
        if not isinstance(o, str)
    ]
