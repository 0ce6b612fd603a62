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

import functools
import json
import logging
from typing import Any

from ...options import Options
from ...utils import open_text_for_writing

LOGGER = logging.getLogger("chattertda")

PRETTY_JSON_INDENT = 4


def _write_json_result(data, output_file, default_filename, pretty):
    r"""helper utility to output json format dictionary to a file/STDOUT"""
    write_json = json.dump

    if pretty:
        write_json = functools.partial(
            write_json,
            indent=PRETTY_JSON_INDENT,
            separators=(",", ": "),
            sort_keys=True,
        )
    else:
        write_json = functools.partial(write_json, sort_keys=True)

    with open_text_for_writing(output_file, default_filename) as fh:
        write_json(data, fh, allow_nan=False)
        if pretty:
            fh.write("\n")


def write_document(data: Any, output_file: str, options: Options) -> None:
    _write_json_result(data, output_file, "result.json", bool(options.json_pretty))
