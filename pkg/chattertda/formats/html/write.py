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
from typing import Any, Dict

from ...options import Options
from ...utils import open_text_for_writing
from ...version import __version__

LOGGER = logging.getLogger("chattertda")


def templates():
    from jinja2 import Environment, PackageLoader

    return Environment(
        loader=PackageLoader("chattertda.formats.html", "templates"),
        autoescape=True,
        trim_blocks=True,
        lstrip_blocks=True,
    )


def _percent(value) -> str:
    if value is None:
        return "-"
    return f"{100.0 * float(value):.1f}%"


def write_report(context: Dict[str, Any], output_file: str, options: Options) -> None:
    """produce the experiment report page"""

    env = templates()
    env.filters["percent"] = _percent
    css = env.get_template("style.css").render()
    html = env.get_template("report.html").render(
        title=options.html_title,
        version=__version__,
        css=css,
        **context,
    )
    with open_text_for_writing(output_file, "report.html") as fh:
        fh.write(html)
