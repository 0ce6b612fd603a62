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

from __future__ import annotations
from typing import Optional

from lxml import etree
import numpy as np

from ...stability_oracle import LabelGrid, LobeBoundary
from ...utils import open_binary_for_writing
from ...version import __version__

SVG_NS = "http://www.w3.org/2000/svg"

MARGIN_LEFT = 64
MARGIN_TOP = 32
MARGIN_BOTTOM = 44
LEGEND_WIDTH = 150

COLORS = {
    "stable": "#3a6ea5",
    "chatter": "#e39b2d",
    "misclassified": "#1b1b1b",
}
BOUNDARY_COLOR = "#8c8c8c"


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _element(parent, tag: str, text: Optional[str] = None, **attrs):
    element = etree.SubElement(parent, f"{{{SVG_NS}}}{tag}")
    for key in sorted(attrs):
        element.set(key.replace("_", "-"), str(attrs[key]))
    if text is not None:
        element.text = text
    return element


def _axis_position(values: np.ndarray, value, cells: int):
    """Continuous cell coordinate of ``value``, cell k is centred at k + 0.5."""
    if values.size < 2:
        return np.full(np.shape(value), 0.5)
    scale = (cells - 1) / (values[-1] - values[0])
    return (np.asarray(value, dtype=float) - values[0]) * scale + 0.5


def _boundary_points(grid: LabelGrid, boundary: LobeBoundary, cell_size: int):
    speeds = grid.speed_axis
    inside = (boundary.speed_ratio > speeds[0]) & (boundary.speed_ratio < speeds[-1])
    curve_speed = np.concatenate(
        [[speeds[0]], boundary.speed_ratio[inside], [speeds[-1]]]
    )
    curve_b = boundary.b_lim_at(curve_speed)
    width, height = grid.shape
    x = MARGIN_LEFT + _axis_position(speeds, curve_speed, width) * cell_size
    row = _axis_position(grid.depth_axis, curve_b, height)
    y = MARGIN_TOP + (height - np.clip(row, 0.0, height)) * cell_size
    return " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(x.tolist(), y.tolist()))


def render_map(
    grid: LabelGrid,
    boundary: LobeBoundary,
    misclassified: Optional[np.ndarray] = None,
    title: str = "",
    cell_size: int = 6,
) -> bytes:
    """Render a label grid as an SVG raster with the stability boundary on top.

    Cells listed in ``misclassified`` (same shape as the labels) are drawn in
    their own color. Identical inputs give identical bytes.
    """
    width, height = grid.shape
    plot_width = width * cell_size
    plot_height = height * cell_size
    total_width = MARGIN_LEFT + plot_width + LEGEND_WIDTH
    total_height = MARGIN_TOP + plot_height + MARGIN_BOTTOM
    if misclassified is None:
        misclassified = np.zeros(grid.shape, dtype=bool)
    misclassified = np.asarray(misclassified, dtype=bool)

    root = etree.Element(f"{{{SVG_NS}}}svg", nsmap={None: SVG_NS})
    root.set("version", "1.1")
    root.set("width", str(total_width))
    root.set("height", str(total_height))
    root.set("viewBox", f"0 0 {total_width} {total_height}")
    _element(root, "desc", text=f"chattertda {__version__} stability map")
    _element(
        root,
        "rect",
        **{"class": "background"},
        x=0,
        y=0,
        width=total_width,
        height=total_height,
        fill="#ffffff",
    )
    if title:
        _element(root, "text", text=title, x=MARGIN_LEFT, y=20, font_size=14)

    cells = _element(root, "g", id="cells")
    for i in range(width):
        for j in range(height):
            if misclassified[i, j]:
                kind = "misclassified"
            elif grid.labels[i, j]:
                kind = "chatter"
            else:
                kind = "stable"
            _element(
                cells,
                "rect",
                **{"class": f"cell {kind}"},
                x=MARGIN_LEFT + i * cell_size,
                y=MARGIN_TOP + (height - 1 - j) * cell_size,
                width=cell_size,
                height=cell_size,
                fill=COLORS[kind],
            )

    _element(
        root,
        "polyline",
        id="boundary",
        points=_boundary_points(grid, boundary, cell_size),
        fill="none",
        stroke=BOUNDARY_COLOR,
        stroke_width=2,
    )

    axis_y = MARGIN_TOP + plot_height
    labels = _element(root, "g", id="axes", font_size=11)
    _element(labels, "text", text=f"{grid.speed_axis[0]:.3g}", x=MARGIN_LEFT, y=axis_y + 14)
    _element(
        labels,
        "text",
        text=f"{grid.speed_axis[-1]:.3g}",
        x=MARGIN_LEFT + plot_width,
        y=axis_y + 14,
        text_anchor="end",
    )
    _element(
        labels,
        "text",
        text="speed ratio",
        x=MARGIN_LEFT + plot_width // 2,
        y=axis_y + 32,
        text_anchor="middle",
    )
    _element(
        labels,
        "text",
        text=f"{grid.depth_axis[0]:.3g}",
        x=MARGIN_LEFT - 4,
        y=axis_y,
        text_anchor="end",
    )
    _element(
        labels,
        "text",
        text=f"{grid.depth_axis[-1]:.3g}",
        x=MARGIN_LEFT - 4,
        y=MARGIN_TOP + 10,
        text_anchor="end",
    )
    _element(
        labels,
        "text",
        text="depth b",
        x=MARGIN_LEFT - 4,
        y=MARGIN_TOP + plot_height // 2,
        text_anchor="end",
    )

    legend = _element(root, "g", id="legend", font_size=11)
    legend_x = MARGIN_LEFT + plot_width + 16
    entries = [("stable", "no chatter"), ("chatter", "chatter")]
    if misclassified.any():
        entries.append(("misclassified", "misclassified"))
    for k, (kind, text) in enumerate(entries):
        y = MARGIN_TOP + 18 * k
        _element(
            legend,
            "rect",
            **{"class": "legend-swatch"},
            x=legend_x,
            y=y,
            width=12,
            height=12,
            fill=COLORS[kind],
        )
        _element(legend, "text", text=text, x=legend_x + 18, y=y + 10)
    y = MARGIN_TOP + 18 * len(entries) + 6
    _element(
        legend,
        "line",
        x1=legend_x,
        y1=y,
        x2=legend_x + 12,
        y2=y,
        stroke=BOUNDARY_COLOR,
        stroke_width=2,
    )
    _element(legend, "text", text="stability boundary", x=legend_x + 18, y=y + 4)

    return etree.tostring(
        root, xml_declaration=True, encoding="UTF-8", pretty_print=True
    )


def write_map(
    grid: LabelGrid,
    boundary: LobeBoundary,
    output_file: str,
    misclassified: Optional[np.ndarray] = None,
    title: str = "",
    cell_size: int = 6,
) -> None:
    data = render_map(grid, boundary, misclassified, title, cell_size)
    with open_binary_for_writing(output_file, "map.svg") as fh:
        fh.write(data)
