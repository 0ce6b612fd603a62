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

from lxml import etree
import numpy as np

from ..formats.svg.write import COLORS, SVG_NS, render_map, write_map
from ..stability_oracle import LabelGrid, LobeBoundary

NS = {"svg": SVG_NS}


def boundary():
    return LobeBoundary(speed_ratio=[0.5, 1.0, 1.5], b_lim=[0.05, 0.02, 0.06])


def cells(document: bytes):
    root = etree.fromstring(document)
    return [
        rect
        for rect in root.iterfind(".//svg:rect", NS)
        if rect.get("class", "").startswith("cell ")
    ]


def test_two_by_two_grid_has_four_cells():
    grid = LabelGrid([0.5, 1.5], [0.03, 0.06], [[False, True], [False, True]])
    document = render_map(grid, boundary())
    found = cells(document)
    assert len(found) == 4
    kinds = sorted(rect.get("class") for rect in found)
    assert kinds == ["cell chatter", "cell chatter", "cell stable", "cell stable"]


def test_stable_grid_is_uniform():
    grid = LabelGrid(np.linspace(0.5, 1.5, 5), np.linspace(0.01, 0.1, 4), np.zeros((5, 4)))
    root = etree.fromstring(render_map(grid, boundary()))
    fills = {rect.get("fill") for rect in cells(etree.tostring(root))}
    assert fills == {COLORS["stable"]}
    polyline = root.find(".//svg:polyline", NS)
    assert polyline.get("id") == "boundary"
    assert polyline.get("stroke") == "#8c8c8c"
    assert len(polyline.get("points").split()) >= 2


def test_misclassified_cells():
    grid = LabelGrid([0.5, 1.5], [0.03, 0.06], [[False, True], [False, True]])
    mask = np.array([[True, False], [False, False]])
    found = cells(render_map(grid, boundary(), misclassified=mask))
    assert sum(rect.get("class") == "cell misclassified" for rect in found) == 1


def test_cells_are_placed_on_the_grid():
    grid = LabelGrid([0.5, 1.0, 1.5], [0.03, 0.06], np.zeros((3, 2)))
    found = cells(render_map(grid, boundary(), cell_size=10))
    positions = sorted((int(r.get("x")), int(r.get("y"))) for r in found)
    xs = sorted({x for x, _ in positions})
    ys = sorted({y for _, y in positions})
    assert np.diff(xs).tolist() == [10, 10]
    assert np.diff(ys).tolist() == [10]


def test_identical_input_gives_identical_bytes():
    grid = LabelGrid([0.5, 1.5], [0.03, 0.06], [[False, True], [True, True]])
    assert render_map(grid, boundary(), title="map") == render_map(
        grid, boundary(), title="map"
    )


def test_write_map(tmp_path):
    grid = LabelGrid([0.5, 1.5], [0.03, 0.06], [[False, True], [True, True]])
    path = tmp_path / "map.svg"
    write_map(grid, boundary(), str(path))
    assert path.read_bytes() == render_map(grid, boundary())
    assert path.read_bytes().startswith(b"<?xml")
