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

import io
import re

import pytest

from ..configuration import (
    CHATTER_CONFIG_OPTIONS,
    ChatterConfigOption,
    ConfigEntry,
    ExperimentConfig,
    merge_options_and_set_defaults,
    parse_config_file,
    parse_config_into_dict,
)
from ..errors import DomainError


def run_cfg_test(contents, filename="test.json"):
    r"""Helper to parse a config file from a string."""

    open_file = io.StringIO(contents)
    return parse_config_file(open_file, filename=filename)


def test_invalid_json():
    with pytest.raises(SyntaxError, match="test.json: "):
        list(run_cfg_test('{"grid": '))


def test_document_must_be_an_object():
    with pytest.raises(SyntaxError, match="expected a JSON object"):
        list(run_cfg_test("[1, 2]"))


def test_unknown_keys():
    r"""
    Check that unknown keys always generate an error.

    A key is unknown if:
    -   no such option exists
    -   the config key was explicitly suppressed
    -   a key was autogenerated from the first --long option name,
        but the key refers to the wrong option name.
    """
    all_options = CHATTER_CONFIG_OPTIONS + [
        ChatterConfigOption(
            "testopt",
            ["--testopt"],
            config=False,
            help="for unit tests only",
        ),
        ChatterConfigOption(
            "testopt2",
            ["--testopt2", "--testopt-two"],
            help="for unit tests only",
        ),
    ]

    # completely unknown key
    with pytest.raises(ValueError, match="test.json: foo-bar: unknown config option"):
        parse_config_into_dict(run_cfg_test('{"foo-bar": 1}'), all_options=all_options)

    # explicitly suppressed key
    with pytest.raises(ValueError, match="testopt: unknown config option"):
        parse_config_into_dict(run_cfg_test('{"testopt": 1}'), all_options=all_options)

    # autogenerated keys only use the first --long flag
    with pytest.raises(ValueError, match="testopt-two: unknown config option"):
        parse_config_into_dict(
            run_cfg_test('{"testopt-two": 1}'), all_options=all_options
        )

    # the output directory and the command are command line only
    with pytest.raises(ValueError, match="config: unknown config option"):
        parse_config_into_dict(run_cfg_test('{"config": "x.json"}'))


def test_converted_values():
    cfg = """{
        "grid": "5x7",
        "speed-range": [0.5, 1.5],
        "deltas": "0.01,0.05",
        "seed": 12,
        "l2-strength": 0.5,
        "workers": 2
    }"""
    options = parse_config_into_dict(run_cfg_test(cfg))
    assert options == {
        "grid": (5, 7),
        "speed_range": (0.5, 1.5),
        "deltas": (0.01, 0.05),
        "seed": 12,
        "l2_strength": 0.5,
        "workers": 2,
    }


@pytest.mark.parametrize(
    "key,value,message",
    [
        ("grid", '"1x5"', "is not a grid"),
        ("depth-range", "[0.1, 0.0]", "is not a range"),
        ("deltas", "[-0.01]", "non-negative numbers"),
        ("seed", "-3", "is not a seed"),
        ("test-fraction", "1.5", "not in range"),
        ("workers", "0", ""),
    ],
)
def test_invalid_values_name_file_and_key(key, value, message):
    cfg = f'{{"{key}": {value}}}'
    pattern = re.escape(f"test.json: {key}: ") + ".*" + re.escape(message)
    with pytest.raises(ValueError, match=pattern):
        parse_config_into_dict(run_cfg_test(cfg))


@pytest.mark.parametrize("value,expected", [("true", True), ('"yes"', True), ("false", False)])
def test_boolean_option(value, expected):
    options = parse_config_into_dict(run_cfg_test(f'{{"json-pretty": {value}}}'))
    assert options["json_pretty"] is expected


def test_boolean_option_rejects_garbage():
    with pytest.raises(ValueError, match="test.json: verbose: boolean option"):
        parse_config_into_dict(run_cfg_test('{"verbose": "garbage"}'))


def test_option_choice():
    all_options = CHATTER_CONFIG_OPTIONS + [
        ChatterConfigOption(
            "testopt",
            ["--testopt"],
            type=int,
            choices=(1, 3, 5),
            help="for unit tests only",
        ),
    ]

    # all of these should pass:
    for value in (1, 3, 5):
        options = parse_config_into_dict(
            run_cfg_test(f'{{"testopt": {value}}}'), all_options=all_options
        )
        assert options["testopt"] == value

    # all of these should fail:
    for value in (0, 2, 4, 6):
        error = "must be one of (1, 3, 5) but got {}".format(value)
        with pytest.raises(ValueError, match=re.escape(error)):
            parse_config_into_dict(
                run_cfg_test(f'{{"testopt": {value}}}'), all_options=all_options
            )


def test_command_line_overrides_config():
    cfg = parse_config_into_dict(run_cfg_test('{"seed": 1, "grid": "4x4"}'))
    options = merge_options_and_set_defaults([cfg, {"seed": 2}])
    assert options.seed == 2
    assert options.grid == (4, 4)
    assert options.realizations == 1
    assert options.deltas == (0.01, 0.03, 0.05)


def test_config_entry_error():
    entry = ConfigEntry("grid", "3", filename="exp.json")
    assert str(entry.error("bad {value}")) == "exp.json: grid: bad 3"


def test_default_experiment():
    config = ExperimentConfig.from_options(merge_options_and_set_defaults([{}]))
    assert config == ExperimentConfig()
    assert config.grid == (100, 100)
    assert config.deltas == (0.01, 0.03, 0.05)
    assert config.speed_axis().size == 100
    assert config.depth_axis()[0] == pytest.approx(0.0016)
    assert config.depth_axis()[-1] == pytest.approx(0.16)
    assert config.out == "chattertda-out"


def test_snapshot_excludes_execution_settings():
    config = ExperimentConfig(workers=4, out="elsewhere")
    snapshot = config.to_dict()
    assert "workers" not in snapshot and "out" not in snapshot
    assert snapshot["grid"] == [100, 100]
    assert snapshot == ExperimentConfig().to_dict()


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(grid=(1, 5)),
        dict(speed_range=(0.0, 1.0)),
        dict(depth_range=(0.2, 0.1)),
        dict(deltas=()),
        dict(deltas=(-0.1,)),
        dict(alpha=2.0),
        dict(test_fraction=1.0),
        dict(subsample_count=300, steps_per_delay=8, horizon_delays=8),
    ],
)
def test_invalid_experiment(kwargs):
    with pytest.raises(DomainError):
        ExperimentConfig(**kwargs)


def test_point_seeds_are_distinct():
    config = ExperimentConfig(seed=5)
    seeds = {
        config.point_seed(0, 0),
        config.point_seed(0, 1),
        config.point_seed(1, 0),
        config.point_seed(0, 0, 0.01),
        config.point_seed(0, 0, 0.03),
        config.point_seed(0, 0, 0.01, 1),
    }
    assert len(seeds) == 6
    assert config.point_seed(3, 4, 0.05, 2) == ExperimentConfig(seed=5).point_seed(3, 4, 0.05, 2)


def test_params_at_grid_point():
    config = ExperimentConfig(zeta=0.05)
    params = config.params_at(1.2, 0.04)
    assert (params.zeta, params.speed_ratio, params.b) == (0.05, 1.2, 0.04)
    sim = config.sim_config(seed=9)
    assert (sim.steps_per_delay, sim.horizon_delays, sim.seed) == (1024, 32, 9)
