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
from argparse import ArgumentParser, ArgumentTypeError, SUPPRESS
from dataclasses import asdict, dataclass, field
import json
import logging
from typing import Any, Dict, Iterable, List, Optional, TextIO, Tuple

import numpy as np

from . import formats
from .classifier import DEFAULT_L2_STRENGTH, DEFAULT_MAX_ITER, DEFAULT_TEST_FRACTION, DEFAULT_TOL
from .embedding import DEFAULT_EMBED_DIM, DEFAULT_SUBSAMPLE_COUNT, EmbeddingConfig
from .errors import DomainError
from .options import (
    ChatterConfigOption,
    Options,
    check_float_list,
    check_fraction,
    check_grid,
    check_non_negative_float,
    check_positive_float,
    check_positive_int,
    check_range,
    check_seed,
)
from .persistence import DEFAULT_CAPACITY
from .stability_oracle import DEFAULT_OMEGA_MAX, DEFAULT_OMEGA_SAMPLES
from .turning_models import SimConfig, StochasticParams, TurningParams
from .utils import delta_key, derive_seed

LOGGER = logging.getLogger("chattertda")

COMMANDS = (
    "simulate",
    "label",
    "sweep",
    "train",
    "evaluate",
    "transfer",
    "render",
    "all",
    "compare",
)


def argument_parser_setup(parser: ArgumentParser, default_group):
    r"""Add all options and groups to the given argparse parser."""

    # setup option groups
    groups = {}
    for group_def in CHATTER_CONFIG_OPTION_GROUPS:
        group = parser.add_argument_group(
            group_def["name"],
            description=group_def["description"],
        )
        groups[group_def["key"]] = group

    # create each option value
    for opt in CHATTER_CONFIG_OPTIONS:
        group = default_group if opt.group is None else groups[opt.group]

        kwargs: Dict[str, Any] = {
            "action": opt.action,
            "const": opt.const,
            "default": SUPPRESS,  # default will be assigned manually
            "help": opt.help,
            "metavar": opt.metavar,
        }

        # To avoid store_const problems, optionally set choices, nargs, type:
        if opt.choices is not None:
            kwargs["choices"] = opt.choices
        if opt.nargs is not None:
            kwargs["nargs"] = opt.nargs
        if opt.type is not None:
            kwargs["type"] = opt.type

        if opt.flags:
            kwargs["dest"] = opt.name
            group.add_argument(*opt.flags, **kwargs)
        elif opt.positional:
            group.add_argument(opt.name, **kwargs)


def parse_config_into_dict(
    config_entry_source: Iterable[ConfigEntry],
    all_options: Iterable[ChatterConfigOption] = None,
) -> Dict[str, Any]:
    cfg_dict: Dict[str, Any] = {}

    if all_options is None:
        all_options = CHATTER_CONFIG_OPTIONS

    options_lookup = {}
    for option in all_options:
        if option.config_keys is not None:
            for config_key in option.config_keys:
                options_lookup[config_key] = option

    for cfg_entry in config_entry_source:
        try:
            option: ChatterConfigOption = options_lookup[cfg_entry.key]
        except KeyError:
            raise cfg_entry.error("unknown config option") from None

        cfg_dict[option.name] = _get_value_from_config_entry(cfg_entry, option)

    return cfg_dict


def _get_value_from_config_entry(
    cfg_entry: ConfigEntry,
    option: ChatterConfigOption,
) -> Any:
    # special case: store_const expects a boolean
    if option.action == "store_const":
        return option.const if cfg_entry.value_as_bool else option.default

    value: object
    if option.type is not None:
        try:
            value = option.type(cfg_entry.value)
        except (ValueError, TypeError, ArgumentTypeError) as err:
            raise cfg_entry.error(str(err))
    else:
        value = cfg_entry.value

    # verify choices:
    if option.choices is not None:
        if value not in option.choices:
            raise cfg_entry.error(  # pylint: disable=raising-format-tuple
                "must be one of ({}) but got {!r}",
                ", ".join(repr(choice) for choice in option.choices),
                value,
            )

    return value


def merge_options_and_set_defaults(
    partial_namespaces: List[Dict[str, Any]],
    all_options: List[ChatterConfigOption] = None,
) -> Options:
    assert partial_namespaces, "at least one namespace required"

    if all_options is None:
        all_options = CHATTER_CONFIG_OPTIONS

    target: Dict[str, Any] = {}
    for namespace in partial_namespaces:
        for option in all_options:
            if option.name in namespace:
                target[option.name] = namespace[option.name]

    # if no value was provided, set the default.
    for option in all_options:
        target.setdefault(option.name, option.default)

    return Options(**target)


CHATTER_CONFIG_OPTION_GROUPS = [
    {
        "key": "experiment_options",
        "name": "Experiment Options",
        "description": (
            "The parameter grid, the noise levels and the seed of the experiment. "
            "The same config always gives the same results."
        ),
    },
    {
        "key": "model_options",
        "name": "Model Options",
        "description": (
            "Parameters of the nondimensional turning model "
            "and of the analytic stability boundary."
        ),
    },
    {
        "key": "simulation_options",
        "name": "Simulation Options",
        "description": "Discretization of the deterministic and stochastic solvers.",
    },
    {
        "key": "embedding_options",
        "name": "Embedding Options",
        "description": (
            "Subsampling, delay embedding and persistent homology of each signal."
        ),
    },
    {
        "key": "classifier_options",
        "name": "Classifier Options",
        "description": "Training and evaluation of the logistic regression.",
    },
    {
        "key": "point_options",
        "name": "Single Point Options",
        "description": (
            "Options of the 'simulate' and 'compare' commands, "
            "which look at individual signals."
        ),
    },
    {
        "key": "output_options",
        "name": "Output Options",
        "description": "All results are written below the output directory.",
    },
]


# Style guide for option descriptions:
# - Prefer complete sentences.
# - Phrase first sentence as a command:
#   “Print report”, not “Prints report”.

CHATTER_CONFIG_OPTIONS = [
    ChatterConfigOption(
        "command",
        config=False,
        positional=True,
        nargs="?",
        metavar="command",
        help=(
            "The stage to run: {}. "
            "'all' runs label, sweep, train, evaluate, transfer and render."
        ).format(", ".join(COMMANDS)),
    ),
    ChatterConfigOption(
        "verbose",
        ["-v", "--verbose"],
        help="Print progress messages.",
        action="store_true",
    ),
    ChatterConfigOption(
        "config",
        ["--config"],
        config=False,
        help="Load that JSON configuration file. Command line flags take precedence.",
    ),
    ChatterConfigOption(
        "workers",
        ["-j", "--workers"],
        metavar="N",
        help=(
            "Simulate grid points in N worker processes. "
            "The results do not depend on N. Default is {default!s}."
        ),
        type=check_positive_int,
        default=1,
    ),
    ChatterConfigOption(
        "seed",
        ["--seed"],
        group="experiment_options",
        help="Base seed of the experiment. Default is {default!s}.",
        type=check_seed,
        default=0,
    ),
    ChatterConfigOption(
        "grid",
        ["--grid"],
        group="experiment_options",
        metavar="WxH",
        help="Number of speed ratios W and depths of cut H. Default is 100x100.",
        type=check_grid,
        default=(100, 100),
    ),
    ChatterConfigOption(
        "speed_range",
        ["--speed-range"],
        group="experiment_options",
        metavar="LO,HI",
        help="Range of the speed ratio axis, both ends included. Default is 0.2,2.0.",
        type=check_range,
        default=(0.2, 2.0),
    ),
    ChatterConfigOption(
        "depth_range",
        ["--depth-range"],
        group="experiment_options",
        metavar="LO,HI",
        help=(
            "Range of the depth of cut axis, the lower end is excluded. "
            "Default is 0.0,0.16."
        ),
        type=check_range,
        default=(0.0, 0.16),
    ),
    ChatterConfigOption(
        "deltas",
        ["--deltas"],
        group="experiment_options",
        metavar="D1,D2,...",
        help="Noise levels of the stochastic model. Default is 0.01,0.03,0.05.",
        type=check_float_list,
        default=(0.01, 0.03, 0.05),
    ),
    ChatterConfigOption(
        "realizations",
        ["--realizations"],
        group="experiment_options",
        metavar="R",
        help=(
            "Simulate every stochastic grid point R times and label it by "
            "majority vote. Default is {default!s}."
        ),
        type=check_positive_int,
        default=1,
    ),
    ChatterConfigOption(
        "zeta",
        ["--zeta"],
        group="model_options",
        help="Damping ratio. Default is {default!s}.",
        type=check_positive_float,
        default=0.03,
    ),
    ChatterConfigOption(
        "rho",
        ["--rho"],
        group="model_options",
        help="Nondimensional nominal feed. Default is {default!s}.",
        type=check_positive_float,
        default=0.01,
    ),
    ChatterConfigOption(
        "alpha",
        ["--alpha"],
        group="model_options",
        help="Exponent of the cutting force law, in (0, 1]. Default is {default!s}.",
        type=check_positive_float,
        default=0.75,
    ),
    ChatterConfigOption(
        "omega_samples",
        ["--omega-samples"],
        group="model_options",
        help="Chatter frequencies sampled per stability lobe. Default is {default!s}.",
        type=check_positive_int,
        default=DEFAULT_OMEGA_SAMPLES,
    ),
    ChatterConfigOption(
        "omega_max",
        ["--omega-max"],
        group="model_options",
        help="Largest chatter frequency of the stability lobes. Default is {default!s}.",
        type=check_positive_float,
        default=DEFAULT_OMEGA_MAX,
    ),
    ChatterConfigOption(
        "steps_per_delay",
        ["--steps-per-delay"],
        group="simulation_options",
        help="Solver steps per delay interval. Default is {default!s}.",
        type=check_positive_int,
        default=1024,
    ),
    ChatterConfigOption(
        "horizon_delays",
        ["--horizon-delays"],
        group="simulation_options",
        help="Simulated time in delay intervals. Default is {default!s}.",
        type=check_positive_int,
        default=32,
    ),
    ChatterConfigOption(
        "blow_up",
        ["--blow-up"],
        group="simulation_options",
        help=(
            "Stop a simulation as diverged once the displacement exceeds "
            "this bound. Default is {default!s}."
        ),
        type=check_positive_float,
        default=1.0e6,
    ),
    ChatterConfigOption(
        "subsample_count",
        ["--subsample-count"],
        group="embedding_options",
        help="Samples kept from the second half of each signal. Default is {default!s}.",
        type=check_positive_int,
        default=DEFAULT_SUBSAMPLE_COUNT,
    ),
    ChatterConfigOption(
        "embed_dim",
        ["--embed-dim"],
        group="embedding_options",
        help="Dimension of the delay embedding. Default is {default!s}.",
        type=check_positive_int,
        default=DEFAULT_EMBED_DIM,
    ),
    ChatterConfigOption(
        "rips_capacity",
        ["--rips-capacity"],
        group="embedding_options",
        help="Largest point cloud accepted by the Rips computation. Default is {default!s}.",
        type=check_positive_int,
        default=DEFAULT_CAPACITY,
    ),
    ChatterConfigOption(
        "l2_strength",
        ["--l2-strength"],
        group="classifier_options",
        help="L2 regularization strength of the weights. Default is {default!s}.",
        type=check_non_negative_float,
        default=DEFAULT_L2_STRENGTH,
    ),
    ChatterConfigOption(
        "tol",
        ["--tol"],
        group="classifier_options",
        help="Stop training once the gradient norm is below TOL. Default is {default!s}.",
        type=check_positive_float,
        default=DEFAULT_TOL,
    ),
    ChatterConfigOption(
        "max_iter",
        ["--max-iter"],
        group="classifier_options",
        help="Maximum number of Newton steps. Default is {default!s}.",
        type=check_positive_int,
        default=DEFAULT_MAX_ITER,
    ),
    ChatterConfigOption(
        "test_fraction",
        ["--test-fraction"],
        group="classifier_options",
        help="Fraction of grid points held out for testing. Default is {default!s}.",
        type=check_fraction,
        default=DEFAULT_TEST_FRACTION,
    ),
    ChatterConfigOption(
        "speed_ratio",
        ["--speed-ratio"],
        group="point_options",
        help="Speed ratio of the simulated point. Default is {default!s}.",
        type=check_positive_float,
        default=1.0,
    ),
    ChatterConfigOption(
        "depth",
        ["--depth"],
        group="point_options",
        help="Depth of cut b of the simulated point. Default is {default!s}.",
        type=check_non_negative_float,
        default=0.05,
    ),
    ChatterConfigOption(
        "delta",
        ["--delta"],
        group="point_options",
        help="Simulate the stochastic model with this noise level instead.",
        type=check_non_negative_float,
    ),
    ChatterConfigOption(
        "save_diagrams",
        ["--save-diagrams"],
        group="point_options",
        help="Also write the subsampled signal, the point cloud and the diagrams.",
        action="store_true",
    ),
    ChatterConfigOption(
        "compare_trials",
        ["--compare-trials"],
        group="point_options",
        help="Seeds of the periodic versus noise comparison. Default is {default!s}.",
        type=check_positive_int,
        default=20,
    ),
    ChatterConfigOption(
        "compare_noise",
        ["--compare-noise"],
        group="point_options",
        help=(
            "Noise added to the periodic signal of the comparison, relative "
            "to its amplitude. Default is {default!s}."
        ),
        type=check_non_negative_float,
        default=0.01,
    ),
    ChatterConfigOption(
        "out",
        ["-o", "--out"],
        group="output_options",
        metavar="DIR",
        help="Output directory. Default is '{default!s}'.",
        default="chattertda-out",
    ),
    *formats.get_options(),
]


def parse_config_file(
    open_file: TextIO,
    filename: str,
) -> Iterable[ConfigEntry]:
    r"""
    Parse a JSON configuration file.

    Yields: ConfigEntry

    Example: basic syntax.

    >>> import io
    >>> cfg = '{"grid": "5x5", "deltas": [0.01, 0.05]}'
    >>> for entry in parse_config_file(io.StringIO(cfg), 'test.json'):
    ...     print(entry)
    test.json: grid = '5x5'
    test.json: deltas = [0.01, 0.05]
    """
    try:
        document = json.load(open_file)
    except json.JSONDecodeError as err:
        raise SyntaxError(f"{filename}: {err}") from None

    if not isinstance(document, dict):
        raise SyntaxError(f"{filename}: expected a JSON object of config keys")

    for key, value in document.items():
        yield ConfigEntry(key, value, filename=filename)


@dataclass
class ConfigEntry:
    """A "key": value config file entry."""

    key: str
    """The key."""

    value: Any
    """The JSON value."""

    filename: Optional[str] = None
    """Path of the config file, for error messages."""

    def __str__(self):
        r"""
        Display the config entry.

        >>> print(ConfigEntry("the-key", 3, filename="foo.json"))
        foo.json: the-key = 3
        """
        filename = self.filename or "<config>"
        return f"{filename}: {self.key} = {self.value!r}"

    @property
    def value_as_bool(self) -> bool:
        r"""
        The value converted to a boolean.

        >>> ConfigEntry("k", True).value_as_bool
        True

        >>> ConfigEntry("k", "no").value_as_bool
        False

        >>> ConfigEntry("k", "foo").value_as_bool
        Traceback (most recent call last):
        ValueError: <config>: k: boolean option must be true or false
        """
        value = self.value
        if value is True or value == "yes":
            return True
        if value is False or value == "no":
            return False
        raise self.error("boolean option must be true or false")

    def error(self, pattern: str, *args, **kwargs) -> ValueError:
        r"""
        Format but NOT RAISE a ValueError.

        >>> entry = ConfigEntry('workers', 'nun')
        >>> raise entry.error("expected number but got {value!r}")
        Traceback (most recent call last):
        ValueError: <config>: workers: expected number but got 'nun'
        """
        filename = self.filename or "<config>"
        kwargs.update(key=self.key, value=self.value)
        message = pattern.format(*args, **kwargs)
        return ValueError(": ".join([filename, self.key, message]))


@dataclass(frozen=True)
class ExperimentConfig:
    r"""Every setting the results depend on.

    >>> cfg = ExperimentConfig(grid=(3, 2), speed_range=(1.0, 2.0), depth_range=(0.0, 0.1))
    >>> cfg.speed_axis().tolist(), cfg.depth_axis().tolist()
    ([1.0, 1.5, 2.0], [0.05, 0.1])
    """

    grid: Tuple[int, int] = (100, 100)
    speed_range: Tuple[float, float] = (0.2, 2.0)
    depth_range: Tuple[float, float] = (0.0, 0.16)
    zeta: float = 0.03
    rho: float = 0.01
    alpha: float = 0.75
    omega_samples: int = DEFAULT_OMEGA_SAMPLES
    omega_max: float = DEFAULT_OMEGA_MAX
    steps_per_delay: int = 1024
    horizon_delays: int = 32
    blow_up: float = 1.0e6
    subsample_count: int = DEFAULT_SUBSAMPLE_COUNT
    embed_dim: int = DEFAULT_EMBED_DIM
    rips_capacity: int = DEFAULT_CAPACITY
    deltas: Tuple[float, ...] = (0.01, 0.03, 0.05)
    realizations: int = 1
    seed: int = 0
    l2_strength: float = DEFAULT_L2_STRENGTH
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    test_fraction: float = DEFAULT_TEST_FRACTION
    out: str = field(default="chattertda-out", compare=False)
    workers: int = field(default=1, compare=False)

    def __post_init__(self) -> None:
        width, height = self.grid
        if width < 2 or height < 2:
            raise DomainError(f"grid resolutions must be at least 2, got {self.grid!r}.")
        for name in ("speed_range", "depth_range"):
            lo, hi = getattr(self, name)
            if not 0.0 <= lo < hi:
                raise DomainError(f"{name} must satisfy 0 <= lo < hi, got {(lo, hi)!r}.")
        if self.speed_range[0] <= 0.0:
            raise DomainError("the speed ratio axis must start above 0.")
        if not self.deltas or any(not d >= 0.0 for d in self.deltas):
            raise DomainError(f"noise levels must be non-negative, got {self.deltas!r}.")
        if self.realizations < 1 or self.workers < 1:
            raise DomainError("realizations and workers must be positive.")
        if not 0.0 < self.test_fraction < 1.0:
            raise DomainError(f"test fraction must be in (0, 1), got {self.test_fraction!r}.")
        # validates the remaining parameters
        self.params_at(self.speed_range[0], 0.0)
        self.sim_config()
        self.embedding_config()
        samples = self.steps_per_delay * self.horizon_delays + 1
        if samples < 2 * self.subsample_count:
            raise DomainError(
                f"a simulation yields {samples} samples, the embedding needs at least "
                f"{2 * self.subsample_count}; increase steps_per_delay or horizon_delays."
            )

    @classmethod
    def from_options(cls, options: Options) -> ExperimentConfig:
        names = [f for f in cls.__dataclass_fields__]
        values = {name: options.get(name) for name in names if options.get(name) is not None}
        if "deltas" in values:
            values["deltas"] = tuple(values["deltas"])
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        """JSON snapshot of the settings that determine the results."""
        data = asdict(self)
        del data["out"]
        del data["workers"]
        for key in ("grid", "speed_range", "depth_range", "deltas"):
            data[key] = list(data[key])
        return data

    def speed_axis(self) -> np.ndarray:
        return np.linspace(self.speed_range[0], self.speed_range[1], self.grid[0])

    def depth_axis(self) -> np.ndarray:
        """Evenly spaced depths of cut, excluding the lower end of the range."""
        return np.linspace(self.depth_range[0], self.depth_range[1], self.grid[1] + 1)[1:]

    def params_at(self, speed_ratio: float, b: float) -> TurningParams:
        return TurningParams(
            zeta=self.zeta,
            b=float(b),
            rho=self.rho,
            alpha=self.alpha,
            speed_ratio=float(speed_ratio),
        )

    def stochastic_params_at(self, speed_ratio: float, b: float, delta: float) -> StochasticParams:
        return StochasticParams(base=self.params_at(speed_ratio, b), delta=float(delta))

    def sim_config(self, seed: int = 0) -> SimConfig:
        return SimConfig(
            steps_per_delay=self.steps_per_delay,
            horizon_delays=self.horizon_delays,
            seed=seed,
            blow_up=self.blow_up,
        )

    def embedding_config(self) -> EmbeddingConfig:
        return EmbeddingConfig(subsample_count=self.subsample_count, embed_dim=self.embed_dim)

    def point_seed(self, i: int, j: int, delta: Optional[float] = None, realization: int = 0) -> int:
        """Seed of one simulation, a function of the grid index only."""
        if delta is None:
            return derive_seed(self.seed, i, j)
        return derive_seed(self.seed, i, j, delta_key(delta), realization)
