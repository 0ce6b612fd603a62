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
from argparse import ArgumentTypeError
import logging
from typing import Any, Callable, List, Optional, Tuple, Union


LOGGER = logging.getLogger("chattertda")


def _split(value: Any) -> List[Any]:
    if isinstance(value, (list, tuple)):
        return list(value)
    return [part for part in str(value).replace(" ", "").split(",") if part != ""]


def _as_float(value: Any) -> float:
    if isinstance(value, bool):
        raise ValueError()
    return float(value)


def _as_int(value: Any) -> int:
    if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
        raise ValueError()
    return int(value)


def check_positive_int(value: Any) -> int:
    r"""
    Check that the value is a positive integer and if so return it.

    >>> check_positive_int("4")
    4
    >>> check_positive_int(0)
    Traceback (most recent call last):
      ...
    argparse.ArgumentTypeError: 0 is not a positive integer
    """
    try:
        x = _as_int(value)
        if x < 1:
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(f"{value} is not a positive integer") from None
    return x


def check_positive_float(value: Any) -> float:
    r"""
    Check that the value is a positive finite number and if so return it.

    >>> check_positive_float("0.03")
    0.03
    """
    try:
        x = _as_float(value)
        if not (0.0 < x < float("inf")):
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(f"{value} is not a positive number") from None
    return x


def check_non_negative_float(value: Any) -> float:
    try:
        x = _as_float(value)
        if not (0.0 <= x < float("inf")):
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(f"{value} is not a non-negative number") from None
    return x


def check_fraction(value: Any) -> float:
    r"""
    Check that the value lies strictly between 0 and 1.

    >>> check_fraction("0.2")
    0.2
    >>> check_fraction(1)
    Traceback (most recent call last):
      ...
    argparse.ArgumentTypeError: 1 not in range (0.0, 1.0)
    """
    try:
        x = _as_float(value)
        if not (0.0 < x < 1.0):
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(f"{value} not in range (0.0, 1.0)") from None
    return x


def check_grid(value: Any) -> Tuple[int, int]:
    r"""
    Parse a grid size ``WxH`` with at least 2 points per axis.

    >>> check_grid("100x100")
    (100, 100)
    >>> check_grid([5, 7])
    (5, 7)
    >>> check_grid("1x5")
    Traceback (most recent call last):
      ...
    argparse.ArgumentTypeError: '1x5' is not a grid WxH with W, H >= 2
    """
    if isinstance(value, (list, tuple)):
        parts = list(value)
    else:
        parts = str(value).strip().lower().split("x")
    try:
        if len(parts) != 2:
            raise ValueError()
        width, height = (_as_int(p) for p in parts)
        if width < 2 or height < 2:
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(
            f"{value!r} is not a grid WxH with W, H >= 2"
        ) from None
    return width, height


def check_range(value: Any) -> Tuple[float, float]:
    r"""
    Parse an interval ``lo,hi`` with ``0 <= lo < hi``.

    >>> check_range("0.2,2.0")
    (0.2, 2.0)
    >>> check_range([0, 0.1])
    (0.0, 0.1)
    """
    try:
        parts = _split(value)
        if len(parts) != 2:
            raise ValueError()
        lo, hi = (_as_float(p) for p in parts)
        if not (0.0 <= lo < hi < float("inf")):
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(f"{value!r} is not a range lo,hi with 0 <= lo < hi") from None
    return lo, hi


def check_float_list(value: Any) -> Tuple[float, ...]:
    r"""
    Parse a non-empty list of non-negative numbers.

    >>> check_float_list("0.01,0.03,0.05")
    (0.01, 0.03, 0.05)
    >>> check_float_list([0.0])
    (0.0,)
    """
    try:
        values = tuple(_as_float(p) for p in _split(value))
        if not values or any(not (0.0 <= v < float("inf")) for v in values):
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(
            f"{value!r} is not a list of non-negative numbers"
        ) from None
    return values


def check_seed(value: Any) -> int:
    r"""
    Check that the seed fits in an unsigned 64 bit integer.

    >>> check_seed("42")
    42
    >>> check_seed(-1)
    Traceback (most recent call last):
      ...
    argparse.ArgumentTypeError: -1 is not a seed in [0, 2**64)
    """
    try:
        x = _as_int(value)
        if not (0 <= x < 2**64):
            raise ValueError()
    except ValueError:
        raise ArgumentTypeError(f"{value} is not a seed in [0, 2**64)") from None
    return x


class Options(object):
    def __init__(self, **kwargs):
        self.__dict__.update(kwargs)

    def get(self, name: str) -> Any:
        """Function to get an option by name."""
        return self.__dict__.get(name)


class ChatterConfigOption:
    # pylint: disable=too-many-instance-attributes
    # pylint: disable=too-few-public-methods
    # pylint: disable=redefined-builtin
    r"""
    Represents a single setting for a chattertda run.

    The same definition drives the command line parser and the JSON config
    file. The converter given as ``type`` receives either a command line
    string or a JSON value and returns the converted value or raises.

    Arguments:
        name (str):
            Destination (options object field),
            must be valid Python identifier.
        flags (list of str, optional):
            Any command line flags.

    Keyword Arguments:
        action (str, optional):
            What to do when the option is parsed:
            - store (default): store the option argument
            - store_const: store the const value
            - store_true, store_false: shortcuts for store_const
        choices (list, optional):
            Value must be one of these after conversion.
        config (str or bool, optional):
            Configuration file key.
            If absent, the first ``--flag`` is used without the leading dashes.
            If explicitly set to False,
            the option cannot be set from a config file.
        const (any, optional):
            Assigned by the "store_const" action.
        default (any, optional):
            Default value if the option is not found, defaults to None.
        group (str, optional):
            Name of the option group in CHATTER_CONFIG_OPTION_GROUPS.
        help (str):
            Help message. Named curly-brace placeholders
            are filled in from the option attributes via ``str.format()``.
        metavar (str, optional):
            Name of the value in help messages, defaults to the name.
        nargs (int or '?', optional):
            How often the option may occur.
        positional (bool, optional):
            Whether this is a positional option, defaults to False.
            A positional argument cannot have flags.
        type (function, optional):
            Check and convert the option value, may throw exceptions.
    """

    def __init__(
        self,
        name: str,
        flags: List[str] = None,
        *,
        help: str,
        action: str = "store",
        choices: list = None,
        const: Any = None,
        config: Union[str, bool] = True,
        default: Any = None,
        group: str = None,
        metavar: str = None,
        nargs: Union[int, str] = None,
        positional: bool = False,
        type: Callable[[Any], Any] = None,
    ) -> None:
        if flags is None:
            flags = []

        assert not (flags and positional), "option cannot have flags and be positional"

        config_keys = _derive_configuration_key(config, flags=flags)
        del config

        assert (
            flags or positional or config_keys
        ), "option must be named, positional, or config argument."

        assert help is not None, "help required"
        if (flags or positional) and config_keys:
            help += f" Config key: {', '.join(config_keys)}."

        if action == "store_true":
            assert const is None, "action=store_true and const conflict"
            assert default is None, "action=store_true and default conflict"
            action = "store_const"
            const = True
            default = False
        elif action == "store_false":
            assert const is None, "action=store_false and const conflict"
            assert default is None, "action=store_false and default conflict"
            action = "store_const"
            const = False
            default = True

        assert action in ("store", "store_const")

        self.name = name
        self.flags = flags

        self.action = action
        self.choices = choices
        self.config_keys = config_keys
        self.const = const
        self.default = default
        self.group = group
        self.help = ""  # assigned later
        self.metavar = metavar
        self.nargs = nargs
        self.positional = positional
        self.type = type

        self.help = help.format(**self.__dict__)

    def __repr__(self):
        r"""String representation of instance.

        >>> opt = ChatterConfigOption('seed', ['--seed'], help="Base seed.")
        >>> repr(opt).startswith("ChatterConfigOption('seed', [--seed], action='store'")
        True
        >>> opt.help
        'Base seed. Config key: seed.'
        """
        name = self.name
        flags = ", ".join(self.flags)
        kwargs = ", ".join(
            f"{k}={v!r}"
            for k, v in sorted(self.__dict__.items())
            if k not in ("name", "flags")
        )

        return f"ChatterConfigOption({name!r}, [{flags}], {kwargs})"


def _derive_configuration_key(
    config: Union[str, bool],
    *,
    flags: List[str],
) -> Optional[List[str]]:
    if config is True:
        config_keys = [flag.lstrip("-") for flag in flags if flag.startswith("--")]
        if config_keys:
            return config_keys[:1]
        assert False, f"could not autogenerate config key from {flags!r}"
    elif config is False:
        return None
    else:
        assert isinstance(config, str)
        return [config]
