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
import json
import logging
import sys
import traceback

from argparse import ArgumentParser

from .configuration import (
    COMMANDS,
    ExperimentConfig,
    argument_parser_setup,
    merge_options_and_set_defaults,
    parse_config_file,
    parse_config_into_dict,
)
from .errors import ChatterError, StageInputMissing
from .pipeline import COMMAND_RUNNERS
from .utils import configure_logging, switch_to_logging_format_with_threads
from .version import __version__

LOGGER = logging.getLogger("chattertda")


EXIT_SUCCESS = 0
EXIT_CMDLINE_ERROR = 1
EXIT_STAGE_ERROR = 2
EXIT_READ_ERROR = 64
EXIT_WRITE_ERROR = 128


def fail(exit_code: int, err: BaseException, command=None, log_traceback=True):
    """Log the error, print it as JSON on stdout and exit."""
    if log_traceback:
        LOGGER.error(f"{traceback.format_exc()}\n{err}")
    else:
        LOGGER.error(str(err))
    document = {
        "error": type(err).__name__,
        "message": str(err),
        "command": command,
    }
    sys.stdout.write(json.dumps(document, sort_keys=True) + "\n")
    sys.exit(exit_code)


class CommandLineError(Exception):
    pass


class _ArgumentParser(ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        fail(EXIT_CMDLINE_ERROR, CommandLineError(message), log_traceback=False)


def create_argument_parser():
    """Create the argument parser."""

    parser = _ArgumentParser(add_help=False)
    parser.prog = "chattertda"
    parser.usage = "chattertda [options] command"
    parser.description = (
        "Classify machining chatter of a turning model with persistent homology."
    )

    parser.epilog = (
        "Every stage reads its inputs from and writes its results to the "
        "output directory."
    )

    options = parser.add_argument_group("Options")
    options.add_argument(
        "-h", "--help", help="Show this help message, then exit.", action="help"
    )
    options.add_argument(
        "--version",
        help="Print the version number, then exit.",
        action="store_true",
        dest="version",
        default=False,
    )

    argument_parser_setup(parser, options)

    return parser


def main(args=None):
    configure_logging()
    parser = create_argument_parser()
    cli_options = parser.parse_args(args=args)

    if cli_options.version:
        sys.stdout.write(f"chattertda {__version__}\n")
        sys.exit(EXIT_SUCCESS)

    # load the config
    cfg_name = getattr(cli_options, "config", None)
    cfg_options = {}
    if cfg_name is not None:
        try:
            with io.open(cfg_name, encoding="UTF-8") as cfg_file:
                cfg_options = parse_config_into_dict(
                    parse_config_file(cfg_file, filename=cfg_name)
                )
        except OSError as e:
            fail(EXIT_READ_ERROR, e, log_traceback=False)
        except (SyntaxError, ValueError) as e:
            fail(EXIT_CMDLINE_ERROR, e, log_traceback=False)

    options = merge_options_and_set_defaults([cfg_options, cli_options.__dict__])
    # Reconfigure the logging.
    if options.workers > 1:
        switch_to_logging_format_with_threads()

    if options.verbose:
        LOGGER.setLevel(logging.DEBUG)

    command = options.command
    if command is None:
        fail(
            EXIT_CMDLINE_ERROR,
            CommandLineError("a command is required, see --help."),
            log_traceback=False,
        )
    if command not in COMMANDS:
        fail(
            EXIT_CMDLINE_ERROR,
            CommandLineError(
                f"unknown command {command!r}, choose from {', '.join(COMMANDS)}."
            ),
            log_traceback=False,
        )

    try:
        config = ExperimentConfig.from_options(options)
    except ChatterError as e:
        fail(EXIT_CMDLINE_ERROR, e, command, log_traceback=False)

    LOGGER.info(f"Running {command} into {config.out}...")
    try:
        COMMAND_RUNNERS[command](config, options)
    except StageInputMissing as e:
        fail(EXIT_READ_ERROR, e, command, log_traceback=False)
    except ChatterError as e:
        fail(EXIT_STAGE_ERROR, e, command)
    except ValueError as e:
        # malformed file of an earlier stage
        fail(EXIT_READ_ERROR, e, command)
    except OSError as e:
        fail(EXIT_WRITE_ERROR, e, command)

    sys.exit(EXIT_SUCCESS)


if __name__ == "__main__":
    main()
