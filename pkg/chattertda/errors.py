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

"""
Exceptions raised by the chattertda pipeline.

Every error that the command line turns into a machine readable failure
derives from :class:`ChatterError`.
"""


class ChatterError(Exception):
    """Base class of all chattertda errors."""


class DomainError(ChatterError, ValueError):
    """A parameter is outside of the domain of an operation."""


class SimulationDiverged(ChatterError):
    """The integrated displacement exceeded the blow-up bound."""

    def __init__(self, message: str, time: float = None, value: float = None):
        super().__init__(message)
        self.time = time
        self.value = value


class InsufficientSamples(ChatterError):
    """A time series is too short for the requested operation."""


class ZeroVariance(ChatterError):
    """A time series is constant, so it has no autocorrelation."""


class CapacityExceeded(ChatterError):
    """A point cloud has more points than the configured Rips limit."""


class InvalidDiagram(ChatterError):
    """A persistence diagram violates its invariants."""


class SingleClass(ChatterError):
    """The training data only contains one label."""


class StageInputMissing(ChatterError):
    """A pipeline stage did not find a file produced by an earlier stage."""

    def __init__(self, path: str, stage: str):
        super().__init__(
            f"Missing input {path!r}, run the {stage!r} command first."
        )
        self.path = path
        self.stage = stage
