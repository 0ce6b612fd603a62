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

import pytest

from ..workers import Workers


def fail_on(value, bad):
    if value == bad:
        raise ValueError(f"bad value {value}")
    return value


@pytest.mark.parametrize("number", [1, 3])
def test_results_are_keyed(number):
    with Workers(number) as pool:
        assert pool.size() == number
        for k in range(20):
            pool.add(("square", k), pow, k, 2)
    assert pool.results == {("square", k): k * k for k in range(20)}


def test_process_pool():
    with Workers(2, processes=True) as pool:
        for k in range(6):
            pool.add(k, pow, 2, k)
    assert pool.results == {k: 2**k for k in range(6)}


def test_wait_returns_results():
    pool = Workers(2)
    pool.add("a", fail_on, 1, bad=0)
    assert pool.wait() == {"a": 1}


def test_exception_is_raised():
    pool = Workers(2)
    for k in range(10):
        pool.add(k, fail_on, k, bad=4)
    with pytest.raises(ValueError, match="bad value 4"):
        pool.wait()


def test_exception_in_context_drains_queue():
    with pytest.raises(RuntimeError):
        with Workers(2) as pool:
            pool.add(0, fail_on, 0, bad=1)
            raise RuntimeError("stop")
