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

from concurrent.futures import ProcessPoolExecutor
from queue import Queue, Empty
from threading import Thread, RLock
import logging
import sys
import traceback

LOGGER = logging.getLogger("chattertda")


def worker(queue, pool):
    """
    Run work items from the queue until the sentinel
    None value is hit
    """
    while True:
        key, work, args, kwargs = queue.get(True)
        if not work:
            break
        try:
            pool.store(key, pool.run(work, args, kwargs))
        except:  # noqa: E722
            pool.raise_exception(sys.exc_info())
            break


class Workers(object):
    """
    Create a thread-pool which can be given work via an
    add method and will run until work is complete.

    With ``processes=True`` and more than one worker each thread hands its
    items to a shared process pool, so CPU bound work runs in parallel.
    Results are collected per key, independent of the completion order.
    """

    def __init__(self, number, processes=False):
        assert number >= 1
        self.q = Queue()
        self.lock = RLock()
        self.exceptions = []
        self.results = {}
        self.executor = (
            ProcessPoolExecutor(max_workers=number)
            if processes and number > 1
            else None
        )
        self.workers = [
            Thread(target=worker, args=(self.q, self), name=f"Worker-{n}")
            for n in range(number)
        ]
        for w in self.workers:
            w.start()

    def run(self, work, args, kwargs):
        if self.executor is None:
            return work(*args, **kwargs)
        return self.executor.submit(work, *args, **kwargs).result()

    def store(self, key, result):
        with self.lock:
            self.results[key] = result

    def add(self, key, work, *args, **kwargs):
        """
        Add in a method and the arguments to be used
        when running it, the result is stored under key
        """
        with self.lock:
            if not self.exceptions:
                self.q.put((key, work, args, kwargs))

    def add_sentinels(self):
        """
        Add the sentinels to the end of the queue so
        the threads know to stop
        """
        with self.lock:
            for _ in self.workers:
                self.q.put((None, None, [], dict()))

    def drain(self):
        """
        Drain the queue
        """
        with self.lock:
            while True:
                try:
                    self.q.get(False)
                except Empty:
                    break
            self.add_sentinels()

    def raise_exception(self, exc_info):
        """
        A thread has failed and needs to raise an exception.
        """
        with self.lock:
            self.drain()
            self.exceptions.append(exc_info)

    def size(self):
        """
        Run the size of the thread pool
        """
        return len(self.workers)

    def wait(self):
        """
        Wait until all work is complete, return the results by key
        """
        self.add_sentinels()
        for w in self.workers:
            # Allow interrupts in Thread.join
            while w.is_alive():
                w.join(timeout=1)
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None
        for exc_type, exc_obj, exc_trace in self.exceptions:
            LOGGER.debug(
                "".join(traceback.format_exception(exc_type, exc_obj, exc_trace))
            )
        if self.exceptions:
            raise self.exceptions[0][1]
        return self.results

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_val is not None:
            self.drain()
        self.wait()
