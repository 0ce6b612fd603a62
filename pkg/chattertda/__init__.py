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
