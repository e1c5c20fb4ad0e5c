# coding: utf-8
#
#    Project: pmodulus, p-modulus of families of objects on graphs
#
#    Copyright (C) 2026 the pmodulus developers
#
#    Distributed under the MIT license, see the LICENSE file.

"""Command line applications"""
