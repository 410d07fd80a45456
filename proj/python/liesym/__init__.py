"""Lie point symmetries of second-order ODE systems.

A target is either a System from parse_system or the name of a registered
case. Results are the same JSON reports the liesym command prints.
"""

import json

from ._liesym import (
    REPORT_SCHEMA,
    Error,
    InputError,
    ParseError,
    System,
    case_system,
    parse_system,
)
from . import _liesym

__all__ = [
    "REPORT_SCHEMA",
    "Error",
    "InputError",
    "ParseError",
    "System",
    "algebra",
    "case_system",
    "cases",
    "parse_system",
    "reduce",
    "run_case",
    "symmetries",
    "verify",
]


def symmetries(target, window=None, radical=False):
    return json.loads(_liesym.symmetries_json(target, window, radical))


def algebra(target, window=None, radical=False):
    return json.loads(_liesym.algebra_json(target, window, radical))


def reduce(target, pivot=3):
    return json.loads(_liesym.reduce_json(target, pivot))


def verify(target, eps=0.3, tol=1e-6, steps=1000, start=None):
    return json.loads(_liesym.verify_json(target, eps, tol, steps, start))


def cases():
    return json.loads(_liesym.cases_json())["cases"]


def run_case(name, window=None):
    return json.loads(_liesym.run_case_json(name, window))
