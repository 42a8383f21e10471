"""Bisimulation, simulation and temporal-logic checks on finite coalgebras."""

import json

from ._core import (
    ConfigError,
    EnumerationTooLarge,
    Error,
    NotApplicable,
    ParseError,
    System,
    UnsupportedConstructor,
    ValidationError,
    run_cli,
)
from ._core import run_suites_json as _run_suites_json

__all__ = [
    "ConfigError",
    "EnumerationTooLarge",
    "Error",
    "NotApplicable",
    "ParseError",
    "System",
    "UnsupportedConstructor",
    "ValidationError",
    "run_cli",
    "run_suites",
]


def run_suites(suite="all", seed=42, trials=500, max_states=4, depth=3, operators=()):
    """Run randomised transfer suites; returns one report dict per suite."""
    return json.loads(_run_suites_json(suite, seed, trials, max_states, depth, list(operators)))
