# SPDX-License-Identifier: Apache-2.0
"""Python access to the proofpilot prover, feature extractor and trainer."""

import json

from . import _core
from ._core import (
    ParseError,
    ProblemParseError,
    UsageError,
    VectorizerConfig,
    chain_patterns,
    hash_pattern,
    problem_to_tptp,
    term_walks,
    vectorize_clause,
    verify,
)

__all__ = [
    "ParseError",
    "ProblemParseError",
    "UsageError",
    "VectorizerConfig",
    "chain_patterns",
    "hash_pattern",
    "problem_to_tptp",
    "solve",
    "term_walks",
    "train",
    "vectorize_clause",
    "verify",
]


def _paths(inputs):
    if isinstance(inputs, (str, bytes)) or hasattr(inputs, "__fspath__"):
        inputs = [inputs]
    return [str(p) for p in inputs]


def solve(inputs, policy="baseline", seed=0, max_steps=2000, max_seconds=100.0, out=None):
    """Run `policy` on problem files (or directories, or list files); returns the report dict."""
    return json.loads(_core.solve(_paths(inputs), policy, seed, max_steps, max_seconds,
                                  None if out is None else str(out)))


def train(inputs, iterations=10, seed=0, max_steps=2000, out=None, **overrides):
    """Train a policy; keyword arguments are config overrides such as lambda or jobs."""
    return json.loads(_core.train(_paths(inputs), iterations, seed, max_steps,
                                  None if out is None else str(out),
                                  json.dumps(overrides) if overrides else ""))
