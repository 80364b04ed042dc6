"""Python access to the agealg library.

Templates are given either as a builtin name such as ``"sym:3"`` or as
template JSON text. Integers are exact Python ints.
"""

import json

from . import _agealg
from ._agealg import (
    ConsistencyError,
    FitError,
    InputError,
    UndeterminedError,
    __version__,
    builtins,
    contract,
    reduced_trees,
)

__all__ = [
    "ConsistencyError",
    "FitError",
    "InputError",
    "UndeterminedError",
    "__version__",
    "builtins",
    "components",
    "contract",
    "hilbert",
    "profile",
    "reduced_trees",
    "run_cli",
    "shuffle_constant",
    "template",
]


def _source(t):
    return t if isinstance(t, str) else json.dumps(t)


def _int(v):
    return int(v)


def profile(t, degree=10):
    """phi(0), ..., phi(degree)."""
    return [_int(c) for c in json.loads(_agealg.profile_json(_source(t), degree))]


def components(t, d_max=6):
    """Minimal monomorphic decomposition at block level, with k, fatness and n0."""
    return json.loads(_agealg.components_json(_source(t), d_max))


def hilbert(t, degree=14, guard=5):
    """Normalized Hilbert series form plus its quasi-polynomial."""
    return json.loads(_agealg.hilbert_json(_source(t), degree, guard))


def template(t):
    """Template JSON as a dict."""
    return json.loads(_agealg.template_json(_source(t)))


def shuffle_constant(t1, t2, t):
    return int(_agealg.shuffle_constant(t1, t2, t))


def run_cli(*args):
    """Runs the command line front-end in process; returns (exit code, stdout, stderr)."""
    return _agealg.run_cli([str(a) for a in args])
