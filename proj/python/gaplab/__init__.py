"""Distinct gap lengths of periodic functions sampled along arithmetic progressions.

Numbers go in as strings ("3/4", "0.25", "pi/16") and come back as strings:
"p/q" for exact results, a round-trip decimal for approximate ones.
Reports are plain dicts.
"""

import json

from . import _gaplab
from ._gaplab import (
    DEFAULT_BITS,
    DEFAULT_TOLERANCE,
    GaplabError,
    circle_gaps,
    evaluate,
    frac,
    reduce_mod_period,
)

__all__ = [
    "DEFAULT_BITS",
    "DEFAULT_TOLERANCE",
    "GaplabError",
    "circle_gaps",
    "construct_c2",
    "construct_main",
    "evaluate",
    "frac",
    "gap_report",
    "reduce_mod_period",
    "run_cli",
    "verify",
]


def _fn_spec(fn):
    # builtin name, or a piecewise linear function given as a dict
    return fn if isinstance(fn, str) else json.dumps(fn)


def gap_report(fn, alpha, N, beta="0", mode="approx", bits=DEFAULT_BITS, tol=DEFAULT_TOLERANCE):
    return json.loads(_gaplab.gap_report(_fn_spec(fn), str(alpha), int(N), str(beta), mode, bits, tol))


def verify(statement, mode="approx", bits=DEFAULT_BITS, tol=DEFAULT_TOLERANCE, **params):
    """verify("three_gap", alpha="sqrt2", N=100) and so on."""
    if "fn" in params:
        params["fn"] = _fn_spec(params["fn"])
    params = {k: str(v) for k, v in params.items()}
    return json.loads(_gaplab.verify(statement, params, mode, bits, tol))


def construct_main(n):
    return json.loads(_gaplab.construct_main(int(n)))


def construct_c2(n, fn="cosine", bits=DEFAULT_BITS, tol=DEFAULT_TOLERANCE):
    return json.loads(_gaplab.construct_c2(int(n), fn, bits, tol))


def run_cli(*args):
    """Runs the command line tool in-process. Returns (exit_code, stdout, stderr)."""
    return _gaplab.run_cli([str(a) for a in args])
