"""Percolation and first-passage experiments on the n-cube.

Thin Python layer over the C++ core.  ``run`` takes the same fields as the
CLI and returns the JSON result document as a dict.
"""

import json

from ._cubeperc import (
    CapacityError,
    InvalidInput,
    __version__,
    btp_mean,
    erlang_tail,
    exact_connection_probability,
    extinction_probability,
    ks_two_sample,
    mc_connection_probability,
    oriented_fpp_time,
    richardson_top_time,
    theorem_constants,
    wilson_interval,
)
from . import _cubeperc

__all__ = [
    "CapacityError",
    "InvalidInput",
    "__version__",
    "btp_mean",
    "erlang_tail",
    "exact_connection_probability",
    "extinction_probability",
    "ks_two_sample",
    "mc_connection_probability",
    "oriented_fpp_time",
    "overlap_table",
    "richardson_top_time",
    "run",
    "samples_csv",
    "theorem_constants",
    "wilson_interval",
]


def overlap_table(n, method="dp"):
    """Return (f, F) as lists of Python ints."""
    f, F = _cubeperc.overlap_table(n, method)
    return [int(x) for x in f], [int(x) for x in F]


def run(kind, reps=1000, seed=0, jobs=1, options=None, **params):
    """Run one experiment, e.g. ``run("percolate", n=3, c=1.5, reps=10000)``.

    Numeric keyword arguments become parameters; flags and strings such as
    ``oriented`` or ``what`` go in ``options``.
    """
    spec = {
        "kind": kind,
        "params": {k: float(v) for k, v in params.items()},
        "options": {k: str(v).lower() if isinstance(v, bool) else str(v) for k, v in (options or {}).items()},
        "reps": int(reps),
        "seed": int(seed),
        "jobs": int(jobs),
        "out": "",
        "csv": "",
    }
    return json.loads(_cubeperc.run_json(json.dumps(spec)))


def samples_csv(result):
    """CSV text of a result's raw samples, identical to the CLI's --csv output."""
    return _cubeperc.samples_csv_json(json.dumps(result))
