"""Monotone-query stochastic convex minimization.

Thin wrappers over the compiled core. Runs and sweeps come back as the same
JSON documents the CLI writes.
"""

import csv
import io
import json

from . import _core
from ._core import (
    CertificationFailure,
    MonotonicityViolation,
    certify,
    evaluate,
    objective_info,
    required_samples,
)

__all__ = [
    "CertificationFailure",
    "MonotonicityViolation",
    "certify",
    "evaluate",
    "fit_regret_slope",
    "objective_info",
    "required_samples",
    "run",
    "sweep",
    "verify",
]

DEFAULT_OBJECTIVE = "quad:center=1,curv=1,lo=0,hi=2"


def run(algo="adaptive", T=10000, *, objective=DEFAULT_OBJECTIVE, seed=0,
        noise="uniform", noise_diameter=1.0, trace=False, **overrides):
    """Run one algorithm and return the run document as a dict.

    Keyword overrides (delta, delta1, gamma, q, p, epsilon, n, eta, iota,
    delta_floor, kw_a, kw_c, kw_x1, kappa, deterministic, lenient) replace the
    horizon defaults. With trace=True the dict gains a "trace" list of rows.
    """
    text, trace_csv = _core.run(algo, objective, int(T), int(seed), noise,
                                float(noise_diameter), json.dumps(overrides),
                                bool(trace))
    doc = json.loads(text)
    if trace:
        doc["trace"] = list(csv.DictReader(io.StringIO(trace_csv)))
    return doc


def sweep(config, workers=1, out_dir=None):
    """Run a sweep from a config dict (or JSON text). Returns the summary."""
    if not isinstance(config, str):
        config = json.dumps(config)
    return json.loads(_core.sweep(config, int(workers), str(out_dir or "")))


def fit_regret_slope(points):
    """Least-squares slope of log regret against log T."""
    slope, intercept, r2 = _core.fit_regret_slope([(float(t), float(r)) for t, r in points])
    return {"slope": slope, "intercept": intercept, "r2": r2}


def verify():
    """Run the built-in property checks. Returns [(name, passed, detail)]."""
    return _core.verify()
