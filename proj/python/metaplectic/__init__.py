"""Metaplectic covers of GL(r) at tame places: Hilbert symbols, torus covers,
semi-Whittaker dimensions and certified orbit derivations."""

import json

from . import _core
from ._core import MetaplecticError, hilbert, tame_primes, theta_orbit, vanishes

__all__ = [
    "MetaplecticError",
    "check_trace",
    "derive_orbit_trace",
    "hilbert",
    "run",
    "semi_whittaker_dim",
    "subgroup_index",
    "tame_primes",
    "theta_orbit",
    "vanishes",
]


def semi_whittaker_dim(n, q, c, lambda_, first_formula=False):
    return json.loads(_core.semi_whittaker_dim(n, q, c, list(lambda_), first_formula))


def subgroup_index(n, q, c, r, num, den, levi=None):
    return _core.subgroup_index(n, q, c, r, num, den, None if levi is None else list(levi))


def derive_orbit_trace(n, orbit):
    return json.loads(_core.derive_orbit_trace(n, list(orbit)))


def check_trace(trace):
    """Diagnostics for a trace given as a dict or JSON text; empty when it checks."""
    return _core.check_trace(trace if isinstance(trace, str) else json.dumps(trace))


def run(*args):
    """Runs a CLI subcommand in-process; returns (exit code, parsed JSON or text, stderr)."""
    code, out, err = _core.run_cli([str(a) for a in args])
    try:
        return code, json.loads(out), err
    except ValueError:
        return code, out, err
