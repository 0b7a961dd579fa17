"""Bounds and delivery schemes for combination networks with end-user caches.

Exact values come back as fractions.Fraction.
"""

import csv
import io
import json
from fractions import Fraction

from . import _core
from ._core import ParameterError, RegimeError

__all__ = [
    "ParameterError",
    "RegimeError",
    "topology",
    "bound",
    "scheme",
    "sweep",
    "coding_matrices",
    "group_divide",
    "elim_closed_form",
    "low_memory_optimum",
    "methods",
]


def _q(x):
    return str(Fraction(x))


def topology(H, r):
    return json.loads(_core.topology(H, r))


def bound(method, H, r, N, M, b=None, perm_sample=0, seed=1):
    value, _, _ = _core.bound(method, H, r, N, _q(M), b, perm_sample, seed)
    return Fraction(value)


def scheme(name, H, r, N, t, demands=None, s=None, verify=False, seed=1):
    out = dict(_core.scheme(name, H, r, N, t, demands, None if s is None else _q(s), verify, seed))
    for key in ("load", "step2_load", "v1_load"):
        out[key] = Fraction(out[key])
    out["plan"] = json.loads(out["plan"])
    return out


def sweep(H, r, N, grid, methods, check=True):
    """Rows of (M, method, value, provenance)."""
    text = _core.sweep(H, r, N, [_q(m) for m in grid], list(methods), check)
    return [
        (Fraction(row["M_frac"]), row["method"], Fraction(row["value_frac"]), row["provenance"])
        for row in csv.DictReader(io.StringIO(text))
    ]


def coding_matrices(H, r, s=None):
    return [json.loads(m) for m in _core.coding_matrices(H, r, None if s is None else _q(s))]


def group_divide(k, seed=1):
    return json.loads(_core.group_divide(k, seed))


def elim_closed_form(H, r):
    return Fraction(_core.elim_closed_form(H, r))


def low_memory_optimum(H, r, N, M):
    return Fraction(_core.low_memory_optimum(H, r, N, _q(M)))


def methods():
    return list(_core.methods())
