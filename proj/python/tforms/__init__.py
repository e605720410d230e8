"""Python access to the tforms C++ core.

Functions that return structured data decode the JSON produced by the core.
"""

import json

from . import _tforms
from ._tforms import ConsistencyError, DomainError, Error, PrecisionError, point_counts, toroidal_dimension

__all__ = [
    "ConsistencyError",
    "DomainError",
    "Error",
    "PrecisionError",
    "analyze",
    "graph",
    "lpolynomials",
    "phi_p_tally",
    "point_counts",
    "rh_verdict",
    "toroidal_dimension",
]


def analyze(field, q=2, depth=16, iterations=12, precision=32):
    """Full report for one field as a dict (same schema as `tforms analyze`)."""
    return json.loads(_tforms.analyze(field, q, depth, iterations, precision))


def lpolynomials(field):
    return json.loads(_tforms.lpolynomials(field))


def graph(field, q=2):
    return json.loads(_tforms.graph_json(field, q))


def phi_p_tally(field, place, precision=32):
    """Vertex -> multiplicity for Phi_P(c0) at the given place (1-based)."""
    return json.loads(_tforms.phi_p_tally(field, place, precision))


def rh_verdict(lam, q):
    return json.loads(_tforms.rh_verdict(lam, q))
