"""Node sets, poisedness, and synthesis of the system vanishing on them.

A node set of size #I is poised (unisolvent) for the lower set I when its
Vandermonde matrix is invertible; interpolating every border monomial on a
poised node set produces the unique border system whose solution set is
exactly those nodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SchemaError, UnisolvenceError
from .indexsets import LowerSet, border
from .system import BorderSystem, _as_complex, monomial_eval


@dataclass
class PoisednessReport:
    smallest_singular_value: float
    largest_singular_value: float
    condition: float
    poised: bool
    tolerance_used: float

    def to_json(self):
        import math

        return {
            "smallest_singular_value": self.smallest_singular_value,
            "largest_singular_value": self.largest_singular_value,
            "condition": self.condition if math.isfinite(self.condition) else None,
            "poised": self.poised,
            "tolerance_used": self.tolerance_used,
        }


def _check_nodes(I: LowerSet, nodes):
    nodes = [np.asarray(z, dtype=complex) for z in nodes]
    if len(nodes) != len(I):
        raise ValueError(f"{len(nodes)} nodes for a basis of size {len(I)}")
    for z in nodes:
        if z.shape != (I.dimension,):
            raise ValueError(f"node of shape {z.shape}, expected ({I.dimension},)")
        if not np.all(np.isfinite(z)):
            raise ValueError("non-finite node coordinate")
    return nodes


def vandermonde(I: LowerSet, nodes) -> np.ndarray:
    """Node-by-monomial evaluation matrix, columns in canonical order of I."""
    nodes = _check_nodes(I, nodes)
    return np.array([[monomial_eval(b, z) for b in I.members] for z in nodes])


def poisedness(I: LowerSet, nodes, tol: float = 1e-10) -> PoisednessReport:
    """Singular-value test of the Vandermonde matrix.

    Poised iff sigma_min > tol * sigma_max; the relative cut separates true
    rank deficiency from mere ill-conditioning.
    """
    V = vandermonde(I, nodes)
    s = np.linalg.svd(V, compute_uv=False)
    smax, smin = float(s[0]), float(s[-1])
    poised = smin > tol * smax
    cond = smax / smin if poised and smin > 0 else np.inf
    return PoisednessReport(smin, smax, float(cond), poised, tol)


def interpolate(I: LowerSet, nodes, values, tol: float = 1e-10) -> np.ndarray:
    """Coefficients c over I with sum_beta c_beta node_s^beta = values[s].

    Raises UnisolvenceError (carrying the poisedness report) when the node
    set is not poised.
    """
    report = poisedness(I, nodes, tol)
    if not report.poised:
        raise UnisolvenceError("node set is not poised for this lower set", report)
    V = vandermonde(I, nodes)
    lu = scipy.linalg.lu_factor(V)
    return scipy.linalg.lu_solve(lu, np.asarray(values, dtype=complex))


def system_from_nodes(I: LowerSet, nodes, tol: float = 1e-10) -> BorderSystem:
    """The border system whose relations all vanish on the given poised nodes.

    Each border monomial is interpolated over I at the nodes; one LU
    factorization of the Vandermonde matrix serves all right-hand sides.
    """
    nodes = _check_nodes(I, nodes)
    report = poisedness(I, nodes, tol)
    if not report.poised:
        raise UnisolvenceError("node set is not poised for this lower set", report)
    J = border(I)
    V = vandermonde(I, nodes)
    lu = scipy.linalg.lu_factor(V)
    rhs = np.array([[monomial_eval(a, z) for a in J.members] for z in nodes])
    coeffs = scipy.linalg.lu_solve(lu, rhs).T  # rows per border index
    return BorderSystem(I, J, coeffs)


def nodes_from_json(obj, n_expected=None) -> list[np.ndarray]:
    """Parse {"n": ..., "points": [[...], ...]}; bare reals accepted."""
    if not isinstance(obj, dict) or "points" not in obj:
        raise SchemaError("expected an object with a 'points' array")
    n = int(obj.get("n", n_expected or 0))
    if n < 1:
        raise SchemaError("missing or invalid field", "n")
    if n_expected is not None and n != n_expected:
        raise SchemaError(f"points have dimension {n}, index set has {n_expected}", "n")
    points = obj["points"]
    if not isinstance(points, list):
        raise SchemaError("must be an array", "points")
    out = []
    for s, pt in enumerate(points):
        path = f"points[{s}]"
        if not isinstance(pt, list) or len(pt) != n:
            raise SchemaError(f"expected {n} coordinates", path)
        out.append(
            np.array([_as_complex(c, f"{path}[{j}]") for j, c in enumerate(pt)])
        )
    return out


def parse_nodes(text, n_expected=None):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return nodes_from_json(obj, n_expected)
