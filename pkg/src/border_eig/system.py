"""Border-form algebraic systems: one relation per border index.

A system expresses every border monomial as a linear combination of the
basis monomials, x^alpha = sum_beta a[alpha, beta] x^beta.  Coefficients
live in C (doubles for each part); real inputs are embedded with zero
imaginary part.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaError, UnknownRelationError
from .indexsets import BorderSet, LowerSet, border, index_set_from_json


@dataclass
class BorderSystem:
    """Coefficients of the border relations over a lower set.

    coeffs[r] is the length-#I coefficient row of the relation indexed by
    J.members[r], entries following the canonical order of I.
    """

    I: LowerSet
    J: BorderSet
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (len(self.J), len(self.I)):
            raise ValueError(
                f"coefficient block has shape {self.coeffs.shape}, "
                f"expected ({len(self.J)}, {len(self.I)})"
            )
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("non-finite coefficient")
        self._row = {alpha: r for r, alpha in enumerate(self.J.members)}

    @property
    def dimension(self):
        return self.I.dimension

    def relation_row(self, alpha) -> np.ndarray:
        alpha = tuple(alpha)
        if alpha not in self._row:
            raise UnknownRelationError(f"{alpha} is not a border index of this system")
        return self.coeffs[self._row[alpha]]


def monomial_eval(beta, z) -> complex:
    """z^beta as a power product; the empty product (and 0^0) is 1."""
    out = 1.0 + 0.0j
    for b, zi in zip(beta, z):
        if b:
            out *= complex(zi) ** b
    return out


def basis_values(I: LowerSet, z) -> np.ndarray:
    """Evaluation vector (z^beta for beta in I), canonical order."""
    return np.array([monomial_eval(b, z) for b in I.members])


def eval_relation(sys: BorderSystem, alpha, z) -> complex:
    """P_alpha(z) = z^alpha - sum_beta a[alpha, beta] z^beta."""
    row = sys.relation_row(alpha)
    return monomial_eval(alpha, z) - row @ basis_values(sys.I, z)


def relation_values(sys: BorderSystem, z) -> np.ndarray:
    """All P_alpha(z), alpha over the border in canonical order."""
    v = basis_values(sys.I, z)
    mono = np.array([monomial_eval(a, z) for a in sys.J.members])
    return mono - sys.coeffs @ v


def residual(sys: BorderSystem, z) -> float:
    """Relative residual: max_alpha |P_alpha(z)| / max(1, max_beta |z^beta|).

    The scaling keeps the measure meaningful for roots of large magnitude.
    """
    v = basis_values(sys.I, z)
    scale = max(1.0, float(np.max(np.abs(v))))
    mono = np.array([monomial_eval(a, z) for a in sys.J.members])
    return float(np.max(np.abs(mono - sys.coeffs @ v))) / scale


def _as_complex(value, path):
    """Accept [re, im] or a bare real number."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in value)
    ):
        return complex(value[0], value[1])
    raise SchemaError(f"expected a number or [re, im], got {value!r}", path)


def system_from_json(obj, size_cap=None) -> BorderSystem:
    """Build a BorderSystem from its parsed JSON object."""
    kwargs = {} if size_cap is None else {"size_cap": size_cap}
    if not isinstance(obj, dict):
        raise SchemaError("system must be a JSON object")
    if "index_set" not in obj:
        raise SchemaError("missing field", "index_set")
    I = index_set_from_json(obj["index_set"], **kwargs)
    J = border(I, **kwargs)
    relations = obj.get("relations")
    if not isinstance(relations, list):
        raise SchemaError("missing or non-array field", "relations")
    coeffs = np.zeros((len(J), len(I)), dtype=complex)
    seen = set()
    row_of = {alpha: r for r, alpha in enumerate(J.members)}
    for k, rel in enumerate(relations):
        path = f"relations[{k}]"
        if not isinstance(rel, dict) or "alpha" not in rel or "coeffs" not in rel:
            raise SchemaError("each relation needs 'alpha' and 'coeffs'", path)
        alpha = tuple(int(a) for a in rel["alpha"])
        if alpha in I:
            raise SchemaError(f"alpha {list(alpha)} inside I", f"{path}.alpha")
        if alpha not in row_of:
            raise SchemaError(
                f"alpha {list(alpha)} is not in the border of I", f"{path}.alpha"
            )
        if alpha in seen:
            raise SchemaError(f"duplicate relation for alpha {list(alpha)}", path)
        seen.add(alpha)
        row = rel["coeffs"]
        if not isinstance(row, list) or len(row) != len(I):
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise SchemaError(
                f"coefficient row has length {got}, expected {len(I)}", f"{path}.coeffs"
            )
        coeffs[row_of[alpha]] = [
            _as_complex(c, f"{path}.coeffs[{j}]") for j, c in enumerate(row)
        ]
    missing = [a for a in J.members if a not in seen]
    if missing:
        raise SchemaError(
            f"missing relations for border indices {[list(a) for a in missing]}",
            "relations",
        )
    return BorderSystem(I, J, coeffs)


def parse_system(text, size_cap=None) -> BorderSystem:
    """Parse a system from JSON text or bytes."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return system_from_json(obj, size_cap)


def system_to_json(sys: BorderSystem) -> dict:
    """JSON object for a system; scalars always as [re, im] pairs."""
    return {
        "index_set": sys.I.to_json(),
        "basis": [list(b) for b in sys.I.members],
        "relations": [
            {
                "alpha": list(alpha),
                "coeffs": [[c.real, c.imag] for c in sys.coeffs[r]],
            }
            for r, alpha in enumerate(sys.J.members)
        ],
    }


def serialize_system(sys: BorderSystem) -> bytes:
    return json.dumps(system_to_json(sys), indent=2).encode()
