"""Multiplication matrices for the coordinate functions, and commutation checks.

A_i represents multiplication by x_i on span{x^beta : beta in I}, with any
product landing outside I rewritten through the border relations.  Row
beta of A_i is either a unit row (when beta + e_i stays in I) or the
coefficient row of the relation for beta + e_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .indexsets import add_unit
from .system import BorderSystem


@dataclass
class MultMatrixFamily:
    """The n dense #I x #I matrices, plus per-matrix row bookkeeping."""

    matrices: list[np.ndarray] = field(repr=False)
    unit_row_count: list[int]
    coeff_row_count: list[int]

    def __len__(self):
        return len(self.matrices)

    @property
    def size(self):
        return self.matrices[0].shape[0]


@dataclass
class CommutationReport:
    defects: np.ndarray
    max_defect: float
    tolerance_used: float
    commuting: bool

    def to_json(self):
        return {
            "defects": self.defects.tolist(),
            "max_defect": self.max_defect,
            "tolerance_used": self.tolerance_used,
            "commuting": self.commuting,
        }


def build_matrix(sys: BorderSystem, i: int) -> np.ndarray:
    """Multiplication matrix for coordinate i (0-based).

    Row indexed by beta is the expansion of x_i * x^beta over the basis:
    a single 1 at position(beta + e_i) when the shift stays inside I, the
    stored coefficient row when it crosses into the border.
    """
    I, J = sys.I, sys.J
    size = len(I)
    A = np.zeros((size, size), dtype=complex)
    for r, beta in enumerate(I.members):
        shifted = add_unit(beta, i)
        if shifted in I:
            A[r, I.position[shifted]] = 1.0
        elif shifted in J:
            A[r] = sys.relation_row(shifted)
        else:
            # unreachable when J = border(I)
            raise AssertionError(f"{shifted} neither in I nor in its border")
    return A


def build_family(sys: BorderSystem) -> MultMatrixFamily:
    """All n multiplication matrices with unit/coefficient row counts."""
    matrices, units, coeffs = [], [], []
    for i in range(sys.dimension):
        matrices.append(build_matrix(sys, i))
        inside = sum(1 for beta in sys.I.members if add_unit(beta, i) in sys.I)
        units.append(inside)
        coeffs.append(len(sys.I) - inside)
    return MultMatrixFamily(matrices, units, coeffs)


def commutation_report(fam: MultMatrixFamily, tol: float) -> CommutationReport:
    """Pairwise commutator defects, Frobenius-normalized with floor 1."""
    n = len(fam)
    defects = np.zeros((n, n))
    norms = [np.linalg.norm(A) for A in fam.matrices]
    for i in range(n):
        for j in range(i + 1, n):
            Ai, Aj = fam.matrices[i], fam.matrices[j]
            num = np.linalg.norm(Ai @ Aj - Aj @ Ai)
            defects[i, j] = defects[j, i] = num / max(1.0, norms[i] * norms[j])
    max_defect = float(defects.max()) if n else 0.0
    return CommutationReport(defects, max_defect, tol, max_defect <= tol)
