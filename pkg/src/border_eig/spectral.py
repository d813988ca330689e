"""Eigendecomposition, semisimplicity, the maximality criterion, root recovery.

The solver reduces a border system to eigenproblems of its multiplication
matrices.  When the family commutes and every matrix is semisimple, the
joint eigenvectors are exactly the evaluation vectors of the roots and the
system attains the maximal count of #I distinct solutions; the criterion
checker decides that predicate independently of root extraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import EigenConvergenceError
from .matrices import CommutationReport, MultMatrixFamily, build_family, commutation_report
from .system import BorderSystem, basis_values, relation_values, residual


@dataclass
class Config:
    """Tolerances and knobs for the criterion and the solver."""

    tol_commute: float = 1e-8
    tol_cluster: float = 1e-7
    tol_rank: float = 1e-10
    tol_dedup: float = 1e-6
    tol_accept: float = 1e-6
    tol_poised: float = 1e-10
    tol_eig: float = 1e-8
    seed: int = 42
    refine_iters: int = 3
    max_retries: int = 5
    size_cap: int = 10_000
    force_generic: bool = False  # test hook: skip the single-matrix shortcut

    def with_overrides(self, **kwargs):
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


@dataclass
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)  # unit-norm columns
    residuals: np.ndarray
    vector_condition: float


@dataclass
class SemisimplicityReport:
    clusters: list[tuple[complex, int, int]]  # (representative, algebraic, geometric)
    semisimple: bool
    worst_gap: float

    def to_json(self):
        return {
            "clusters": [
                {
                    "eigenvalue": [lam.real, lam.imag],
                    "algebraic": alg,
                    "geometric": geo,
                }
                for lam, alg, geo in self.clusters
            ],
            "semisimple": self.semisimple,
            "worst_gap": self.worst_gap if math.isfinite(self.worst_gap) else None,
        }


@dataclass
class Verdict:
    commuting: bool
    all_semisimple: bool
    maximal: bool
    commutation: CommutationReport
    semisimplicity: list[SemisimplicityReport]

    def to_json(self):
        return {
            "commuting": self.commuting,
            "all_semisimple": self.all_semisimple,
            "maximal": self.maximal,
        }


@dataclass
class SolutionSet:
    roots: list[np.ndarray]
    residuals: list[float]
    flagged: list[bool]  # residual above tol_accept after refinement
    distinct_count: int
    verdict: Verdict
    strategy: str
    diagnostics: dict

    def to_json(self, tol_real=1e-10):
        return {
            "verdict": self.verdict.to_json(),
            "strategy": self.strategy,
            "roots": [
                {
                    "z": [[c.real, c.imag] for c in z],
                    "residual": r,
                    "real": bool(np.max(np.abs(z.imag)) <= tol_real),
                    "flagged": flag,
                }
                for z, r, flag in zip(self.roots, self.residuals, self.flagged)
            ],
            "distinct_count": self.distinct_count,
            "diagnostics": self.diagnostics,
        }


def eigen(A: np.ndarray, tol_eig: float = 1e-8) -> EigenDecomposition:
    """Dense nonsymmetric eigendecomposition with unit-norm eigenvectors.

    Raises EigenConvergenceError when the underlying QR iteration fails.
    """
    A = np.asarray(A, dtype=complex)
    if not np.all(np.isfinite(A)):
        raise ValueError("non-finite matrix entry")
    try:
        w, V = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:
        raise EigenConvergenceError(f"eigensolver did not converge: {exc}") from exc
    V = V / np.linalg.norm(V, axis=0, keepdims=True)
    res = np.linalg.norm(A @ V - V * w, axis=0)
    try:
        cond = float(np.linalg.cond(V))
    except np.linalg.LinAlgError:
        cond = math.inf
    scale = tol_eig * (1.0 + np.linalg.norm(A))
    if np.any(res > scale):
        raise EigenConvergenceError(
            f"eigenpair residual {res.max():.3e} exceeds {scale:.3e}",
            converged_size=int(np.sum(res <= scale)),
        )
    return EigenDecomposition(w, V, res, cond)


def _cluster(values: np.ndarray, delta: float) -> list[list[int]]:
    """Single-linkage clustering of complex values at distance delta."""
    k = len(values)
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(k):
        for j in range(i + 1, k):
            if abs(values[i] - values[j]) <= delta:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    # deterministic order: by the smallest member index
    return sorted(groups.values(), key=lambda g: g[0])


def semisimplicity(A: np.ndarray, dec: EigenDecomposition, cfg: Config) -> SemisimplicityReport:
    """Compare algebraic and geometric multiplicities per eigenvalue cluster.

    Geometric multiplicity is #I - rank(A - lambda*Id) with the rank cut at
    cfg.tol_rank relative to the largest singular value.
    """
    A = np.asarray(A, dtype=complex)
    size = A.shape[0]
    delta = cfg.tol_cluster * (1.0 + np.linalg.norm(A))
    groups = _cluster(dec.eigenvalues, delta)
    clusters = []
    ok = True
    for g in groups:
        lam = complex(np.mean(dec.eigenvalues[g]))
        alg = len(g)
        s = np.linalg.svd(A - lam * np.eye(size), compute_uv=False)
        cut = cfg.tol_rank * (s[0] if s[0] > 0 else 1.0)
        rank = int(np.sum(s > cut))
        geo = size - rank
        clusters.append((lam, alg, geo))
        if geo != alg:
            ok = False
    reps = [c[0] for c in clusters]
    worst = math.inf
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            worst = min(worst, abs(reps[i] - reps[j]))
    return SemisimplicityReport(clusters, ok, worst)


def criterion(fam: MultMatrixFamily, cfg: Config = Config()) -> Verdict:
    """The maximality predicate: commuting family with every matrix semisimple."""
    comm = commutation_report(fam, cfg.tol_commute)
    reports = []
    all_ss = True
    for A in fam.matrices:
        dec = eigen(A, cfg.tol_eig)
        rep = semisimplicity(A, dec, cfg)
        reports.append(rep)
        all_ss = all_ss and rep.semisimple
    return Verdict(comm.commuting, all_ss, comm.commuting and all_ss, comm, reports)


def _gaps_separated(w: np.ndarray, delta: float) -> bool:
    """True when all pairwise eigenvalue distances exceed delta."""
    k = len(w)
    for i in range(k):
        for j in range(i + 1, k):
            if abs(w[i] - w[j]) <= delta:
                return False
    return True


def _jacobian(sys: BorderSystem, z: np.ndarray) -> np.ndarray:
    """d P_alpha / d x_j for all border relations, at z."""
    n = sys.dimension
    rows = []
    basis = sys.I.members
    for r, alpha in enumerate(sys.J.members):
        row = np.zeros(n, dtype=complex)
        for j in range(n):
            row[j] = _mono_derivative(alpha, j, z)
            acc = 0.0 + 0.0j
            for c, beta in zip(sys.coeffs[r], basis):
                if c != 0 and beta[j]:
                    acc += c * _mono_derivative(beta, j, z)
            row[j] -= acc
        rows.append(row)
    return np.array(rows)


def _mono_derivative(alpha, j, z) -> complex:
    if alpha[j] == 0:
        return 0.0 + 0.0j
    out = complex(alpha[j])
    for i, a in enumerate(alpha):
        e = a - 1 if i == j else a
        if e:
            out *= complex(z[i]) ** e
    return out


def _refine(sys: BorderSystem, z: np.ndarray, iters: int) -> np.ndarray:
    """Gauss-Newton polish of a root; steps that worsen the residual are rejected."""
    current = residual(sys, z)
    for _ in range(iters):
        r = relation_values(sys, z)
        J = _jacobian(sys, z)
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        cand = z + step
        cand_res = residual(sys, cand)
        if not np.all(np.isfinite(cand)) or cand_res > current:
            break
        z, current = cand, cand_res
        if current == 0.0:
            break
    return z


def _dedup(roots: list[np.ndarray], tol_dedup: float) -> list[int]:
    """Indices of cluster representatives, first-seen order."""
    if not roots:
        return []
    scale = 1.0 + max(float(np.max(np.abs(z))) for z in roots)
    reps: list[int] = []
    for k, z in enumerate(roots):
        if all(np.linalg.norm(z - roots[r]) > tol_dedup * scale for r in reps):
            reps.append(k)
    return reps


def solve(sys: BorderSystem, cfg: Config = Config()) -> SolutionSet:
    """Recover the solutions of a border system through eigenvectors.

    Strategy ladder: use a single matrix when one has fully separated
    eigenvalues, otherwise a seeded random real combination of the family
    (retried up to cfg.max_retries).  Coordinates come from Rayleigh
    quotients of each eigenvector, then optional Gauss-Newton polish,
    deduplication, and the independently computed criterion verdict.
    """
    fam = build_family(sys)
    n = sys.dimension
    verdict = criterion(fam, cfg)

    decs = [eigen(A, cfg.tol_eig) for A in fam.matrices]
    strategy = None
    vectors = None
    degenerate = False

    if not cfg.force_generic:
        for i, (A, dec) in enumerate(zip(fam.matrices, decs)):
            delta = cfg.tol_cluster * (1.0 + np.linalg.norm(A))
            if _gaps_separated(dec.eigenvalues, delta):
                strategy = f"single({i + 1})"
                vectors = dec.eigenvectors
                break

    if vectors is None:
        rng = np.random.default_rng(cfg.seed)
        last = None
        for _ in range(cfg.max_retries):
            c = rng.normal(size=n)
            c /= np.linalg.norm(c)
            M = sum(ci * A for ci, A in zip(c, fam.matrices))
            dec = eigen(M, cfg.tol_eig)
            last = dec
            delta = cfg.tol_cluster * (1.0 + np.linalg.norm(M))
            if _gaps_separated(dec.eigenvalues, delta):
                strategy = "generic"
                vectors = dec.eigenvectors
                break
        if vectors is None:
            # every combination has a clustered spectrum (defective or
            # repeated roots); extract what the last eigenbasis offers and
            # let the verdict carry the explanation
            degenerate = True
            strategy = "generic-degenerate"
            vectors = last.eigenvectors

    roots = []
    extraction = []
    for k in range(vectors.shape[1]):
        v = vectors[:, k]
        vv = float(np.real(np.vdot(v, v)))
        z = np.array([np.vdot(v, A @ v) / vv for A in fam.matrices])
        extraction.append(
            max(
                float(np.linalg.norm(A @ v - z[i] * v) / np.linalg.norm(v))
                for i, A in enumerate(fam.matrices)
            )
        )
        if cfg.refine_iters > 0:
            z = _refine(sys, z, cfg.refine_iters)
        roots.append(z)

    keep = _dedup(roots, cfg.tol_dedup)
    roots = [roots[k] for k in keep]
    residuals = [residual(sys, z) for z in roots]
    flagged = [r > cfg.tol_accept for r in residuals]
    # flagged candidates stay in the report but do not count as solutions
    distinct = sum(1 for f in flagged if not f)

    diagnostics = {
        "commutation": verdict.commutation.to_json(),
        "semisimplicity": [rep.to_json() for rep in verdict.semisimplicity],
        "extraction_residual_max": max(extraction) if extraction else 0.0,
        "degenerate_spectrum": degenerate,
        "warnings": [],
    }
    if verdict.maximal and distinct != len(sys.I):
        diagnostics["warnings"].append(
            f"criterion says maximal but {distinct} distinct roots found "
            f"for #I = {len(sys.I)}; tolerances may be inconsistent"
        )
    return SolutionSet(roots, residuals, flagged, distinct, verdict, strategy, diagnostics)
