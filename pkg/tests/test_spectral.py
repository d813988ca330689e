import numpy as np
import pytest

from border_eig import (
    BorderSystem,
    Config,
    border,
    build_family,
    criterion,
    eigen,
    residual,
    semisimplicity,
    solve,
    system_from_nodes,
    total_degree_set,
)

from conftest import matching_error, random_separated_nodes


def univariate(coeff_row):
    m = len(coeff_row) - 1
    I = total_degree_set(1, m)
    return BorderSystem(I, border(I), np.array([coeff_row], dtype=complex))


def noncommuting_system():
    I = total_degree_set(2, 1)
    coeffs = np.zeros((3, 3), dtype=complex)
    coeffs[0, 0] = 1.0
    coeffs[2, 0] = 1.0
    return BorderSystem(I, border(I), coeffs)


class TestEigen:
    def test_swap_matrix(self):
        dec = eigen(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert sorted(dec.eigenvalues.real) == pytest.approx([-1.0, 1.0])
        assert np.all(dec.residuals <= 1e-12)
        assert np.allclose(np.linalg.norm(dec.eigenvectors, axis=0), 1.0)

    def test_jordan_block_condition_diverges(self):
        dec = eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert np.allclose(dec.eigenvalues, 0.0)
        assert dec.vector_condition > 1e12

    def test_cubic_companion(self):
        # x^3 = x factors as x(x-1)(x+1)
        A = build_family(univariate([0.0, 1.0, 0.0])).matrices[0]
        dec = eigen(A)
        assert sorted(dec.eigenvalues.real) == pytest.approx([-1.0, 0.0, 1.0], abs=1e-10)


class TestSemisimplicity:
    def test_jordan_block(self):
        A = np.array([[0.0, 1.0], [0.0, 0.0]])
        rep = semisimplicity(A, eigen(A), Config())
        assert not rep.semisimple
        [(lam, alg, geo)] = rep.clusters
        assert abs(lam) <= 1e-12 and alg == 2 and geo == 1

    def test_identity(self):
        A = np.eye(4)
        rep = semisimplicity(A, eigen(A), Config())
        assert rep.semisimple
        [(lam, alg, geo)] = rep.clusters
        assert lam == pytest.approx(1.0) and alg == geo == 4

    def test_idempotent_matrix(self, idempotent_system):
        A1 = build_family(idempotent_system).matrices[0]
        assert np.allclose(A1 @ A1, A1)  # idempotent, hence diagonalizable
        rep = semisimplicity(A1, eigen(A1), Config())
        assert rep.semisimple
        mults = sorted((round(lam.real), alg, geo) for lam, alg, geo in rep.clusters)
        assert mults == [(0, 2, 2), (1, 1, 1)]


class TestCriterion:
    def test_idempotent_maximal(self, idempotent_system):
        v = criterion(build_family(idempotent_system))
        assert v.commuting and v.all_semisimple and v.maximal

    def test_nilpotent_fails_semisimple(self):
        v = criterion(build_family(univariate([0.0, 0.0])))
        assert v.commuting
        assert not v.all_semisimple
        assert not v.maximal

    def test_noncommuting_fails(self):
        v = criterion(build_family(noncommuting_system()))
        assert not v.commuting
        assert v.maximal is False


class TestSolve:
    def test_x_squared_one(self):
        sol = solve(univariate([1.0, 0.0]))
        assert sol.verdict.maximal
        assert sol.distinct_count == 2
        roots = sorted(z[0].real for z in sol.roots)
        assert roots == pytest.approx([-1.0, 1.0], abs=1e-10)
        assert all(r <= 1e-10 for r in sol.residuals)

    def test_idempotent_roots(self, idempotent_system):
        sol = solve(idempotent_system)
        assert sol.verdict.maximal and sol.distinct_count == 3
        expected = [np.array([0, 0]), np.array([1, 0]), np.array([0, 1])]
        assert matching_error(sol.roots, expected) <= 1e-10

    def test_nilpotent(self):
        sol = solve(univariate([0.0, 0.0]))
        assert not sol.verdict.maximal
        assert sol.distinct_count == 1
        assert abs(sol.roots[0][0]) <= 1e-8

    def test_residual_postcondition(self):
        rng = np.random.default_rng(5)
        I = total_degree_set(3, 1)
        s = system_from_nodes(I, random_separated_nodes(rng, 3, len(I), sep=0.1))
        sol = solve(s)
        assert not any(sol.flagged)
        assert all(r <= 1e-6 for r in sol.residuals)

    def test_strategy_agreement(self):
        # where the single-matrix shortcut applies, the generic combination
        # must reproduce the same root multiset
        rng = np.random.default_rng(17)
        for _ in range(5):
            I = total_degree_set(2, 2)
            s = system_from_nodes(I, random_separated_nodes(rng, 2, len(I), sep=0.1))
            fast = solve(s)
            slow = solve(s, Config(force_generic=True))
            assert slow.strategy == "generic"
            if fast.strategy.startswith("single"):
                assert matching_error(fast.roots, slow.roots) <= 1e-6

    def test_determinism(self, idempotent_system):
        a = solve(idempotent_system, Config(seed=42))
        b = solve(idempotent_system, Config(seed=42))
        assert a.strategy == b.strategy
        assert all(np.array_equal(x, y) for x, y in zip(a.roots, b.roots))

    def test_seed_independence_of_roots(self):
        rng = np.random.default_rng(23)
        I = total_degree_set(2, 1)
        s = system_from_nodes(I, random_separated_nodes(rng, 2, len(I), sep=0.3))
        a = solve(s, Config(seed=7, force_generic=True))
        b = solve(s, Config(seed=42, force_generic=True))
        assert matching_error(a.roots, b.roots) <= 1e-6

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(29)
        I = total_degree_set(3, 1)
        nodes = random_separated_nodes(rng, 3, len(I), sep=0.2)
        perm = [2, 0, 1]
        permuted_nodes = [z[perm] for z in nodes]
        sol = solve(system_from_nodes(I, nodes))
        sol_p = solve(system_from_nodes(I, permuted_nodes))
        assert matching_error([z[perm] for z in sol.roots], sol_p.roots) <= 1e-6

    def test_refinement_non_worsening(self):
        rng = np.random.default_rng(31)
        I = total_degree_set(2, 2)
        s = system_from_nodes(I, random_separated_nodes(rng, 2, len(I), sep=0.15))
        raw = solve(s, Config(refine_iters=0))
        polished = solve(s, Config(refine_iters=3))
        assert max(polished.residuals) <= max(raw.residuals) + 1e-14

    def test_maximal_iff_distinct_count(self):
        # forward over random poised systems, converse over the degenerate corpus
        rng = np.random.default_rng(37)
        for _ in range(10):
            n = int(rng.integers(1, 4))
            m = int(rng.integers(1, 3))
            I = total_degree_set(n, m)
            s = system_from_nodes(I, random_separated_nodes(rng, n, len(I), sep=0.05))
            sol = solve(s)
            assert sol.verdict.maximal
            assert sol.distinct_count == len(I)
        for s in (univariate([0.0, 0.0]), noncommuting_system()):
            sol = solve(s)
            assert not sol.verdict.maximal
            assert sol.distinct_count < len(s.I)
