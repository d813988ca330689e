import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from border_eig import system_from_nodes, total_degree_set


def random_separated_nodes(rng, n, count, sep=1e-2, box=1.0):
    """Real nodes uniform in [-box, box]^n with pairwise separation >= sep."""
    nodes = []
    attempts = 0
    while len(nodes) < count:
        cand = rng.uniform(-box, box, size=n)
        if all(np.linalg.norm(cand - z) >= sep for z in nodes):
            nodes.append(cand)
        attempts += 1
        if attempts > 100 * count:
            raise RuntimeError("node sampling failed to separate")
    return [z.astype(complex) for z in nodes]


def matching_error(roots, nodes):
    """Max displacement under optimal root-to-node assignment."""
    k = len(nodes)
    assert len(roots) == k
    cost = np.array([[np.linalg.norm(r - z) for z in nodes] for r in roots])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


@pytest.fixture
def idempotent_system():
    """x^2 = x, xy = 0, y^2 = y: roots (0,0), (1,0), (0,1)."""
    I = total_degree_set(2, 1)
    nodes = [np.array([0.0, 0.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0])]
    return system_from_nodes(I, nodes)
