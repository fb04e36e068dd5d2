import numpy as np
import pytest

from hombound.algebra import FiniteGroup, cyclic_group, make_gposet
from hombound.graph_core import Graph, complete_graph, cycle_graph, petersen_graph
from hombound.hom_builder import hom_gposet


@pytest.fixture
def k2():
    return complete_graph(2)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def hom_k2_k3():
    return hom_gposet(complete_graph(2), complete_graph(3))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_poset_pairs(rng, m: int, density: float) -> np.ndarray:
    """Strict pairs of the transitive closure of a random DAG on 0..m-1."""
    reach = np.triu(rng.random((m, m)) < density, k=1)
    for k in range(m):
        reach |= reach[:, k:k + 1] & reach[k:k + 1, :]
    return np.argwhere(reach)


def product_gposet(group: FiniteGroup, m: int, q_pairs: np.ndarray, linked: bool):
    """G x Q with G acting on the left factor.

    (g, q) < (h, q') iff q < q' and, unless linked, g == h. Both orders are
    preserved by left multiplication and the action is free.
    """
    size = group.order
    pairs = []
    for q, q2 in q_pairs.tolist():
        for g in range(size):
            targets = range(size) if linked else (g,)
            pairs.extend((q * size + g, q2 * size + h) for h in targets)
    index = np.arange(size * m)
    level, member = index // size, index % size
    action = level[None, :] * size + group.mult[:, member]
    return make_gposet(size * m, pairs, group, action)


@pytest.fixture
def random_free_gposet(rng):
    def build():
        group = cyclic_group(int(rng.integers(2, 5)))
        m = int(rng.integers(1, 7))
        q_pairs = random_poset_pairs(rng, m, float(rng.uniform(0.1, 0.7)))
        return product_gposet(group, m, q_pairs, linked=bool(rng.integers(0, 2)))

    return build


def edge_set(g: Graph) -> set:
    return set(g.sorted_edges())
