import numpy as np
import pytest

from influence_rank.generators import complete_digraph, random_digraph, star_graph
from influence_rank.graph import DirectedGraph


def path_graph(n: int) -> DirectedGraph:
    return DirectedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> DirectedGraph:
    return DirectedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def two_cycle() -> DirectedGraph:
    return DirectedGraph.from_edges(2, [(0, 1), (1, 0)])


def single_edge() -> DirectedGraph:
    return DirectedGraph.from_edges(2, [(0, 1)])


def empty_graph(n: int) -> DirectedGraph:
    return DirectedGraph.from_edges(n, [])


def seeded_graphs(count: int, n_lo: int, n_hi: int, seed: int, p_lo=0.1, p_hi=0.4):
    """``count`` random digraphs with sizes and densities drawn from one generator."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        p = float(rng.uniform(p_lo, p_hi))
        yield random_digraph(n, p, rng)


@pytest.fixture
def k3():
    return complete_digraph(3)


@pytest.fixture
def star():
    return star_graph(3)


@pytest.fixture
def edge():
    return single_edge()
