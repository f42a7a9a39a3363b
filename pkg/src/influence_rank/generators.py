"""Seeded synthetic graphs and vote logs for tests and demonstrations."""

from __future__ import annotations

import numpy as np

from .empirics import StoryRecord
from .errors import InputError
from .graph import DirectedGraph

__all__ = [
    "complete_digraph",
    "preferential_attachment_digraph",
    "random_digraph",
    "simulate_stories",
    "star_graph",
]


def random_digraph(n: int, p: float, seed: int | np.random.Generator) -> DirectedGraph:
    """Erdos-Renyi digraph: each ordered pair ``i != j`` is an edge with probability ``p``."""
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    src, dst = np.nonzero(mask)
    return DirectedGraph(n, src, dst)


def complete_digraph(n: int) -> DirectedGraph:
    """Symmetric complete graph ``K_n`` (both directions on every pair)."""
    return DirectedGraph.from_edges(n, [(i, j) for i in range(n) for j in range(n) if i != j])


def star_graph(leaves: int) -> DirectedGraph:
    """Symmetric star with centre 0."""
    edges = [(0, i) for i in range(1, leaves + 1)] + [(i, 0) for i in range(1, leaves + 1)]
    return DirectedGraph.from_edges(leaves + 1, edges)


def preferential_attachment_digraph(n: int, m: int, reciprocity: float,
                                    seed: int | np.random.Generator,
                                    closure: float = 0.0) -> DirectedGraph:
    """Growing fan graph: each newcomer becomes a fan of ``m`` existing nodes.

    The first friend, and each later one with probability ``1 - closure``,
    is picked with probability proportional to ``in_degree + 1``.  With
    probability ``closure`` a later friend is instead a friend of an
    already chosen friend (triadic closure).  Each friend follows back with
    probability ``reciprocity``.
    """
    if n < 2 or m < 1:
        raise InputError("need n >= 2 and m >= 1")
    rng = np.random.default_rng(seed)
    indeg = np.zeros(n)
    friends_of: list[list[int]] = [[] for _ in range(n)]
    src: list[int] = []
    dst: list[int] = []
    for i in range(1, n):
        k = min(m, i)
        w = indeg[:i] + 1.0
        chosen: list[int] = []
        while len(chosen) < k:
            j = -1
            if chosen and rng.random() < closure:
                cand = [c for f in chosen for c in friends_of[f] if c not in chosen and c != i]
                if cand:
                    j = int(cand[rng.integers(len(cand))])
            if j < 0:
                j = int(rng.choice(i, p=w / w.sum()))
                if j in chosen:
                    continue
            chosen.append(j)
        for j in chosen:
            src.append(i)
            dst.append(j)
            friends_of[i].append(j)
            indeg[j] += 1
            if rng.random() < reciprocity:
                src.append(j)
                dst.append(i)
                friends_of[j].append(i)
                indeg[i] += 1
    return DirectedGraph(n, np.array(src), np.array(dst))


def simulate_stories(g: DirectedGraph, submitters: np.ndarray, alpha: float,
                     background: int, seed: int | np.random.Generator,
                     horizon: int = 50, prefix: str = "s") -> list[StoryRecord]:
    """One story per entry of ``submitters``, spread as a duplication cascade.

    Copies travel from a node to each of its fans with probability ``alpha``
    per copy, with multiplicity, as in
    :func:`~influence_rank.flowsim.simulate_duplication_cascade`.  A node
    votes when its first copy arrives; voters reached in the same step are
    shuffled.  Then ``background`` uniformly drawn users who were not
    reached vote at random positions, standing in for visitors who found
    the story elsewhere.
    """
    rng = np.random.default_rng(seed)
    fans = g.predecessor_lists
    n = g.node_count
    labels = g.labels
    stories = []
    for s_idx, sub in enumerate(np.asarray(submitters, dtype=np.int64)):
        reached = np.zeros(n, dtype=bool)
        reached[sub] = True
        layer = {int(sub): 1}
        order: list[int] = []
        for _ in range(horizon):
            nxt: dict[int, int] = {}
            for j, c in layer.items():
                for q in fans[j]:
                    x = int(rng.binomial(c, alpha))
                    if x:
                        nxt[q] = nxt.get(q, 0) + x
            new = [q for q in nxt if not reached[q]]
            rng.shuffle(new)
            reached[new] = True
            order.extend(new)
            layer = nxt
            if not layer:
                break
        for x in rng.choice(n, size=background, replace=False):
            if not reached[x]:
                order.insert(int(rng.integers(0, len(order) + 1)), int(x))
        if not order:
            order = [int(rng.integers(0, n))]
        stories.append(StoryRecord(f"{prefix}{s_idx}", labels[sub],
                                   tuple(labels[v] for v in order)))
    return stories
