"""Shortest-path centralities on unweighted directed graphs.

Closeness (three variants), graph centrality and Brandes betweenness all
come out of one breadth-first pass per source.  Sources are processed in
fixed-size blocks whose partial results are reduced in block order, so the
output is bit-identical for any worker count.

Unreachable targets are left out of every distance sum; a node that reaches
nobody scores 0 under all closeness variants and under graph centrality.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import DirectedGraph, ScoreVector

__all__ = [
    "UNREACHABLE",
    "GeodesicProfile",
    "GeodesicSummary",
    "betweenness_brandes",
    "bfs_profile",
    "closeness_lin",
    "closeness_sabidussi",
    "closeness_wasserman_faust",
    "geodesic_summary",
    "graph_centrality",
]

UNREACHABLE = -1
BLOCK = 64


@dataclass(frozen=True)
class GeodesicProfile:
    """Hop distances from one source; ``UNREACHABLE`` marks unreachable nodes."""

    source: int
    distances: np.ndarray
    reachable_count: int

    @property
    def distance_sum(self) -> int:
        d = self.distances
        return int(d[d > 0].sum())

    @property
    def eccentricity(self) -> int:
        return int(self.distances.max()) if self.reachable_count else 0


def bfs_profile(g: DirectedGraph, source: int) -> GeodesicProfile:
    source = g.check_node(source)
    succ = g.successor_lists
    dist = [UNREACHABLE] * g.node_count
    dist[source] = 0
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            dv = dist[v] + 1
            for w in succ[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    nxt.append(w)
        frontier = nxt
    d = np.array(dist, dtype=np.int64)
    return GeodesicProfile(source, d, int(np.count_nonzero(d > 0)))


def _block_pass(succ, n: int, sources: range, betweenness: bool):
    """Distance sums, reach counts, eccentricities and a betweenness partial."""
    dsum = np.zeros(len(sources), dtype=np.int64)
    reach = np.zeros(len(sources), dtype=np.int64)
    ecc = np.zeros(len(sources), dtype=np.int64)
    cb = [0.0] * n
    for k, s in enumerate(sources):
        dist = [-1] * n
        sigma = [0] * n
        dist[s] = 0
        sigma[s] = 1
        order = [s]
        preds: list[list[int]] | None = [[] for _ in range(n)] if betweenness else None
        head = 0
        total = 0
        while head < len(order):
            v = order[head]
            head += 1
            dv = dist[v]
            total += dv
            sv = sigma[v]
            for w in succ[v]:
                if dist[w] < 0:
                    dist[w] = dv + 1
                    order.append(w)
                if dist[w] == dv + 1:
                    sigma[w] += sv
                    if preds is not None:
                        preds[w].append(v)
        dsum[k] = total
        reach[k] = len(order) - 1
        ecc[k] = dist[order[-1]]
        if preds is not None:
            delta = [0.0] * n
            for w in reversed(order):
                coeff = (1.0 + delta[w]) / sigma[w]
                for v in preds[w]:
                    delta[v] += sigma[v] * coeff
                if w != s:
                    cb[w] += delta[w]
    return dsum, reach, ecc, cb


@dataclass(frozen=True)
class GeodesicSummary:
    """Per-node shortest-path statistics from a full all-sources pass."""

    distance_sum: np.ndarray
    reachable: np.ndarray
    eccentricity: np.ndarray
    betweenness: np.ndarray | None


def geodesic_summary(g: DirectedGraph, betweenness: bool = True,
                     workers: int = 1) -> GeodesicSummary:
    """Run one BFS (plus Brandes accumulation) from every node."""
    n = g.node_count
    succ = g.successor_lists
    blocks = [range(lo, min(lo + BLOCK, n)) for lo in range(0, n, BLOCK)]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_block_pass, [succ] * len(blocks), [n] * len(blocks),
                                  blocks, [betweenness] * len(blocks)))
    else:
        parts = [_block_pass(succ, n, b, betweenness) for b in blocks]
    cb = None
    if betweenness:
        cb = np.zeros(n)
        for p in parts:
            cb += np.asarray(p[3])
    empty = np.zeros(0, dtype=np.int64)
    return GeodesicSummary(
        np.concatenate([p[0] for p in parts]) if parts else empty,
        np.concatenate([p[1] for p in parts]) if parts else empty,
        np.concatenate([p[2] for p in parts]) if parts else empty,
        cb,
    )


def _closeness(g: DirectedGraph, summary: GeodesicSummary | None, kind: str) -> ScoreVector:
    if summary is None:
        summary = geodesic_summary(g, betweenness=False)
    n = g.node_count
    dsum = summary.distance_sum.astype(float)
    reach = summary.reachable.astype(float)
    out = np.zeros(n)
    ok = reach > 0
    if kind == "sabidussi":
        out[ok] = 1.0 / dsum[ok]
    elif kind == "wf":
        out[ok] = (n - 1) / dsum[ok]
    elif kind == "lin":
        out[ok] = (reach[ok] / (n - 1)) / (dsum[ok] / reach[ok])
    elif kind == "graph":
        out[ok] = 1.0 / summary.eccentricity[ok]
    name = {"sabidussi": "closeness-sabidussi", "wf": "closeness-wf",
            "lin": "closeness-lin", "graph": "graph"}[kind]
    return ScoreVector(out, name, g.labels)


def closeness_sabidussi(g: DirectedGraph, summary: GeodesicSummary | None = None) -> ScoreVector:
    """Reciprocal of the total hop distance to every reachable node."""
    return _closeness(g, summary, "sabidussi")


def closeness_wasserman_faust(g: DirectedGraph,
                              summary: GeodesicSummary | None = None) -> ScoreVector:
    """Sabidussi closeness scaled by ``n - 1``."""
    return _closeness(g, summary, "wf")


def closeness_lin(g: DirectedGraph, summary: GeodesicSummary | None = None) -> ScoreVector:
    """Reach fraction ``J/(n-1)`` divided by mean distance to the ``J`` reachable nodes."""
    return _closeness(g, summary, "lin")


def graph_centrality(g: DirectedGraph, summary: GeodesicSummary | None = None) -> ScoreVector:
    """Reciprocal of the largest hop distance to a reachable node."""
    return _closeness(g, summary, "graph")


def betweenness_brandes(g: DirectedGraph, workers: int = 1,
                        summary: GeodesicSummary | None = None) -> ScoreVector:
    """Unnormalized directed betweenness, endpoints excluded.

    Brandes' dependency accumulation: one BFS per source counts shortest
    paths, then a reverse sweep adds each node's pair dependencies.
    ``O(nm)`` time, ``O(n + m)`` memory per source.
    """
    if summary is None or summary.betweenness is None:
        summary = geodesic_summary(g, betweenness=True, workers=workers)
    return ScoreVector(summary.betweenness, "betweenness", g.labels)
