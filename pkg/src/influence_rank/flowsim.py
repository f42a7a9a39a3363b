"""Monte Carlo flow processes on the fan graph.

The duplication cascade copies a message from a node to each of its fans
with probability ``alpha`` per step and counts every copy, so its expected
total is the walk-counting sum behind alpha-centrality.  The Markov mass
process moves a unit of mass with the random-walk matrix and is
conservative except where mass leaks at nodes without out-edges.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import DirectedGraph
from .spectral import transition_matrix

__all__ = [
    "CascadeConfig",
    "CascadeResult",
    "MarkovMassResult",
    "simulate_duplication_cascade",
    "simulate_markov_mass",
    "truncation_bound",
    "write_cascade_csv",
]

# trials per independently seeded chunk; fixed so results do not depend on workers
CHUNK = 4096


@dataclass(frozen=True)
class CascadeConfig:
    duplication_probability: float = 0.5
    max_steps: int = 50
    trials: int = 10_000
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.duplication_probability <= 1.0:
            raise InputError("duplication probability must lie in [0, 1]")
        if self.max_steps < 0:
            raise InputError("horizon must be non-negative")
        if self.trials < 1:
            raise InputError("trials must be at least 1")


@dataclass(frozen=True)
class CascadeResult:
    """Mean exposures over trials.  ``node_exposure[i]`` counts copies that reached node i."""

    source: int
    expected_exposure: float
    stderr: float
    node_exposure: np.ndarray
    trials: int
    max_steps: int


def _chunk(fans: list[np.ndarray], n: int, source: int, alpha: float, steps: int,
           size: int, seed: np.random.SeedSequence) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    layer = np.zeros((size, n), dtype=np.int64)
    layer[:, source] = 1
    seen = layer.copy()
    for _ in range(steps):
        active = np.flatnonzero(layer.any(axis=0))
        if active.size == 0:
            break
        nxt = np.zeros_like(layer)
        for j in active:
            cj = layer[:, j]
            for q in fans[j]:
                nxt[:, q] += rng.binomial(cj, alpha)
        layer = nxt
        seen += layer
    return seen.sum(axis=1).astype(float), seen.sum(axis=0).astype(float)


def simulate_duplication_cascade(g: DirectedGraph, source: int, cfg: CascadeConfig,
                                 workers: int = 1) -> CascadeResult:
    """Spread copies from ``source`` to fans (against edge direction), with multiplicity.

    Every copy sitting at node ``j`` at step ``t`` independently creates a
    copy at each fan of ``j`` at step ``t + 1`` with probability ``alpha``.
    The exposure of one trial is the number of copies created in steps
    ``0..max_steps``, counting the source's own.  Trials are split into
    fixed chunks with seeds spawned from ``rng_seed``, so the result is the
    same for any ``workers``.
    """
    source = g.check_node(source)
    n = g.node_count
    fans = [np.asarray(p, dtype=np.int64) for p in g.predecessor_lists]
    sizes = [min(CHUNK, cfg.trials - lo) for lo in range(0, cfg.trials, CHUNK)]
    seeds = np.random.SeedSequence(cfg.rng_seed).spawn(len(sizes))
    args = [(fans, n, source, cfg.duplication_probability, cfg.max_steps, sz, sd)
            for sz, sd in zip(sizes, seeds)]
    if workers > 1 and len(args) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _chunk(*a), args))
    else:
        parts = [_chunk(*a) for a in args]
    totals = np.concatenate([p[0] for p in parts])
    per_node = np.zeros(n)
    for p in parts:
        per_node += p[1]
    mean = float(totals.mean())
    se = float(totals.std(ddof=1) / math.sqrt(cfg.trials)) if cfg.trials > 1 else math.nan
    return CascadeResult(source, mean, se, per_node / cfg.trials, cfg.trials, cfg.max_steps)


def truncation_bound(alpha: float, lambda1: float, horizon: int) -> float:
    """Relative size of the series tail beyond ``horizon``: ``(a l)^(T+1) / (1 - a l)``."""
    r = alpha * lambda1
    if r >= 1.0:
        return math.inf
    return r ** (horizon + 1) / (1.0 - r)


@dataclass(frozen=True)
class MarkovMassResult:
    """Mass after each step; ``deficit[t]`` is the total mass lost by step ``t``."""

    masses: np.ndarray
    deficit: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.masses[-1]


def simulate_markov_mass(g: DirectedGraph, alpha: float, max_steps: int = 50) -> MarkovMassResult:
    """Synchronous ``m <- m P`` from uniform mass ``1/n``."""
    if max_steps < 0:
        raise InputError("horizon must be non-negative")
    n = g.node_count
    pt = transition_matrix(g, alpha).T.tocsr()
    m = np.full(n, 1.0 / n) if n else np.zeros(0)
    hist = [m]
    for _ in range(max_steps):
        m = pt @ m
        hist.append(m)
    masses = np.vstack(hist)
    return MarkovMassResult(masses, 1.0 - masses.sum(axis=1))


def write_cascade_csv(results: list[CascadeResult], labels: tuple[str, ...]) -> str:
    buf = io.StringIO()
    buf.write("source,expected_exposure,stderr\n")
    for r in results:
        buf.write(f"{labels[r.source]},{r.expected_exposure!r},{r.stderr!r}\n")
    return buf.getvalue()
