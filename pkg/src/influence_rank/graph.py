"""Immutable sparse directed graph, edge-list I/O, score vectors and rankings.

An edge ``i -> j`` means *i is a fan of j* (and j is a friend of i): i
watches j's activity.  Node labels are kept only at the I/O boundary;
internally nodes are dense integers ``0..n-1`` in first-appearance order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np
import scipy.sparse as sp

from .errors import GraphParseError, InputError

log = logging.getLogger(__name__)

__all__ = [
    "DirectedGraph",
    "LoadReport",
    "Ranking",
    "ScoreVector",
    "in_degree_centrality",
    "load_edge_list",
    "out_degree_centrality",
    "parse_edge_list",
    "scores_to_ranking",
    "write_edge_list",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _csr(n: int, rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row pointer and column index arrays, columns sorted within each row."""
    order = np.lexsort((cols, rows))
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(ptr, rows + 1, 1)
    np.cumsum(ptr, out=ptr)
    return ptr, cols[order].astype(np.int64)


class DirectedGraph:
    """Simple directed graph with both successor and predecessor lists.

    Instances are immutable once built; every array they expose is
    read-only, so a graph can be shared freely between threads.

    Use :meth:`from_edges` (integer ids) or :meth:`from_labeled_edges`
    (string labels) rather than calling the constructor directly.
    """

    def __init__(self, n: int, sources: np.ndarray, targets: np.ndarray,
                 labels: Sequence[str] | None = None):
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise InputError(f"expected {n} labels, got {len(labels)}")
        self._labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self._labels)}
        if len(self._index) != n:
            raise InputError("node labels must be unique")
        src = np.asarray(sources, dtype=np.int64)
        dst = np.asarray(targets, dtype=np.int64)
        out_ptr, out_idx = _csr(n, src, dst)
        in_ptr, in_idx = _csr(n, dst, src)
        self._n = n
        self._out_ptr = _frozen(out_ptr)
        self._out_idx = _frozen(out_idx)
        self._in_ptr = _frozen(in_ptr)
        self._in_idx = _frozen(in_idx)

    # ---- construction ----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "DirectedGraph":
        """Build from integer edge pairs on nodes ``0..n-1``.

        Duplicate pairs are collapsed; self-loops and out-of-range ids raise
        :class:`InputError`.
        """
        pairs = sorted({(int(i), int(j)) for i, j in edges})
        for i, j in pairs:
            if i == j:
                raise InputError(f"self-loop on node {i} is not allowed")
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"edge ({i}, {j}) out of range for n={n}")
        arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
        return cls(n, arr[:, 0], arr[:, 1], labels)

    @classmethod
    def from_labeled_edges(cls, edges: Iterable[tuple[str, str]]) -> "DirectedGraph":
        """Build from ``(fan, friend)`` label pairs; labels indexed by first appearance."""
        index: dict[str, int] = {}
        pairs = []
        for a, b in edges:
            ia = index.setdefault(a, len(index))
            ib = index.setdefault(b, len(index))
            pairs.append((ia, ib))
        return cls.from_edges(len(index), pairs, list(index))

    # ---- basic queries ---------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return int(self._out_idx.size)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def label(self, i: int) -> str:
        return self._labels[i]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown node label {label!r}") from None

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def check_node(self, i: int) -> int:
        if not (isinstance(i, (int, np.integer)) and 0 <= i < self._n):
            raise InputError(f"invalid node id {i!r} for graph with {self._n} nodes")
        return int(i)

    def successors(self, i: int) -> np.ndarray:
        """Friends of ``i`` (targets of its out-edges), sorted."""
        return self._out_idx[self._out_ptr[i]:self._out_ptr[i + 1]]

    def predecessors(self, i: int) -> np.ndarray:
        """Fans of ``i`` (sources of its in-edges), sorted."""
        return self._in_idx[self._in_ptr[i]:self._in_ptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        row = self.successors(i)
        k = np.searchsorted(row, j)
        return bool(k < row.size and row[k] == j)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(self._n):
            for j in self.successors(i):
                yield i, int(j)

    @cached_property
    def out_degree(self) -> np.ndarray:
        return _frozen(np.diff(self._out_ptr))

    @cached_property
    def in_degree(self) -> np.ndarray:
        return _frozen(np.diff(self._in_ptr))

    @property
    def csr_out(self) -> tuple[np.ndarray, np.ndarray]:
        return self._out_ptr, self._out_idx

    @property
    def csr_in(self) -> tuple[np.ndarray, np.ndarray]:
        return self._in_ptr, self._in_idx

    @cached_property
    def successor_lists(self) -> tuple[tuple[int, ...], ...]:
        """Plain-Python adjacency, for the per-source BFS loops."""
        return tuple(tuple(int(j) for j in self.successors(i)) for i in range(self._n))

    @cached_property
    def predecessor_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(j) for j in self.predecessors(i)) for i in range(self._n))

    # ---- matrix views ----------------------------------------------------

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """0/1 adjacency matrix ``A`` with ``A[i, j] = 1`` for edge i -> j."""
        data = np.ones(self.edge_count)
        a = sp.csr_matrix((data, self._out_idx, self._out_ptr), shape=(self._n, self._n))
        return a

    @cached_property
    def adjacency_t(self) -> sp.csr_matrix:
        """``A`` transposed, in CSR form; ``A_t @ c`` is the row-vector product ``c A``."""
        data = np.ones(self.edge_count)
        return sp.csr_matrix((data, self._in_idx, self._in_ptr), shape=(self._n, self._n))

    def dense_adjacency(self) -> np.ndarray:
        return self.adjacency.toarray()

    def is_symmetric(self) -> bool:
        a = self.adjacency
        return (a != a.T).nnz == 0

    def is_acyclic(self) -> bool:
        """Kahn's algorithm; True iff the adjacency matrix is nilpotent."""
        indeg = self.in_degree.copy()
        stack = [i for i in range(self._n) if indeg[i] == 0]
        seen = 0
        succ = self.successor_lists
        while stack:
            i = stack.pop()
            seen += 1
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    stack.append(j)
        return seen == self._n

    @property
    def gershgorin_bound(self) -> int:
        """``min(max out-degree, max in-degree)``, an upper bound on ``|lambda_1|``."""
        if self._n == 0:
            return 0
        return int(min(self.out_degree.max(), self.in_degree.max()))

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self._n}, m={self.edge_count})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return (self._labels == other._labels
                and np.array_equal(self._out_ptr, other._out_ptr)
                and np.array_equal(self._out_idx, other._out_idx))

    __hash__ = None  # type: ignore[assignment]


# ---- edge-list I/O ---------------------------------------------------------


@dataclass(frozen=True)
class LoadReport:
    lines_read: int
    edges_kept: int
    duplicates_dropped: int


def parse_edge_list(lines: str | Iterable[str]) -> tuple[DirectedGraph, LoadReport]:
    """Parse ``fan friend`` lines into a graph plus a load report.

    Blank lines and lines starting with ``#`` are skipped.  Duplicate edges
    are dropped (and counted); a self-loop or a line without exactly two
    tokens raises :class:`GraphParseError` carrying the line number.
    """
    if isinstance(lines, str):
        lines = lines.splitlines()
    index: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    src: list[int] = []
    dst: list[int] = []
    dup = 0
    lineno = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected 2 tokens, got {len(tokens)}", lineno)
        a, b = tokens
        if a == b:
            raise GraphParseError(f"self-loop on {a!r}", lineno)
        ia = index.setdefault(a, len(index))
        ib = index.setdefault(b, len(index))
        if (ia, ib) in seen:
            dup += 1
            continue
        seen.add((ia, ib))
        src.append(ia)
        dst.append(ib)
    if dup:
        log.info("dropped %d duplicate edge(s)", dup)
    g = DirectedGraph(len(index), np.array(src, dtype=np.int64),
                      np.array(dst, dtype=np.int64), list(index))
    return g, LoadReport(lineno, len(src), dup)


def load_edge_list(source: str | Iterable[str] | TextIO) -> DirectedGraph:
    """Load a graph from edge-list text (a string, a file object or lines)."""
    g, _ = parse_edge_list(source)
    return g


def read_edge_list(path) -> DirectedGraph:
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh)


def write_edge_list(g: DirectedGraph) -> str:
    """Serialize as ``fan friend`` lines; isolated nodes are not representable."""
    return "".join(f"{g.label(i)} {g.label(j)}\n" for i, j in g.edges())


# ---- scores and rankings ---------------------------------------------------


@dataclass(frozen=True)
class ScoreVector:
    """Per-node scores indexed by internal node id.

    ``labels`` names the nodes the entries belong to; it is the graph's label
    tuple for full vectors and a subset for restricted ones.
    """

    values: np.ndarray
    measure_name: str = ""
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != vals.size:
                raise InputError("labels and values differ in length")

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, i):
        return self.values[i]

    def restrict(self, labels: Sequence[str]) -> "ScoreVector":
        """Scores for ``labels`` only, in the given order."""
        if self.labels is None:
            raise InputError("cannot restrict an unlabeled score vector")
        pos = {lab: i for i, lab in enumerate(self.labels)}
        missing = [lab for lab in labels if lab not in pos]
        if missing:
            raise InputError(f"{len(missing)} label(s) not scored, e.g. {missing[0]!r}")
        idx = [pos[lab] for lab in labels]
        return ScoreVector(self.values[idx], self.measure_name, tuple(labels))

    def without(self, labels: Iterable[str]) -> "ScoreVector":
        drop = set(labels)
        keep = [lab for lab in (self.labels or ()) if lab not in drop]
        return self.restrict(keep)


@dataclass(frozen=True)
class Ranking:
    """Tie-aware ranks: 1 is best, tied nodes share the average position."""

    ranks: np.ndarray
    tie_groups: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __len__(self) -> int:
        return self.ranks.size

    def group_start(self) -> np.ndarray:
        """First (best) position occupied by each node's tie group."""
        start = np.empty(self.ranks.size)
        for grp in self.tie_groups:
            start[list(grp)] = self.ranks[grp[0]] - (len(grp) - 1) / 2.0
        return start

    def same_order(self, other: "Ranking") -> bool:
        return self.ranks.shape == other.ranks.shape and bool(np.all(self.ranks == other.ranks))


def scores_to_ranking(s: ScoreVector, tie_tol: float = 0.0) -> Ranking:
    """Rank scores in descending order, averaging ranks over ties.

    ``tie_tol`` merges neighbouring sorted scores whose gap is at most
    ``tie_tol * max|score|``; the default treats only exact equality as a tie.
    """
    vals = np.asarray(s.values, dtype=float)
    bad = np.flatnonzero(~np.isfinite(vals))
    if bad.size:
        i = int(bad[0])
        name = s.labels[i] if s.labels else str(i)
        raise InputError(f"non-finite score at node {name}")
    n = vals.size
    order = np.argsort(-vals, kind="stable")
    sorted_vals = vals[order]
    scale = float(np.max(np.abs(vals))) if n else 0.0
    thresh = tie_tol * scale
    breaks = np.flatnonzero(np.abs(np.diff(sorted_vals)) > thresh) + 1
    bounds = np.concatenate(([0], breaks, [n]))
    ranks = np.empty(n)
    groups = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        members = order[lo:hi]
        ranks[members] = (lo + 1 + hi) / 2.0
        groups.append(tuple(sorted(int(x) for x in members)))
    ranks.flags.writeable = False
    return Ranking(ranks, tuple(groups), s.labels)


# ---- degree centralities ---------------------------------------------------


def in_degree_centrality(g: DirectedGraph) -> ScoreVector:
    """Number of fans of each node."""
    return ScoreVector(g.in_degree.astype(float), "in-degree", g.labels)


def out_degree_centrality(g: DirectedGraph) -> ScoreVector:
    """Number of friends of each node."""
    return ScoreVector(g.out_degree.astype(float), "out-degree", g.labels)

