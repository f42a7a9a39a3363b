"""Agreement between predicted centrality rankings and empirical influence.

Correlation is Pearson's r on tie-averaged ranks (Spearman's rho with
average ranks), computed over the evaluated submitters only.  Recall
compares the empirical top-h with a measure's top-h over the whole network.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .empirics import InfluenceEstimate
from .errors import ConvergenceError, DomainError, InputError, UndefinedCorrelationError
from .geodesic import (betweenness_brandes, closeness_lin, closeness_sabidussi,
                       closeness_wasserman_faust, geodesic_summary, graph_centrality)
from .graph import DirectedGraph, Ranking, ScoreVector, in_degree_centrality, \
    out_degree_centrality, scores_to_ranking
from .spectral import (AlphaConfig, alpha_centrality, alpha_sweep, dominant_eigenpair,
                       eigenvector_centrality, hubbell, katz, normalized_alpha_centrality,
                       pagerank, sender_rank)

__all__ = [
    "ComparisonReport",
    "MEASURES",
    "PARAMETRIC",
    "compute_measure",
    "default_grid",
    "pearson_rank_correlation",
    "recall_top",
    "sweep_correlation",
    "write_comparison_csv",
]

MEASURES = (
    "in-degree", "out-degree", "closeness-sabidussi", "closeness-wf", "closeness-lin",
    "graph", "betweenness", "pagerank", "hubbell", "alpha", "normalized-alpha", "katz",
    "senderrank", "eigenvector",
)
PARAMETRIC = frozenset({"pagerank", "hubbell", "alpha", "normalized-alpha", "katz", "senderrank"})
COMPARISON_COLUMNS = ("measure", "alpha", "correlation", "recall_at_h", "sample_size")


@dataclass(frozen=True)
class ComparisonReport:
    measure_name: str
    correlation: float
    sample_size: int
    recall_at_h: float | None = None
    alpha: float | None = None
    note: str = ""


def _aligned(a: Ranking | ScoreVector, b: Ranking | ScoreVector) -> tuple[np.ndarray, np.ndarray]:
    ra = a if isinstance(a, Ranking) else scores_to_ranking(a)
    rb = b if isinstance(b, Ranking) else scores_to_ranking(b)
    if ra.labels and rb.labels and ra.labels != rb.labels:
        if set(ra.labels) != set(rb.labels):
            raise InputError("rankings cover different node sets")
        pos = {lab: i for i, lab in enumerate(rb.labels)}
        return ra.ranks, rb.ranks[[pos[lab] for lab in ra.labels]]
    if len(ra) != len(rb):
        raise InputError(f"rankings have different lengths ({len(ra)} and {len(rb)})")
    return ra.ranks, rb.ranks


def pearson_rank_correlation(a: Ranking | ScoreVector, b: Ranking | ScoreVector) -> float:
    """Pearson's r between two tie-averaged rank vectors over the same nodes."""
    x, y = _aligned(a, b)
    if len(x) < 2:
        raise InputError("correlation needs at least two nodes")
    x = x - x.mean()
    y = y - y.mean()
    sx, sy = float(x @ x), float(y @ y)
    if sx == 0.0 or sy == 0.0:
        raise UndefinedCorrelationError("correlation is undefined: one ranking is constant")
    r = float(x @ y) / math.sqrt(sx * sy)
    return max(-1.0, min(1.0, r))


def _top(rk: Ranking, h: int) -> set[int]:
    """Positions of the top ``h``, keeping a tie group that crosses the cut whole."""
    return set(np.flatnonzero(rk.group_start() <= h).tolist())


def recall_top(emp: Ranking | ScoreVector, pred: Ranking | ScoreVector, h: int,
               exclude: Sequence[str] = ()) -> float:
    """Share of the empirical top-h found in the predicted top-h of the full network.

    ``emp`` ranks the evaluated submitters; ``pred`` ranks every node, and its
    labels must include all of ``emp``'s.  A tie group crossing position h
    is kept whole on either side; the overlap is capped at h and divided by h.
    Labels in ``exclude`` are dropped from both sides before ranking.
    """
    if h < 1:
        raise InputError("h must be at least 1")
    if exclude:
        drop = set(exclude)
        if isinstance(emp, ScoreVector):
            emp = emp.without(drop)
        if isinstance(pred, ScoreVector):
            pred = pred.without(drop)
    re = emp if isinstance(emp, Ranking) else scores_to_ranking(emp)
    rp = pred if isinstance(pred, Ranking) else scores_to_ranking(pred)
    if h > len(re):
        raise InputError(f"h={h} exceeds the {len(re)} evaluated submitters")
    missing = set(re.labels) - set(rp.labels)
    if missing:
        raise InputError(f"{len(missing)} empirical node(s) absent from the predicted ranking, "
                         f"e.g. {sorted(missing)[0]!r}")
    top_e = {re.labels[i] for i in _top(re, h)}
    top_p = {rp.labels[i] for i in _top(rp, h)}
    return min(len(top_e & top_p), h) / h


def default_grid(measure: str, g: DirectedGraph, lambda1: float | None = None,
                 step: float | None = None) -> list[float]:
    """Alpha values swept for a parametric measure."""
    if measure in ("pagerank", "hubbell"):
        return [round(0.05 * i, 2) for i in range(1, 20)]
    if measure in ("alpha", "katz", "senderrank"):
        lam = dominant_eigenpair(g).lambda1 if lambda1 is None else lambda1
        if lam <= 0:
            return [round(0.1 * i, 1) for i in range(1, 11)]
        return [f / lam for f in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)]
    if measure == "normalized-alpha":
        sw = alpha_sweep(g, AlphaConfig(step_size=step), full=True)
        return [float(a) for a in sw.alphas]
    return [math.nan]


def compute_measure(g: DirectedGraph, measure: str, cfg: AlphaConfig | None = None,
                    lambda1: float | None = None, workers: int = 1,
                    cache: dict | None = None) -> ScoreVector:
    """Dispatch a measure by name; ``cfg`` carries alpha for parametric ones."""
    cfg = cfg or AlphaConfig()
    cache = {} if cache is None else cache

    def summary(bw: bool):
        key = ("geodesic", bw)
        if key not in cache and ("geodesic", True) in cache:
            return cache[("geodesic", True)]
        if key not in cache:
            cache[key] = geodesic_summary(g, betweenness=bw, workers=workers)
        return cache[key]

    simple: dict[str, Callable[[], ScoreVector]] = {
        "in-degree": lambda: in_degree_centrality(g),
        "out-degree": lambda: out_degree_centrality(g),
        "closeness-sabidussi": lambda: closeness_sabidussi(g, summary(False)),
        "closeness-wf": lambda: closeness_wasserman_faust(g, summary(False)),
        "closeness-lin": lambda: closeness_lin(g, summary(False)),
        "graph": lambda: graph_centrality(g, summary(False)),
        "betweenness": lambda: betweenness_brandes(g, workers, summary(True)),
        "eigenvector": lambda: eigenvector_centrality(g, cfg.tolerance, cfg.max_iterations),
        "pagerank": lambda: pagerank(g, cfg),
        "hubbell": lambda: hubbell(g, cfg),
        "alpha": lambda: alpha_centrality(g, cfg, lambda1),
        "katz": lambda: katz(g, cfg, lambda1),
        "senderrank": lambda: sender_rank(g, cfg, lambda1),
        "normalized-alpha": lambda: normalized_alpha_centrality(g, cfg),
    }
    if measure not in simple:
        raise InputError(f"unknown measure {measure!r}; choose from {', '.join(MEASURES)}")
    return simple[measure]()


def sweep_correlation(g: DirectedGraph, emp: Sequence[InfluenceEstimate],
                      measures: Sequence[str], grids: dict[str, Sequence[float]] | None = None,
                      h: int | None = None, exclude: Sequence[str] = (),
                      cfg: AlphaConfig | None = None, workers: int = 1) -> list[ComparisonReport]:
    """Correlate every measure (at every alpha on its grid) with the empirical ranking.

    Predicted scores are restricted to the evaluated submitters before
    ranking.  When ``h`` is given, recall against the full network is
    reported too.  A constant empirical side raises
    :class:`UndefinedCorrelationError`; a constant measure yields a NaN row
    with a note.  Alphas where a measure is undefined or does not converge
    are also reported as NaN rows.
    """
    if len(emp) < 2:
        raise InputError("need at least two evaluated submitters")
    if not measures:
        raise InputError("no measures selected")
    cfg = cfg or AlphaConfig()
    labels = [e.submitter for e in emp]
    if len(set(labels)) != len(labels):
        raise InputError("duplicate submitters in empirical influence")
    for lab in labels:
        g.index(lab)
    emp_scores = ScoreVector([e.mean_fan_votes for e in emp], "empirical", tuple(labels))
    emp_rank = scores_to_ranking(emp_scores)
    if np.all(emp_rank.ranks == emp_rank.ranks[0]):
        raise UndefinedCorrelationError("empirical influence is constant; correlation undefined")
    if h is not None and h > len(emp):
        raise InputError(f"h={h} exceeds the {len(emp)} evaluated submitters")
    lam = None
    if any(m in ("alpha", "katz", "senderrank") for m in measures):
        lam = dominant_eigenpair(g, cfg.tolerance, cfg.max_iterations).lambda1
    cache: dict = {}
    out: list[ComparisonReport] = []
    for m in measures:
        if m not in MEASURES:
            raise InputError(f"unknown measure {m!r}; choose from {', '.join(MEASURES)}")
        swept: dict[float, ScoreVector] = {}
        grid = (grids or {}).get(m)
        if not grid and m == "normalized-alpha":
            sw = alpha_sweep(g, cfg, full=True)
            swept = {e.alpha: e.scores for e in sw.entries}
            grid = list(swept)
        elif not grid:
            grid = default_grid(m, g, lam, cfg.step_size)
        for a in grid:
            alpha = None if math.isnan(a) else float(a)
            c = cfg if alpha is None else cfg.with_alpha(alpha)
            try:
                pred = swept[alpha] if alpha in swept else compute_measure(g, m, c, lam, workers, cache)
            except (DomainError, ConvergenceError) as exc:
                out.append(ComparisonReport(m, math.nan, len(emp), None, alpha, str(exc)))
                continue
            sub = pred.restrict(labels)
            try:
                r = pearson_rank_correlation(emp_scores, sub)
                note = ""
            except UndefinedCorrelationError as exc:
                r, note = math.nan, str(exc)
            rec = recall_top(emp_scores, pred, h, exclude) if h is not None else None
            out.append(ComparisonReport(m, r, len(emp), rec, alpha, note))
    return out


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return repr(float(x))


def write_comparison_csv(reports: Sequence[ComparisonReport]) -> str:
    buf = io.StringIO()
    buf.write(",".join(COMPARISON_COLUMNS) + "\n")
    for r in reports:
        buf.write(f"{r.measure_name},{_fmt(r.alpha)},{_fmt(r.correlation)},"
                  f"{_fmt(r.recall_at_h)},{r.sample_size}\n")
    return buf.getvalue()
