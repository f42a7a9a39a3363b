"""Empirical influence from vote logs.

A vote on a story is a *fan vote* when the voter is a fan of the submitter
(the voter has an edge to the submitter).  Counting fan votes in the first
``window`` votes and averaging per submitter gives an empirical influence
score; the hypergeometric upper tail says how unlikely that many fan votes
would be if voters were drawn at random from the whole network.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import InputError, VoteLogError
from .graph import DirectedGraph

__all__ = [
    "FanVoteObservation",
    "InfluenceEstimate",
    "StoryRecord",
    "WeibullFit",
    "chance_probability",
    "count_fan_votes",
    "empirical_influence",
    "eval_weibull",
    "fit_weibull",
    "hypergeometric_pmf",
    "load_vote_log",
    "read_vote_log",
    "write_influence_csv",
]

log = logging.getLogger(__name__)

VOTE_LOG_COLUMNS = ("story_id", "submitter", "voter", "vote_index")
INFLUENCE_COLUMNS = ("submitter", "story_count", "fan_count", "mean_fan_votes",
                     "chance_probability")


@dataclass(frozen=True)
class StoryRecord:
    story_id: str
    submitter: str
    voters: tuple[str, ...]
    timestamps: tuple[float, ...] | None = None

    def __post_init__(self):
        if not self.voters:
            raise VoteLogError(f"story {self.story_id!r} has no voters")
        object.__setattr__(self, "voters", tuple(self.voters))


@dataclass(frozen=True)
class FanVoteObservation:
    """Urn parameters: population ``N``, ``K`` fans, window ``n``, ``k`` fan votes."""

    N: int
    K: int
    n: int
    k: int

    def __post_init__(self):
        N, K, n, k = self.N, self.K, self.n, self.k
        if min(N, K, n, k) < 0 or K > N or n > N or k > min(K, n):
            raise InputError(f"invalid urn parameters N={N}, K={K}, n={n}, k={k}")


@dataclass(frozen=True)
class InfluenceEstimate:
    submitter: str
    story_count: int
    mean_fan_votes: float
    fan_count: int
    chance_probability: float
    window: int = 0


# ---- vote log I/O ----------------------------------------------------------


def load_vote_log(source: str | Iterable[str]) -> list[StoryRecord]:
    """Parse ``story_id,submitter,voter,vote_index`` rows into stories.

    Voters are ordered by ``vote_index``.  Stories come out in order of first
    appearance.  Every row of a story must name the same submitter.
    """
    lines = io.StringIO(source) if isinstance(source, str) else source
    reader = csv.reader(lines)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise VoteLogError("vote log is empty (missing header)") from None
    missing = [c for c in VOTE_LOG_COLUMNS if c not in header]
    if missing:
        raise VoteLogError(f"vote log header lacks column(s): {', '.join(missing)}")
    col = {c: header.index(c) for c in VOTE_LOG_COLUMNS}
    ts_col = header.index("timestamp") if "timestamp" in header else None
    votes: dict[str, dict[int, tuple[str, float | None]]] = {}
    submitters: dict[str, str] = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) < len(header):
            raise VoteLogError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        sid = row[col["story_id"]].strip()
        sub = row[col["submitter"]].strip()
        voter = row[col["voter"]].strip()
        try:
            idx = int(row[col["vote_index"]])
        except ValueError:
            raise VoteLogError(f"line {lineno}: vote_index {row[col['vote_index']]!r} "
                               "is not an integer") from None
        if submitters.setdefault(sid, sub) != sub:
            raise VoteLogError(f"line {lineno}: story {sid!r} has two submitters "
                               f"({submitters[sid]!r} and {sub!r})")
        story = votes.setdefault(sid, {})
        if idx in story:
            raise VoteLogError(f"story {sid!r}: duplicate vote_index {idx}")
        ts = float(row[ts_col]) if ts_col is not None and row[ts_col].strip() else None
        story[idx] = (voter, ts)
    out = []
    for sid, story in votes.items():
        order = sorted(story)
        ts = tuple(story[i][1] for i in order)
        out.append(StoryRecord(sid, submitters[sid], tuple(story[i][0] for i in order),
                               ts if all(t is not None for t in ts) else None))
    return out


def read_vote_log(path: str | Path) -> list[StoryRecord]:
    with open(path, encoding="utf-8", newline="") as fh:
        return load_vote_log(fh)


def write_vote_log(stories: Sequence[StoryRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(VOTE_LOG_COLUMNS)
    for s in stories:
        for i, voter in enumerate(s.voters):
            w.writerow((s.story_id, s.submitter, voter, i))
    return buf.getvalue()


# ---- counting --------------------------------------------------------------


def count_fan_votes(g: DirectedGraph, story: StoryRecord,
                    window: int | None = 100) -> FanVoteObservation | None:
    """Fan votes among the first ``window`` votes (all votes when None).

    Self-votes by the submitter and repeat votes (after a voter's first) are
    dropped before windowing.  Voters that are not in the graph still take a window slot but are never fans.
    Returns None, with a warning, when the submitter is not in the graph.
    """
    if window is not None and window < 1:
        raise InputError(f"window must be at least 1, got {window}")
    if story.submitter not in g:
        log.warning("story %s: submitter %r not in graph, skipped", story.story_id, story.submitter)
        return None
    target = g.index(story.submitter)
    voters = [v for v in dict.fromkeys(story.voters) if v != story.submitter]
    if window is not None:
        voters = voters[:window]
    k = 0
    for v in voters:
        if v in g and g.has_edge(g.index(v), target):
            k += 1
    N = g.node_count
    return FanVoteObservation(N, int(g.in_degree[target]), min(len(voters), N), k)


# ---- hypergeometric --------------------------------------------------------


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _support(N: int, K: int, n: int) -> tuple[int, int]:
    return max(0, n - (N - K)), min(K, n)


def _log_pmf(k: int, N: int, K: int, n: int) -> float:
    return _log_comb(K, k) + _log_comb(N - K, n - k) - _log_comb(N, n)


def hypergeometric_pmf(obs: FanVoteObservation) -> float:
    """``P(X = k)`` for ``k`` fans among ``n`` draws without replacement, in log space."""
    lo, hi = _support(obs.N, obs.K, obs.n)
    if not lo <= obs.k <= hi:
        return 0.0
    return math.exp(_log_pmf(obs.k, obs.N, obs.K, obs.n))


def chance_probability(N: int, K: int, n: int, k: float, mode: str = "tail") -> float:
    """Probability of ``k`` fan votes arising by chance.

    ``mode="tail"`` gives ``P(X >= ceil(k))``, summed from the top of the
    support down so that rounding keeps it monotone in ``k``.
    ``mode="pmf"`` gives ``P(X = round(k))``.
    """
    FanVoteObservation(N, K, n, 0)
    lo, hi = _support(N, K, n)
    if mode == "pmf":
        j = int(round(k))
        return math.exp(_log_pmf(j, N, K, n)) if lo <= j <= hi else 0.0
    if mode != "tail":
        raise InputError(f"unknown chance mode {mode!r}")
    start = math.ceil(k - 1e-12)
    if start <= lo:
        return 1.0
    if start > hi:
        return 0.0
    total = 0.0
    for j in range(hi, start - 1, -1):
        total += math.exp(_log_pmf(j, N, K, n))
    return min(total, 1.0)


# ---- aggregation -----------------------------------------------------------


def empirical_influence(g: DirectedGraph, stories: Sequence[StoryRecord],
                        window: int | None = 100, min_stories: int = 2,
                        min_fans: int = 10, mode: str = "tail") -> list[InfluenceEstimate]:
    """Mean fan votes per submitter, filtered and sorted by the mean (descending).

    Submitters need at least ``min_stories`` stories, at least ``min_fans``
    fans and at least one fan vote overall.  The chance probability uses
    the mean rounded up and the largest window the submitter's stories
    filled.  Ties in the mean are ordered by submitter label.
    """
    if min_stories < 1:
        raise InputError("min_stories must be at least 1")
    if min_fans < 0:
        raise InputError("min_fans must be non-negative")
    per: dict[str, list[FanVoteObservation]] = defaultdict(list)
    for story in stories:
        obs = count_fan_votes(g, story, window)
        if obs is not None:
            per[story.submitter].append(obs)
    out = []
    for sub, obs in per.items():
        K = obs[0].K
        if len(obs) < min_stories or K < min_fans:
            continue
        total = sum(o.k for o in obs)
        if total == 0:
            continue
        mean = total / len(obs)
        n = max(o.n for o in obs)
        out.append(InfluenceEstimate(sub, len(obs), mean, K,
                                     chance_probability(g.node_count, K, n, mean, mode), n))
    out.sort(key=lambda e: (-e.mean_fan_votes, e.submitter))
    return out


def write_influence_csv(estimates: Sequence[InfluenceEstimate]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(INFLUENCE_COLUMNS)
    for e in estimates:
        w.writerow((e.submitter, e.story_count, e.fan_count, repr(float(e.mean_fan_votes)),
                    repr(float(e.chance_probability))))
    return buf.getvalue()


def load_influence_csv(source: str | Iterable[str]) -> list[InfluenceEstimate]:
    lines = io.StringIO(source) if isinstance(source, str) else source
    reader = csv.DictReader(lines)
    need = {"submitter", "mean_fan_votes"}
    if reader.fieldnames is None or not need <= set(reader.fieldnames):
        raise VoteLogError("influence CSV needs columns submitter and mean_fan_votes")
    out = []
    for i, row in enumerate(reader, start=2):
        try:
            out.append(InfluenceEstimate(
                row["submitter"], int(row.get("story_count") or 1),
                float(row["mean_fan_votes"]), int(row.get("fan_count") or 0),
                float(row.get("chance_probability") or "nan")))
        except ValueError as exc:
            raise VoteLogError(f"line {i}: {exc}") from None
    return out


# ---- Weibull curve ---------------------------------------------------------


@dataclass(frozen=True)
class WeibullFit:
    """``<k> = a (1 - exp(-(b K + c)^d))``."""

    a: float
    b: float
    c: float
    d: float
    r_squared: float = math.nan
    degenerate: bool = False
    notes: tuple[str, ...] = field(default=())

    def __call__(self, K):
        return eval_weibull(self, K)


def _weibull(params, K: np.ndarray) -> np.ndarray:
    a, b, c, d = params
    x = np.maximum(b * K + c, 0.0)
    return a * -np.expm1(-(x ** d))


def eval_weibull(fit: WeibullFit, K):
    """Evaluate the fitted curve at fan count(s) ``K``."""
    K_arr = np.asarray(K, dtype=float)
    if np.any(K_arr < 0):
        raise InputError("fan count must be non-negative")
    out = _weibull((fit.a, fit.b, fit.c, fit.d), K_arr)
    return float(out) if out.ndim == 0 else out


def fit_weibull(points: Sequence[tuple[float, float]], ceiling_hint: float | None = None,
                restarts: int = 6) -> WeibullFit:
    """Least-squares Weibull-CDF fit by Nelder-Mead on log parameters.

    The four parameters are searched as logarithms so they stay positive.
    Starts are seeded from ``ceiling_hint`` (default: the largest mean) and
    a spread of scale/shape guesses; the best local optimum is polished and
    kept.  If every mean is equal the shape is unidentifiable; the result
    is a flat curve at that value flagged ``degenerate``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 4:
        raise InputError("fit_weibull needs at least 4 (K, mean) points")
    K, y = pts[:, 0], pts[:, 1]
    if np.any(K < 0) or np.any(y < 0) or not np.all(np.isfinite(pts)):
        raise InputError("K and mean fan votes must be finite and non-negative")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        a = float(y[0])
        return WeibullFit(a, 0.0, 1e6 if a > 0 else 0.0, 1.0, 1.0, True,
                          ("all means equal: b, c and d are unidentifiable",))
    ceiling = float(ceiling_hint) if ceiling_hint else float(y.max())
    kmax = float(K.max()) or 1.0
    scale = float(np.mean(y ** 2)) or 1.0

    def loss(theta):
        r = _weibull(np.exp(theta), K) - y
        return float(r @ r) / scale

    starts = []
    for a_mult in (1.0, 1.5, 3.0):
        for b_mult in (0.3, 1.0, 3.0):
            for d0 in (0.7, 1.0, 1.5):
                starts.append(np.log([a_mult * ceiling, b_mult / kmax, 1e-4 + 1e-3 / kmax, d0]))
    starts.sort(key=loss)
    best = None
    opts = {"xatol": 1e-12, "fatol": 1e-18, "maxiter": 20000, "maxfev": 40000}
    for theta0 in starts[:restarts]:
        res = minimize(loss, theta0, method="Nelder-Mead", options=opts)
        for _ in range(4):
            nxt = minimize(loss, res.x, method="Nelder-Mead", options=opts)
            if nxt.fun >= res.fun * (1 - 1e-12):
                break
            res = nxt
        if best is None or res.fun < best.fun:
            best = res
    a, b, c, d = (float(p) for p in np.exp(best.x))
    resid = _weibull((a, b, c, d), K) - y
    r2 = 1.0 - float(resid @ resid) / ss_tot
    return WeibullFit(a, b, c, d, r2)
