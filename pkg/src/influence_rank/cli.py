"""``influence-rank`` command line.

Subcommands: rank, sweep, influence, compare, verify, simulate.  Each writes
one CSV (or JSON with ``--format json``) table to ``--output`` plus a
``<output>.manifest.json`` sidecar recording the command, input digests,
effective configuration, version and run time.  Without ``--output`` the
table goes to stdout and no manifest is written.

Exit status: 0 success, 1 bad input or usage, 2 non-convergence or undefined
correlation, 3 parameter outside a measure's domain, 4 theorem check failed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .config import BUILTIN_DEFAULTS, Settings, env_override
from .empirics import INFLUENCE_COLUMNS, empirical_influence, load_influence_csv, read_vote_log
from .errors import (ConvergenceError, DomainError, InfluenceRankError, InputError,
                     UndefinedCorrelationError)
from .evaluate import (COMPARISON_COLUMNS, MEASURES, PARAMETRIC, compute_measure,
                       default_grid, sweep_correlation)
from .flowsim import CascadeConfig, simulate_duplication_cascade
from .generators import random_digraph
from .graph import DirectedGraph, ScoreVector, read_edge_list, scores_to_ranking
from .spectral import (AlphaConfig, alpha_sweep, default_step, dominant_eigenpair,
                       normalized_alpha_iterate, verify_theorems)

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_DOMAIN = 3
EXIT_THEOREM = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple]
    inputs: list[Path] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    status: int = EXIT_OK
    message: str = ""


# ---- argument types --------------------------------------------------------


def _int_at_least(lo: int) -> Callable[[str], int]:
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be at least {lo}, got {v}")
        return v
    return conv


def _unit_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError(f"must lie in [0, 1], got {v}")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _window(text: str) -> int | None:
    if text.strip().lower() == "all":
        return None
    return _int_at_least(1)(text)


def _name_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _bool(text: str) -> bool:
    return text.strip().lower() in ("1", "true", "yes", "on")


# ---- parser ----------------------------------------------------------------


def build_parser(use_env: bool = True, settings: Settings = BUILTIN_DEFAULTS) -> argparse.ArgumentParser:
    s = settings
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="output file (default: stdout, no manifest)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--threads", type=_int_at_least(1), default=s.threads,
                        help="worker cap; results do not depend on it")
    common.add_argument("--paper-defaults", action="store_true",
                        help="use built-in defaults and ignore INFLUENCE_RANK_* variables")

    numeric = _Parser(add_help=False)
    numeric.add_argument("--tolerance", type=_positive_float, default=s.tolerance)
    numeric.add_argument("--max-iter", type=_int_at_least(1), default=s.max_iterations)

    parser = _Parser(prog="influence-rank",
                     description="Centrality and influence ranking for directed fan graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("rank", parents=[common, numeric], help="score every node with one measure")
    p.add_argument("graph")
    p.add_argument("--measure", required=True, choices=MEASURES)
    p.add_argument("--alpha", type=_unit_float,
                   help="attenuation/damping (default 0.5; 0.5/lambda_1 for alpha, katz, senderrank)")
    p.add_argument("--personalization", help="CSV with columns node,weight (missing nodes get 0)")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("sweep", parents=[common, numeric], help="scores over an alpha grid")
    p.add_argument("graph")
    p.add_argument("--measures", type=_name_list, default="normalized-alpha",
                   help="comma-separated parametric measures")
    p.add_argument("--step", type=_positive_float,
                   help="normalized-alpha grid step (default 0.5/min(d_out_max, d_in_max))")
    p.add_argument("--full", action="store_true", help="continue the sweep past the plateau to 1")
    p.add_argument("--aggregate", action="store_true", help="one row per (measure, alpha)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("influence", parents=[common], help="empirical influence from a vote log")
    p.add_argument("graph")
    p.add_argument("votes")
    p.add_argument("--window", type=_window, default=str(s.window), help="vote window or 'all'")
    p.add_argument("--min-stories", type=_int_at_least(1), default=s.min_stories)
    p.add_argument("--min-fans", type=_int_at_least(0), default=s.min_fans)
    p.add_argument("--chance-mode", choices=("tail", "pmf"), default="tail")
    p.set_defaults(func=cmd_influence)

    p = sub.add_parser("compare", parents=[common, numeric],
                       help="correlate measures with empirical influence")
    p.add_argument("graph")
    p.add_argument("empirical", help="CSV written by the influence command")
    p.add_argument("--measures", type=_name_list, default=",".join(MEASURES))
    p.add_argument("--top-h", type=_int_at_least(1))
    p.add_argument("--exclude", type=_name_list, default="",
                   help="comma-separated node labels left out of recall")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", parents=[common, numeric],
                       help="check the normalized alpha-centrality theorems")
    p.add_argument("graph", nargs="?")
    p.add_argument("--n", type=_int_at_least(1), default=20, help="random graph size (<= 50)")
    p.add_argument("--count", type=_int_at_least(1), default=1, help="number of random graphs")
    p.add_argument("--density", type=_unit_float, default=0.15)
    p.add_argument("--seed", type=_int_at_least(0), default=s.seed)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="duplication cascade from one source")
    p.add_argument("graph")
    p.add_argument("--source", required=True, help="source node label")
    p.add_argument("--alpha", type=_unit_float, required=True)
    p.add_argument("--trials", type=_int_at_least(1), default=s.trials)
    p.add_argument("--horizon", type=_int_at_least(0), default=s.horizon)
    p.add_argument("--seed", type=_int_at_least(0), default=s.seed)
    p.set_defaults(func=cmd_simulate)

    if use_env:
        for action_parser in [parser, *sub.choices.values()]:
            _apply_env(action_parser)
    return parser


def _apply_env(p: argparse.ArgumentParser) -> None:
    for action in p._actions:
        if not action.option_strings or action.dest in ("help", "version", "paper_defaults"):
            continue
        raw = env_override(action.dest)
        if raw is None:
            continue
        if isinstance(action, argparse._StoreTrueAction):
            action.default = _bool(raw)
        else:
            # argparse runs string defaults through the option's type converter
            action.default = raw
            action.required = False


# ---- helpers ---------------------------------------------------------------


def _fmt(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if isinstance(x, (np.integer,)):
        return str(int(x))
    return str(x)


def _render(table: Table, fmt: str) -> str:
    if fmt == "json":
        def clean(v):
            if isinstance(v, (float, np.floating)):
                return float(v) if math.isfinite(v) else None
            if isinstance(v, np.integer):
                return int(v)
            return v
        rows = [{c: clean(v) for c, v in zip(table.columns, r)} for r in table.rows]
        return json.dumps(rows, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for r in table.rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _load_graph(path: str) -> DirectedGraph:
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise InputError(f"cannot read graph {path!r}: {exc.strerror}") from None


def _alpha_cfg(args, alpha: float | None = None, personalization=None,
               step: float | None = None) -> AlphaConfig:
    return AlphaConfig(alpha=0.5 if alpha is None else alpha, personalization=personalization,
                       tolerance=args.tolerance, max_iterations=args.max_iter, step_size=step)


def _personalization(path: str, g: DirectedGraph) -> np.ndarray:
    v = np.zeros(g.node_count)
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"node", "weight"} <= set(reader.fieldnames):
                raise InputError("personalization CSV needs columns node,weight")
            for row in reader:
                try:
                    v[g.index(row["node"].strip())] = float(row["weight"])
                except ValueError as exc:
                    raise InputError(f"personalization: {exc}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path!r}: {exc.strerror}") from None
    return v


def _score_rows(s: ScoreVector) -> list[tuple]:
    ranks = scores_to_ranking(s).ranks
    return [(lab, float(val), float(r)) for lab, val, r in zip(s.labels, s.values, ranks)]


# ---- commands --------------------------------------------------------------


def cmd_rank(args) -> Table:
    g = _load_graph(args.graph)
    inputs = [Path(args.graph)]
    pers = None
    if args.personalization:
        pers = _personalization(args.personalization, g)
        inputs.append(Path(args.personalization))
    alpha = args.alpha
    lam = None
    if args.measure in ("alpha", "katz", "senderrank"):
        lam = dominant_eigenpair(g, args.tolerance, args.max_iter).lambda1
        if alpha is None:
            alpha = 0.5 / lam if lam > 0 else 0.5
    cfg = _alpha_cfg(args, alpha, pers)
    config = {"measure": args.measure, "tolerance": args.tolerance, "max_iter": args.max_iter}
    if args.measure in PARAMETRIC:
        config["alpha"] = cfg.alpha
    if lam is not None:
        config["lambda1"] = lam
    if args.measure == "normalized-alpha":
        it = normalized_alpha_iterate(g, cfg)
        if it.regime == "unconverged":
            raise ConvergenceError(f"normalized alpha-centrality did not settle at alpha={cfg.alpha} "
                                   f"within {cfg.max_iterations} iterations")
        scores = ScoreVector(it.vector, "normalized-alpha", g.labels)
        config["regime"] = it.regime
    else:
        scores = compute_measure(g, args.measure, cfg, lam, args.threads)
    return Table(("node", "score", "rank"), _score_rows(scores), inputs, config)


def cmd_sweep(args) -> Table:
    measures = args.measures
    if not measures:
        raise InputError("no measures given")
    bad = [m for m in measures if m not in PARAMETRIC]
    if bad:
        raise InputError(f"not a parametric measure: {bad[0]!r}; "
                         f"choose from {', '.join(sorted(PARAMETRIC))}")
    g = _load_graph(args.graph)
    step = args.step if args.step is not None else default_step(g)
    config = {"measures": measures, "step": step, "full": args.full,
              "tolerance": args.tolerance, "max_iter": args.max_iter}
    results: dict = {}
    detail: list[tuple] = []
    summary: list[tuple] = []
    lam = None
    for m in measures:
        if m == "normalized-alpha":
            sw = alpha_sweep(g, _alpha_cfg(args, step=step), full=args.full)
            results["plateau_alpha"] = sw.plateau_alpha
            prev = None
            for e in sw.entries:
                change = None if prev is None else float(np.max(np.abs(e.scores.values - prev)))
                prev = e.scores.values
                summary.append((m, e.alpha, e.regime, e.iterations, change))
                detail.extend((m, e.alpha, lab, float(v))
                              for lab, v in zip(g.labels, e.scores.values))
            continue
        if lam is None and m in ("alpha", "katz", "senderrank"):
            lam = dominant_eigenpair(g, args.tolerance, args.max_iter).lambda1
            results["lambda1"] = lam
        prev = None
        for a in default_grid(m, g, lam):
            try:
                s = compute_measure(g, m, _alpha_cfg(args, a), lam, args.threads)
            except (DomainError, ConvergenceError) as exc:
                summary.append((m, a, f"error: {exc}", None, None))
                prev = None
                continue
            change = None if prev is None else float(np.max(np.abs(s.values - prev)))
            prev = s.values
            summary.append((m, a, "ok", None, change))
            detail.extend((m, a, lab, float(v)) for lab, v in zip(g.labels, s.values))
    if "plateau_alpha" in results:
        pa = results["plateau_alpha"]
        msg = f"plateau at alpha={pa!r}" if pa is not None else "no plateau detected"
    else:
        msg = ""
    if args.aggregate:
        return Table(("measure", "alpha", "status", "iterations", "max_change"), summary,
                     [Path(args.graph)], config, results, message=msg)
    return Table(("measure", "alpha", "node", "score"), detail, [Path(args.graph)], config,
                 results, message=msg)


def cmd_influence(args) -> Table:
    g = _load_graph(args.graph)
    try:
        stories = read_vote_log(args.votes)
    except OSError as exc:
        raise InputError(f"cannot read vote log {args.votes!r}: {exc.strerror}") from None
    est = empirical_influence(g, stories, args.window, args.min_stories, args.min_fans,
                              args.chance_mode)
    rows = [(e.submitter, e.story_count, e.fan_count, float(e.mean_fan_votes),
             float(e.chance_probability)) for e in est]
    config = {"window": args.window, "min_stories": args.min_stories,
              "min_fans": args.min_fans, "chance_mode": args.chance_mode}
    msg = "" if rows else "warning: every submitter was filtered out"
    return Table(INFLUENCE_COLUMNS, rows, [Path(args.graph), Path(args.votes)], config,
                 {"stories": len(stories), "submitters": len(est)}, message=msg)


def cmd_compare(args) -> Table:
    if not args.measures:
        raise InputError("no measures given")
    g = _load_graph(args.graph)
    try:
        with open(args.empirical, encoding="utf-8", newline="") as fh:
            emp = load_influence_csv(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.empirical!r}: {exc.strerror}") from None
    cfg = _alpha_cfg(args)
    reports = sweep_correlation(g, emp, args.measures, h=args.top_h, exclude=args.exclude,
                                cfg=cfg, workers=args.threads)
    rows = [(r.measure_name, r.alpha, r.correlation, r.recall_at_h, r.sample_size)
            for r in reports]
    config = {"measures": args.measures, "top_h": args.top_h, "exclude": args.exclude,
              "tolerance": args.tolerance, "max_iter": args.max_iter}
    return Table(COMPARISON_COLUMNS, rows, [Path(args.graph), Path(args.empirical)], config)


def cmd_verify(args) -> Table:
    cfg = _alpha_cfg(args)
    graphs: list[tuple[str, DirectedGraph]] = []
    inputs = []
    if args.graph:
        graphs.append((args.graph, _load_graph(args.graph)))
        inputs.append(Path(args.graph))
        config = {"graph": args.graph}
    else:
        if args.n > 50:
            raise InputError("--n must be at most 50 (dense oracle)")
        rng = np.random.default_rng(args.seed)
        for i in range(args.count):
            graphs.append((f"random-{i}", random_digraph(args.n, args.density, rng)))
        config = {"n": args.n, "count": args.count, "density": args.density, "seed": args.seed}
    config.update(tolerance=args.tolerance, max_iter=args.max_iter)
    rows = []
    failures = []
    for name, g in graphs:
        rep = verify_theorems(g, cfg)
        for c in rep.checks:
            rows.append((name, c.name, c.status, c.alpha, c.gap, c.detail))
            if c.status == "fail":
                failures.append(f"{name} {c.name} failed at alpha={c.alpha!r}, gap={c.gap!r}: "
                                f"{c.detail}")
    status = EXIT_THEOREM if failures else EXIT_OK
    return Table(("graph", "check", "status", "alpha", "gap", "detail"), rows, inputs, config,
                 {"failures": len(failures)}, status, "\n".join(failures))


def cmd_simulate(args) -> Table:
    g = _load_graph(args.graph)
    src = g.index(args.source)
    cfg = CascadeConfig(args.alpha, args.horizon, args.trials, args.seed)
    r = simulate_duplication_cascade(g, src, cfg, workers=args.threads)
    config = {"source": args.source, "alpha": args.alpha, "trials": args.trials,
              "horizon": args.horizon, "seed": args.seed}
    se = 0.0 if args.trials == 1 else r.stderr
    return Table(("source", "expected_exposure", "stderr"),
                 [(args.source, r.expected_exposure, se)], [Path(args.graph)], config)


# ---- entry point -----------------------------------------------------------


def _exit_for(exc: BaseException) -> int:
    if isinstance(exc, (ConvergenceError, UndefinedCorrelationError)):
        return EXIT_NUMERIC
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    builtin_only = "--paper-defaults" in argv or _bool(env_override("paper_defaults") or "")
    parser = build_parser(use_env=not builtin_only)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        table = args.func(args)
    except InfluenceRankError as exc:
        hint = ""
        if isinstance(exc, DomainError) and getattr(args, "measure", None) in (
                "alpha", "katz", "senderrank"):
            hint = " (try --measure normalized-alpha)"
        print(f"influence-rank {args.command}: {exc}{hint}", file=sys.stderr)
        return _exit_for(exc)
    text = _render(table, args.format)
    if table.message:
        print(table.message, file=sys.stderr)
    if args.output:
        out = Path(args.output)
        out.write_text(text, encoding="utf-8")
        manifest = {
            "command": args.command,
            "argv": argv,
            "inputs": [{"path": str(p), "sha256": _sha256(p)} for p in table.inputs],
            "config": {**table.config, "format": args.format, "threads": args.threads,
                       "paper_defaults": builtin_only},
            "results": table.results,
            "version": __version__,
            "output": str(out),
            "duration_seconds": time.perf_counter() - start,
        }
        Path(str(out) + ".manifest.json").write_text(
            json.dumps(manifest, indent=2, default=_json_default) + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text)
    return table.status


def _json_default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    return str(o)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
