"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; criterion 7 also prints
its per-seed correlations.
"""

import json
import math
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from influence_rank.cli import main
from influence_rank.empirics import (FanVoteObservation, WeibullFit, chance_probability,
                                     empirical_influence, eval_weibull, fit_weibull,
                                     hypergeometric_pmf, write_vote_log)
from influence_rank.evaluate import sweep_correlation
from influence_rank.flowsim import CascadeConfig, simulate_duplication_cascade
from influence_rank.generators import (complete_digraph, preferential_attachment_digraph,
                                       random_digraph, simulate_stories, star_graph)
from influence_rank.geodesic import (betweenness_brandes, closeness_lin, closeness_sabidussi,
                                     closeness_wasserman_faust, geodesic_summary,
                                     graph_centrality)
from influence_rank.graph import read_edge_list, write_edge_list
from influence_rank.spectral import (AlphaConfig, alpha_centrality, alpha_sweep,
                                     dominant_eigenpair, katz, sender_rank)

from conftest import seeded_graphs
from oracles import betweenness_exact, closeness_exact, resolvent_col, resolvent_row

pytestmark = pytest.mark.acceptance

WEIBULL = WeibullFit(65, 0.0011, 0.0005, 0.86)


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def report(number: int, title: str, budget: float | None = None):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            assert budget is None or elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            with capsys.disabled():
                print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {title} "
                      f"({elapsed:.1f}s)")
    return report


def dense_spectrum(g):
    ev = np.linalg.eigvals(g.dense_adjacency())
    mod = np.abs(ev)
    rho = mod.max()
    near = mod >= rho - 1e-6 * max(1.0, rho)
    return rho, int(near.sum())


def test_1_geodesic_oracle(criterion):
    with criterion(1, "geodesic measures match shortest-path enumeration", budget=30):
        for g in seeded_graphs(200, 2, 12, seed=101, p_lo=0.05, p_hi=0.5):
            a = g.dense_adjacency()
            ref = closeness_exact(a)
            summ = geodesic_summary(g)
            got = {"sabidussi": closeness_sabidussi(g, summ), "wf": closeness_wasserman_faust(g, summ),
                   "lin": closeness_lin(g, summ), "graph": graph_centrality(g, summ)}
            for kind, sv in got.items():
                np.testing.assert_allclose(sv.values, [float(x) for x in ref[kind]],
                                           rtol=1e-12, atol=1e-12, err_msg=kind)
            bexact = betweenness_exact(a)
            bgot = betweenness_brandes(g).values
            for x, y in zip(bexact, bgot):
                assert abs(Fraction(y) - x) <= Fraction(1, 10**12)


def test_2_resolvent_oracle(criterion):
    with criterion(2, "alpha/Katz/SenderRank match dense resolvent solves", budget=30):
        checked = 0
        for g in seeded_graphs(100, 2, 30, seed=202, p_lo=0.05, p_hi=0.4):
            lam = dominant_eigenpair(g).lambda1
            alpha = 0.5 / lam if lam > 0 else 0.5
            cfg = AlphaConfig(alpha=alpha)
            a = g.dense_adjacency()
            n = g.node_count
            np.testing.assert_allclose(alpha_centrality(g, cfg, lam).values,
                                       resolvent_row(a, alpha, np.ones(n)), rtol=1e-9)
            np.testing.assert_allclose(katz(g, cfg, lam).values,
                                       resolvent_row(a, alpha, alpha * a.sum(axis=0)),
                                       rtol=1e-9, atol=1e-300)
            np.testing.assert_allclose(sender_rank(g, cfg, lam).values,
                                       (1 - alpha) * resolvent_col(a, alpha), rtol=1e-9)
            checked += 1
        assert checked == 100


def theorem_graphs(count: int = 50, seed: int = 303):
    """Seeded random digraphs (n <= 50) whose dominant eigenvalue is simple and positive."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        g = random_digraph(int(rng.integers(8, 51)), float(rng.uniform(0.08, 0.35)), rng)
        rho, mult = dense_spectrum(g)
        if rho > 0 and mult == 1:
            out.append(g)
    return out


def test_3_theorem_suite(criterion, tmp_path):
    with criterion(3, "verify passes on 50 random graphs plus K3 and the star", budget=120):
        graphs = theorem_graphs() + [complete_digraph(3), star_graph(3)]
        failures = []
        for i, g in enumerate(graphs):
            path = tmp_path / f"g{i}.txt"
            path.write_text(write_edge_list(g))
            out = tmp_path / f"g{i}.csv"
            code = main(["verify", str(path), "-o", str(out)])
            if code != 0:
                failures.append((i, out.read_text()))
        assert not failures, failures[:2]


def test_4_plateau_window(criterion):
    with criterion(4, "plateau lies in (1/lambda - s, 1/lambda + 2s] and is flat"):
        graphs = [complete_digraph(3)]
        for g in theorem_graphs(40, seed=404):
            rho, _ = dense_spectrum(g)
            ev = np.linalg.eigvals(g.dense_adjacency())
            second = np.sort(np.abs(ev))[-2]
            # a plateau inside (0, 1] needs 1/lambda < 1 and a unique limit
            if rho > 1 and second < rho * (1 - 1e-6):
                graphs.append(g)
        assert len(graphs) >= 20
        for g in graphs:
            lam = dominant_eigenpair(g).lambda1
            sw = alpha_sweep(g, AlphaConfig(), full=True)
            s = sw.step_size
            pa = sw.plateau_alpha
            assert pa is not None and 1 / lam - s < pa <= 1 / lam + 2 * s + 1e-12, (lam, s, pa)
            post = [e.scores.values for e in sw.entries if e.alpha >= pa]
            ref = post[0]
            for v in post[1:]:
                assert np.max(np.abs(v - ref)) <= 10 * sw.tolerance


def test_5_hypergeometric(criterion):
    with criterion(5, "hypergeometric pmf, symmetry, Monte Carlo and tail bound", budget=60):
        rng = np.random.default_rng(505)
        draws = 100_000
        for _ in range(10):
            N = int(rng.integers(20, 5000))
            K = int(rng.integers(1, N))
            n = int(rng.integers(1, min(N, 300)))
            ks = np.arange(0, min(K, n) + 1)
            pmf = np.array([hypergeometric_pmf(FanVoteObservation(N, K, n, int(k))) for k in ks])
            assert abs(pmf.sum() - 1) <= 1e-9
            for k in ks[:: max(1, len(ks) // 7)]:
                swap = hypergeometric_pmf(FanVoteObservation(N, n, K, int(k)))
                assert swap == pytest.approx(pmf[k], rel=1e-9, abs=1e-300)
            x = rng.hypergeometric(K, N - K, n, size=draws)
            mean = float(ks @ pmf)
            sd = math.sqrt(float((ks - mean) ** 2 @ pmf))
            assert abs(x.mean() - mean) <= 3 * sd / math.sqrt(draws) + 1e-12
            # one tail probability per triple, at the pmf's upper quartile
            q = int(np.searchsorted(np.cumsum(pmf), 0.75))
            p_tail = chance_probability(N, K, n, q)
            se = math.sqrt(p_tail * (1 - p_tail) / draws)
            assert abs((x >= q).mean() - p_tail) <= 3 * se + 1e-12
        worst = max(chance_probability(69_524, K, 100, float(eval_weibull(WEIBULL, K)))
                    for K in range(11, 10_001))
        assert worst < 3.8e-4, worst


def test_6_cascade_oracle(criterion):
    with criterion(6, "cascade exposure matches alpha-centrality within 4 SE", budget=120):
        worst = 0.0
        for i, g in enumerate(seeded_graphs(5, 6, 15, seed=606, p_lo=0.1, p_hi=0.3)):
            lam = dominant_eigenpair(g).lambda1
            alpha = 0.5 / lam if lam > 0 else 0.5
            ref = alpha_centrality(g, AlphaConfig(alpha=alpha), lam).values
            for src in range(g.node_count):
                r = simulate_duplication_cascade(g, src, CascadeConfig(alpha, 50, 100_000, i))
                gap = abs(r.expected_exposure - ref[src])
                assert gap <= 4 * r.stderr + 1e-12, (i, src, gap, r.stderr)
                if r.stderr > 0:
                    worst = max(worst, gap / r.stderr)
        assert worst <= 4


# ---- criterion 7 ----------------------------------------------------------

GEODESIC = ("closeness-sabidussi", "closeness-wf", "closeness-lin", "graph", "betweenness")
MEASURES7 = ("in-degree", *GEODESIC, "normalized-alpha", "senderrank")


def synthetic_comparison(seed: int) -> dict[str, float]:
    """Best correlation per measure on one seeded synthetic network.

    Fixed design: a 2,000-node preferential-attachment fan graph (3 friends
    per newcomer, reciprocity 0.5, triadic closure 0.5); 125 submitters
    drawn from users with at least 10 fans, 4 stories each; stories spread
    as duplication cascades with alpha = 0.9 / lambda_1 plus 50 background
    voters.  Parametric measures report their best value over the grid.
    """
    rng = np.random.default_rng(seed)
    g = preferential_attachment_digraph(2000, 3, 0.5, rng, closure=0.5)
    lam = dominant_eigenpair(g).lambda1
    pool = rng.choice(np.flatnonzero(g.in_degree >= 10), size=125, replace=False)
    subs = rng.permutation(np.repeat(pool, 4))
    stories = simulate_stories(g, subs, 0.9 / lam, 50, rng)
    emp = empirical_influence(g, stories)
    best: dict[str, float] = {}
    for r in sweep_correlation(g, emp, MEASURES7):
        if not math.isnan(r.correlation):
            best[r.measure_name] = max(best.get(r.measure_name, -2.0), r.correlation)
    return best


def ordering_holds(c: dict[str, float]) -> bool:
    return (c["normalized-alpha"] >= c["in-degree"]
            and all(c["in-degree"] > c[m] for m in GEODESIC)
            and c["normalized-alpha"] > c["senderrank"])


def test_7_synthetic_ordering(criterion, capsys):
    with criterion(7, "normalized-alpha >= in-degree > geodesic, > SenderRank in >= 4/5 seeds",
                   budget=300):
        held = 0
        for seed in range(5):
            c = synthetic_comparison(seed)
            ok = ordering_holds(c)
            held += ok
            with capsys.disabled():
                print(f"\n  seed {seed}: {'holds' if ok else 'fails'} "
                      + " ".join(f"{m}={c[m]:.3f}" for m in MEASURES7))
        assert held >= 4, f"ordering held in {held} of 5 seeds"


def test_8_weibull_recovery(criterion):
    with criterion(8, "Weibull fit recovers generating parameters"):
        K = np.concatenate([np.arange(0, 200, 10), np.geomspace(200, 20_000, 30)])
        fit = fit_weibull(list(zip(K, eval_weibull(WEIBULL, K))), ceiling_hint=65)
        for got, want in zip((fit.a, fit.b, fit.c, fit.d), (65, 0.0011, 0.0005, 0.86)):
            assert abs(got - want) <= 0.05 * want, (got, want)
        assert fit.r_squared >= 0.999


def test_9_cli_determinism(criterion, tmp_path, monkeypatch):
    with criterion(9, "every command reruns byte-identically from its manifest"):
        monkeypatch.chdir(tmp_path)
        rng = np.random.default_rng(909)
        g = preferential_attachment_digraph(150, 3, 0.5, rng, closure=0.3)
        (tmp_path / "g.txt").write_text(write_edge_list(g))
        g = read_edge_list(tmp_path / "g.txt")
        pool = np.flatnonzero(g.in_degree >= 5)[:20]
        lam = dominant_eigenpair(g).lambda1
        stories = simulate_stories(g, np.repeat(pool, 3), 0.8 / lam, 10, rng)
        (tmp_path / "votes.csv").write_text(write_vote_log(stories))
        src = g.label(int(pool[0]))
        commands = [
            ["rank", "g.txt", "--measure", "betweenness", "--threads", "2"],
            ["rank", "g.txt", "--measure", "normalized-alpha", "--alpha", "0.9"],
            ["sweep", "g.txt", "--measures", "normalized-alpha,katz", "--full"],
            ["influence", "g.txt", "votes.csv", "--min-fans", "5"],
            ["compare", "g.txt", "first3.csv", "--top-h", "3"],
            ["verify", "--n", "20", "--count", "2", "--seed", "3"],
            ["simulate", "g.txt", "--source", src, "--alpha", "0.1", "--trials", "5000",
             "--threads", "3"],
        ]
        for i, argv in enumerate(commands):
            first = f"first{i}.csv"
            assert main([*argv, "-o", first]) == 0, argv
            manifest = json.loads((tmp_path / (first + ".manifest.json")).read_text())
            rerun = list(manifest["argv"])
            rerun[rerun.index("-o") + 1] = f"second{i}.csv"
            assert main(rerun) == 0, rerun
            assert (tmp_path / first).read_bytes() == \
                (tmp_path / f"second{i}.csv").read_bytes(), argv
