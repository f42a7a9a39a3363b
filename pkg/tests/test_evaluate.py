import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from influence_rank.empirics import InfluenceEstimate
from influence_rank.errors import InputError, UndefinedCorrelationError
from influence_rank.evaluate import (pearson_rank_correlation, recall_top, sweep_correlation,
                                     write_comparison_csv)
from influence_rank.generators import preferential_attachment_digraph
from influence_rank.graph import ScoreVector, in_degree_centrality, scores_to_ranking
from influence_rank.spectral import AlphaConfig, alpha_sweep

from oracles import pearson


def sv(values, labels=None):
    labels = labels or tuple(f"n{i}" for i in range(len(values)))
    return ScoreVector(np.asarray(values, float), "", tuple(labels))


def estimates(labels, means):
    return [InfluenceEstimate(lab, 2, float(m), 10, 0.5) for lab, m in zip(labels, means)]


class TestPearson:
    def test_identical(self):
        assert pearson_rank_correlation(sv([1, 5, 3]), sv([1, 5, 3])) == 1.0

    def test_reversed(self):
        assert pearson_rank_correlation(sv([1, 2, 3, 4]), sv([4, 3, 2, 1])) == pytest.approx(-1.0)

    def test_worked_example(self):
        # ranks (1,2,3,4) vs (2,1,4,3) arise from these scores
        a = scores_to_ranking(sv([4, 3, 2, 1]))
        b = scores_to_ranking(sv([3, 4, 1, 2]))
        np.testing.assert_array_equal(b.ranks, [2, 1, 4, 3])
        assert pearson_rank_correlation(a, b) == pytest.approx(0.6, abs=1e-15)
        assert pearson([1, 2, 3, 4], [2, 1, 4, 3]) == pytest.approx(0.6)

    def test_constant_side(self):
        with pytest.raises(UndefinedCorrelationError):
            pearson_rank_correlation(sv([1, 2, 3]), sv([2, 2, 2]))

    def test_aligns_by_label(self):
        a = sv([1, 2, 3], ("a", "b", "c"))
        b = sv([3, 1, 2], ("c", "a", "b"))
        assert pearson_rank_correlation(a, b) == pytest.approx(1.0)

    @given(st.lists(st.integers(0, 6), min_size=3, max_size=25),
           st.lists(st.integers(0, 6), min_size=3, max_size=25))
    @settings(max_examples=80, deadline=None)
    def test_symmetric_and_transform_invariant(self, x, y):
        n = min(len(x), len(y))
        a, b = sv(x[:n]), sv(y[:n])
        if len(set(x[:n])) < 2 or len(set(y[:n])) < 2:
            return
        r = pearson_rank_correlation(a, b)
        assert r == pytest.approx(pearson_rank_correlation(b, a))
        assert r == pytest.approx(pearson_rank_correlation(sv(np.exp(a.values)), b))
        ra = scores_to_ranking(a).ranks
        rb = scores_to_ranking(b).ranks
        assert r == pytest.approx(pearson(ra, rb))


class TestRecall:
    def test_same_top(self):
        emp = sv([5, 4, 3, 2], "abcd")
        pred = sv([5, 4, 3, 2, 1, 0], "abcdxy")
        assert recall_top(emp, pred, 2) == 1.0

    def test_disjoint(self):
        emp = sv([5, 4, 3, 2], "abcd")
        pred = sv([0, 0, 0, 0, 9, 8], "abcdxy")
        assert recall_top(emp, pred, 2) == 0.0

    def test_half(self):
        emp = sv([8, 7, 6, 5, 1], "abcde")
        pred = sv([9, 8, 1, 0, 0, 7, 6], "abcdexy")
        assert recall_top(emp, pred, 4) == 0.5

    def test_boundary_tie_kept_whole_and_capped(self):
        emp = sv([9, 5, 5, 1], "abcd")
        pred = sv([9, 5, 5, 0, 0], "abcdx")
        assert recall_top(emp, pred, 2) == 1.0

    def test_h_too_large(self):
        with pytest.raises(InputError):
            recall_top(sv([1, 2], "ab"), sv([1, 2, 3], "abc"), 3)

    def test_exclude(self):
        emp = sv([5, 4, 3], "abc")
        pred = sv([5, 4, 0, 9], "abcz")
        assert recall_top(emp, pred, 2) == 0.5
        assert recall_top(emp, pred, 2, exclude=["z"]) == 1.0

    @given(st.lists(st.integers(0, 5), min_size=5, max_size=12), st.integers(1, 5))
    @settings(max_examples=60, deadline=None)
    def test_values_on_grid(self, vals, h):
        emp = sv(vals)
        pred = sv(list(reversed(vals)) + [2, 3])
        r = recall_top(emp, pred, h)
        assert 0 <= r <= 1 and math.isclose(r * h, round(r * h))


class TestSweepCorrelation:
    def setup_method(self):
        self.g = preferential_attachment_digraph(300, 3, 0.3, 5)
        indeg = self.g.in_degree
        self.subs = [self.g.label(i) for i in np.argsort(-indeg, kind="stable")[:40]]
        self.emp = estimates(self.subs, [indeg[self.g.index(s)] for s in self.subs])

    def test_in_degree_self_comparison(self):
        (row,) = sweep_correlation(self.g, self.emp, ["in-degree"], h=10)
        assert row.correlation == pytest.approx(1.0) and row.sample_size == 40
        assert row.recall_at_h == 1.0

    def test_constant_empirical(self):
        emp = estimates(self.subs, [3.0] * len(self.subs))
        with pytest.raises(UndefinedCorrelationError):
            sweep_correlation(self.g, emp, ["in-degree", "betweenness"])

    def test_constant_measure_gives_nan_row(self):
        from influence_rank.graph import DirectedGraph
        g = DirectedGraph.from_labeled_edges([("a", "b"), ("c", "d")])
        emp = estimates(["b", "d"], [1.0, 2.0])
        (row,) = sweep_correlation(g, emp, ["in-degree"])
        assert math.isnan(row.correlation)

    def test_normalized_flat_past_plateau(self):
        rows = sweep_correlation(self.g, self.emp, ["normalized-alpha"])
        sw = alpha_sweep(self.g, AlphaConfig(), full=True)
        assert sw.plateau_alpha is not None
        past = [r.correlation for r in rows if r.alpha >= sw.plateau_alpha]
        assert len(past) > 1 and max(past) - min(past) <= 1e-12

    def test_identical_rankings_identical_correlation(self):
        rows = sweep_correlation(self.g, self.emp, ["pagerank"])
        assert len(rows) == 19
        assert all(-1 <= r.correlation <= 1 for r in rows)

    def test_csv(self):
        rows = sweep_correlation(self.g, self.emp, ["in-degree", "katz"], h=5)
        text = write_comparison_csv(rows)
        lines = text.splitlines()
        assert lines[0] == "measure,alpha,correlation,recall_at_h,sample_size"
        assert lines[1].startswith("in-degree,,")
        assert len(lines) == 1 + 1 + 9

    def test_needs_two_submitters(self):
        with pytest.raises(InputError):
            sweep_correlation(self.g, self.emp[:1], ["in-degree"])
