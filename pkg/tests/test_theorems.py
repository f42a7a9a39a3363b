import numpy as np
import pytest

from influence_rank.errors import InputError
from influence_rank.generators import random_digraph
from influence_rank.graph import DirectedGraph
from influence_rank.spectral import AlphaConfig, verify_theorems

from conftest import single_edge


def statuses(report):
    return {c.name: c.status for c in report.checks}


class TestVerifyTheorems:
    def test_k3_all_pass(self, k3):
        r = verify_theorems(k3)
        assert statuses(r) == {"T1": "pass", "T2": "pass", "T3": "pass", "T4": "pass"}
        assert r.passed and r.simple and r.strictly_dominant and r.symmetric

    def test_random_er(self):
        r = verify_theorems(random_digraph(20, 0.2, 2024))
        s = statuses(r)
        assert s["T1"] == "pass" and s["T2"] == "pass"
        assert r.passed

    def test_nilpotent_notes_degenerate(self):
        r = verify_theorems(single_edge())
        s = statuses(r)
        assert s["T2"] == "pass" and s["T3"] == "pass"
        assert any("degenerate" in n for n in r.notes)

    def test_equal_modulus_pair_skips(self):
        g = DirectedGraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
        r = verify_theorems(g)
        s = statuses(r)
        assert s["T3"] == "skipped" and s["T4"] == "skipped"
        assert "not simple" in r.check("T3").detail
        assert r.passed

    def test_star_periodic(self, star):
        r = verify_theorems(star)
        s = statuses(r)
        assert s["T2"] == "skipped" and s["T3"] == "pass" and s["T4"] == "pass"
        assert r.simple and not r.strictly_dominant

    def test_gap_and_alpha_reported(self, k3):
        t3 = verify_theorems(k3).check("T3")
        assert t3.alpha is not None and t3.gap <= 1e-6

    def test_size_limit(self):
        with pytest.raises(InputError, match="50"):
            verify_theorems(random_digraph(51, 0.1, 0))

    def test_personalization_is_ignored(self, k3):
        r = verify_theorems(k3, AlphaConfig(personalization=[1.0, 0.0, 0.0]))
        assert r.passed

    @pytest.mark.parametrize("seed", range(6))
    def test_random_graphs_pass(self, seed):
        rng = np.random.default_rng(seed)
        g = random_digraph(int(rng.integers(10, 40)), float(rng.uniform(0.05, 0.3)), rng)
        r = verify_theorems(g)
        assert r.passed, [c for c in r.checks if c.status == "fail"]
