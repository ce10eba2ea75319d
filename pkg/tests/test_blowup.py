"""Finite approximants, the exact walk oracle, and the simulator."""

from fractions import Fraction

import pytest

from cellgreen import (
    BudgetError,
    blowup,
    builtin_cell,
    exact_return_probs,
    green_series,
    cell_functions,
    monte_carlo,
    sufficient_level,
)
from cellgreen.blowup import approximant_to_text


class TestBlowup:
    def test_level_one_is_the_cell(self):
        g = builtin_cell("diamond")
        a = blowup(g, 1)
        assert a.level == 1
        assert a.num_vertices == 6
        assert a.num_edges == 6
        assert a.safe_horizon == 7
        assert a.defect_set == frozenset({1})
        edges = {
            (v, u) for v, nbrs in enumerate(a.adjacency) for u in nbrs if v < u
        }
        assert edges == g.edges

    def test_edge_counts_scale_by_clique_count(self):
        for name, mu in (("diamond", 6), ("path2", 2), ("sierpinski", 3)):
            g = builtin_cell(name)
            for k in (1, 2, 3):
                theta = g.theta
                expected = mu**k * theta * (theta - 1) // 2
                assert blowup(g, k).num_edges == expected

    def test_sierpinski_level_two(self):
        a = blowup(builtin_cell("sierpinski"), 2)
        assert a.num_vertices == 15
        assert a.num_edges == 27
        assert a.safe_horizon == 7

    def test_horizon_growth(self):
        g = builtin_cell("diamond")
        assert blowup(g, 1).safe_horizon == 7
        assert blowup(g, 2).safe_horizon == 31

    def test_degrees_preserved_off_defect(self):
        a = blowup(builtin_cell("diamond"), 3)
        assert a.degree(0) == 1
        ones = {v for v in range(a.num_vertices) if a.degree(v) == 1}
        assert ones == {0} | a.defect_set
        assert {a.degree(v) for v in range(a.num_vertices)} == {1, 2, 3}

    def test_budget_enforced(self):
        with pytest.raises(BudgetError):
            blowup(builtin_cell("diamond"), 9)
        with pytest.raises(BudgetError):
            blowup(builtin_cell("diamond"), 3, edge_budget=100)

    def test_text_rendering(self):
        a = blowup(builtin_cell("path2"), 1)
        text = approximant_to_text(a)
        lines = text.strip().splitlines()
        assert lines[0] == "vertices 3"
        assert lines[1] == "origin 0"
        assert len(lines) == 2 + a.num_edges


class TestExactOracle:
    def test_path2_small_walk_counts(self):
        a = blowup(builtin_cell("path2"), 3)
        rp = exact_return_probs(a, 6)
        assert rp.probs == (
            1, 0, Fraction(1, 2), 0, Fraction(3, 8), 0, Fraction(5, 16)
        )
        assert rp.approximant_only_from is None

    def test_diamond_cell_vs_infinite_graph_at_eight(self):
        rp1 = exact_return_probs(blowup(builtin_cell("diamond"), 1), 8)
        assert rp1.safe_horizon == 7
        assert rp1.approximant_only_from == 8
        assert rp1.probs[8] == Fraction(14, 81)

        rp2 = exact_return_probs(blowup(builtin_cell("diamond"), 2), 8)
        assert rp2.approximant_only_from is None
        assert rp2.probs[8] == Fraction(40, 243)
        assert rp1.probs[:8] == rp2.probs[:8]

    def test_level_independence_within_horizon(self):
        g = builtin_cell("sierpinski")
        shallow = exact_return_probs(blowup(g, 2), 7)
        deep = exact_return_probs(blowup(g, 3), 7)
        assert shallow.probs == deep.probs

    def test_matches_series_route(self):
        g = builtin_cell("diamond")
        cf = cell_functions(g)
        gs = green_series(cf, 12)
        rp = exact_return_probs(blowup(g, 2), 12)
        assert rp.probs == gs.coefficients()

    def test_origin_copies_leave_returns_unchanged(self):
        g = builtin_cell("diamond")
        base = exact_return_probs(blowup(g, 2), 7)
        doubled = blowup(g, 2, origin_copies=2)
        assert doubled.degree(0) == 2
        assert exact_return_probs(doubled, 7).probs == base.probs

    def test_randomized_identification_is_harmless(self):
        g = builtin_cell("diamond")
        base = exact_return_probs(blowup(g, 3), 10)
        for seed in (1, 7, 1234):
            shuffled = blowup(g, 3, randomize_identification=seed)
            assert exact_return_probs(shuffled, 10).probs == base.probs

    def test_sufficient_level_hits_requested_horizon(self):
        assert sufficient_level(builtin_cell("path2"), 20) == 4
        assert sufficient_level(builtin_cell("diamond"), 4) == 1
        assert sufficient_level(builtin_cell("diamond"), 8) == 2
        g = builtin_cell("path2")
        for n_max in (4, 10, 16):
            a = blowup(g, sufficient_level(g, n_max))
            assert a.safe_horizon >= n_max

    def test_sufficient_level_respects_budget(self):
        with pytest.raises(BudgetError):
            sufficient_level(builtin_cell("path2"), 200, edge_budget=100)


class TestMonteCarlo:
    def test_bit_for_bit_reproducible(self):
        a = blowup(builtin_cell("diamond"), 2)
        one = monte_carlo(a, 4, 50_000, seed=11, workers=3)
        two = monte_carlo(a, 4, 50_000, seed=11, workers=3)
        assert one == two
        assert one.hits == two.hits

    def test_worker_split_changes_stream_but_not_statistics(self):
        a = blowup(builtin_cell("diamond"), 2)
        single = monte_carlo(a, 4, 50_000, seed=11, workers=1)
        multi = monte_carlo(a, 4, 50_000, seed=11, workers=4)
        assert single.trials == multi.trials == 50_000
        sigma = max(single.std_err, multi.std_err, 1e-9)
        assert abs(float(single.estimate) - float(multi.estimate)) < 8 * sigma

    def test_estimate_near_exact_value(self):
        a = blowup(builtin_cell("diamond"), 2)
        stats = monte_carlo(a, 4, 100_000, seed=3, workers=2)
        exact = Fraction(2, 9)
        assert stats.std_err < 0.01
        assert abs(float(stats.estimate) - float(exact)) <= 4 * stats.std_err

    def test_odd_steps_cannot_return(self):
        a = blowup(builtin_cell("diamond"), 1)
        stats = monte_carlo(a, 3, 10_000, seed=5)
        assert stats.hits == 0
        assert stats.estimate == 0

    def test_estimate_is_hit_ratio(self):
        a = blowup(builtin_cell("path2"), 2)
        stats = monte_carlo(a, 2, 40_000, seed=9, workers=2)
        assert stats.estimate == Fraction(stats.hits, stats.trials)
        assert abs(float(stats.estimate) - 0.5) < 0.02
