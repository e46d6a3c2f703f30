from fractions import Fraction

import pytest

from degsym.degseq import validate
from degsym.graphs import Graph
from degsym.oracle import (
    BudgetExceeded,
    brute_force_automorphisms,
    brute_force_has_nontrivial,
    enumerate_realizations,
    exact_expectation,
    exact_p_symmetric,
    pairing_census,
)

from conftest import cycle_graph, path_graph


class TestEnumerate:
    def test_four_cycles(self):
        real = enumerate_realizations(validate([2, 2, 2, 2]))
        assert real.count == 3
        for g in real.graphs:
            assert g.degrees() == [2, 2, 2, 2]
        assert len({tuple(g.edges()) for g in real.graphs}) == 3

    def test_perfect_matchings(self):
        assert enumerate_realizations(validate([1, 1, 1, 1])).count == 3

    def test_forced_star(self):
        real = enumerate_realizations(validate([3, 1, 1, 1]))
        assert real.count == 1
        assert real.graphs[0].edges() == [(0, 1), (0, 2), (0, 3)]

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_realizations(validate([3] * 10))

    def test_degrees_always_match(self):
        for degs in ([1, 1, 2, 2], [2, 2, 2], [1, 1, 1, 2, 2, 3]):
            d = validate(degs)
            for g in enumerate_realizations(d).graphs:
                assert tuple(g.degrees()) == d.degrees


class TestPairingCensus:
    def test_agrees_with_enumeration(self):
        for degs in ([2, 2, 2, 2], [1, 1, 1, 1], [2, 2, 2], [1, 1, 2, 2],
                     [3, 1, 1, 1], [2, 2, 1, 1]):
            d = validate(degs)
            assert pairing_census(d) == enumerate_realizations(d).count

    def test_census_is_integer(self):
        assert pairing_census(validate([2, 2, 2, 2])).denominator == 1


class TestBruteForce:
    def test_k3_has_six_automorphisms(self):
        assert len(brute_force_automorphisms(cycle_graph(3))) == 6

    def test_p4_has_two(self):
        assert len(brute_force_automorphisms(path_graph(4))) == 2

    def test_c4_has_eight(self):
        assert len(brute_force_automorphisms(cycle_graph(4))) == 8

    def test_spider_is_asymmetric(self):
        # legs of lengths 1, 2 and 3 from a hub: only the identity survives
        spider = Graph.from_edges(
            7, [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)]
        )
        assert brute_force_has_nontrivial(spider) is None


class TestExactValues:
    def test_p_symmetric_cherry(self):
        assert exact_p_symmetric(validate([1, 1, 2])) == 1

    def test_p_symmetric_paths(self):
        # both realizations of (1,1,2,2) are 4-vertex paths; label reversal
        # is an automorphism of each
        assert exact_p_symmetric(validate([1, 1, 2, 2])) == 1

    def test_p_symmetric_regression(self):
        # frozen: all 15 realizations of (1,1,1,2,2,3) are symmetric
        d = validate([1, 1, 1, 2, 2, 3])
        assert enumerate_realizations(d).count == 15
        assert exact_p_symmetric(d) == 1

    def test_edge_probability(self):
        assert exact_expectation(validate([2, 2, 2, 2]), "edge", u=0, v=1) == Fraction(2, 3)

    def test_expected_cherries_unique_realization(self):
        assert exact_expectation(validate([1, 1, 2]), "cherries") == 1

    def test_triangle_containment(self):
        got = exact_expectation(
            validate([2, 2, 2]), "subgraph", subgraph_edges=[(0, 1), (1, 2), (0, 2)]
        )
        assert got == 1

    def test_conditioned_edge(self):
        # among 4-cycles containing edge (0,1), vertex 2 joins 1 in half of them
        got = exact_expectation(
            validate([2, 2, 2, 2]), "edge", u=1, v=2, conditioned_on=[(0, 1)]
        )
        assert got == Fraction(1, 2)

    def test_all_symmetric_when_every_realization_has_a_cherry(self):
        for degs in ([1, 1, 2], [1, 1, 2, 2], [3, 1, 1, 1]):
            d = validate(degs)
            if all(
                brute_force_has_nontrivial(g) is not None
                for g in enumerate_realizations(d).graphs
            ):
                assert exact_p_symmetric(d) == 1
