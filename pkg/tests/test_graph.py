"""Graph model: construction, bridges, girth, contraction, cuts, isomorphism."""

import itertools

import networkx as nx
import pytest

from ncflow.errors import ContractError, InputError
from ncflow.generators import (
    diamond,
    fig3_graph,
    fig4_graph,
    k4,
    k23,
    k33,
    permutation_graph,
    petersen,
    ring_of_diamonds,
)
from ncflow.graph import (
    Pseudograph,
    bridges,
    build_graph,
    connected_components,
    contract_two_factor,
    girth,
    is_claw_free,
    is_connected,
    is_cubic,
    is_cyclically_k_edge_connected,
    is_isomorphic_to_petersen,
    three_edge_cuts,
)
from ncflow.matchings import PerfectMatching, complement_two_factor, enumerate_perfect_matchings

from conftest import small_corpus


def to_nx(g: Pseudograph) -> nx.MultiGraph:
    M = nx.MultiGraph()
    M.add_nodes_from(range(g.n))
    for u, v in g.edges:
        M.add_edge(u, v)
    return M


class TestBuild:
    def test_edge_ids_are_stable_and_ordered(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        assert g.endpoints(0) == (0, 1)
        assert g.endpoints(2) == (0, 2)
        assert g.m == 3

    def test_loop_counts_twice_toward_degree(self):
        g = build_graph(2, [(0, 0), (0, 1)])
        assert g.degree(0) == 3
        assert g.degree(1) == 1
        assert g.is_loop(0) and not g.is_loop(1)

    def test_parallel_edges_are_distinguishable(self):
        g = k23()
        assert g.m == 3
        assert g.multiplicity(0, 1) == 3
        assert sorted(g.incident(0)) == [0, 1, 2]

    def test_endpoint_out_of_range_rejected(self):
        with pytest.raises(InputError):
            build_graph(2, [(0, 2)])

    def test_cubic_checks(self):
        assert is_cubic(petersen())
        assert is_cubic(k23())
        assert is_cubic(fig4_graph())
        assert not is_cubic(diamond())


class TestBridges:
    def test_fig3_has_exactly_the_bridge(self):
        assert bridges(fig3_graph()) == [14]

    def test_bridgeless_instances(self):
        for name, g in small_corpus():
            assert bridges(g) == [], name

    def test_parallel_pair_is_not_a_bridge(self):
        g = build_graph(2, [(0, 1), (0, 1)])
        assert bridges(g) == []

    def test_path_graph_every_edge_bridges(self):
        g = build_graph(4, [(0, 1), (1, 2), (2, 3)])
        assert bridges(g) == [0, 1, 2]

    def test_agrees_with_networkx_on_simple_corpus(self):
        for name, g in small_corpus():
            if not g.is_simple():
                continue
            nx_bridges = set(nx.bridges(nx.Graph(to_nx(g))))
            mine = {tuple(sorted(g.endpoints(e))) for e in bridges(g)}
            assert mine == {tuple(sorted(b)) for b in nx_bridges}, name

    def test_bridgeless_iff_every_edge_on_cycle(self):
        # cross-check on instances <= 20 vertices: an edge is on a cycle iff
        # its endpoints stay connected after removing it
        for g in (fig3_graph(), petersen(), ring_of_diamonds(2)):
            bset = set(bridges(g))
            for eid in range(g.m):
                u, v = g.endpoints(eid)
                if u == v:
                    continue
                comps = connected_components(g, frozenset({eid}))
                still = any(u in c and v in c for c in comps)
                assert (eid in bset) == (not still)


class TestGirth:
    def test_known_values(self):
        assert girth(petersen()) == 5
        assert girth(k4()) == 3
        assert girth(k33()) == 4
        assert girth(k23()) == 2

    def test_loop_is_girth_one(self):
        assert girth(build_graph(1, [(0, 0)])) == 1

    def test_forest_is_infinite(self):
        g = build_graph(3, [(0, 1), (1, 2)])
        assert girth(g) == float("inf")


class TestContraction:
    def test_petersen_quotient_shape(self):
        g = petersen()
        f = next(enumerate_perfect_matchings(g))
        tf = complement_two_factor(g, f)
        h = contract_two_factor(g, tf)
        assert h.quotient.n == 2
        assert h.quotient.m == 5
        assert all(u != v for u, v in h.quotient.edges)

    def test_edge_origin_is_a_bijection_onto_the_matching(self):
        for name, g in small_corpus():
            f = next(enumerate_perfect_matchings(g))
            tf = complement_two_factor(g, f)
            h = contract_two_factor(g, tf)
            assert sorted(h.edge_origin) == sorted(f.edge_ids), name
            for qe, ge in enumerate(h.edge_origin):
                assert h.origin_inverse[ge] == qe

    def test_degree_sum_invariant(self):
        # sum of quotient degrees (loops twice) = |F| * 2 = |E| - |E(2-factor)| doubled
        for name, g in small_corpus():
            for f in itertools.islice(enumerate_perfect_matchings(g), 3):
                tf = complement_two_factor(g, f)
                h = contract_two_factor(g, tf)
                total = sum(h.quotient.degree(v) for v in range(h.quotient.n))
                assert total == 2 * (g.m - len(tf.edge_ids())), name

    def test_chords_become_loops(self):
        g = ring_of_diamonds(2)
        f = PerfectMatching((0, 4, 5, 9))  # complement is one 8-cycle, 4 chords
        tf = complement_two_factor(g, f)
        assert tf.chord_ids == (0, 4, 5, 9)
        h = contract_two_factor(g, tf)
        assert h.quotient.n == 1
        assert all(u == v for u, v in h.quotient.edges)

    def test_girth_monotone_under_contraction(self):
        for name, g in small_corpus():
            f = next(enumerate_perfect_matchings(g))
            tf = complement_two_factor(g, f)
            q = contract_two_factor(g, tf).quotient
            if q.m and girth(q) != float("inf"):
                assert girth(q) <= girth(g), name


class TestThreeEdgeCuts:
    def test_petersen_only_trivial_cuts(self):
        g = petersen()
        cuts = three_edge_cuts(g)
        assert len(cuts) == 10
        for cut in cuts:
            stars = [frozenset(g.incident(v)) for v in range(g.n)]
            assert frozenset(cut) in stars

    def test_k4_cuts_are_the_stars(self):
        assert len(three_edge_cuts(k4())) == 4

    def test_ring_has_nontrivial_cuts(self):
        g = ring_of_diamonds(2)
        cuts = three_edge_cuts(g)
        stars = {frozenset(g.incident(v)) for v in range(g.n)}
        nontrivial = [c for c in cuts if frozenset(c) not in stars]
        assert len(cuts) == 12 and len(nontrivial) == 4

    def test_disconnecting_triple_with_internal_edge_is_not_a_cut(self):
        # ring: the 2-cut {10, 11} plus any inside edge disconnects but is no
        # boundary of a vertex set
        g = ring_of_diamonds(2)
        assert len(connected_components(g, frozenset({10, 11, 0}))) > 1
        assert (0, 10, 11) not in three_edge_cuts(g)


class TestClawFree:
    def test_known_answers(self):
        assert not is_claw_free(petersen())
        assert not is_claw_free(k33())
        assert is_claw_free(k4())
        assert is_claw_free(ring_of_diamonds(2))
        assert is_claw_free(k23())

    def test_agrees_with_brute_force_oracle(self):
        def oracle(g):
            for quad in itertools.combinations(range(g.n), 4):
                for center in quad:
                    leaves = [x for x in quad if x != center]
                    if any(g.multiplicity(center, x) != 1 for x in leaves):
                        continue
                    if any(g.multiplicity(a, b) for a, b in itertools.combinations(leaves, 2)):
                        continue
                    if any(g.multiplicity(x, x) for x in quad):
                        continue
                    return False
            return True

        for name, g in small_corpus():
            assert is_claw_free(g) == oracle(g), name


class TestCyclicConnectivity:
    def test_petersen_is_cyclically_five_connected(self):
        g = petersen()
        for k in range(1, 6):
            assert is_cyclically_k_edge_connected(g, k)
        assert not is_cyclically_k_edge_connected(g, 6)

    def test_k4_has_no_disjoint_cycles(self):
        # nothing can separate two cycle-containing parts: vacuously true
        for k in range(1, 7):
            assert is_cyclically_k_edge_connected(k4(), k)

    def test_two_cut_ring_fails_at_three(self):
        g = ring_of_diamonds(2)
        assert is_cyclically_k_edge_connected(g, 2)
        assert not is_cyclically_k_edge_connected(g, 3)


class TestPetersenRecognition:
    def test_positive(self):
        assert is_isomorphic_to_petersen(petersen())
        assert is_isomorphic_to_petersen(permutation_graph((0, 2, 4, 1, 3)))

    def test_negative(self):
        assert not is_isomorphic_to_petersen(k33())
        assert not is_isomorphic_to_petersen(permutation_graph((0, 1, 2, 3, 4)))
        # subdividing an edge changes the order
        g = petersen()
        edges = [e for i, e in enumerate(g.edges) if i != 0] + [(0, 10), (10, 11), (11, 1)]
        assert not is_isomorphic_to_petersen(build_graph(12, edges))


class TestComponents:
    def test_connectivity(self):
        assert is_connected(petersen())
        g = build_graph(4, [(0, 1), (2, 3)])
        assert not is_connected(g)
        assert len(connected_components(g, frozenset())) == 2
