"""Perfect matchings, complementary 2-factors, and 3-cut-respecting streams."""

import itertools

import pytest

from ncflow.errors import ContractError, InputError
from ncflow.generators import (
    fig3_graph,
    k4,
    k23,
    k33,
    petersen,
    ring_of_diamonds,
    triangle_replace_all,
)
from ncflow.graph import build_graph, three_edge_cuts
from ncflow.matchings import (
    PerfectMatching,
    complement_two_factor,
    enumerate_perfect_matchings,
    matchings_meeting_all_3cuts_once,
    matchings_through_edge,
    odd_cycle_count,
)

from conftest import small_corpus


class TestEnumeration:
    def test_known_counts(self):
        assert len(list(enumerate_perfect_matchings(petersen()))) == 6
        assert len(list(enumerate_perfect_matchings(k4()))) == 3
        assert len(list(enumerate_perfect_matchings(k23()))) == 3

    def test_odd_order_gives_empty_stream(self):
        g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
        assert list(enumerate_perfect_matchings(g)) == []

    def test_each_matching_exactly_once_and_valid(self):
        for name, g in small_corpus():
            seen = set()
            for f in enumerate_perfect_matchings(g):
                assert f.edge_ids not in seen, name
                seen.add(f.edge_ids)
                covered = [0] * g.n
                for eid in f.edge_ids:
                    u, v = g.endpoints(eid)
                    covered[u] += 1
                    covered[v] += 1
                assert all(c == 1 for c in covered), name

    def test_deterministic_order(self):
        g = petersen()
        assert list(enumerate_perfect_matchings(g)) == list(enumerate_perfect_matchings(g))

    def test_stream_is_lazy(self):
        stream = enumerate_perfect_matchings(petersen())
        first = next(stream)
        assert isinstance(first, PerfectMatching)

    def test_petersen_each_edge_in_two_matchings(self):
        g = petersen()
        count = {e: 0 for e in range(g.m)}
        for f in enumerate_perfect_matchings(g):
            for e in f.edge_ids:
                count[e] += 1
        assert set(count.values()) == {2}


class TestComplement:
    def test_petersen_always_two_five_cycles(self):
        g = petersen()
        for f in enumerate_perfect_matchings(g):
            tf = complement_two_factor(g, f)
            assert sorted(len(c) for c in tf.cycles) == [5, 5]
            assert tf.chord_ids == ()

    def test_k4_one_four_cycle(self):
        g = k4()
        for f in enumerate_perfect_matchings(g):
            tf = complement_two_factor(g, f)
            assert [len(c) for c in tf.cycles] == [4]
            assert tf.chord_ids == f.edge_ids  # both matching edges chord the cycle

    def test_k33_always_even_cycles(self):
        g = k33()
        for f in enumerate_perfect_matchings(g):
            tf = complement_two_factor(g, f)
            assert odd_cycle_count(tf) == 0

    def test_k23_two_factor_is_a_2_cycle(self):
        g = k23()
        f = next(enumerate_perfect_matchings(g))
        tf = complement_two_factor(g, f)
        assert [len(c) for c in tf.cycles] == [2]

    def test_partition_invariant(self):
        for name, g in small_corpus():
            for f in itertools.islice(enumerate_perfect_matchings(g), 5):
                tf = complement_two_factor(g, f)
                fac = tf.edge_ids()
                assert fac.isdisjoint(f.as_set()), name
                assert fac | f.as_set() == set(range(g.m)), name
                assert set(tf.chord_ids) <= f.as_set(), name

    def test_cycle_edges_join_consecutive_vertices(self):
        for name, g in small_corpus():
            f = next(enumerate_perfect_matchings(g))
            tf = complement_two_factor(g, f)
            for cyc in tf.cycles:
                k = len(cyc.vertices)
                for i, eid in enumerate(cyc.edges):
                    ends = set(g.endpoints(eid))
                    want = {cyc.vertices[i], cyc.vertices[(i + 1) % k]}
                    assert ends == want or (len(want) == 1 and len(ends) == 2 and k == 2), name

    def test_wrong_matching_rejected(self):
        g = petersen()
        with pytest.raises(ContractError):
            complement_two_factor(g, PerfectMatching((0, 1, 2, 3, 4)))

    def test_non_cubic_rejected(self):
        g = build_graph(2, [(0, 1)])
        with pytest.raises(InputError):
            complement_two_factor(g, PerfectMatching((0,)))


class TestOddCycleCount:
    def test_parity_is_always_even(self):
        for name, g in small_corpus():
            for f in enumerate_perfect_matchings(g):
                tf = complement_two_factor(g, f)
                assert odd_cycle_count(tf) % 2 == 0, name


class TestThroughEdge:
    def test_nonempty_on_bridgeless_corpus(self):
        for name, g in small_corpus():
            for eid in range(g.m):
                assert next(matchings_through_edge(g, eid), None) is not None, (name, eid)

    def test_fig3_bridge_lies_in_every_matching(self):
        g = fig3_graph()
        all_f = list(enumerate_perfect_matchings(g))
        assert all_f, "the bridge graph still has perfect matchings"
        assert all(14 in f.edge_ids for f in all_f)
        assert list(matchings_through_edge(g, 14)) == all_f

    def test_subset_of_all_matchings(self):
        g = petersen()
        every = set(f.edge_ids for f in enumerate_perfect_matchings(g))
        through = list(matchings_through_edge(g, 0))
        assert len(through) == 2
        assert all(f.edge_ids in every and 0 in f.edge_ids for f in through)


class TestThreeCutRespecting:
    def test_k4_unique_matching_qualifies(self):
        g = k4()
        for eid in range(g.m):
            got = list(matchings_meeting_all_3cuts_once(g, eid))
            assert got == list(matchings_through_edge(g, eid))

    def test_petersen_all_through_matchings_qualify(self):
        g = petersen()
        for eid in range(g.m):
            assert list(matchings_meeting_all_3cuts_once(g, eid)) == list(
                matchings_through_edge(g, eid)
            )

    def test_every_cut_met_exactly_once(self):
        g = triangle_replace_all(k4())
        cuts = three_edge_cuts(g)
        for eid in range(0, g.m, 5):
            for f in matchings_meeting_all_3cuts_once(g, eid, cuts):
                fs = f.as_set()
                assert all(len(fs & set(c)) == 1 for c in cuts)

    def test_nonempty_for_every_edge_of_clawfree_instances(self):
        for g in (ring_of_diamonds(2), triangle_replace_all(k4())):
            cuts = three_edge_cuts(g)
            for eid in range(g.m):
                got = next(matchings_meeting_all_3cuts_once(g, eid, cuts), None)
                assert got is not None, eid

    def test_triangle_stars_met_once(self):
        # every new triangle of a triangle-replacement is a 3-cut, so any
        # respecting matching meets it in exactly one edge
        g = triangle_replace_all(k4())
        for f in matchings_meeting_all_3cuts_once(g, 0):
            fs = f.as_set()
            for v in range(g.n):
                star = set(g.incident(v))
                assert len(fs & star) == 1
            break
