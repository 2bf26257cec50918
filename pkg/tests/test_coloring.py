"""Edge classification, exact normal chromatic index, flow-derived colorings,
reductions over 2-cuts and triangles, and H-colorings."""

import itertools

import pytest

from ncflow.coloring import (
    ABNORMAL,
    EdgeColoring,
    POOR,
    RICH,
    Z2CubedFlow,
    admits_normal_k_coloring,
    chi_n_exact,
    classify_edge,
    coloring_from_flow,
    contract_triangle,
    h_coloring,
    is_normal,
    is_proper,
    lift_over_2_cut,
    lift_over_triangle,
    split_two_cut,
    structural_abnormality,
    verify_conjecture4_witness,
    verify_h_coloring,
    verify_z2cubed_flow,
    z2cubed_flow_coloring,
)
from ncflow.errors import InputError
from ncflow.flows import ALPHA, BETA, find_nonconflicting_flow
from ncflow.generators import (
    diamond,
    fig3_graph,
    fig3_published_coloring,
    fig4_graph,
    k4,
    k23,
    k33,
    petersen,
    replace_vertex_with_triangle,
    ring_of_diamonds,
    triangle_replace_all,
)
from ncflow.graph import build_graph, contract_two_factor, is_isomorphic_to_petersen
from ncflow.matchings import complement_two_factor, enumerate_perfect_matchings

from conftest import corpus_16, glue_two_cut, small_corpus


def three_coloring(g):
    """A proper 3-edge-coloring by exhaustive search, if one exists."""
    for colors in itertools.product((1, 2, 3), repeat=g.m):
        c = EdgeColoring(colors, 3)
        if is_proper(g, c):
            return c
    return None


class TestClassification:
    def test_three_coloring_is_all_poor(self):
        g = k4()
        c = three_coloring(g)
        assert c is not None
        for e in range(g.m):
            assert classify_edge(g, c, e).kind == POOR
        assert is_normal(g, c).ok

    def test_rainbow_edge_is_rich(self):
        # star K_{1,3} plus pendant edges: color the middle edge and its four
        # neighbors all differently
        g = build_graph(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7)])
        c = EdgeColoring((1, 2, 3, 4, 5, 1, 3), 5)
        assert classify_edge(g, c, 0).kind == RICH
        assert classify_edge(g, c, 0).union_size == 5

    def test_published_seven_coloring_of_the_bridge_graph(self):
        g = fig3_graph()
        c = EdgeColoring(fig3_published_coloring(), 7)
        verdict = is_normal(g, c)
        assert verdict.ok
        assert classify_edge(g, c, 14).kind == POOR  # the bridge
        for e in range(14):
            assert classify_edge(g, c, e).kind == RICH

    def test_abnormal_detection(self):
        # 4 colors on a closed neighborhood: recolor one pendant of the rich star
        g = build_graph(8, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7)])
        c = EdgeColoring((1, 2, 3, 4, 2, 1, 3), 4)
        assert classify_edge(g, c, 0).kind == ABNORMAL

    def test_improper_rejected(self):
        g = k4()
        with pytest.raises(InputError):
            classify_edge(g, EdgeColoring((1,) * 6, 3), 0)


class TestChiN:
    def test_known_values(self):
        assert chi_n_exact(k4(), 7).k == 3
        assert chi_n_exact(petersen(), 7).k == 5

    def test_bridge_graph_needs_seven(self):
        res = chi_n_exact(fig3_graph(), 7)
        assert res.k == 7
        assert not res.multigraph
        # every smaller palette was exhausted
        assert [k for k, _n in res.nodes_per_k] == [3, 4, 5, 6, 7]
        assert all(n > 0 for _k, n in res.nodes_per_k)
        assert admits_normal_k_coloring(fig3_graph(), 6) is None

    def test_witness_is_normal_and_minimal(self):
        for name, g in small_corpus():
            res = chi_n_exact(g, 7)
            assert res is not None, name
            assert is_normal(g, res.witness).ok, name
            assert res.witness.k == res.k
            if res.k > 3:
                assert admits_normal_k_coloring(g, res.k - 1) is None, name

    def test_three_colorable_corpus_members_have_index_three(self):
        for name, g in (("k33", k33()), ("k4", k4()), ("ring2", ring_of_diamonds(2))):
            assert chi_n_exact(g, 7).k == 3, name

    def test_k_max_exceeded_returns_none(self):
        assert chi_n_exact(petersen(), 4) is None

    def test_multigraph_flagged(self):
        res = chi_n_exact(k23(), 7)
        assert res is not None and res.multigraph


class TestStructuralAbnormality:
    def test_fig4_witness(self):
        g = fig4_graph()
        w = structural_abnormality(g)
        assert w is not None
        u, v = g.endpoints(w.doubled_edges[0])
        assert g.endpoints(w.doubled_edges[1]) in ((u, v), (v, u))
        assert g.multiplicity(u, v) == 2
        # the two remaining edges share a vertex
        assert set(g.endpoints(w.third_edge_u)) & set(g.endpoints(w.third_edge_v))
        # and indeed no normal coloring exists at any reasonable palette size
        assert admits_normal_k_coloring(g, 8) is None

    def test_absent_on_normal_colorable_graphs(self):
        assert structural_abnormality(k23()) is None
        assert structural_abnormality(petersen()) is None


class TestColoringFromFlow:
    def _cases(self):
        for name, g in small_corpus():
            if is_isomorphic_to_petersen(g):
                continue
            for f in enumerate_perfect_matchings(g):
                theta = find_nonconflicting_flow(g, f)
                if theta is not None:
                    yield name, g, f, theta
                    break

    def test_invariants(self):
        checked = 0
        for name, g, f, theta in self._cases():
            tf = complement_two_factor(g, f)
            h = contract_two_factor(g, tf)
            res = coloring_from_flow(g, f, tf, theta, h)
            c = res.coloring
            assert c.k == 6
            assert is_normal(g, c).ok, name
            fset = f.as_set()
            for e in range(g.m):
                if e in fset:
                    assert c.colors[e] in {1, 2}, name
                else:
                    assert c.colors[e] in {3, 4, 5, 6}, name
                assert classify_edge(g, c, e).kind in (POOR, RICH), name
            # the intermediate 3-bit flow witnesses the matching structure
            assert verify_z2cubed_flow(g, res.mu)
            assert verify_conjecture4_witness(g, res.mu, ALPHA, BETA), name
            checked += 1
        assert checked >= 8

    def test_conflicting_flow_rejected(self):
        from ncflow.flows import FlowAssignment, conflicts, enumerate_nz_flows

        g = petersen()
        f = next(enumerate_perfect_matchings(g))
        tf = complement_two_factor(g, f)
        h = contract_two_factor(g, tf)
        theta = next(enumerate_nz_flows(h))
        assert not conflicts(g, f, tf, theta, h).is_empty()
        with pytest.raises(InputError):
            coloring_from_flow(g, f, tf, theta, h)


class TestZ2CubedColoring:
    def test_seven_coloring_on_bridgeless_corpus(self):
        for name, g in small_corpus():
            mu, c = z2cubed_flow_coloring(g)
            assert verify_z2cubed_flow(g, mu), name
            assert c.k == 7
            assert is_normal(g, c).ok, name

    def test_bridge_rejected(self):
        with pytest.raises(InputError):
            z2cubed_flow_coloring(fig3_graph())

    def test_degenerate_witness_pair(self):
        # x == y: the witness conditions degrade to "x-edges form an induced
        # matching", which an all-distinct star never satisfies in a cubic graph
        g = k4()
        mu, _c = z2cubed_flow_coloring(g)
        for x in set(mu.values):
            assert not verify_conjecture4_witness(g, mu, x, x)

    def test_invalid_flow_rejected(self):
        g = k4()
        with pytest.raises(InputError):
            verify_conjecture4_witness(g, Z2CubedFlow((1,) * 6), ALPHA, BETA)


class TestTwoCutReduction:
    def _glued(self):
        g1 = ring_of_diamonds(2)
        g2 = triangle_replace_all(k4())
        return glue_two_cut(g1, 2, g2, 0)

    def test_split_round_trip(self):
        g, cut = self._glued()
        split = split_two_cut(g, cut)
        assert split.g1.n + split.g2.n == g.n
        assert split.g1.m + split.g2.m == g.m  # two cut edges -> two h-edges
        for eid in range(g.m):
            if eid in cut:
                continue
            s, se = split.edge_to_side[eid]
            side_g = split.g1 if s == 1 else split.g2
            assert side_g.endpoints(se)  # maps to a real edge

    def test_non_cut_pair_rejected(self):
        g = petersen()
        with pytest.raises(InputError):
            split_two_cut(g, (0, 7))

    def test_lift_preserves_normality(self):
        g, cut = self._glued()
        split = split_two_cut(g, cut)
        r1 = chi_n_exact(split.g1, 7)
        r2 = chi_n_exact(split.g2, 7)
        k = max(r1.k, r2.k, 4)
        c1 = admits_normal_k_coloring(split.g1, k)
        c2 = admits_normal_k_coloring(split.g2, k)
        merged = lift_over_2_cut(g, cut, c1, c2, split)
        assert is_normal(g, merged).ok
        assert merged.colors[cut[0]] == merged.colors[cut[1]]

    def test_lift_requires_normal_sides(self):
        g, cut = self._glued()
        split = split_two_cut(g, cut)
        c1 = admits_normal_k_coloring(split.g1, 5)
        bad = EdgeColoring(tuple([0] * split.g2.m), 5)
        with pytest.raises(InputError):
            lift_over_2_cut(g, cut, c1, bad, split)


class TestTriangleReduction:
    def test_contract_recovers_base(self):
        g = replace_vertex_with_triangle(k4(), 0)
        tri = tuple(v for v in range(g.n) if v >= g.n - 3) if False else None
        # locate the new triangle: three mutually adjacent vertices
        tris = [
            t
            for t in itertools.combinations(range(g.n), 3)
            if all(g.multiplicity(a, b) == 1 for a, b in itertools.combinations(t, 2))
        ]
        assert tris
        gq, emap = contract_triangle(g, tris[0])
        assert gq.n == g.n - 2
        assert gq.m == g.m - 3
        assert sorted(emap.values()) == sorted(
            e
            for e in range(g.m)
            if not set(g.endpoints(e)) <= set(tris[0])
        )

    def test_lift_is_normal_and_t_edges_poor(self):
        g = replace_vertex_with_triangle(k4(), 0)
        tris = [
            t
            for t in itertools.combinations(range(g.n), 3)
            if all(g.multiplicity(a, b) == 1 for a, b in itertools.combinations(t, 2))
        ]
        tri = tris[0]
        gq, emap = contract_triangle(g, tri)
        qc = admits_normal_k_coloring(gq, chi_n_exact(gq, 7).k)
        lifted = lift_over_triangle(g, tri, qc)
        assert is_normal(g, lifted).ok
        ts = set(tri)
        for eid, (u, v) in enumerate(g.edges):
            if u in ts and v in ts:
                assert classify_edge(g, lifted, eid).kind == POOR
        # quotient colors are preserved off the triangle
        for qe, ge in emap.items():
            assert lifted.colors[ge] == qc.colors[qe]

    def test_multiedge_triangle_rejected(self):
        g = k23()
        with pytest.raises(InputError):
            contract_triangle(g, (0, 1, 1))


class TestHColoring:
    def test_k33_maps_to_k4(self):
        phi = h_coloring(k33(), k4())
        assert phi is not None
        assert verify_h_coloring(k33(), k4(), phi)

    def test_petersen_maps_to_itself(self):
        g = petersen()
        phi = h_coloring(g, g)
        assert phi is not None
        assert verify_h_coloring(g, g, phi)

    def test_petersen_coloring_iff_normal_five(self, corpus16):
        checked = 0
        p10 = petersen()
        for name, g in corpus16:
            if g.n > 16 or not g.is_simple():
                continue
            has_phi = h_coloring(g, p10) is not None
            has_n5 = admits_normal_k_coloring(g, 5) is not None
            assert has_phi == has_n5, name
            checked += 1
        assert checked >= 10

    def test_verify_rejects_bad_map(self):
        g = k33()
        phi = h_coloring(g, k4())
        bad = dict(phi)
        bad[0] = (phi[0] + 1) % 6
        assert not verify_h_coloring(g, k4(), bad)

    def test_non_cubic_rejected(self):
        with pytest.raises(InputError):
            h_coloring(diamond(), k4())
