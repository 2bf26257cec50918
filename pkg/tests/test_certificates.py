"""Certificates: fingerprints, JSON round trips, and re-verification."""

import random

import pytest

from ncflow.certificates import (
    Certificate,
    fingerprint,
    flow_certificate,
    verify_certificate,
)
from ncflow.errors import InputError
from ncflow.flows import find_nonconflicting_flow
from ncflow.generators import k4, k33, petersen
from ncflow.graph import build_graph
from ncflow.matchings import enumerate_perfect_matchings

from conftest import small_corpus


def relabeled(g, seed):
    rng = random.Random(seed)
    perm = list(range(g.n))
    rng.shuffle(perm)
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


class TestFingerprint:
    def test_deterministic(self):
        for name, g in small_corpus():
            assert fingerprint(g) == fingerprint(g), name

    def test_invariant_when_refinement_discretizes(self):
        # bookkeeping hash, not isomorphism: invariance is only promised when
        # the degree refinement separates all vertices
        g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 2), (1, 3), (2, 4)])
        fp = fingerprint(g)
        for seed in range(5):
            assert fingerprint(relabeled(g, seed)) == fp

    def test_distinct_graphs_distinct_prints(self):
        prints = {name: fingerprint(g) for name, g in small_corpus()}
        assert len(set(prints.values())) == len(prints)


class TestFlowCertificate:
    def _cert(self):
        g = k33()
        f = next(enumerate_perfect_matchings(g))
        theta = find_nonconflicting_flow(g, f)
        return g, flow_certificate(g, f, theta, {"nodes": 1})

    def test_round_trip_verifies(self):
        g, cert = self._cert()
        again = Certificate.from_json(cert.to_json())
        assert again.kind == "flow-found"
        assert verify_certificate(again, g)

    def test_tampered_flow_fails(self):
        g, cert = self._cert()
        bad = Certificate.from_json(cert.to_json())
        bad.payload["flow"] = bad.payload["flow"][:-1]  # drop an edge's value
        assert not verify_certificate(bad, g)

    def test_wrong_graph_fails(self):
        _g, cert = self._cert()
        assert not verify_certificate(cert, petersen())

    def test_garbled_payload_is_false_not_crash(self):
        g, cert = self._cert()
        bad = Certificate.from_json(cert.to_json())
        bad.payload["matching"] = [0, 1, 2]
        assert not verify_certificate(bad, g)


class TestOtherKinds:
    def test_normal_coloring_certificate(self):
        from ncflow.coloring import admits_normal_k_coloring

        g = k4()
        c = admits_normal_k_coloring(g, 3)
        cert = Certificate(
            kind="normal-coloring",
            graph_fingerprint=fingerprint(g),
            payload={"colors": list(c.colors), "k": 3},
        )
        assert verify_certificate(cert, g)
        cert.payload["colors"][0] = cert.payload["colors"][1]
        assert not verify_certificate(cert, g)

    def test_negative_certificate_needs_stats(self):
        g = petersen()
        cert = Certificate(
            kind="no-flow-for-any-matching",
            graph_fingerprint=fingerprint(g),
            payload={},
            stats={"matchings_checked": 6},
        )
        assert verify_certificate(cert, g)
        cert.stats = {}
        assert not verify_certificate(cert, g)

    def test_unknown_kind_rejected_on_load(self):
        with pytest.raises(InputError):
            Certificate.from_json('{"kind": "bogus", "graph_fingerprint": "x"}')

    def test_invalid_json_rejected(self):
        with pytest.raises(InputError):
            Certificate.from_json("{nope")
