"""Self-validating JSON certificates for search results.

Positive certificates (flows, colorings, witnesses) re-verify against the
graph in polynomial time on load.  Negative certificates carry exhaustion
statistics; re-verifying a negative means re-running the bounded search,
which is the documented trust model.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from . import __version__
from .errors import InputError
from .flows import (
    FlowAssignment,
    conflicts,
    klein_bits,
    klein_from_bits,
    verify_flow,
)
from .graph import Pseudograph, contract_two_factor
from .matchings import PerfectMatching, complement_two_factor

SCHEMA_VERSION = 1

KINDS = (
    "flow-found",
    "no-flow-for-any-matching",
    "chi-n-value",
    "normal-coloring",
    "conjecture4-witness",
    "disjoint-matchings",
)


def fingerprint(g: Pseudograph) -> str:
    """Cheap canonical-labeling hash for bookkeeping (not isomorphism).

    Vertices are relabeled by iterated neighborhood-degree refinement,
    ties broken by original index; the hash covers the relabeled sorted
    edge multiset.
    """
    colors = [g.degree(v) for v in range(g.n)]
    for _ in range(g.n):
        sig = [
            (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in range(g.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if new == colors:
            break
        colors = new
    order = sorted(range(g.n), key=lambda v: (colors[v], v))
    relabel = {v: i for i, v in enumerate(order)}
    edges = sorted(
        (min(relabel[u], relabel[v]), max(relabel[u], relabel[v])) for u, v in g.edges
    )
    blob = json.dumps([g.n, edges], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class Certificate:
    kind: str
    graph_fingerprint: str
    payload: Dict[str, Any]
    stats: Dict[str, Any] = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema_version": self.schema_version,
                "kind": self.kind,
                "graph_fingerprint": self.graph_fingerprint,
                "payload": self.payload,
                "stats": self.stats,
                "tool_version": self.tool_version,
            },
            indent=2,
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "Certificate":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"certificate is not valid JSON: {exc}") from exc
        if raw.get("kind") not in KINDS:
            raise InputError(f"unknown certificate kind {raw.get('kind')!r}")
        return Certificate(
            kind=raw["kind"],
            graph_fingerprint=raw["graph_fingerprint"],
            payload=raw.get("payload", {}),
            stats=raw.get("stats", {}),
            tool_version=raw.get("tool_version", "?"),
            schema_version=raw.get("schema_version", SCHEMA_VERSION),
        )


def flow_certificate(
    g: Pseudograph, f: PerfectMatching, theta: FlowAssignment, stats: Dict[str, Any]
) -> Certificate:
    return Certificate(
        kind="flow-found",
        graph_fingerprint=fingerprint(g),
        payload={
            "matching": list(f.edge_ids),
            "flow": [klein_bits(v) for v in theta.values],
        },
        stats=stats,
    )


def verify_certificate(cert: Certificate, g: Pseudograph) -> bool:
    """Re-verify a certificate against a graph without searching.

    Positive kinds re-run the polynomial checks; negative kinds verify the
    fingerprint and schema only (their content is exhaustion statistics).
    """
    if cert.graph_fingerprint != fingerprint(g):
        return False
    try:
        if cert.kind == "flow-found":
            f = PerfectMatching(tuple(sorted(cert.payload["matching"])))
            theta = FlowAssignment(
                tuple(klein_from_bits(b) for b in cert.payload["flow"])
            )
            tf = complement_two_factor(g, f)
            h = contract_two_factor(g, tf)
            return verify_flow(h, theta) and conflicts(g, f, tf, theta, h).is_empty()
        if cert.kind == "normal-coloring":
            from .coloring import EdgeColoring, is_normal

            c = EdgeColoring(tuple(cert.payload["colors"]), cert.payload["k"])
            return is_normal(g, c).ok
        if cert.kind == "chi-n-value":
            from .coloring import EdgeColoring, is_normal

            c = EdgeColoring(tuple(cert.payload["witness"]), cert.payload["k"])
            return is_normal(g, c).ok and c.k == cert.payload["k"]
        if cert.kind == "conjecture4-witness":
            from .coloring import Z2CubedFlow, verify_conjecture4_witness

            mu = Z2CubedFlow(tuple(cert.payload["mu"]))
            return verify_conjecture4_witness(
                g, mu, cert.payload["x"], cert.payload["y"]
            )
        if cert.kind == "disjoint-matchings":
            a = set(cert.payload["alpha"])
            b = set(cert.payload["beta"])
            if a & b:
                return False
            for sel in (a, b):
                seen = set()
                for eid in sel:
                    u, v = g.endpoints(eid)
                    if u in seen or v in seen or u == v:
                        return False
                    seen.update((u, v))
                if len(seen) != g.n:
                    return False
            return True
        if cert.kind == "no-flow-for-any-matching":
            return "matchings_checked" in cert.stats
    except (InputError, KeyError, IndexError):
        return False
    return False
