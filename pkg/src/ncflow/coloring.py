"""Edge-coloring classification, exact normal chromatic index, and the
coloring constructions derived from flows.

A proper coloring of a cubic graph puts 3 to 5 colors on the closed
neighborhood of an edge; size 3 is poor, 5 is rich, 4 is abnormal.  A
coloring is normal when no edge is abnormal.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .errors import InputError, NcflowError
from .flows import ALPHA, ALPHA_BETA, BETA, FlowAssignment, _f_edge_of_vertex
from .graph import ContractedGraph, Pseudograph, bridges, contract_two_factor, is_cubic
from .kernels import flow_search, normal_coloring_search
from .matchings import PerfectMatching, TwoFactor

POOR = "poor"
RICH = "rich"
ABNORMAL = "abnormal"


@dataclass(frozen=True)
class EdgeColoring:
    colors: Tuple[int, ...]  # edge id -> color in 1..k
    k: int


@dataclass(frozen=True)
class EdgeClass:
    kind: str  # poor | rich | abnormal
    union_size: int


@dataclass(frozen=True)
class NormalVerdict:
    ok: bool
    abnormal_edges: Tuple[int, ...]


def _reject_loops(g: Pseudograph):
    if any(u == v for u, v in g.edges):
        raise InputError("loops make properness undefined; refusing to color")


def is_proper(g: Pseudograph, c: EdgeColoring) -> bool:
    if len(c.colors) != g.m:
        return False
    if any(not (1 <= col <= c.k) for col in c.colors):
        return False
    for v in range(g.n):
        cols = [c.colors[e] for e in g.incident(v)]
        if len(cols) != len(set(cols)):
            return False
    return True


def _require_proper(g: Pseudograph, c: EdgeColoring):
    _reject_loops(g)
    if not is_proper(g, c):
        raise InputError("coloring is not proper")


def palette_at(g: Pseudograph, c: EdgeColoring, v: int) -> Set[int]:
    return {c.colors[e] for e in g.incident(v)}


def classify_edge(g: Pseudograph, c: EdgeColoring, eid: int) -> EdgeClass:
    _require_proper(g, c)
    u, v = g.endpoints(eid)
    if g.degree(u) != 3 or g.degree(v) != 3:
        raise InputError("classification needs degree-3 endpoints")
    size = len(palette_at(g, c, u) | palette_at(g, c, v))
    kind = {3: POOR, 4: ABNORMAL, 5: RICH}[size]
    return EdgeClass(kind, size)


def is_normal(g: Pseudograph, c: EdgeColoring) -> NormalVerdict:
    _require_proper(g, c)
    bad = tuple(
        e for e in range(g.m) if classify_edge(g, c, e).kind == ABNORMAL
    )
    return NormalVerdict(not bad, bad)


@dataclass(frozen=True)
class ChiNResult:
    k: int
    witness: EdgeColoring
    multigraph: bool
    nodes_per_k: Tuple[Tuple[int, int], ...]  # (k tried, nodes expanded)


def chi_n_exact(
    g: Pseudograph, k_max: int, deadline: Optional[float] = None
) -> Optional[ChiNResult]:
    """Smallest k <= k_max admitting a normal k-edge-coloring, with witness.

    Exhaustive backtracking with poor/rich pruning; each failed k is a
    completed negative search (node counts kept as the certificate trail).
    Multigraphs are accepted but flagged: the published index is defined
    for simple cubic graphs only.
    """
    _reject_loops(g)
    if not is_cubic(g):
        raise InputError("normal chromatic index is defined for cubic graphs")
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    trail = []
    for k in range(3, k_max + 1):
        colors, nodes = normal_coloring_search(g.n, eu, ev, k, deadline=deadline)
        trail.append((k, nodes))
        if colors is not None:
            witness = EdgeColoring(tuple(colors), k)
            verdict = is_normal(g, witness)
            assert verdict.ok
            return ChiNResult(k, witness, not g.is_simple(), tuple(trail))
    return None


def admits_normal_k_coloring(
    g: Pseudograph, k: int, deadline: Optional[float] = None
) -> Optional[EdgeColoring]:
    """Decision version: some normal k-coloring, not necessarily minimal k."""
    _reject_loops(g)
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    colors, _nodes = normal_coloring_search(g.n, eu, ev, k, deadline=deadline)
    if colors is None:
        return None
    return EdgeColoring(tuple(colors), k)


@dataclass(frozen=True)
class AbnormalityWitness:
    doubled_edges: Tuple[int, int]
    third_edge_u: int
    third_edge_v: int


def structural_abnormality(g: Pseudograph) -> Optional[AbnormalityWitness]:
    """A doubled edge whose two remaining edges are adjacent.

    Such an edge has palette-union size 4 in every proper coloring, so the
    graph admits no normal coloring at all.
    """
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.multiplicity(u, v) != 2:
                continue
            par = [e for e in g.incident(u) if g.other_end(e, u) == v]
            rest_u = [e for e in g.incident(u) if e not in par and not g.is_loop(e)]
            rest_v = [e for e in g.incident(v) if e not in par and not g.is_loop(e)]
            if len(rest_u) != 1 or len(rest_v) != 1:
                continue
            fu, fv = rest_u[0], rest_v[0]
            if fu == fv:
                continue  # shared third edge: the doubled edge can be poor
            if set(g.endpoints(fu)) & set(g.endpoints(fv)):
                return AbnormalityWitness((par[0], par[1]), fu, fv)
    return None


# ---------------------------------------------------------------------------
# flows -> colorings


@dataclass(frozen=True)
class Z2CubedFlow:
    """Edge -> nonzero element of Z2 x Z2 x Z2, encoded in 3 bits.

    Bit 2 (value 4) is the leading coordinate; the low two bits follow the
    Klein encoding of the 2-bit flows.
    """

    values: Tuple[int, ...]

    def __post_init__(self):
        for v in self.values:
            if not 1 <= v <= 7:
                raise InputError(f"{v} is not a nonzero Z2^3 element")


def verify_z2cubed_flow(g: Pseudograph, mu: Z2CubedFlow) -> bool:
    if len(mu.values) != g.m:
        raise InputError("flow does not cover every edge")
    acc = [0] * g.n
    for eid, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        acc[u] ^= mu.values[eid]
        acc[v] ^= mu.values[eid]
    return all(a == 0 for a in acc)


# palette order for 6-colorings built from flows: alpha+beta before alpha,
# then the four leading-bit values in numeric order
_SIX_PALETTE = {3: 1, 2: 2, 4: 3, 5: 4, 6: 5, 7: 6}


@dataclass(frozen=True)
class FlowColoringResult:
    coloring: EdgeColoring
    mu: Z2CubedFlow  # the intermediate 3-bit flow, before the beta->alpha merge


def coloring_from_flow(
    g: Pseudograph,
    f: PerfectMatching,
    tf: TwoFactor,
    theta: FlowAssignment,
    h: Optional[ContractedGraph] = None,
) -> FlowColoringResult:
    """Normal 6-edge-coloring from a non-conflicting flow.

    Matching edges carry (0, theta); each 2-factor cycle gets a leading-bit
    seed propagated around it; the resulting 3-bit flow is then collapsed
    by recoloring (0, beta) as (0, alpha).
    """
    from .flows import conflicts, verify_flow

    if h is None:
        h = contract_two_factor(g, tf)
    if not verify_flow(h, theta):
        raise InputError("not a valid flow")
    if not conflicts(g, f, tf, theta, h).is_empty():
        raise InputError("flow has conflicts; the 6-color merge would go abnormal")
    owner = _f_edge_of_vertex(g, f)
    mu = [0] * g.m
    for eid in f.edge_ids:
        mu[eid] = theta.values[h.origin_inverse[eid]]
    for cyc in tf.cycles:
        for x0 in (4, 5, 6, 7):
            vals = _propagate_cycle(g, cyc, owner, mu, x0)
            if vals is not None:
                for eid, val in vals.items():
                    mu[eid] = val
                break
        else:
            raise NcflowError("no leading-bit seed propagates; conservation broken")
    mu_flow = Z2CubedFlow(tuple(mu))
    assert verify_z2cubed_flow(g, mu_flow)
    merged = [2 if v == 1 else v for v in mu]
    colors = tuple(_SIX_PALETTE[v] for v in merged)
    coloring = EdgeColoring(colors, 6)
    verdict = is_normal(g, coloring)
    if not verdict.ok:
        raise NcflowError("merged coloring is abnormal; flow was not non-conflicting")
    return FlowColoringResult(coloring, mu_flow)


def _propagate_cycle(
    g: Pseudograph,
    cyc,
    owner: List[int],
    mu: List[int],
    x0: int,
) -> Optional[Dict[int, int]]:
    """Fix the seed on the first cycle edge and walk conservation around."""
    out = {cyc.edges[0]: x0}
    cur = x0
    k = len(cyc.vertices)
    for i in range(1, k):
        v = cyc.vertices[i]
        cur = cur ^ mu[owner[v]]
        if cur & 4 == 0:
            return None
        out[cyc.edges[i]] = cur
    # closing consistency at vertices[0]
    if out[cyc.edges[k - 1]] ^ mu[owner[cyc.vertices[0]]] != x0:
        return None
    return out


def z2cubed_flow_coloring(
    g: Pseudograph, deadline: Optional[float] = None
) -> Tuple[Z2CubedFlow, EdgeColoring]:
    """Nowhere-zero Z2^3 flow read as a normal 7-edge-coloring."""
    _reject_loops(g)
    if not is_cubic(g):
        raise InputError("expected a cubic graph")
    if bridges(g):
        raise InputError("graph has a bridge; no nowhere-zero flow exists")
    eu = [e[0] for e in g.edges]
    ev = [e[1] for e in g.edges]
    vals, _conf, _nodes, _seen = flow_search(
        g.n, eu, ev, [], "first", values=tuple(range(1, 8)), deadline=deadline
    )
    if vals is None:
        raise InputError("no nowhere-zero Z2^3 flow found")
    mu = Z2CubedFlow(tuple(vals))
    assert verify_z2cubed_flow(g, mu)
    coloring = EdgeColoring(tuple(mu.values), 7)
    verdict = is_normal(g, coloring)
    assert verdict.ok, "a nowhere-zero Z2^3 flow must color normally"
    return mu, coloring


def verify_conjecture4_witness(
    g: Pseudograph, mu: Z2CubedFlow, x: int, y: int
) -> bool:
    """Check the two witness conditions: {x,y}-edges form a matching, and no
    edge joins an x-star to a y-star (read symmetrically)."""
    if not verify_z2cubed_flow(g, mu):
        raise InputError("not a valid nowhere-zero Z2^3 flow")
    sel = [e for e in range(g.m) if mu.values[e] in {x, y}]
    seen: Set[int] = set()
    for e in sel:
        a, b = g.endpoints(e)
        if a in seen or b in seen or a == b:
            return False
        seen.add(a)
        seen.add(b)
    for u, v in g.edges:
        for a, b in ((x, y), (y, x)):
            for eu in g.incident(u):
                if mu.values[eu] != a:
                    continue
                if any(ev != eu and mu.values[ev] == b for ev in g.incident(v)):
                    return False
    return True


# ---------------------------------------------------------------------------
# reductions: 2-cuts and triangles


@dataclass(frozen=True)
class TwoCutSplit:
    g1: Pseudograph
    g2: Pseudograph
    h1: int  # the replacement edge in g1
    h2: int
    side_of_vertex: Tuple[int, ...]  # G-vertex -> 1 or 2
    edge_to_side: Dict[int, Tuple[int, int]]  # G-edge -> (side, side edge id)


def split_two_cut(g: Pseudograph, cut: Tuple[int, int]) -> TwoCutSplit:
    """Cut {e1, e2} off, close each side with a replacement edge."""
    e1, e2 = cut
    ends1, ends2 = set(g.endpoints(e1)), set(g.endpoints(e2))
    if ends1 & ends2:
        raise InputError("cut edges must be vertex-disjoint")
    from .graph import connected_components

    comps = connected_components(g, frozenset(cut))
    if len(comps) != 2:
        raise InputError("edge pair is not a 2-edge-cut")
    comps.sort(key=min)
    side = [0] * g.n
    for v in comps[0]:
        side[v] = 1
    for v in comps[1]:
        side[v] = 2
    vmap: Dict[int, int] = {}
    counts = [0, 0, 0]
    for v in range(g.n):
        vmap[v] = counts[side[v]]
        counts[side[v]] += 1
    sides_edges: Tuple[List, List] = ([], [])
    edge_to_side: Dict[int, Tuple[int, int]] = {}
    for eid, (u, v) in enumerate(g.edges):
        if eid in cut:
            continue
        s = side[u]
        edge_to_side[eid] = (s, len(sides_edges[s - 1]))
        sides_edges[s - 1].append((vmap[u], vmap[v]))
    h_edges = []
    for s in (1, 2):
        stubs = sorted(
            vmap[v]
            for e in cut
            for v in g.endpoints(e)
            if side[v] == s
        )
        sides_edges[s - 1].append((stubs[0], stubs[1]))
        h_edges.append(len(sides_edges[s - 1]) - 1)
    g1 = Pseudograph(counts[1], sides_edges[0])
    g2 = Pseudograph(counts[2], sides_edges[1])
    return TwoCutSplit(g1, g2, h_edges[0], h_edges[1], tuple(side), edge_to_side)


def lift_over_2_cut(
    g: Pseudograph,
    cut: Tuple[int, int],
    c1: EdgeColoring,
    c2: EdgeColoring,
    split: Optional[TwoCutSplit] = None,
) -> EdgeColoring:
    """Merge normal colorings of the two 2-cut reductions into one of G.

    The palette of the second side is renamed so the replacement edges
    agree and the merged coloring stays normal; the renaming is found by
    scanning palette permutations (at most 5! once the replacement edge
    color is pinned).
    """
    if split is None:
        split = split_two_cut(g, cut)
    _require_proper(split.g1, c1)
    _require_proper(split.g2, c2)
    if not is_normal(split.g1, c1).ok or not is_normal(split.g2, c2).ok:
        raise InputError("side colorings must be normal")
    k = max(c1.k, c2.k)
    target = c1.colors[split.h1]
    others = [c for c in range(1, k + 1) if c != c2.colors[split.h2]]
    slots = [c for c in range(1, k + 1) if c != target]
    e1, e2 = cut
    for perm in itertools.permutations(slots):
        rename = {c2.colors[split.h2]: target}
        rename.update(dict(zip(others, perm)))
        colors = [0] * g.m
        for eid in range(g.m):
            if eid in cut:
                colors[eid] = target
                continue
            s, se = split.edge_to_side[eid]
            colors[eid] = c1.colors[se] if s == 1 else rename[c2.colors[se]]
        cand = EdgeColoring(tuple(colors), k)
        if is_proper(g, cand) and is_normal(g, cand).ok:
            return cand
    raise NcflowError("no palette renaming merges normally; reduction proof violated")


def contract_triangle(
    g: Pseudograph, tri: Tuple[int, int, int]
) -> Tuple[Pseudograph, Dict[int, int]]:
    """G/T for a triangle with simple edges; returns (quotient, qedge -> G edge)."""
    ts = set(tri)
    if len(ts) != 3:
        raise InputError("need three distinct vertices")
    for a, b in itertools.combinations(tri, 2):
        if g.multiplicity(a, b) != 1:
            raise InputError("triangle edges must have multiplicity one")
    vmap: Dict[int, int] = {}
    nxt = 0
    for v in range(g.n):
        if v not in ts:
            vmap[v] = nxt
            nxt += 1
    z = nxt
    edges = []
    emap: Dict[int, int] = {}
    for eid, (u, v) in enumerate(g.edges):
        inu, inv = u in ts, v in ts
        if inu and inv:
            continue
        emap[len(edges)] = eid
        edges.append((z if inu else vmap[u], z if inv else vmap[v]))
    return Pseudograph(z + 1, edges), emap


def lift_over_triangle(
    g: Pseudograph, tri: Tuple[int, int, int], qc: EdgeColoring
) -> EdgeColoring:
    """Extend a normal coloring of G/T by giving each triangle edge the color
    of its opposite outgoing edge."""
    gq, emap = contract_triangle(g, tri)
    _require_proper(gq, qc)
    if not is_normal(gq, qc).ok:
        raise InputError("quotient coloring must be normal")
    colors = [0] * g.m
    for qe, ge in emap.items():
        colors[ge] = qc.colors[qe]
    ts = set(tri)
    out_edge = {}
    for v in tri:
        outs = [e for e in g.incident(v) if not set(g.endpoints(e)) <= ts]
        if len(outs) != 1:
            raise InputError("triangle vertices must each have one outgoing edge")
        out_edge[v] = outs[0]
    for eid, (u, v) in enumerate(g.edges):
        if u in ts and v in ts and u != v:
            (w,) = ts - {u, v}
            colors[eid] = colors[out_edge[w]]
    cand = EdgeColoring(tuple(colors), qc.k)
    verdict = is_normal(g, cand)
    if not is_proper(g, cand) or not verdict.ok:
        raise NcflowError("triangle lift failed to stay normal")
    return cand


# ---------------------------------------------------------------------------
# H-colorings


def h_coloring(
    g: Pseudograph, h: Pseudograph, deadline: Optional[float] = None
) -> Optional[Dict[int, int]]:
    """Edge map G -> H carrying every G-star onto some H-star, or None."""
    if not is_cubic(g) or not is_cubic(h):
        raise InputError("H-colorings are defined between cubic graphs")
    _reject_loops(g)
    _reject_loops(h)
    h_stars = [frozenset(h.incident(w)) for w in range(h.n)]
    if any(len(s) != 3 for s in h_stars):
        return None  # parallel edges in H collapse a star below 3 edges
    # BFS vertex order for locality
    order: List[int] = []
    seen = [False] * g.n
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    img: Dict[int, int] = {}
    start = time.monotonic()

    def rec(i: int) -> bool:
        if deadline is not None and time.monotonic() > deadline:
            from .kernels import SearchTimeout

            raise SearchTimeout
        if i == len(order):
            return True
        v = order[i]
        star = list(g.incident(v))
        fixed = {e: img[e] for e in star if e in img}
        for w in range(h.n):
            if not set(fixed.values()) <= h_stars[w]:
                continue
            if len(set(fixed.values())) != len(fixed):
                continue
            free = [e for e in star if e not in img]
            remaining = list(h_stars[w] - set(fixed.values()))
            for assign in itertools.permutations(remaining, len(free)):
                for e, fe in zip(free, assign):
                    img[e] = fe
                if rec(i + 1):
                    return True
                for e in free:
                    del img[e]
        return False

    del start
    if rec(0):
        return dict(img)
    return None


def verify_h_coloring(g: Pseudograph, h: Pseudograph, phi: Dict[int, int]) -> bool:
    h_stars = {frozenset(h.incident(w)) for w in range(h.n)}
    for v in range(g.n):
        image = frozenset(phi[e] for e in g.incident(v))
        if len(image) != len(g.incident(v)) or image not in h_stars:
            return False
    return True
