"""Nowhere-zero Klein-group flow search on contracted graphs.

Values of Z2 x Z2 minus zero are encoded as 2-bit integers:

    ALPHA = 0b10, BETA = 0b01, ALPHA_BETA = 0b11

Group addition is XOR.  A conflict is an edge uv of the 2-factor whose
endpoint matching edges carry {ALPHA, BETA} (equivalently, their values
XOR to 0b11).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .errors import ContractError, InputError, NcflowError, ResourceLimitError
from .graph import (
    ContractedGraph,
    Pseudograph,
    contract_two_factor,
    is_isomorphic_to_petersen,
)
from .kernels import flow_search
from .matchings import (
    Cycle,
    PerfectMatching,
    TwoFactor,
    complement_two_factor,
    enumerate_perfect_matchings,
    odd_cycle_count,
)

ALPHA = 0b10
BETA = 0b01
ALPHA_BETA = 0b11
KLEIN_VALUES = (BETA, ALPHA, ALPHA_BETA)

_KLEIN_BITS = {ALPHA: "10", BETA: "01", ALPHA_BETA: "11"}
_KLEIN_NAMES = {ALPHA: "a", BETA: "b", ALPHA_BETA: "a+b"}

MAX_QUOTIENT_EDGES = 64


def klein_bits(v: int) -> str:
    """Serialized form: alpha -> "10", beta -> "01", alpha+beta -> "11"."""
    return _KLEIN_BITS[v]


def klein_from_bits(s: str) -> int:
    for v, bits in _KLEIN_BITS.items():
        if bits == s:
            return v
    raise InputError(f"not a Klein value: {s!r}")


def klein_name(v: int) -> str:
    return _KLEIN_NAMES[v]


@dataclass(frozen=True)
class FlowAssignment:
    """Quotient edge id -> nonzero Klein value."""

    values: Tuple[int, ...]

    def __post_init__(self):
        for v in self.values:
            if v not in (ALPHA, BETA, ALPHA_BETA):
                raise InputError(f"flow value {v} is not a nonzero Klein element")


@dataclass(frozen=True)
class ConflictEdge:
    fbar_edge: int
    u: int
    f_edge_u: int
    value_u: int
    v: int
    f_edge_v: int
    value_v: int


@dataclass(frozen=True)
class ConflictReport:
    conflicting_edges: Tuple[ConflictEdge, ...]

    @property
    def count(self) -> int:
        return len(self.conflicting_edges)

    def is_empty(self) -> bool:
        return not self.conflicting_edges


def verify_flow(h: ContractedGraph, theta: FlowAssignment) -> bool:
    """Conservation at every quotient vertex; loops cancel themselves."""
    q = h.quotient
    if len(theta.values) != q.m:
        raise InputError("flow assignment does not cover every quotient edge")
    acc = [0] * q.n
    for eid, (u, v) in enumerate(q.edges):
        if u == v:
            continue
        acc[u] ^= theta.values[eid]
        acc[v] ^= theta.values[eid]
    return all(a == 0 for a in acc)


def enumerate_nz_flows(h: ContractedGraph) -> Iterator[FlowAssignment]:
    """All nowhere-zero flows, lexicographic in edge-id order on values.

    Backtracking with partial vertex-sum pruning; desk scale only.
    """
    q = h.quotient
    if q.m > MAX_QUOTIENT_EDGES:
        raise ResourceLimitError(f"quotient has {q.m} edges (> {MAX_QUOTIENT_EDGES})")
    rem = [0] * q.n
    for u, v in q.edges:
        if u != v:
            rem[u] += 1
            rem[v] += 1
    acc = [0] * q.n
    vals = [0] * q.m

    def rec(eid: int) -> Iterator[FlowAssignment]:
        if eid == q.m:
            yield FlowAssignment(tuple(vals))
            return
        u, v = q.edges[eid]
        if u == v:
            for x in KLEIN_VALUES:
                vals[eid] = x
                yield from rec(eid + 1)
            return
        for x in KLEIN_VALUES:
            # a vertex with all edges assigned must balance
            bad = False
            acc[u] ^= x
            acc[v] ^= x
            rem[u] -= 1
            rem[v] -= 1
            if (rem[u] == 0 and acc[u] != 0) or (rem[v] == 0 and acc[v] != 0):
                bad = True
            if not bad:
                vals[eid] = x
                yield from rec(eid + 1)
            acc[u] ^= x
            acc[v] ^= x
            rem[u] += 1
            rem[v] += 1

    yield from rec(0)


def _f_edge_of_vertex(g: Pseudograph, f: PerfectMatching) -> List[int]:
    owner = [-1] * g.n
    for eid in f.edge_ids:
        u, v = g.endpoints(eid)
        owner[u] = eid
        owner[v] = eid
    if any(o == -1 for o in owner):
        raise ContractError("matching does not cover every vertex")
    return owner


def conflicts(
    g: Pseudograph,
    f: PerfectMatching,
    tf: TwoFactor,
    theta: FlowAssignment,
    h: Optional[ContractedGraph] = None,
) -> ConflictReport:
    """All conflicting 2-factor edges; symmetric in alpha/beta."""
    if h is None:
        h = contract_two_factor(g, tf)
    if len(theta.values) != h.quotient.m:
        raise InputError("flow does not match the contraction of this 2-factor")
    owner = _f_edge_of_vertex(g, f)
    out = []
    for cyc in tf.cycles:
        for eid in cyc.edges:
            u, v = g.endpoints(eid)
            fu, fv = owner[u], owner[v]
            val_u = theta.values[h.origin_inverse[fu]]
            val_v = theta.values[h.origin_inverse[fv]]
            if val_u ^ val_v == ALPHA_BETA:
                out.append(ConflictEdge(eid, u, fu, val_u, v, fv, val_v))
    out.sort(key=lambda c: c.fbar_edge)
    return ConflictReport(tuple(out))


def _conflict_pairs(
    g: Pseudograph, f: PerfectMatching, tf: TwoFactor, h: ContractedGraph
) -> List[Tuple[int, int]]:
    """Quotient-edge pairs whose values XOR to alpha+beta iff a conflict exists."""
    owner = _f_edge_of_vertex(g, f)
    pairs = []
    for cyc in tf.cycles:
        for eid in cyc.edges:
            u, v = g.endpoints(eid)
            pairs.append((h.origin_inverse[owner[u]], h.origin_inverse[owner[v]]))
    return pairs


def _search_ctx(g: Pseudograph, f: PerfectMatching):
    tf = complement_two_factor(g, f)
    h = contract_two_factor(g, tf)
    if h.quotient.m > MAX_QUOTIENT_EDGES:
        raise ResourceLimitError(
            f"quotient has {h.quotient.m} edges (> {MAX_QUOTIENT_EDGES})"
        )
    return tf, h


def find_nonconflicting_flow(
    g: Pseudograph,
    f: PerfectMatching,
    deadline: Optional[float] = None,
) -> Optional[FlowAssignment]:
    """A conflict-free nowhere-zero flow of G/F-bar, or None after exhaustion."""
    tf, h = _search_ctx(g, f)
    q = h.quotient
    eu = [e[0] for e in q.edges]
    ev = [e[1] for e in q.edges]
    vals, conf, _nodes, _seen = flow_search(
        q.n, eu, ev, _conflict_pairs(g, f, tf, h), "first", deadline=deadline
    )
    if vals is None or conf != 0:
        return None
    theta = FlowAssignment(tuple(vals))
    assert verify_flow(h, theta)
    return theta


@dataclass(frozen=True)
class MinConflictResult:
    flow: FlowAssignment
    conflict_count: int
    nodes_expanded: int


def min_conflict_flow(
    g: Pseudograph,
    f: PerfectMatching,
    deadline: Optional[float] = None,
) -> Optional[MinConflictResult]:
    """Flow minimizing the conflict count, or None when no NZ flow exists at all."""
    tf, h = _search_ctx(g, f)
    q = h.quotient
    eu = [e[0] for e in q.edges]
    ev = [e[1] for e in q.edges]
    vals, conf, nodes, _seen = flow_search(
        q.n, eu, ev, _conflict_pairs(g, f, tf, h), "min", deadline=deadline
    )
    if vals is None:
        return None
    theta = FlowAssignment(tuple(vals))
    assert verify_flow(h, theta)
    return MinConflictResult(theta, conf, nodes)


def even_cycle_flow(g: Pseudograph, tf: TwoFactor) -> FlowAssignment:
    """Constant alpha+beta flow; valid because every cycle of the 2-factor is even."""
    if odd_cycle_count(tf) != 0:
        raise InputError("2-factor has an odd cycle; constant flow does not conserve")
    h = contract_two_factor(g, tf)
    theta = FlowAssignment((ALPHA_BETA,) * h.quotient.m)
    assert verify_flow(h, theta)
    return theta


def loop_canonicalize(theta: FlowAssignment, h: ContractedGraph) -> FlowAssignment:
    """Set every loop (chord) value to alpha+beta; conservation is unaffected."""
    vals = list(theta.values)
    for eid, (u, v) in enumerate(h.quotient.edges):
        if u == v:
            vals[eid] = ALPHA_BETA
    return FlowAssignment(tuple(vals))


# ---------------------------------------------------------------------------
# 2-factors with at most two cycles


@dataclass(frozen=True)
class TwoCycleFlowResult:
    """Verified non-conflicting flow plus the matching it is relative to.

    `branch` records which constructive route produced it: "even", "case1",
    "case1-3ec", "case2a", "case2b-even", "case2b-rewire", "case2b-recursion"
    or "fallback-exhaustive".
    """

    matching: PerfectMatching
    two_factor: TwoFactor
    flow: FlowAssignment
    branch: str


def _matching_of_two_factor(g: Pseudograph, tf: TwoFactor) -> PerfectMatching:
    tf_edges = tf.edge_ids()
    return PerfectMatching(tuple(sorted(e for e in range(g.m) if e not in tf_edges)))


def _verified(
    g: Pseudograph,
    f: PerfectMatching,
    tf: TwoFactor,
    theta: FlowAssignment,
    branch: str,
) -> Optional[TwoCycleFlowResult]:
    h = contract_two_factor(g, tf)
    if not verify_flow(h, theta):
        return None
    if not conflicts(g, f, tf, theta, h).is_empty():
        return None
    return TwoCycleFlowResult(f, tf, theta, branch)


def _three_colorable_route(g: Pseudograph) -> Optional[TwoCycleFlowResult]:
    """First matching whose complement has only even cycles, with the constant flow."""
    for f in enumerate_perfect_matchings(g):
        tf = complement_two_factor(g, f)
        if odd_cycle_count(tf) == 0:
            return TwoCycleFlowResult(f, tf, even_cycle_flow(g, tf), "case1-3ec")
    return None


def _exhaustive_route(g: Pseudograph) -> Optional[TwoCycleFlowResult]:
    for f in enumerate_perfect_matchings(g):
        theta = find_nonconflicting_flow(g, f)
        if theta is not None:
            tf = complement_two_factor(g, f)
            return TwoCycleFlowResult(f, tf, theta, "fallback-exhaustive")
    return None


def two_cycle_factor_flow(g: Pseudograph, tf: TwoFactor) -> Optional[TwoCycleFlowResult]:
    """Theorem entry point for a 2-factor with at most two cycles.

    Returns None only for the Petersen graph.
    """
    if len(tf.cycles) > 2:
        raise InputError("2-factor must have at most two cycles")
    if is_isomorphic_to_petersen(g):
        return None
    f = _matching_of_two_factor(g, tf)
    if odd_cycle_count(tf) == 0:
        return TwoCycleFlowResult(f, tf, even_cycle_flow(g, tf), "even")
    return two_odd_cycle_flow(g, tf)


def two_odd_cycle_flow(g: Pseudograph, tf: TwoFactor) -> Optional[TwoCycleFlowResult]:
    """Constructive flow for a 2-factor of exactly two odd cycles.

    Follows the case analysis of the two-cycle theorem; falls back to
    exhaustive search if an uncovered configuration is hit, and records
    which branch fired.  Returns None for the Petersen graph.
    """
    if len(tf.cycles) != 2 or odd_cycle_count(tf) != 2:
        raise InputError("expected a 2-factor with exactly two odd cycles")
    if is_isomorphic_to_petersen(g):
        return None
    f = _matching_of_two_factor(g, tf)

    cyc_of = [-1] * g.n
    for ci, cyc in enumerate(tf.cycles):
        for v in cyc.vertices:
            cyc_of[v] = ci
    cross = [
        eid
        for eid in f.edge_ids
        if cyc_of[g.endpoints(eid)[0]] != cyc_of[g.endpoints(eid)[1]]
    ]
    n = len(cross)
    assert n % 2 == 1, "odd cycles must be joined by an odd number of edges"
    us, vs = [], []
    for eid in cross:
        a, b = g.endpoints(eid)
        if cyc_of[a] != 0:
            a, b = b, a
        us.append(a)
        vs.append(b)

    def linked(a: int, b: int) -> bool:
        # adjacency via cycle edges or chords (anything but the cross matching)
        return any(
            g.other_end(eid, a) == b for eid in g.incident(a) if eid not in cross
        )

    n1 = sum(1 for i in range(n) for j in range(i + 1, n) if linked(us[i], us[j]))
    n2 = sum(1 for i in range(n) for j in range(i + 1, n) if linked(vs[i], vs[j]))

    if comb(n, 2) - n1 > n2:
        for i in range(n):
            for j in range(i + 1, n):
                if not linked(us[i], us[j]) and not linked(vs[i], vs[j]):
                    res = _case1_result(g, f, tf, cross, i, j)
                    if res is not None:
                        return res
    if n >= 5:
        res = _three_colorable_route(g)
        if res is not None:
            return res
        return _exhaustive_route(g)
    # n == 3
    if n1 >= 1 and n2 >= 1:
        res = _three_colorable_route(g)
        if res is not None:
            return TwoCycleFlowResult(res.matching, res.two_factor, res.flow, "case2a")
        return _exhaustive_route(g)
    if {(n1 > 0), (n2 > 0)} == {True, False}:
        res = _case2b(g, f, tf, cross, us, vs, cyc_of, triangle_side=0 if n1 else 1)
        if res is not None:
            return res
    return _exhaustive_route(g)


def _case1_result(
    g: Pseudograph,
    f: PerfectMatching,
    tf: TwoFactor,
    cross: List[int],
    i: int,
    j: int,
) -> Optional[TwoCycleFlowResult]:
    """One alpha, one beta on non-pair cross edges, alpha+beta elsewhere."""
    h = contract_two_factor(g, tf)
    vals = [ALPHA_BETA] * h.quotient.m
    vals[h.origin_inverse[cross[i]]] = ALPHA
    vals[h.origin_inverse[cross[j]]] = BETA
    return _verified(g, f, tf, FlowAssignment(tuple(vals)), "case1")


def _two_factor_from_cycles(g: Pseudograph, cycles: Sequence[Cycle]) -> TwoFactor:
    cyc_of = [-1] * g.n
    for ci, cyc in enumerate(cycles):
        for v in cyc.vertices:
            if cyc_of[v] != -1:
                raise ContractError("cycles overlap")
            cyc_of[v] = ci
    if any(c == -1 for c in cyc_of):
        raise ContractError("cycles do not cover all vertices")
    cyc_edges = {e for cyc in cycles for e in cyc.edges}
    chords = tuple(
        sorted(
            eid
            for eid in range(g.m)
            if eid not in cyc_edges
            and cyc_of[g.endpoints(eid)[0]] == cyc_of[g.endpoints(eid)[1]]
        )
    )
    return TwoFactor(tuple(cycles), chords)


def _case2b(
    g: Pseudograph,
    f: PerfectMatching,
    tf: TwoFactor,
    cross: List[int],
    us: List[int],
    vs: List[int],
    cyc_of: List[int],
    triangle_side: int,
) -> Optional[TwoCycleFlowResult]:
    """Triangle elimination: n = 3 and one side is a triangle with n_side = 3."""
    if triangle_side == 1:
        us, vs = vs, us
    # the triangle vertices are exactly the three cross endpoints on that side
    tri_cycle = tf.cycles[cyc_of[us[0]]]
    if len(tri_cycle) != 3:
        return None
    u1, u2, u3 = us
    v1, v2, v3 = vs
    # triangle edge u1-u3 and the cross edge at u2 go into the new matching
    e_u1u3 = _edge_between(g, u1, u3, exclude=set(cross))
    e_u2v2 = cross[1]
    if e_u1u3 is None:
        return None
    other_cycle = tf.cycles[cyc_of[v1]]
    # alternate edges of the cycle C2 - v2 (+ virtual edge f), avoiding f:
    # walk C2 from one neighbor of v2 around to the other, taking every other edge
    fd = _alternating_matching_avoiding(g, other_cycle, v2)
    if fd is None:
        return None
    new_f = PerfectMatching(tuple(sorted(set(fd) | {e_u1u3, e_u2v2})))
    try:
        tf2 = complement_two_factor(g, new_f)
    except ContractError:
        return None
    if odd_cycle_count(tf2) == 0:
        res = _verified(g, new_f, tf2, even_cycle_flow(g, tf2), "case2b-even")
        if res is not None:
            return res
    res = _case2b_rewire(g, new_f, tf2, v2, u2, e_u2v2)
    if res is not None:
        return res
    res = _case2b_recursion(g, new_f, tf, tf2, v2)
    if res is not None:
        return res
    return None


def _edge_between(
    g: Pseudograph, a: int, b: int, exclude: Set[int] = frozenset()
) -> Optional[int]:
    for eid in g.incident(a):
        if eid not in exclude and g.other_end(eid, a) == b:
            return eid
    return None


def _alternating_matching_avoiding(
    g: Pseudograph, cyc: Cycle, skip_vertex: int
) -> Optional[List[int]]:
    """Edges of the cycle minus `skip_vertex`, taken alternately from one end.

    The cycle is odd; removing one vertex leaves an even path whose unique
    perfect matching (of its own vertex set) is every other edge from the end.
    """
    k = len(cyc.vertices)
    try:
        pos = cyc.vertices.index(skip_vertex)
    except ValueError:
        return None
    # path edges in order, starting from the edge after skip_vertex
    path_edges = [cyc.edges[(pos + 1 + t) % k] for t in range(k - 2)]
    return path_edges[::2]


def _case2b_rewire(
    g: Pseudograph,
    f: PerfectMatching,
    tf: TwoFactor,
    v2: int,
    u2: int,
    e_u2v2: int,
) -> Optional[TwoCycleFlowResult]:
    """Send a beta-cycle through the quotient to balance the two odd cycles."""
    odd = [ci for ci, cyc in enumerate(tf.cycles) if len(cyc) % 2 == 1]
    if len(odd) != 2:
        return None
    h = contract_two_factor(g, tf)
    q = h.quotient
    cf = h.vertex_cycle[v2]
    cg = h.vertex_cycle[u2]
    if cf not in odd or cg not in odd or cf == cg:
        return None
    q_uv = h.origin_inverse[e_u2v2]
    owner = _f_edge_of_vertex(g, f)
    c_f = tf.cycles[cf]
    v2_nbrs = _cycle_neighbors(c_f, v2)
    forbidden_q = set()
    for w in v2_nbrs:
        qid = h.origin_inverse[owner[w]]
        a, b = q.edges[qid]
        if a != b:
            forbidden_q.add(qid)
    for w in c_f.vertices:
        if w == v2 or w in v2_nbrs:
            continue
        e_w = owner[w]
        q_ew = h.origin_inverse[e_w]
        a, b = q.edges[q_ew]
        if a == b:  # chord, stays inside the cycle
            continue
        z = b if a == cf else a
        path = _bfs_path_edges(q, cg, z, avoid_vertex=cf, avoid_edges=forbidden_q | {q_uv, q_ew})
        if path is None:
            continue
        vals = [ALPHA_BETA] * q.m
        vals[q_uv] = ALPHA
        vals[q_ew] = BETA
        for eid in path:
            vals[eid] = BETA
        res = _verified(g, f, tf, FlowAssignment(tuple(vals)), "case2b-rewire")
        if res is not None:
            return res
    return None


def _cycle_neighbors(cyc: Cycle, v: int) -> Set[int]:
    k = len(cyc.vertices)
    pos = cyc.vertices.index(v)
    return {cyc.vertices[(pos - 1) % k], cyc.vertices[(pos + 1) % k]}


def _bfs_path_edges(
    q: Pseudograph,
    src: int,
    dst: int,
    avoid_vertex: int,
    avoid_edges: Set[int],
) -> Optional[List[int]]:
    """Shortest src-dst path (edge ids) avoiding a vertex and some edges."""
    if src == avoid_vertex or dst == avoid_vertex:
        return None
    if src == dst:
        return []
    prev: Dict[int, Tuple[int, int]] = {src: (-1, -1)}
    frontier = [src]
    while frontier:
        nxt = []
        for a in frontier:
            for eid in q.incident(a):
                if eid in avoid_edges or q.is_loop(eid):
                    continue
                b = q.other_end(eid, a)
                if b == avoid_vertex or b in prev:
                    continue
                prev[b] = (a, eid)
                if b == dst:
                    out = []
                    cur = b
                    while cur != src:
                        pa, pe = prev[cur]
                        out.append(pe)
                        cur = pa
                    out.reverse()
                    return out
                nxt.append(b)
        frontier = nxt
    return None


def _contract_vertex_set(
    g: Pseudograph, keep_out: Set[int]
) -> Tuple[Pseudograph, Dict[int, int], Dict[int, int]]:
    """Contract the vertex set `keep_out` to a single new vertex, dropping
    internal edges.  Returns (graph, vertex_map old->new, edge_map new->old)."""
    vmap: Dict[int, int] = {}
    nxt = 0
    for v in range(g.n):
        if v not in keep_out:
            vmap[v] = nxt
            nxt += 1
    z = nxt
    edges = []
    emap: Dict[int, int] = {}
    for eid, (a, b) in enumerate(g.edges):
        ina, inb = a in keep_out, b in keep_out
        if ina and inb:
            continue
        na = z if ina else vmap[a]
        nb = z if inb else vmap[b]
        emap[len(edges)] = eid
        edges.append((na, nb))
    return Pseudograph(z + 1, edges), vmap, emap


def _case2b_recursion(
    g: Pseudograph,
    f: PerfectMatching,
    tf_orig: TwoFactor,
    tf: TwoFactor,
    v2: int,
) -> Optional[TwoCycleFlowResult]:
    """Contract the odd cycle through v2, solve the smaller graph, splice back.

    `tf` is the rebuilt 2-factor whose cycle through v2 gets contracted;
    `tf_orig` (triangle + partner cycle) supplies the at-most-two-cycle
    2-factor handed to the recursive call.
    """
    cf_idx = None
    for ci, cyc in enumerate(tf.cycles):
        if v2 in cyc.vertices:
            cf_idx = ci
            break
    if cf_idx is None:
        return None
    inside = set(tf.cycles[cf_idx].vertices)
    boundary = [
        eid
        for eid, (a, b) in enumerate(g.edges)
        if (a in inside) != (b in inside)
    ]
    if len(boundary) != 3:
        return None
    if g.n - len(inside) < 2:
        return None

    h1, _vmap1, emap1 = _contract_vertex_set(g, inside)
    inv1 = {old: new for new, old in emap1.items()}
    # 2-factor of H1: the triangle survives untouched, the partner cycle is
    # rerouted through the new vertex z
    try:
        h1_cycles = _restrict_cycles(g, tf_orig, inside, h1, inv1)
        tf1 = _two_factor_from_cycles(h1, h1_cycles)
    except (ContractError, KeyError, ValueError):
        return None
    if len(tf1.cycles) > 2:
        return None
    sub = two_cycle_factor_flow(h1, tf1)
    if sub is None:
        return None
    f0 = sub.matching
    h1_contracted = contract_two_factor(h1, sub.two_factor)
    z = h1.n - 1
    t_h1 = None
    for eid in f0.edge_ids:
        a, b = h1.endpoints(eid)
        if z in (a, b):
            t_h1 = eid
            break
    if t_h1 is None:
        return None
    t_g = emap1[t_h1]
    x_val = sub.flow.values[h1_contracted.origin_inverse[t_h1]]

    outside = set(range(g.n)) - inside
    h2, _vmap2, emap2 = _contract_vertex_set(g, outside)
    inv2 = {old: new for new, old in emap2.items()}
    t_h2 = inv2[t_g]
    from .matchings import matchings_through_edge

    j_match = None
    for jm in matchings_through_edge(h2, t_h2):
        tf_j = complement_two_factor(h2, jm)
        if odd_cycle_count(tf_j) == 0:
            j_match = jm
            break
    if j_match is None:
        return None

    f0_g = {emap1[e] for e in f0.edge_ids}
    j_g = {emap2[e] for e in j_match.edge_ids}
    combined = PerfectMatching(tuple(sorted(f0_g | j_g)))
    try:
        tf_new = complement_two_factor(g, combined)
    except ContractError:
        return None
    h_new = contract_two_factor(g, tf_new)
    vals = [0] * h_new.quotient.m
    for qe, ge in enumerate(h_new.edge_origin):
        if ge in f0_g:
            h1_eid = inv1[ge]
            vals[qe] = sub.flow.values[h1_contracted.origin_inverse[h1_eid]]
        else:
            vals[qe] = x_val
    res = _verified(g, combined, tf_new, FlowAssignment(tuple(vals)), "case2b-recursion")
    return res


def _restrict_cycles(
    g: Pseudograph,
    tf: TwoFactor,
    inside: Set[int],
    h1: Pseudograph,
    inv1: Dict[int, int],
) -> List[Cycle]:
    """Map the 2-factor cycles of G onto H1 = G with `inside` contracted to z.

    The contracted cycle disappears; the cycle crossed by the two boundary
    2-factor edges is rerouted through z.
    """
    z = h1.n - 1
    vmap = {}
    nxt = 0
    for v in range(g.n):
        if v not in inside:
            vmap[v] = nxt
            nxt += 1
    out: List[Cycle] = []
    for cyc in tf.cycles:
        verts = cyc.vertices
        if set(verts) <= inside:
            continue
        if not (set(verts) & inside):
            out.append(
                Cycle(tuple(vmap[v] for v in verts), tuple(inv1[e] for e in cyc.edges))
            )
            continue
        # rotate so the inside stretch is a suffix, then replace it by z
        k = len(verts)
        start = None
        for i in range(k):
            if verts[i] not in inside and verts[(i - 1) % k] in inside:
                start = i
                break
        if start is None:
            raise ContractError("cycle does not cross the contracted set cleanly")
        rot_v = [verts[(start + t) % k] for t in range(k)]
        rot_e = [cyc.edges[(start + t) % k] for t in range(k)]
        new_v: List[int] = []
        new_e: List[int] = []
        t = 0
        while t < k and rot_v[t] not in inside:
            new_v.append(vmap[rot_v[t]])
            new_e.append(inv1[rot_e[t]])
            t += 1
        if t == k:
            raise ContractError("expected the cycle to enter the contracted set")
        # rot_e[t-1] crosses into the set; keep it, bridge through z, and the
        # closing edge of the rotation crosses back out
        if any(rot_v[s] not in inside for s in range(t, k)):
            raise ContractError("cycle enters the contracted set more than once")
        new_v.append(z)
        new_e.append(inv1[rot_e[k - 1]])
        out.append(Cycle(tuple(new_v), tuple(new_e)))
    return out


# ---------------------------------------------------------------------------
# Thomassen bridge: 5-regular expansions


def extract_disjoint_matchings(
    h5: Pseudograph,
    g: Pseudograph,
    tf: TwoFactor,
    theta: FlowAssignment,
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Pull two edge-disjoint perfect matchings of H5 out of a non-conflicting
    flow on the 5-cycle expansion.

    Returns (alpha_edges, beta_edges) as H5 edge-id tuples; both verified.
    """
    f = _matching_of_two_factor(g, tf)
    h = contract_two_factor(g, tf)
    rep = conflicts(g, f, tf, theta, h)
    if not rep.is_empty():
        raise InputError("flow must be non-conflicting for the extraction")
    if not verify_flow(h, theta):
        raise InputError("not a valid flow")
    # match quotient edges to H5 edges by endpoints (multiplicity-aware)
    q = h.quotient
    if q.n != h5.n:
        raise InputError("quotient does not line up with the 5-regular graph")
    pool: Dict[Tuple[int, int], List[int]] = {}
    for eid, (a, b) in enumerate(h5.edges):
        pool.setdefault((min(a, b), max(a, b)), []).append(eid)
    qe_to_h5: Dict[int, int] = {}
    for qe, (a, b) in enumerate(q.edges):
        key = (min(a, b), max(a, b))
        if not pool.get(key):
            raise InputError("quotient edge has no counterpart in the 5-regular graph")
        qe_to_h5[qe] = pool[key].pop(0)
    per_cycle: Dict[int, List[int]] = {v: [] for v in range(q.n)}
    alpha_edges, beta_edges = [], []
    for qe, (a, b) in enumerate(q.edges):
        val = theta.values[qe]
        per_cycle[a].append(val)
        if b != a:
            per_cycle[b].append(val)
        if val == ALPHA:
            alpha_edges.append(qe_to_h5[qe])
        elif val == BETA:
            beta_edges.append(qe_to_h5[qe])
    for v, vals in per_cycle.items():
        if vals.count(ALPHA) != 1 or vals.count(BETA) != 1:
            raise NcflowError(
                f"cycle {v} does not carry exactly one alpha and one beta edge; "
                "this contradicts the published counting argument"
            )
    for name, sel in (("alpha", alpha_edges), ("beta", beta_edges)):
        seen = set()
        for eid in sel:
            a, b = h5.endpoints(eid)
            if a in seen or b in seen or a == b:
                raise NcflowError(f"{name}-edges do not form a matching")
            seen.add(a)
            seen.add(b)
        if len(seen) != h5.n:
            raise NcflowError(f"{name}-edges do not cover every vertex")
    if set(alpha_edges) & set(beta_edges):
        raise NcflowError("extracted matchings are not edge-disjoint")
    return tuple(sorted(alpha_edges)), tuple(sorted(beta_edges))


# ---------------------------------------------------------------------------
# every-2-factor characterization


@dataclass(frozen=True)
class EveryFactorReport:
    all_nonconflicting: bool
    verdicts: Tuple[Tuple[PerfectMatching, bool], ...]


def nonconflicting_for_every_two_factor(
    g: Pseudograph, deadline: Optional[float] = None
) -> EveryFactorReport:
    """True iff every perfect matching admits a non-conflicting flow."""
    verdicts = []
    ok = True
    for f in enumerate_perfect_matchings(g):
        theta = find_nonconflicting_flow(g, f, deadline=deadline)
        good = theta is not None
        ok = ok and good
        verdicts.append((f, good))
    return EveryFactorReport(ok, tuple(verdicts))
