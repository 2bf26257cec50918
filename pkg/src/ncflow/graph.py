"""Pseudograph representation, structural predicates, and 2-factor contraction.

Edges carry stable integer identities (0..m-1, in construction order).
Contraction never renumbers source edges: conflict detection on the
quotient must be able to point back at original incidences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ContractError, InputError, ResourceLimitError

INFINITY = float("inf")


class Pseudograph:
    """Undirected multigraph allowing loops and parallel edges.

    A loop contributes 2 to the degree of its vertex.  Instances are
    immutable after construction and safe to share across workers.
    """

    __slots__ = ("n", "edges", "_incident", "_degree")

    def __init__(self, n: int, edges: Sequence[Tuple[int, int]]):
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for {n} vertices")
        self.n = n
        self.edges: Tuple[Tuple[int, int], ...] = tuple((u, v) for u, v in edges)
        incident: List[List[int]] = [[] for _ in range(n)]
        degree = [0] * n
        for eid, (u, v) in enumerate(self.edges):
            incident[u].append(eid)
            degree[u] += 1
            if v == u:
                degree[u] += 1  # loop counts twice, listed once
            else:
                incident[v].append(eid)
                degree[v] += 1
        self._incident = tuple(tuple(lst) for lst in incident)
        self._degree = tuple(degree)

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, eid: int) -> Tuple[int, int]:
        return self.edges[eid]

    def is_loop(self, eid: int) -> bool:
        u, v = self.edges[eid]
        return u == v

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if v == a else a

    def degree(self, v: int) -> int:
        return self._degree[v]

    def incident(self, v: int) -> Tuple[int, ...]:
        """Edge ids touching v; loops appear once."""
        return self._incident[v]

    def neighbors(self, v: int) -> List[int]:
        """Neighbor vertices with multiplicity; loops excluded."""
        out = []
        for eid in self._incident[v]:
            w = self.other_end(eid, v)
            if w != v:
                out.append(w)
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return any(self.other_end(eid, u) == v for eid in self._incident[u] if not self.is_loop(eid)) \
            if u != v else any(self.is_loop(eid) for eid in self._incident[u])

    def multiplicity(self, u: int, v: int) -> int:
        if u == v:
            return sum(1 for eid in self._incident[u] if self.is_loop(eid))
        return sum(1 for eid in self._incident[u] if self.other_end(eid, u) == v)

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def edge_multiset(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted((u, v) if u <= v else (v, u) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Pseudograph(n={self.n}, m={self.m})"


def build_graph(vertex_count: int, edge_list: Iterable[Tuple[int, int]]) -> Pseudograph:
    """Build a pseudograph; edge ids are assigned in list order."""
    return Pseudograph(vertex_count, list(edge_list))


def is_cubic(g: Pseudograph) -> bool:
    return all(g.degree(v) == 3 for v in range(g.n))


def connected_components(g: Pseudograph, removed_edges: frozenset = frozenset()) -> List[List[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for eid in g.incident(v):
                if eid in removed_edges:
                    continue
                w = g.other_end(eid, v)
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_connected(g: Pseudograph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bridges(g: Pseudograph) -> List[int]:
    """Cut-edges by iterative DFS lowpoint; loops and parallel copies never qualify."""
    disc = [-1] * g.n
    low = [0] * g.n
    out: List[int] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # stack entries: (vertex, incoming edge id, iterator over incident edges)
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(g.incident(root)))]
        while stack:
            v, in_eid, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == in_eid or g.is_loop(eid):
                    continue
                w = g.other_end(eid, v)
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, iter(g.incident(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv]:
                        out.append(in_eid)
    out.sort()
    return out


def girth(g: Pseudograph):
    """Length of a shortest cycle; loop = 1, parallel pair = 2, forests -> inf."""
    if any(u == v for u, v in g.edges):
        return 1
    seen = set()
    for u, v in g.edges:
        key = (u, v) if u < v else (v, u)
        if key in seen:
            return 2
        seen.add(key)
    best = INFINITY
    # simple graph: for each edge, shortest u-v path avoiding that edge
    for eid, (u, v) in enumerate(g.edges):
        dist = {u: 0}
        frontier = [u]
        while frontier and v not in dist:
            nxt = []
            for a in frontier:
                for e2 in g.incident(a):
                    if e2 == eid:
                        continue
                    b = g.other_end(e2, a)
                    if b not in dist:
                        dist[b] = dist[a] + 1
                        nxt.append(b)
            frontier = nxt
        if v in dist and dist[v] + 1 < best:
            best = dist[v] + 1
    return best


@dataclass(frozen=True)
class ContractedGraph:
    """Quotient G / F-bar with the edge-identity bridge back to G.

    quotient          -- pseudograph on one vertex per 2-factor cycle
    cycle_of_vertex   -- quotient vertex -> cycle index (identity here)
    edge_origin       -- quotient edge id -> source edge id in G
    origin_inverse    -- source edge id -> quotient edge id
    vertex_cycle      -- G-vertex -> quotient vertex
    """

    quotient: Pseudograph
    cycle_of_vertex: Tuple[int, ...]
    edge_origin: Tuple[int, ...]
    origin_inverse: Dict[int, int]
    vertex_cycle: Tuple[int, ...]


def contract_two_factor(g: Pseudograph, two_factor) -> ContractedGraph:
    """Collapse each cycle of the 2-factor; the quotient edges are the F-edges.

    Chords (F-edges with both endpoints on one cycle) become loops.
    """
    cycles = two_factor.cycles
    vertex_cycle = [-1] * g.n
    for ci, cyc in enumerate(cycles):
        for v in cyc.vertices:
            if vertex_cycle[v] != -1:
                raise ContractError("2-factor cycles are not vertex-disjoint")
            vertex_cycle[v] = ci
    if any(c == -1 for c in vertex_cycle):
        raise ContractError("2-factor does not cover all vertices")
    tf_edges = two_factor.edge_ids()
    q_edges: List[Tuple[int, int]] = []
    origin: List[int] = []
    inv: Dict[int, int] = {}
    for eid, (u, v) in enumerate(g.edges):
        if eid in tf_edges:
            continue
        qe = len(q_edges)
        q_edges.append((vertex_cycle[u], vertex_cycle[v]))
        origin.append(eid)
        inv[eid] = qe
    quotient = Pseudograph(len(cycles), q_edges)
    return ContractedGraph(
        quotient=quotient,
        cycle_of_vertex=tuple(range(len(cycles))),
        edge_origin=tuple(origin),
        origin_inverse=inv,
        vertex_cycle=tuple(vertex_cycle),
    )


def three_edge_cuts(g: Pseudograph) -> List[Tuple[int, int, int]]:
    """All 3-edge cuts, i.e. triples of the form boundary(S) (brute force).

    A triple qualifies only if some vertex bipartition has exactly these
    three edges crossing; disconnecting triples that leave an edge inside
    one side are not cuts.  Vertex stars of a cubic graph count as
    (trivial) cuts; callers needing non-trivial ones filter by side sizes.
    """
    if not is_connected(g):
        raise InputError("three_edge_cuts requires a connected graph")
    cuts = []
    for trip in itertools.combinations(range(g.m), 3):
        if any(g.is_loop(e) for e in trip):
            continue
        comps = connected_components(g, frozenset(trip))
        if len(comps) < 2:
            continue
        comp_of = {}
        for ci, comp in enumerate(comps):
            for v in comp:
                comp_of[v] = ci
        ends = [(comp_of[g.endpoints(e)[0]], comp_of[g.endpoints(e)[1]]) for e in trip]
        if any(a == b for a, b in ends):
            continue  # an internal edge: not a boundary
        k = len(comps)
        # at most 4 components after removing 3 edges; find a bipartition
        # of the components crossed by all three edges
        for mask in range(1, 1 << (k - 1)):
            if all((mask >> a & 1) != (mask >> b & 1) for a, b in ends):
                cuts.append(trip)
                break
    return cuts


def is_claw_free(g: Pseudograph) -> bool:
    """True iff no four vertices induce K_{1,3}."""
    for v in range(g.n):
        nbrs = sorted(set(g.neighbors(v)))
        if len(nbrs) < 3:
            continue
        for a, b, c in itertools.combinations(nbrs, 3):
            if g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c):
                continue
            # induced subgraph must be exactly K_{1,3}: single edges, no loops
            if any(g.multiplicity(v, x) != 1 for x in (a, b, c)):
                continue
            if any(g.multiplicity(x, x) for x in (v, a, b, c)):
                continue
            return False
    return True


def _has_cycle_component_count(g: Pseudograph, removed: frozenset) -> int:
    """Number of components of G - removed that contain a cycle."""
    count = 0
    for comp in connected_components(g, removed):
        comp_set = set(comp)
        m_comp = sum(
            1
            for eid, (u, v) in enumerate(g.edges)
            if eid not in removed and u in comp_set
        )
        if m_comp >= len(comp):
            count += 1
    return count


_CYCLIC_GUARD = 3_000_000


def is_cyclically_k_edge_connected(g: Pseudograph, k: int) -> bool:
    """Decide cyclic k-edge-connectivity by enumerating cuts of size < k.

    Graphs with no two vertex-disjoint cycle components under any deletion
    are reported True for every k (documented convention).
    """
    if k > 6:
        raise InputError("k must be at most 6")
    total = sum(_ncr(g.m, c) for c in range(1, k))
    if total > _CYCLIC_GUARD:
        raise ResourceLimitError(f"cyclic connectivity guard: {total} cuts to scan")
    for c in range(1, k):
        for cut in itertools.combinations(range(g.m), c):
            if _has_cycle_component_count(g, frozenset(cut)) >= 2:
                return False
    return True


def _ncr(n: int, r: int) -> int:
    if r < 0 or r > n:
        return 0
    out = 1
    for i in range(r):
        out = out * (n - i) // (i + 1)
    return out


# ---------------------------------------------------------------------------
# isomorphism (plain backtracking; only ever used on small candidates)


def _degree_profile(g: Pseudograph, v: int) -> tuple:
    return (g.degree(v), tuple(sorted(g.degree(w) for w in g.neighbors(v))))


def are_isomorphic(g: Pseudograph, h: Pseudograph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(map(g.degree, range(g.n))) != sorted(map(h.degree, range(h.n))):
        return False
    if girth(g) != girth(h):
        return False
    gp = [_degree_profile(g, v) for v in range(g.n)]
    hp = [_degree_profile(h, v) for v in range(h.n)]
    if sorted(gp) != sorted(hp):
        return False
    order = sorted(range(g.n), key=lambda v: (gp[v], v))
    mapping = [-1] * g.n
    used = [False] * h.n

    def compatible(v: int, w: int) -> bool:
        if gp[v] != hp[w]:
            return False
        if g.multiplicity(v, v) != h.multiplicity(w, w):
            return False
        for x in set(g.neighbors(v)):
            if mapping[x] != -1 and g.multiplicity(v, x) != h.multiplicity(w, mapping[x]):
                return False
        # mapped neighbors of w must be preimages of v's neighbors
        for y in set(h.neighbors(w)):
            pre = _inverse(mapping, y)
            if pre is not None and h.multiplicity(w, y) != g.multiplicity(v, pre):
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(h.n):
            if used[w] or not compatible(v, w):
                continue
            mapping[v] = w
            used[w] = True
            if rec(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return rec(0)


def _inverse(mapping: List[int], y: int) -> Optional[int]:
    for i, val in enumerate(mapping):
        if val == y:
            return i
    return None


_PETERSEN_CACHE: Optional[Pseudograph] = None


def is_isomorphic_to_petersen(g: Pseudograph) -> bool:
    global _PETERSEN_CACHE
    if _PETERSEN_CACHE is None:
        from .generators import petersen

        _PETERSEN_CACHE = petersen()
    return are_isomorphic(g, _PETERSEN_CACHE)
