"""Perfect matchings, complementary 2-factors, and 3-cut-respecting matchings.

Enumeration is DFS on the lowest-indexed uncovered vertex, branching over
its incident edges in id order, so streams are deterministic and
certificates reproduce.  Streams are lazy generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .errors import ContractError, InputError
from .graph import Pseudograph, is_cubic, three_edge_cuts


@dataclass(frozen=True)
class PerfectMatching:
    edge_ids: Tuple[int, ...]  # sorted

    def as_set(self) -> FrozenSet[int]:
        return frozenset(self.edge_ids)

    def __contains__(self, eid: int) -> bool:
        return eid in self.as_set()


@dataclass(frozen=True)
class Cycle:
    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]  # edges[i] joins vertices[i] and vertices[(i+1) % len]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class TwoFactor:
    """Cycle decomposition of G - F, with the F-chords of each cycle recorded."""

    cycles: Tuple[Cycle, ...]
    chord_ids: Tuple[int, ...]  # F-edges with both endpoints on one cycle

    def edge_ids(self) -> FrozenSet[int]:
        return frozenset(e for cyc in self.cycles for e in cyc.edges)

    def cycle_of(self, v: int) -> int:
        for ci, cyc in enumerate(self.cycles):
            if v in cyc.vertices:
                return ci
        raise KeyError(v)


def enumerate_perfect_matchings(g: Pseudograph) -> Iterator[PerfectMatching]:
    """Every perfect matching exactly once, lexicographic on sorted edge ids."""
    if g.n % 2 == 1:
        return
    yield from _match_rec(g, [False] * g.n, [])


def _match_rec(g: Pseudograph, covered: List[bool], chosen: List[int]) -> Iterator[PerfectMatching]:
    v = -1
    for i, c in enumerate(covered):
        if not c:
            v = i
            break
    if v == -1:
        yield PerfectMatching(tuple(sorted(chosen)))
        return
    for eid in g.incident(v):
        if g.is_loop(eid):
            continue  # a loop covers its vertex twice
        w = g.other_end(eid, v)
        if covered[w]:
            continue
        covered[v] = covered[w] = True
        chosen.append(eid)
        yield from _match_rec(g, covered, chosen)
        chosen.pop()
        covered[v] = covered[w] = False


def matching_complement_edges(g: Pseudograph, f: PerfectMatching) -> List[int]:
    fs = f.as_set()
    return [eid for eid in range(g.m) if eid not in fs]


def complement_two_factor(g: Pseudograph, f: PerfectMatching) -> TwoFactor:
    """Cycle decomposition of G - F for cubic G; 2-cycles from parallel edges allowed."""
    if not is_cubic(g):
        raise InputError("complement_two_factor requires a cubic graph")
    if any(g.is_loop(e) for e in range(g.m)):
        raise InputError("cubic input graphs may not contain loops")
    fs = f.as_set()
    covered = [0] * g.n
    for eid in fs:
        u, v = g.endpoints(eid)
        covered[u] += 1
        covered[v] += 1
    if any(c != 1 for c in covered):
        raise ContractError("not a perfect matching of this graph")
    rem = [[] for _ in range(g.n)]
    for eid in range(g.m):
        if eid in fs:
            continue
        u, v = g.endpoints(eid)
        rem[u].append(eid)
        rem[v].append(eid)
    cycles: List[Cycle] = []
    used_edge = [False] * g.m
    seen_v = [False] * g.n
    for start in range(g.n):
        if seen_v[start]:
            continue
        verts = [start]
        edges = []
        seen_v[start] = True
        v = start
        while True:
            nxt_eid = None
            for eid in rem[v]:
                if not used_edge[eid]:
                    nxt_eid = eid
                    break
            if nxt_eid is None:
                break
            used_edge[nxt_eid] = True
            edges.append(nxt_eid)
            w = g.other_end(nxt_eid, v)
            if w == start and len(edges) == len(verts):
                break
            verts.append(w)
            seen_v[w] = True
            v = w
        if len(edges) != len(verts) or len(verts) < 2:
            raise ContractError("complement is not a disjoint union of cycles")
        cycles.append(Cycle(tuple(verts), tuple(edges)))
    cyc_of = [-1] * g.n
    for ci, cyc in enumerate(cycles):
        for v in cyc.vertices:
            cyc_of[v] = ci
    chords = tuple(
        sorted(
            eid
            for eid in fs
            if cyc_of[g.endpoints(eid)[0]] == cyc_of[g.endpoints(eid)[1]]
        )
    )
    return TwoFactor(tuple(cycles), chords)


def matchings_through_edge(g: Pseudograph, eid: int) -> Iterator[PerfectMatching]:
    """Perfect matchings containing a prescribed edge; empty on bridged inputs is allowed."""
    if g.is_loop(eid):
        return
    u, v = g.endpoints(eid)
    covered = [False] * g.n
    covered[u] = covered[v] = True
    yield from _match_rec(g, covered, [eid])


def matchings_meeting_all_3cuts_once(
    g: Pseudograph, eid: int, cuts: Optional[Sequence[Tuple[int, int, int]]] = None
) -> Iterator[PerfectMatching]:
    """Matchings through eid that intersect every 3-edge-cut in exactly one edge.

    The cut list may be passed in to amortize enumeration across calls.
    """
    if cuts is None:
        cuts = three_edge_cuts(g)
    for f in matchings_through_edge(g, eid):
        fs = f.as_set()
        if all(len(fs.intersection(cut)) == 1 for cut in cuts):
            yield f


def odd_cycle_count(tf: TwoFactor) -> int:
    count = sum(1 for cyc in tf.cycles if len(cyc) % 2 == 1)
    return count
