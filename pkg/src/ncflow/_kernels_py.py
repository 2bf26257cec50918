"""Pure-Python search kernels.

Twin of the compiled extension `_kernels`; `ncflow.kernels` picks whichever
is importable.  Both implement identical semantics:

* `flow_search` -- backtracking over edge values of a group Z_2^b with
  vertex-saturation (conservation) pruning and optional conflict-pair
  pruning / branch-and-bound.
* `normal_coloring_search` -- proper k-edge-coloring search with poor/rich
  pruning and canonical color introduction (colors first appear in
  increasing order, which is sound because normality is invariant under
  palette permutation).
"""

from __future__ import annotations

import time
from typing import List, Optional, Sequence, Tuple

BACKEND = "python"

_DEADLINE_STRIDE = 4096


class SearchTimeout(Exception):
    pass


def flow_search(
    nq: int,
    eu: Sequence[int],
    ev: Sequence[int],
    conflict_pairs: Sequence[Tuple[int, int]],
    mode: str,
    values: Sequence[int] = (1, 2, 3),
    deadline: Optional[float] = None,
) -> Tuple[Optional[List[int]], int, int, int]:
    """Search nowhere-zero flows with XOR conservation at every vertex.

    mode:
      "first" -- first flow with zero conflicts (prunes on any conflict)
      "min"   -- flow minimizing the number of conflicts (branch & bound)
      "count" -- count all nowhere-zero flows (conflicts ignored)

    Returns (values or None, conflict_count_of_result, nodes_expanded, flows_seen).
    For "count", flows_seen is the flow count and values is None.
    """
    if deadline is not None and time.monotonic() > deadline:
        raise SearchTimeout
    m = len(eu)
    if m == 0:
        empty: List[int] = []
        if mode == "count":
            return None, 0, 0, 1
        return empty, 0, 0, 1

    # vertex-grouped static order so conservation closes vertices early
    order: List[int] = []
    placed = [False] * m
    incid: List[List[int]] = [[] for _ in range(nq)]
    for e in range(m):
        incid[eu[e]].append(e)
        if ev[e] != eu[e]:
            incid[ev[e]].append(e)
    for v in range(nq):
        for e in incid[v]:
            if not placed[e]:
                placed[e] = True
                order.append(e)
    for e in range(m):  # isolated-safe
        if not placed[e]:
            order.append(e)

    partners: List[List[int]] = [[] for _ in range(m)]
    for a, b in conflict_pairs:
        partners[a].append(b)
        partners[b].append(a)

    rem = [0] * nq
    for e in range(m):
        if eu[e] != ev[e]:
            rem[eu[e]] += 1
            rem[ev[e]] += 1
    acc = [0] * nq
    val = [0] * m

    best_val: Optional[List[int]] = None
    best_conf = len(conflict_pairs) + 1
    nodes = 0
    flows_seen = 0
    counting = mode == "count"
    first = mode == "first"
    vals = tuple(values)

    def rec(depth: int, conf: int) -> bool:
        nonlocal nodes, flows_seen, best_val, best_conf
        if depth == m:
            flows_seen += 1
            if not counting and conf < best_conf:
                best_conf = conf
                best_val = val[:]
                return first and conf == 0
            return False
        e = order[depth]
        u, v = eu[e], ev[e]
        loop = u == v
        if loop:
            candidates = vals
        else:
            cu = rem[u] == 1
            cv = rem[v] == 1
            if cu and cv:
                candidates = (acc[u],) if acc[u] == acc[v] and acc[u] != 0 else ()
            elif cu:
                candidates = (acc[u],) if acc[u] != 0 else ()
            elif cv:
                candidates = (acc[v],) if acc[v] != 0 else ()
            else:
                candidates = vals
        for x in candidates:
            nodes += 1
            if deadline is not None and nodes % _DEADLINE_STRIDE == 0:
                if time.monotonic() > deadline:
                    raise SearchTimeout
            dconf = 0
            if not counting:
                for p in partners[e]:
                    if val[p] != 0 and (val[p] ^ x) == 3:
                        dconf += 1
                if first and dconf:
                    continue
                if conf + dconf >= best_conf:
                    continue
            val[e] = x
            if not loop:
                acc[u] ^= x
                acc[v] ^= x
                rem[u] -= 1
                rem[v] -= 1
            done = rec(depth + 1, conf + dconf)
            val[e] = 0
            if not loop:
                acc[u] ^= x
                acc[v] ^= x
                rem[u] += 1
                rem[v] += 1
            if done:
                return True
        return False

    rec(0, 0)
    if counting:
        return None, 0, nodes, flows_seen
    if best_val is None:
        return None, 0, nodes, flows_seen
    return best_val, best_conf, nodes, flows_seen


def normal_coloring_search(
    n: int,
    eu: Sequence[int],
    ev: Sequence[int],
    k: int,
    forbid_abnormal: bool = True,
    deadline: Optional[float] = None,
) -> Tuple[Optional[List[int]], int]:
    """First proper k-edge-coloring without abnormal edges, or None on exhaustion.

    Endpoints of every edge must have degree 3 for the poor/rich pruning to
    apply; callers guarantee cubic loop-free input.  Returns (colors, nodes).
    """
    if deadline is not None and time.monotonic() > deadline:
        raise SearchTimeout
    m = len(eu)
    if m == 0:
        return [], 0

    incid: List[List[int]] = [[] for _ in range(n)]
    for e in range(m):
        incid[eu[e]].append(e)
        incid[ev[e]].append(e)

    adjacent: List[List[int]] = [[] for _ in range(m)]
    star: List[List[int]] = [[] for _ in range(m)]
    for e in range(m):
        seen = set()
        for v in (eu[e], ev[e]):
            for f in incid[v]:
                if f != e and f not in seen:
                    seen.add(f)
                    adjacent[e].append(f)
                    star[e].append(f)

    # closed star of e = e plus its star; when fully colored, classify
    closed_uncolored = [len(star[e]) + 1 for e in range(m)]

    # BFS order over the line graph so closed stars complete early
    order: List[int] = []
    placed = [False] * m
    for s in range(m):
        if placed[s]:
            continue
        placed[s] = True
        queue = [s]
        while queue:
            e = queue.pop(0)
            order.append(e)
            for f in adjacent[e]:
                if not placed[f]:
                    placed[f] = True
                    queue.append(f)

    color = [0] * m
    nodes = 0

    def star_ok(e: int) -> bool:
        # all five colors known: poor (3) or rich (5); abnormal (4) pruned
        cu = set()
        cv = set()
        a, b = eu[e], ev[e]
        for f in incid[a]:
            cu.add(color[f])
        for f in incid[b]:
            cv.add(color[f])
        size = len(cu | cv)
        return size != 4

    def rec(depth: int, maxused: int) -> bool:
        nonlocal nodes
        if depth == m:
            return True
        e = order[depth]
        limit = min(k, maxused + 1)
        for c in range(1, limit + 1):
            nodes += 1
            if deadline is not None and nodes % _DEADLINE_STRIDE == 0:
                if time.monotonic() > deadline:
                    raise SearchTimeout
            ok = True
            for f in adjacent[e]:
                if color[f] == c:
                    ok = False
                    break
            if not ok:
                continue
            color[e] = c
            good = True
            if forbid_abnormal:
                closed_uncolored[e] -= 1
                for f in star[e]:
                    closed_uncolored[f] -= 1
                if closed_uncolored[e] == 0 and not star_ok(e):
                    good = False
                if good:
                    for f in star[e]:
                        if closed_uncolored[f] == 0 and not star_ok(f):
                            good = False
                            break
            if good and rec(depth + 1, max(maxused, c)):
                return True
            if forbid_abnormal:
                closed_uncolored[e] += 1
                for f in star[e]:
                    closed_uncolored[f] += 1
            color[e] = 0
        return False

    if rec(0, 0):
        return color, nodes
    return None, nodes
