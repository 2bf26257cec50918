"""Shared corpora and helpers for the test suite."""

from __future__ import annotations

from typing import Dict, List, Tuple

import pytest

from ncflow.generators import (
    k4,
    k33,
    permutation_graph,
    petersen,
    replace_vertex_with_triangle,
    ring_of_diamonds,
    triangle_replace_all,
)
from ncflow.graph import Pseudograph, bridges, build_graph, is_cubic


def prism(n: int) -> Pseudograph:
    return permutation_graph(tuple(range(n)))


def small_corpus() -> List[Tuple[str, Pseudograph]]:
    """Bridgeless cubic graphs on at most 14 vertices."""
    graphs = [
        ("k4", k4()),
        ("k33", k33()),
        ("prism3", prism(3)),
        ("prism4", prism(4)),
        ("prism5", prism(5)),
        ("prism6", prism(6)),
        ("prism7", prism(7)),
        ("petersen", petersen()),
        ("moebius4", permutation_graph((1, 2, 3, 0))),
        ("perm5-shift2", permutation_graph((0, 2, 4, 1, 3))),
        ("perm6-rev", permutation_graph((5, 4, 3, 2, 1, 0))),
        ("ring2", ring_of_diamonds(2)),
        ("ring3", ring_of_diamonds(3)),
        ("tri-k4", triangle_replace_all(k4())),
    ]
    for name, g in graphs:
        assert is_cubic(g) and not bridges(g), name
        assert g.n <= 14, name
    return graphs


def corpus_16() -> List[Tuple[str, Pseudograph]]:
    """Bridgeless cubic graphs on at most 16 vertices (superset of the small corpus)."""
    extra = [
        ("prism8", prism(8)),
        ("perm8-shift3", permutation_graph((3, 4, 5, 6, 7, 0, 1, 2))),
    ]
    return small_corpus() + extra


def glue_two_cut(g1: Pseudograph, e1: int, g2: Pseudograph, e2: int) -> Tuple[Pseudograph, Tuple[int, int]]:
    """Remove an edge from each graph and join the stubs, creating a 2-cut.

    Returns the glued graph and the ids of the two new cut edges.
    """
    u1, v1 = g1.endpoints(e1)
    u2, v2 = g2.endpoints(e2)
    off = g1.n
    edges = [e for i, e in enumerate(g1.edges) if i != e1]
    edges += [(a + off, b + off) for i, (a, b) in enumerate(g2.edges) if i != e2]
    edges.append((u1, u2 + off))
    edges.append((v1, v2 + off))
    return build_graph(g1.n + g2.n, edges), (len(edges) - 2, len(edges) - 1)


def triangle_and_nine_cycle(chords: List[Tuple[int, int]]) -> Pseudograph:
    """Cubic graph whose canonical 2-factor is a triangle plus a chorded 9-cycle.

    Triangle 0,1,2; 9-cycle 3..11; cross matching edges 0-3, 1-6, 2-9 (ids
    12..14); chords given as 9-cycle positions (ids 15..17).
    """
    edges = [(0, 1), (1, 2), (0, 2)]
    edges += [(3 + i, 3 + (i + 1) % 9) for i in range(9)]
    edges += [(0, 3), (1, 6), (2, 9)]
    edges += [(3 + a, 3 + b) for a, b in chords]
    g = build_graph(12, edges)
    assert is_cubic(g)
    return g


# chord layouts covering all three triangle-elimination sub-branches
CHORD_LAYOUTS = [
    [(1, 5), (2, 7), (4, 8)],
    [(1, 4), (2, 7), (5, 8)],
    [(1, 8), (2, 5), (4, 7)],
    [(1, 5), (2, 8), (4, 7)],
    [(1, 7), (2, 5), (4, 8)],
    [(1, 4), (2, 8), (5, 7)],
    [(1, 7), (2, 4), (5, 8)],
    [(1, 8), (2, 4), (5, 7)],
    [(1, 8), (2, 7), (4, 5)],
    [(1, 2), (4, 5), (7, 8)],
]


@pytest.fixture(scope="session")
def corpus():
    return small_corpus()


@pytest.fixture(scope="session")
def corpus16():
    return corpus_16()
