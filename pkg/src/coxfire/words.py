"""Words over the generator alphabet and their orientation semantics.

A word orients the subgraph spanned by its letters: each edge points toward
the endpoint whose first occurrence comes later. Words listing every
generator exactly once (Coxeter words) give total acyclic orientations, and
rotating such a word matches firing the corresponding source. Reading a
word right to left factors it into an initial orientation plus a sequence
of sink firings, provided consecutive occurrences of every letter are
separated by all of its neighbours.

Words are plain tuples of generator names.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .graph import CoxeterGraph, DisconnectedGraphError
from .orientation import AcyclicOrientation

Word = tuple[str, ...]


def parse_word(text: str, graph: CoxeterGraph) -> Word:
    """Whitespace-separated generator names."""
    letters = tuple(text.split())
    _require_letters(letters, graph)
    return letters


def _require_letters(w: Sequence[str], graph: CoxeterGraph) -> None:
    for x in w:
        if x not in graph:
            raise ValueError(f"unknown generator {x!r}")


def is_coxeter_word(w: Sequence[str], graph: CoxeterGraph) -> bool:
    """True when w lists every generator exactly once."""
    return len(w) == len(graph.vertices) and set(w) == set(graph.vertices)


def require_coxeter_word(w: Sequence[str], graph: CoxeterGraph) -> Word:
    _require_letters(w, graph)
    if len(set(w)) != len(w):
        dup = next(x for x in w if list(w).count(x) > 1)
        raise ValueError(f"not a Coxeter word: {dup!r} repeats")
    missing = [v for v in graph.vertices if v not in set(w)]
    if missing:
        raise ValueError(f"not a Coxeter word: {missing[0]!r} is missing")
    return tuple(w)


def orientation_from_word(w: Sequence[str], graph: CoxeterGraph) -> AcyclicOrientation:
    """Orient by first occurrence: edge s-t points s -> t when s shows up
    first. Only the subgraph spanned by the letters of w gets oriented, so
    the result lives on that induced subgraph (the whole graph for a
    Coxeter word)."""
    _require_letters(w, graph)
    first: dict[str, int] = {}
    for i, x in enumerate(w):
        first.setdefault(x, i)
    sub = graph if len(first) == len(graph.vertices) else graph.induced(first)
    arcs = []
    for u, v in sub.edges:
        arcs.append((u, v) if first[u] < first[v] else (v, u))
    return AcyclicOrientation(sub, arcs)


def word_from_orientation(o: AcyclicOrientation) -> Word:
    """The canonical linear extension: repeatedly emit the lowest-order
    source and delete it. Inverts orientation_from_word on Coxeter words."""
    g = o.graph
    remaining = set(g.vertices)
    indegree = {v: len(o.in_neighbors(v)) for v in g.vertices}
    out = []
    while remaining:
        v = next(x for x in g.vertices if x in remaining and indegree[x] == 0)
        remaining.discard(v)
        out.append(v)
        for h in o.out_neighbors(v):
            if h in remaining:
                indegree[h] -= 1
    return tuple(out)


def rotate(w: Sequence[str]) -> Word:
    """Move the first letter to the end."""
    if not w:
        raise ValueError("cannot rotate an empty word")
    return tuple(w[1:]) + (w[0],)


def commutation_normal_form(w: Sequence[str], graph: CoxeterGraph) -> Word:
    """Lexicographically least word obtainable by swapping adjacent letters
    that commute (no edge between them).

    Greedy and deterministic: at each step emit the least letter none of
    whose earlier remaining letters is equal or adjacent to it. Idempotent,
    and a complete invariant for commutation equivalence.
    """
    _require_letters(w, graph)
    remaining = list(w)
    out = []
    while remaining:
        best_pos = -1
        best_index = len(graph.vertices)
        seen: set[str] = set()
        for pos, x in enumerate(remaining):
            if x not in seen and all(not graph.has_edge(x, y) for y in seen):
                idx = graph.index(x)
                if idx < best_index:
                    best_index = idx
                    best_pos = pos
            seen.add(x)
        out.append(remaining.pop(best_pos))
    return tuple(out)


def commutation_equivalent(
    w1: Sequence[str], w2: Sequence[str], graph: CoxeterGraph
) -> bool:
    return commutation_normal_form(w1, graph) == commutation_normal_form(w2, graph)


def has_intervening_neighbours(w: Sequence[str], graph: CoxeterGraph) -> bool:
    """True when every pair of consecutive occurrences of a letter has all
    of that letter's graph neighbours strictly between them."""
    _require_letters(w, graph)
    positions: dict[str, list[int]] = defaultdict(list)
    for i, x in enumerate(w):
        positions[x].append(i)
    for x, occurrences in positions.items():
        nbrs = graph.neighbors(x)
        for a, b in zip(occurrences, occurrences[1:]):
            between = set(w[a + 1 : b])
            if any(n not in between for n in nbrs):
                return False
    return True


def process_word(
    w: Sequence[str], graph: CoxeterGraph
) -> tuple[AcyclicOrientation, Word]:
    """Right-to-left reading of a word with the intervening-neighbours
    property in which every generator occurs.

    Scanning from the right, a letter's first appearance orients its edges
    toward the letters already seen; each re-appearance reverses all edges
    at that letter, which at that point is a sink. Returns the orientation
    at the moment every edge first became oriented, plus the remaining
    firings (in right-to-left reading order). Replaying the firings from
    the initial orientation via fire_sink lands on orientation_from_word(w).
    """
    _require_letters(w, graph)
    if not graph.is_connected():
        raise DisconnectedGraphError("word processing needs a connected graph")
    if set(w) != set(graph.vertices):
        missing = next(v for v in graph.vertices if v not in set(w))
        raise ValueError(f"every generator must occur; {missing!r} does not")
    if not has_intervening_neighbours(w, graph):
        raise ValueError("word lacks the intervening-neighbours property")

    seen: set[str] = set()
    arcs: dict[tuple[str, str], tuple[str, str]] = {}
    initial_arcs: dict[tuple[str, str], tuple[str, str]] = {}
    covered = False
    plays: list[str] = []
    for t in reversed(w):
        if t not in seen:
            seen.add(t)
            for s in graph.neighbors(t):
                if s in seen:
                    arcs[graph.edge_key(t, s)] = (t, s)
            if not covered and len(seen) == len(graph.vertices):
                covered = True
                initial_arcs = dict(arcs)
        else:
            for s in graph.neighbors(t):
                # guaranteed by the intervening-neighbours property
                assert s in seen, f"{t!r} re-appears before neighbour {s!r}"
                edge = graph.edge_key(t, s)
                assert arcs[edge][1] == t, f"{t!r} re-appears while not a sink"
                arcs[edge] = (t, s)
            if covered:
                plays.append(t)
    initial = AcyclicOrientation(graph, initial_arcs.values())
    return initial, tuple(plays)


def power(w: Sequence[str], k: int) -> Word:
    """Concatenate k >= 1 copies of the word."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return tuple(w) * k
