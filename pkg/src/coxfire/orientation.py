"""Acyclic edge orientations and the sink/source firing game.

Orientations are immutable values; firing returns new ones. The canonical
encoding is one bit per edge in canonical edge order, bit = 1 when the edge
points from its lower-order endpoint to the higher; enumeration is
lexicographic in that encoding. Circulation around the canonical
fundamental cycles is preserved by firing and separates the reachability
classes, which is what makes the O(|E|) `reachable` decision possible; the
exhaustive `reachable_bfs` search exists as its independent oracle.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

from .graph import (
    INFINITY,
    CoxeterGraph,
    CycleBasis,
    DisconnectedGraphError,
    TrunkLimbDecomposition,
    fundamental_cycle_basis,
)

DEFAULT_STATE_BUDGET = 10**6


class StateBudgetExceeded(RuntimeError):
    """A search hit its state cap; the answer is unknown, never wrong."""


class AcyclicOrientation:
    """A direction per edge of a Coxeter graph, with no directed cycle."""

    __slots__ = ("_graph", "_bits")

    def __init__(self, graph: CoxeterGraph, arcs: Iterable[tuple[str, str]]):
        bits: list[Optional[bool]] = [None] * len(graph.edges)
        for tail, head in arcs:
            pos = graph.edge_position(tail, head)
            forward = graph.edges[pos][0] == tail
            if bits[pos] is not None and bits[pos] != forward:
                raise ValueError(f"edge {tail!r}-{head!r} assigned both directions")
            bits[pos] = forward
        for e, b in zip(graph.edges, bits):
            if b is None:
                raise ValueError(f"missing direction for edge {e[0]!r}-{e[1]!r}")
        self._graph = graph
        self._bits = tuple(bits)
        _require_acyclic(self)

    @classmethod
    def from_bits(cls, graph: CoxeterGraph, bits: Iterable[bool]) -> AcyclicOrientation:
        o = cls._make(graph, tuple(bool(b) for b in bits))
        if len(o._bits) != len(graph.edges):
            raise ValueError(f"expected {len(graph.edges)} bits, got {len(o._bits)}")
        _require_acyclic(o)
        return o

    @classmethod
    def _make(cls, graph: CoxeterGraph, bits: tuple[bool, ...]) -> AcyclicOrientation:
        # internal fast path: caller guarantees acyclicity
        o = object.__new__(cls)
        o._graph = graph
        o._bits = bits
        return o

    @property
    def graph(self) -> CoxeterGraph:
        return self._graph

    @property
    def bits(self) -> tuple[bool, ...]:
        return self._bits

    @property
    def code(self) -> int:
        """Integer form of the bit encoding, first canonical edge most significant."""
        c = 0
        for b in self._bits:
            c = (c << 1) | int(b)
        return c

    def arc(self, u: str, v: str) -> tuple[str, str]:
        """The (tail, head) direction of the edge between u and v."""
        pos = self._graph.edge_position(u, v)
        lo, hi = self._graph.edges[pos]
        return (lo, hi) if self._bits[pos] else (hi, lo)

    def arcs(self) -> tuple[tuple[str, str], ...]:
        """All directed edges, in canonical edge order."""
        return tuple(
            (lo, hi) if b else (hi, lo)
            for (lo, hi), b in zip(self._graph.edges, self._bits)
        )

    def _head(self, pos: int) -> str:
        lo, hi = self._graph.edges[pos]
        return hi if self._bits[pos] else lo

    def is_sink(self, vertex: str) -> bool:
        """No outgoing edges; isolated vertices are sinks (and sources)."""
        return all(
            self._head(pos) == vertex
            for pos in self._graph.incident_edge_positions(vertex)
        )

    def is_source(self, vertex: str) -> bool:
        return all(
            self._head(pos) != vertex
            for pos in self._graph.incident_edge_positions(vertex)
        )

    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self._graph.vertices if self.is_sink(v))

    def sources(self) -> tuple[str, ...]:
        return tuple(v for v in self._graph.vertices if self.is_source(v))

    def out_neighbors(self, vertex: str) -> tuple[str, ...]:
        return tuple(
            n
            for n, pos in zip(
                self._graph.neighbors(vertex), self._graph.incident_edge_positions(vertex)
            )
            if self._head(pos) == n
        )

    def in_neighbors(self, vertex: str) -> tuple[str, ...]:
        return tuple(
            n
            for n, pos in zip(
                self._graph.neighbors(vertex), self._graph.incident_edge_positions(vertex)
            )
            if self._head(pos) == vertex
        )

    def _reverse_at(self, vertex: str) -> AcyclicOrientation:
        bits = list(self._bits)
        for pos in self._graph.incident_edge_positions(vertex):
            bits[pos] = not bits[pos]
        flipped = AcyclicOrientation._make(self._graph, tuple(bits))
        _require_acyclic(flipped)  # guaranteed for sink/source firing
        return flipped

    def fire_sink(self, vertex: str) -> AcyclicOrientation:
        """Reverse every edge at a sink, turning it into a source."""
        if not self.is_sink(vertex):
            raise ValueError(f"{vertex!r} is not a sink")
        return self._reverse_at(vertex)

    def fire_source(self, vertex: str) -> AcyclicOrientation:
        """Reverse every edge at a source, turning it into a sink."""
        if not self.is_source(vertex):
            raise ValueError(f"{vertex!r} is not a source")
        return self._reverse_at(vertex)

    def playback_sequence(self, vertex: str) -> tuple[str, ...]:
        """Firing order that starts at the given sink, fires every vertex
        exactly once, and restores this orientation.

        This is the reverse of a linear extension that ends at `vertex`;
        ties go to the lowest-order source, so the output is deterministic.
        """
        if not self._graph.is_connected():
            raise DisconnectedGraphError("playback needs a connected graph")
        if not self.is_sink(vertex):
            raise ValueError(f"{vertex!r} is not a sink")
        remaining = set(self._graph.vertices) - {vertex}
        indegree = {v: 0 for v in remaining}
        for tail, head in self.arcs():
            if tail in remaining and head in remaining:
                indegree[head] += 1
        order = []
        while remaining:
            v = next(x for x in self._graph.vertices if x in remaining and indegree[x] == 0)
            remaining.discard(v)
            order.append(v)
            for h in self.out_neighbors(v):
                if h in remaining:
                    indegree[h] -= 1
        order.append(vertex)
        return tuple(reversed(order))

    def circulation_signature(self, basis: Optional[CycleBasis] = None) -> tuple[int, ...]:
        """Circulation around each fundamental cycle: edges along the
        traversal minus edges against it. Defaults to the graph's canonical
        basis."""
        if basis is None:
            basis = fundamental_cycle_basis(self._graph)
        elif basis.graph != self._graph:
            raise ValueError("cycle basis was built from a different graph")
        values = []
        for cycle in basis.fundamental_cycles:
            total = 0
            for a, b in cycle.steps:
                total += 1 if self.arc(a, b) == (a, b) else -1
            values.append(total)
        return tuple(values)

    def to_text(self) -> str:
        """Comma-separated `tail>head` arcs in canonical edge order."""
        return ",".join(f"{tail}>{head}" for tail, head in self.arcs())

    def to_dot(self, name: str = "coxeter") -> str:
        lines = [f"digraph {name} {{"]
        for v in self._graph.vertices:
            lines.append(f'    "{v}";')
        for (lo, hi), b in zip(self._graph.edges, self._bits):
            tail, head = (lo, hi) if b else (hi, lo)
            m = self._graph.label(lo, hi)
            attr = "" if m == 3 else f' [label="{"inf" if m == INFINITY else int(m)}"]'
            lines.append(f'    "{tail}" -> "{head}"{attr};')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AcyclicOrientation)
            and self._bits == other._bits
            and self._graph == other._graph
        )

    def __hash__(self) -> int:
        return hash((self._graph, self._bits))

    def __repr__(self) -> str:
        return f"AcyclicOrientation({self.to_text()!r})"


def _require_acyclic(o: AcyclicOrientation) -> None:
    g = o.graph
    indegree = {v: 0 for v in g.vertices}
    out: dict[str, list[str]] = {v: [] for v in g.vertices}
    for tail, head in o.arcs():
        out[tail].append(head)
        indegree[head] += 1
    queue = deque(v for v in g.vertices if indegree[v] == 0)
    done = 0
    while queue:
        x = queue.popleft()
        done += 1
        for y in out[x]:
            indegree[y] -= 1
            if indegree[y] == 0:
                queue.append(y)
    if done != len(g.vertices):
        raise ValueError("orientation has a directed cycle")


def parse_orientation(text: str, graph: CoxeterGraph) -> AcyclicOrientation:
    """Parse comma-separated `tail>head` arcs; must cover every edge once."""
    arcs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        tail, sep, head = part.partition(">")
        if not sep or not tail.strip() or not head.strip():
            raise ValueError(f"bad arc {part!r}, expected 'tail>head'")
        arcs.append((tail.strip(), head.strip()))
    return AcyclicOrientation(graph, arcs)


def _require_comparable(o1: AcyclicOrientation, o2: AcyclicOrientation) -> None:
    if o1.graph != o2.graph:
        raise ValueError("orientations live on different graphs")
    if not o1.graph.is_connected():
        raise DisconnectedGraphError(
            "reachability is defined per connected graph; split into components first"
        )


def reachable(o1: AcyclicOrientation, o2: AcyclicOrientation) -> bool:
    """Same reachability class under firing moves, decided by comparing
    circulation signatures over the canonical cycle basis."""
    _require_comparable(o1, o2)
    basis = fundamental_cycle_basis(o1.graph)
    return o1.circulation_signature(basis) == o2.circulation_signature(basis)


def reachable_bfs(
    o1: AcyclicOrientation,
    o2: AcyclicOrientation,
    max_states: int = DEFAULT_STATE_BUDGET,
) -> bool:
    """Exhaustive search over sink firings from o1; exact oracle for
    `reachable`. Raises StateBudgetExceeded past `max_states` states."""
    _require_comparable(o1, o2)
    if o1 == o2:
        return True
    seen = {o1.bits}
    queue = deque([o1])
    while queue:
        o = queue.popleft()
        for v in o.sinks():
            nxt = o.fire_sink(v)
            if nxt.bits in seen:
                continue
            if nxt.bits == o2.bits:
                return True
            if len(seen) >= max_states:
                raise StateBudgetExceeded(f"explored more than {max_states} orientations")
            seen.add(nxt.bits)
            queue.append(nxt)
    return False


def enumerate_acyclic_orientations(g: CoxeterGraph) -> list[AcyclicOrientation]:
    """All acyclic orientations, lexicographic in the canonical bit encoding.

    Backtracks over edges in canonical order, pruning any partial
    assignment that already closes a directed cycle; practical up to around
    25 edges.
    """
    edges = g.edges
    m = len(edges)
    out: dict[str, set[str]] = {v: set() for v in g.vertices}
    bits = [False] * m
    result: list[AcyclicOrientation] = []

    def reaches(a: str, b: str) -> bool:
        stack = [a]
        seen = {a}
        while stack:
            x = stack.pop()
            if x == b:
                return True
            for y in out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def extend(i: int) -> None:
        if i == m:
            result.append(AcyclicOrientation._make(g, tuple(bits)))
            return
        lo, hi = edges[i]
        for forward, tail, head in ((False, hi, lo), (True, lo, hi)):
            if reaches(head, tail):  # arc tail->head would close a cycle
                continue
            out[tail].add(head)
            bits[i] = forward
            extend(i + 1)
            out[tail].remove(head)

    extend(0)
    return result


def reachability_classes(
    g: CoxeterGraph,
) -> dict[tuple[int, ...], list[AcyclicOrientation]]:
    """Partition of all acyclic orientations keyed by circulation signature.

    Classes are ordered by signature; members keep enumeration order.
    """
    if not g.is_connected():
        raise DisconnectedGraphError(
            "reachability classes need a connected graph; split into components first"
        )
    basis = fundamental_cycle_basis(g)
    classes: dict[tuple[int, ...], list[AcyclicOrientation]] = {}
    for o in enumerate_acyclic_orientations(g):
        classes.setdefault(o.circulation_signature(basis), []).append(o)
    return dict(sorted(classes.items()))


def _firing_closure(
    o: AcyclicOrientation, max_states: int
) -> list[AcyclicOrientation]:
    seen = {o.bits}
    members = [o]
    queue = deque([o])
    while queue:
        x = queue.popleft()
        for v in x.sinks():
            nxt = x.fire_sink(v)
            if nxt.bits in seen:
                continue
            if len(seen) >= max_states:
                raise StateBudgetExceeded(f"explored more than {max_states} orientations")
            seen.add(nxt.bits)
            members.append(nxt)
            queue.append(nxt)
    return members


def reachability_classes_bfs(
    g: CoxeterGraph, max_states: int = DEFAULT_STATE_BUDGET
) -> list[list[AcyclicOrientation]]:
    """Partition by exhaustive sink-firing closure; the search-based oracle
    counterpart of reachability_classes. Classes and members are sorted by
    bit encoding."""
    if not g.is_connected():
        raise DisconnectedGraphError(
            "reachability classes need a connected graph; split into components first"
        )
    assigned: set[tuple[bool, ...]] = set()
    classes = []
    for o in enumerate_acyclic_orientations(g):
        if o.bits in assigned:
            continue
        members = sorted(_firing_closure(o, max_states), key=lambda x: x.bits)
        assigned.update(x.bits for x in members)
        classes.append(members)
    return classes


def redirect_limb_edges(
    o: AcyclicOrientation,
    decomposition: TrunkLimbDecomposition,
    new_arcs: Iterable[tuple[str, str]],
) -> AcyclicOrientation:
    """Rewrite directions on limb edges only.

    Limb edges lie on no cycle, so the result is acyclic and stays in the
    same reachability class no matter how they are redirected.
    """
    if decomposition.graph != o.graph:
        raise ValueError("decomposition was built from a different graph")
    limb_edges = decomposition.limb_edges()
    bits = list(o.bits)
    for tail, head in new_arcs:
        pos = o.graph.edge_position(tail, head)
        edge = o.graph.edges[pos]
        if edge not in limb_edges:
            raise ValueError(f"{tail!r}-{head!r} is a trunk edge; only limb edges may be redirected")
        bits[pos] = edge[0] == tail
    redirected = AcyclicOrientation._make(o.graph, tuple(bits))
    _require_acyclic(redirected)
    return redirected
