"""Coxeter graphs and the structural decompositions everything else consumes.

A Coxeter graph records generator names plus pairwise labels m >= 3 or
infinity; pairs with no entry commute (m = 2) and carry no edge. Vertex
order is first-mention order and acts as the canonical tie-breaker for all
deterministic constructions downstream: edge order, BFS traversals, the
fundamental cycle basis, enumeration order.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

INFINITY = math.inf

Edge = tuple[str, str]


class GraphParseError(ValueError):
    """Malformed graph text."""


class DisconnectedGraphError(ValueError):
    """The operation is only defined for connected graphs."""


class CoxeterGraph:
    """Immutable generator set with pairwise Coxeter labels.

    An edge exists exactly when the label is >= 3 or infinite. Label access
    treats a missing pair as 2 (commuting generators) and a vertex paired
    with itself as 1.
    """

    def __init__(
        self,
        vertices: Iterable[str],
        labels: Optional[Mapping[tuple[str, str], float]] = None,
    ):
        self._vertices = tuple(vertices)
        if not self._vertices:
            raise ValueError("a Coxeter graph needs at least one vertex")
        if len(set(self._vertices)) != len(self._vertices):
            raise ValueError("duplicate vertex names")
        for v in self._vertices:
            # the graph, word, and orientation text forms reserve these
            if not v or any(c.isspace() for c in v) or ">" in v or "," in v or v.startswith("#"):
                raise ValueError(f"invalid vertex name {v!r}")
        self._index = {v: i for i, v in enumerate(self._vertices)}

        self._labels: dict[Edge, float] = {}
        for (u, v), m in (labels or {}).items():
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u not in self._index or v not in self._index:
                missing = u if u not in self._index else v
                raise ValueError(f"label mentions unknown vertex {missing!r}")
            if m != INFINITY and not (isinstance(m, int) and m >= 3):
                raise ValueError(
                    f"label for {u!r}-{v!r} must be an integer >= 3 or infinity, got {m!r}"
                )
            e = self.edge_key(u, v)
            if e in self._labels and self._labels[e] != m:
                raise ValueError(f"conflicting labels for edge {e[0]!r}-{e[1]!r}")
            self._labels[e] = m

        self._edges = tuple(
            sorted(self._labels, key=lambda e: (self._index[e[0]], self._index[e[1]]))
        )
        self._edge_pos = {e: i for i, e in enumerate(self._edges)}
        adj: dict[str, list[str]] = {v: [] for v in self._vertices}
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {
            v: tuple(sorted(ns, key=self._index.__getitem__)) for v, ns in adj.items()
        }
        self._incident_pos = {
            v: tuple(self._edge_pos[self.edge_key(v, n)] for n in self._adj[v])
            for v in self._vertices
        }
        self._key = (self._vertices, tuple(self._labels[e] for e in self._edges), self._edges)
        self._basis: Optional[CycleBasis] = None  # cache for fundamental_cycle_basis

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Edges as (lower, higher) vertex pairs in canonical order."""
        return self._edges

    def __contains__(self, vertex: str) -> bool:
        return vertex in self._index

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise ValueError(f"unknown generator {vertex!r}") from None

    def neighbors(self, vertex: str) -> tuple[str, ...]:
        self.index(vertex)
        return self._adj[vertex]

    def degree(self, vertex: str) -> int:
        return len(self.neighbors(vertex))

    def edge_key(self, u: str, v: str) -> Edge:
        """Normalize an unordered pair to (lower, higher) canonical form."""
        if self.index(u) > self.index(v):
            u, v = v, u
        return (u, v)

    def has_edge(self, u: str, v: str) -> bool:
        if u == v:
            return False
        return self.edge_key(u, v) in self._labels

    def edge_position(self, u: str, v: str) -> int:
        try:
            return self._edge_pos[self.edge_key(u, v)]
        except KeyError:
            raise ValueError(f"no edge between {u!r} and {v!r}") from None

    def incident_edge_positions(self, vertex: str) -> tuple[int, ...]:
        self.index(vertex)
        return self._incident_pos[vertex]

    def label(self, u: str, v: str) -> float:
        """Coxeter label m(u, v); 1 on the diagonal, 2 for non-edges."""
        if u == v:
            self.index(u)
            return 1
        return self._labels.get(self.edge_key(u, v), 2)

    def is_connected(self) -> bool:
        return len(_bfs_component(self, self._vertices[0])) == len(self._vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self._edges) == len(self._vertices) - 1

    def induced(self, vertices: Iterable[str]) -> CoxeterGraph:
        """Induced subgraph; vertex order inherited from this graph."""
        keep = {v for v in vertices}
        for v in keep:
            self.index(v)
        sub_vertices = tuple(v for v in self._vertices if v in keep)
        sub_labels = {
            e: m for e, m in self._labels.items() if e[0] in keep and e[1] in keep
        }
        return CoxeterGraph(sub_vertices, sub_labels)

    def to_text(self) -> str:
        """Serialize; parse_graph inverts this exactly (vertex order included)."""
        lines = list(self._vertices)
        for u, v in self._edges:
            m = self._labels[(u, v)]
            lines.append(f"{u} {v} {'inf' if m == INFINITY else int(m)}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CoxeterGraph) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"CoxeterGraph({len(self._vertices)} vertices, {len(self._edges)} edges)"


def _bfs_component(g: CoxeterGraph, start: str) -> list[str]:
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for n in g.neighbors(x):
            if n not in seen:
                seen.add(n)
                order.append(n)
                queue.append(n)
    return order


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the line-oriented graph format.

    One edge per line, ``NAME NAME LABEL`` with LABEL in {3, 4, ...} or
    ``inf``; a line with a single name declares a (typically isolated)
    vertex; ``#`` starts a comment. Vertex order is first-mention order.
    """
    vertices: list[str] = []
    seen: set[str] = set()
    entries: dict[tuple[str, str], float] = {}

    def mention(name: str) -> None:
        if name not in seen:
            seen.add(name)
            vertices.append(name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 1:
            mention(parts[0])
            continue
        if len(parts) != 3:
            raise GraphParseError(f"line {lineno}: expected 'NAME NAME LABEL', got {raw!r}")
        u, v, token = parts
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at {u!r}")
        if token == "inf":
            m: float = INFINITY
        else:
            try:
                m = int(token)
            except ValueError:
                raise GraphParseError(f"line {lineno}: bad label {token!r}") from None
            if m < 3:
                raise GraphParseError(
                    f"line {lineno}: label must be >= 3 (m = 2 is expressed by omitting the pair)"
                )
        mention(u)
        mention(v)
        key = (u, v) if u < v else (v, u)
        if key in entries and entries[key] != m:
            raise GraphParseError(f"line {lineno}: conflicting label for edge {u!r}-{v!r}")
        entries[key] = m
    if not vertices:
        raise GraphParseError("empty graph description")
    return CoxeterGraph(vertices, entries)


def connected_components(g: CoxeterGraph) -> list[CoxeterGraph]:
    """Partition into induced subgraphs, vertex order inherited."""
    placed: set[str] = set()
    components = []
    for v in g.vertices:
        if v in placed:
            continue
        comp = _bfs_component(g, v)
        placed.update(comp)
        components.append(g.induced(comp))
    return components


@dataclass(frozen=True)
class Limb:
    """A tree hanging off the trunk; meets it only at `joint`.

    `joint` is None exactly in the whole-tree convention, where the graph
    itself is a tree and there is no trunk to attach to.
    """

    joint: Optional[str]
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class TrunkLimbDecomposition:
    graph: CoxeterGraph
    trunk: tuple[str, ...]
    limbs: tuple[Limb, ...]

    def limb_edges(self) -> frozenset[Edge]:
        return frozenset(e for limb in self.limbs for e in limb.edges)

    def trunk_edges(self) -> frozenset[Edge]:
        return frozenset(self.graph.edges) - self.limb_edges()


def trunk_limb_decompose(g: CoxeterGraph) -> TrunkLimbDecomposition:
    """Erode leaves until none remain; what survives is the trunk.

    Trees erode to nothing and come back as a single whole-tree limb with no
    joint. Otherwise the trunk is non-empty and leafless, and each limb
    groups everything that hangs off one joint.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("trunk/limb decomposition needs a connected graph")
    if g.is_tree():
        return TrunkLimbDecomposition(g, (), (Limb(None, g.vertices, g.edges),))

    degree = {v: g.degree(v) for v in g.vertices}
    alive = set(g.vertices)
    queue = deque(v for v in g.vertices if degree[v] <= 1)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for n in g.neighbors(v):
            if n in alive:
                degree[n] -= 1
                if degree[n] <= 1:
                    queue.append(n)
    trunk = tuple(v for v in g.vertices if v in alive)

    members_by_joint: dict[str, set[str]] = {}
    visited: set[str] = set()
    for v in g.vertices:
        if v in alive or v in visited:
            continue
        comp = [v]
        visited.add(v)
        queue = deque([v])
        attachments = []
        while queue:
            x = queue.popleft()
            for n in g.neighbors(x):
                if n in alive:
                    attachments.append(n)
                elif n not in visited:
                    visited.add(n)
                    comp.append(n)
                    queue.append(n)
        # a hanging tree with two attachments would lie on a cycle and
        # therefore inside the trunk
        assert len(attachments) == 1, "limb component attached more than once"
        members_by_joint.setdefault(attachments[0], set()).update(comp)

    limbs = []
    for joint in trunk:
        if joint not in members_by_joint:
            continue
        members = members_by_joint[joint]
        limb_vertices = tuple(v for v in g.vertices if v in members or v == joint)
        limb_edges = tuple(e for e in g.edges if e[0] in members or e[1] in members)
        limbs.append(Limb(joint, limb_vertices, limb_edges))
    return TrunkLimbDecomposition(g, trunk, tuple(limbs))


@dataclass(frozen=True)
class FundamentalCycle:
    """Closed directed walk generated by one non-forest edge.

    The first step crosses the chord from its lower-order endpoint; the rest
    returns through the spanning forest.
    """

    chord: Edge
    steps: tuple[tuple[str, str], ...]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class CycleBasis:
    graph: CoxeterGraph
    spanning_forest: tuple[Edge, ...]
    fundamental_cycles: tuple[FundamentalCycle, ...]


def fundamental_cycle_basis(g: CoxeterGraph) -> CycleBasis:
    """Deterministic fundamental cycle basis.

    The spanning forest comes from BFS at the lowest-order vertex of each
    component with neighbors visited in canonical order; cycles are listed
    in the canonical order of their generating non-forest edge. The result
    is cached on the graph, so circulation values are comparable across
    calls.
    """
    if g._basis is not None:
        return g._basis
    parent: dict[str, Optional[str]] = {}
    forest: set[Edge] = set()
    for root in g.vertices:
        if root in parent:
            continue
        parent[root] = None
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for n in g.neighbors(x):
                if n not in parent:
                    parent[n] = x
                    forest.add(g.edge_key(x, n))
                    queue.append(n)

    cycles = []
    for chord in g.edges:
        if chord in forest:
            continue
        lo, hi = chord
        path = _forest_path(parent, hi, lo)
        steps = [(lo, hi)]
        steps.extend(zip(path, path[1:]))
        cycles.append(FundamentalCycle(chord=chord, steps=tuple(steps)))

    basis = CycleBasis(
        graph=g,
        spanning_forest=tuple(e for e in g.edges if e in forest),
        fundamental_cycles=tuple(cycles),
    )
    g._basis = basis
    return basis


def _forest_path(parent: Mapping[str, Optional[str]], a: str, b: str) -> list[str]:
    """Unique a..b path inside the BFS forest (a and b share a component)."""
    chain = [a]
    x = a
    while parent[x] is not None:
        x = parent[x]
        chain.append(x)
    pos = {v: i for i, v in enumerate(chain)}
    tail = [b]
    x = b
    while x not in pos:
        x = parent[x]
        tail.append(x)
    return chain[: pos[x] + 1] + tail[:-1][::-1]


def path_graph(n: int, labels: float | Sequence[float] = 3, prefix: str = "s") -> CoxeterGraph:
    """Path on n vertices; `labels` is one value or a sequence of n - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    names = [f"{prefix}{i}" for i in range(n)]
    if isinstance(labels, (int, float)):
        seq = [labels] * (n - 1)
    else:
        seq = list(labels)
        if len(seq) != n - 1:
            raise ValueError(f"need {n - 1} labels, got {len(seq)}")
    return CoxeterGraph(names, {(names[i], names[i + 1]): seq[i] for i in range(n - 1)})


def cycle_graph(n: int, label: float = 3, prefix: str = "s") -> CoxeterGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    names = [f"{prefix}{i}" for i in range(n)]
    return CoxeterGraph(
        names, {(names[i], names[(i + 1) % n]): label for i in range(n)}
    )


def star_graph(n: int, label: float = 3, prefix: str = "s") -> CoxeterGraph:
    """Star on n vertices: hub plus n - 1 leaves."""
    if n < 1:
        raise ValueError("n must be >= 1")
    names = [f"{prefix}{i}" for i in range(n)]
    return CoxeterGraph(names, {(names[0], names[i]): label for i in range(1, n)})


def complete_graph(n: int, label: float = 3, prefix: str = "s") -> CoxeterGraph:
    if n < 1:
        raise ValueError("n must be >= 1")
    names = [f"{prefix}{i}" for i in range(n)]
    return CoxeterGraph(
        names,
        {(names[i], names[j]): label for i in range(n) for j in range(i + 1, n)},
    )
