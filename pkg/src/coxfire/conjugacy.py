"""Conjugacy of Coxeter elements.

The production decision path is pure graph combinatorics: two Coxeter words
represent conjugate elements exactly when their orientations share a
circulation signature. Group elements only ever appear inside the
brute-force oracle, which enumerates a faithful concrete realization
(permutations, signed permutations, or reflection matrices) and searches
for an explicit conjugator; it exists to cross-check the combinatorial
decision, never to make it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graph import INFINITY, CoxeterGraph, DisconnectedGraphError
from .orientation import (
    DEFAULT_STATE_BUDGET,
    AcyclicOrientation,
    StateBudgetExceeded,
    enumerate_acyclic_orientations,
    reachability_classes,
    reachable,
)
from .words import (
    Word,
    commutation_normal_form,
    orientation_from_word,
    require_coxeter_word,
    word_from_orientation,
)

MATRIX_KEY_GRID = 1e-6
MATRIX_TOLERANCE = 1e-9
_INFINITE_ORDER_CAP = 64


@dataclass(frozen=True)
class CoxeterElement:
    """A Coxeter element, encoded by its canonical word and orientation.

    Two elements are equal exactly when their orientations are; the word is
    the commutation normal form of any representative.
    """

    word: Word
    orientation: AcyclicOrientation

    @classmethod
    def from_word(cls, w: Sequence[str], graph: CoxeterGraph) -> CoxeterElement:
        w = require_coxeter_word(w, graph)
        canonical = commutation_normal_form(w, graph)
        return cls(canonical, orientation_from_word(canonical, graph))

    @classmethod
    def from_orientation(cls, o: AcyclicOrientation) -> CoxeterElement:
        # the lowest-source linear extension is already the normal form
        return cls(word_from_orientation(o), o)


def coxeter_elements(g: CoxeterGraph) -> list[CoxeterElement]:
    """One element per acyclic orientation (they correspond bijectively)."""
    if not g.is_connected():
        raise DisconnectedGraphError("Coxeter element enumeration needs a connected graph")
    return [CoxeterElement.from_orientation(o) for o in enumerate_acyclic_orientations(g)]


def are_conjugate(w1: Sequence[str], w2: Sequence[str], g: CoxeterGraph) -> bool:
    """Decide conjugacy of the two Coxeter elements.

    O(|E|) per query once the canonical cycle basis is built: conjugate
    exactly when the two orientations have equal circulation signatures.
    """
    o1 = orientation_from_word(require_coxeter_word(w1, g), g)
    o2 = orientation_from_word(require_coxeter_word(w2, g), g)
    return reachable(o1, o2)


def conjugacy_classes(g: CoxeterGraph) -> dict[tuple[int, ...], list[CoxeterElement]]:
    """Conjugacy classes of Coxeter elements, keyed by circulation signature."""
    return {
        sig: [CoxeterElement.from_orientation(o) for o in members]
        for sig, members in reachability_classes(g).items()
    }


def class_report_lines(classes: dict[tuple[int, ...], list[CoxeterElement]]) -> list[str]:
    """Stable line format: `signature=<ints> size=<int> representative=<word>`."""
    return [
        f"signature={','.join(str(v) for v in sig)}"
        f" size={len(members)}"
        f" representative={' '.join(members[0].word)}"
        for sig, members in classes.items()
    ]


@dataclass(frozen=True)
class ConjugacyWitness:
    """Replayable certificate that two Coxeter words are conjugate.

    `trace` transforms the source word into the target using only legal
    moves: ("rotate", letter) moves the first letter (which must be
    `letter`) to the end, ("swap", i) exchanges the commuting letters at
    positions i and i+1. `conjugator` lists the rotated letters in reverse
    order of application, so as group elements
    conjugator * w1 * conjugator^-1 = w2 (the letters are involutions).
    """

    conjugator: Word
    trace: tuple[tuple, ...]


def replay_witness(
    w: Sequence[str], witness: ConjugacyWitness, g: CoxeterGraph
) -> Word:
    """Apply a witness trace to a word, validating every step."""
    current = list(w)
    for step in witness.trace:
        kind = step[0]
        if kind == "rotate":
            if not current or current[0] != step[1]:
                raise ValueError(f"rotation expects first letter {step[1]!r}")
            current = current[1:] + [current[0]]
        elif kind == "swap":
            i = step[1]
            if not 0 <= i < len(current) - 1:
                raise ValueError(f"swap position {i} out of range")
            x, y = current[i], current[i + 1]
            if x == y or g.has_edge(x, y):
                raise ValueError(f"letters {x!r} and {y!r} do not commute")
            current[i], current[i + 1] = y, x
        else:
            raise ValueError(f"unknown trace step {step!r}")
    return tuple(current)


def _source_firing_path(
    o1: AcyclicOrientation, o2: AcyclicOrientation, max_states: int
) -> list[str]:
    """Shortest source-firing sequence from o1 to o2 (BFS, canonical
    tie-breaking); the two orientations must be in the same class."""
    if o1.bits == o2.bits:
        return []
    parent: dict[tuple[bool, ...], tuple[tuple[bool, ...], str]] = {}
    seen = {o1.bits}
    queue = [o1]
    while queue:
        nxt_queue = []
        for o in queue:
            for v in o.sources():
                fired = o.fire_source(v)
                if fired.bits in seen:
                    continue
                if len(seen) >= max_states:
                    raise StateBudgetExceeded(
                        f"explored more than {max_states} orientations"
                    )
                seen.add(fired.bits)
                parent[fired.bits] = (o.bits, v)
                if fired.bits == o2.bits:
                    path = []
                    cursor = fired.bits
                    while cursor != o1.bits:
                        cursor, letter = parent[cursor]
                        path.append(letter)
                    return path[::-1]
                nxt_queue.append(fired)
        queue = nxt_queue
    raise AssertionError("orientations in the same class must be BFS-connected")


def _commutation_steps_to(
    current: list[str], target: Sequence[str], g: CoxeterGraph
) -> list[tuple]:
    """Adjacent commuting swaps carrying `current` onto `target` in place;
    the words must be commutation equivalent."""
    steps: list[tuple] = []
    for p, letter in enumerate(target):
        q = current.index(letter, p)
        for i in range(q, p, -1):
            x, y = current[i - 1], current[i]
            # equivalent words always allow this march to the front
            assert x != y and not g.has_edge(x, y), "words are not commutation equivalent"
            steps.append(("swap", i - 1))
            current[i - 1], current[i] = y, x
    return steps


def conjugacy_witness(
    w1: Sequence[str],
    w2: Sequence[str],
    g: CoxeterGraph,
    max_states: int = DEFAULT_STATE_BUDGET,
) -> ConjugacyWitness:
    """Produce a replayable rotation/commutation trace from w1 to w2.

    Each rotation is conjugation by the rotated letter, so the collected
    conjugator actually conjugates w1 to w2 in the group. The firing path
    behind the rotations is the shortest one (BFS over source firings).
    """
    w1 = require_coxeter_word(w1, g)
    w2 = require_coxeter_word(w2, g)
    o1 = orientation_from_word(w1, g)
    o2 = orientation_from_word(w2, g)
    if not reachable(o1, o2):
        raise ValueError("words are not conjugate; no witness exists")

    fired = _source_firing_path(o1, o2, max_states)
    trace: list[tuple] = []
    current = list(w1)
    for v in fired:
        # v is a source, so nothing before it in the word is a neighbour
        position = current.index(v)
        for i in range(position, 0, -1):
            trace.append(("swap", i - 1))
            current[i - 1], current[i] = current[i], current[i - 1]
        trace.append(("rotate", v))
        current = current[1:] + [v]
    trace.extend(_commutation_steps_to(current, w2, g))
    assert tuple(current) == w2
    return ConjugacyWitness(conjugator=tuple(reversed(fired)), trace=tuple(trace))


class GroupRepresentation:
    """Concrete faithful images of the generators, for the brute-force oracle.

    kind "permutation" covers single-label-3 paths (symmetric group on
    n + 1 points), "signed" covers paths with one terminal label 4
    (hyperoctahedral group), "matrix" covers any graph via the reflection
    representation with bilinear form entries -cos(pi / m).
    """

    def __init__(self, graph: CoxeterGraph, kind: str, images: dict, tolerance: float = 0.0):
        self.graph = graph
        self.kind = kind
        self.images = images
        self.tolerance = tolerance

    def identity(self):
        n = len(self.graph.vertices)
        if self.kind == "permutation":
            return tuple(range(n + 1))
        if self.kind == "signed":
            return tuple(range(1, n + 1))
        return np.eye(n)

    def compose(self, a, b):
        """Image of the product: apply b, then a."""
        if self.kind == "permutation":
            return tuple(a[x] for x in b)
        if self.kind == "signed":
            return tuple(a[x - 1] if x > 0 else -a[-x - 1] for x in b)
        return a @ b

    def key(self, a):
        """Hashable canonical encoding; matrix entries snap to a 1e-6 grid."""
        if self.kind == "matrix":
            return tuple(int(v) for v in np.rint(np.asarray(a) / MATRIX_KEY_GRID).flat)
        return a

    def equal(self, a, b) -> bool:
        return self.key(a) == self.key(b)

    def image_of_word(self, w: Sequence[str]):
        img = self.identity()
        for letter in w:
            img = self.compose(img, self.images[letter])
        return img

    def _is_identity_tight(self, a) -> bool:
        if self.kind == "matrix":
            return bool(np.max(np.abs(a - self.identity())) <= self.tolerance)
        return a == self.identity()

    def check_invariants(self) -> None:
        """Generator images are involutions and pairwise products have the
        right orders (within `tolerance` for matrices)."""
        for s in self.graph.vertices:
            a = self.images[s]
            if not self._is_identity_tight(self.compose(a, a)):
                raise ValueError(f"image of {s!r} is not an involution")
        vertices = self.graph.vertices
        for i, u in enumerate(vertices):
            for v in vertices[i + 1 :]:
                m = self.graph.label(u, v)
                product = self.compose(self.images[u], self.images[v])
                cap = _INFINITE_ORDER_CAP if m == INFINITY else int(m)
                power = self.identity()
                order = None
                for k in range(1, cap + 1):
                    power = self.compose(power, product)
                    if self._is_identity_tight(power):
                        order = k
                        break
                if m == INFINITY:
                    if order is not None:
                        raise ValueError(
                            f"product of {u!r}, {v!r} has finite order {order}, expected infinite"
                        )
                elif order != int(m):
                    raise ValueError(
                        f"product of {u!r}, {v!r} has order {order}, expected {int(m)}"
                    )


def _path_order(g: CoxeterGraph) -> Optional[list[str]]:
    """Vertices in path order (lower-indexed terminal first), or None."""
    if not g.is_connected() or len(g.edges) != len(g.vertices) - 1:
        return None
    if len(g.vertices) == 1:
        return [g.vertices[0]]
    terminals = [v for v in g.vertices if g.degree(v) == 1]
    if len(terminals) != 2 or any(g.degree(v) > 2 for v in g.vertices):
        return None
    order = [terminals[0]]
    while len(order) < len(g.vertices):
        nxt = [n for n in g.neighbors(order[-1]) if n not in order]
        order.append(nxt[0])
    return order


def resolve_kind(g: CoxeterGraph) -> str:
    """Pick the cheapest faithful model the graph admits."""
    order = _path_order(g)
    if order is not None:
        labels = [g.label(a, b) for a, b in zip(order, order[1:])]
        if all(m == 3 for m in labels):
            return "permutation"
        if (
            labels.count(4) == 1
            and all(m in (3, 4) for m in labels)
            and (labels[0] == 4 or labels[-1] == 4)
        ):
            return "signed"
    return "matrix"


def build_representation(g: CoxeterGraph, kind: str = "auto") -> GroupRepresentation:
    """Build generator images for the requested model.

    "auto" resolves to permutation or signed for the path shapes that admit
    them and to matrix otherwise.
    """
    if kind == "auto":
        kind = resolve_kind(g)
    n = len(g.vertices)
    if kind == "permutation":
        order = _path_order(g)
        if order is None or any(
            g.label(a, b) != 3 for a, b in zip(order, order[1:])
        ):
            raise ValueError("permutation model needs a path with all labels 3")
        images = {}
        for i, v in enumerate(order):
            perm = list(range(n + 1))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            images[v] = tuple(perm)
        return GroupRepresentation(g, "permutation", images)
    if kind == "signed":
        order = _path_order(g)
        if order is None or n < 2:
            raise ValueError("signed model needs a path with one terminal label 4")
        labels = [g.label(a, b) for a, b in zip(order, order[1:])]
        if labels.count(4) != 1 or any(m not in (3, 4) for m in labels) or (
            labels[0] != 4 and labels[-1] != 4
        ):
            raise ValueError("signed model needs a path with one terminal label 4")
        if labels[0] != 4:
            order.reverse()
        images = {order[0]: tuple([-1] + list(range(2, n + 1)))}
        for i, v in enumerate(order[1:], start=1):
            perm = list(range(1, n + 1))
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
            images[v] = tuple(perm)
        return GroupRepresentation(g, "signed", images)
    if kind == "matrix":
        form = np.array(
            [
                [-math.cos(math.pi / g.label(u, v)) for v in g.vertices]
                for u in g.vertices
            ]
        )
        images = {}
        for i, v in enumerate(g.vertices):
            m = np.eye(n)
            m[i, :] -= 2.0 * form[i, :]
            images[v] = m
        return GroupRepresentation(g, "matrix", images, tolerance=MATRIX_TOLERANCE)
    raise ValueError(f"unknown representation kind {kind!r}")


def enumerate_group(rep: GroupRepresentation, budget: int = DEFAULT_STATE_BUDGET) -> list:
    """Closure of the generator images under composition.

    Raises StateBudgetExceeded once more than `budget` distinct elements
    appear, which is how an infinite group shows up in practice.
    """
    generators = [rep.images[v] for v in rep.graph.vertices]
    ident = rep.identity()
    elements = {rep.key(ident): ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for x in frontier:
            for gen in generators:
                y = rep.compose(x, gen)
                k = rep.key(y)
                if k in elements:
                    continue
                if len(elements) >= budget:
                    raise StateBudgetExceeded(
                        f"group closure exceeded {budget} elements"
                    )
                elements[k] = y
                fresh.append(y)
        frontier = fresh
    return list(elements.values())


def oracle_are_conjugate(
    w1: Sequence[str],
    w2: Sequence[str],
    rep: GroupRepresentation,
    budget: int = DEFAULT_STATE_BUDGET,
    group: Optional[list] = None,
) -> bool:
    """Brute-force conjugacy: enumerate the whole group and look for u with
    u * img(w1) = img(w2) * u. Independent of the circulation machinery.

    Pass a previously enumerated `group` to amortize the closure across
    many queries on the same representation.
    """
    w1 = require_coxeter_word(w1, rep.graph)
    w2 = require_coxeter_word(w2, rep.graph)
    rep.check_invariants()
    if group is None:
        group = enumerate_group(rep, budget)
    x = rep.image_of_word(w1)
    y = rep.image_of_word(w2)
    return any(
        rep.equal(rep.compose(u, x), rep.compose(y, u)) for u in group
    )
