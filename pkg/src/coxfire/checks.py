"""Self-check battery: runs the library's structural invariants on a graph.

Each check reports pass/fail/skip; skips happen when the graph is too large
for the exhaustive parts (these checks enumerate orientations). Disconnected
graphs are checked component by component.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import CoxeterGraph, connected_components, fundamental_cycle_basis
from .orientation import (
    enumerate_acyclic_orientations,
    reachability_classes,
    reachability_classes_bfs,
)
from .words import orientation_from_word, rotate, word_from_orientation

MAX_CHECK_EDGES = 20
MAX_CHECK_ORIENTATIONS = 4096


@dataclass
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    detail: str = ""


def run_graph_checks(g: CoxeterGraph, max_orientations: int = MAX_CHECK_ORIENTATIONS) -> list[CheckResult]:
    components = connected_components(g)
    results = []
    for i, comp in enumerate(components):
        prefix = f"component{i}." if len(components) > 1 else ""
        for r in _check_component(comp, max_orientations):
            r.name = prefix + r.name
            results.append(r)
    return results


def _check_component(g: CoxeterGraph, max_orientations: int) -> list[CheckResult]:
    results = []
    n, e = len(g.vertices), len(g.edges)
    basis = fundamental_cycle_basis(g)

    rank_ok = len(basis.fundamental_cycles) == e - n + 1
    results.append(
        CheckResult(
            "cycle-space-rank",
            "pass" if rank_ok else "fail",
            f"{len(basis.fundamental_cycles)} fundamental cycles for {e} edges, {n} vertices",
        )
    )

    if e > MAX_CHECK_EDGES:
        results.append(
            CheckResult("orientation-count", "skip", f"{e} edges exceeds the exhaustive cap")
        )
        return results

    orientations = enumerate_acyclic_orientations(g)
    count = len(orientations)
    codes = {o.bits for o in orientations}
    count_ok = len(codes) == count
    expected = ""
    if g.is_tree():
        count_ok = count_ok and count == 2 ** (n - 1)
        expected = f", expected 2^{n - 1}"
    elif e == n and all(g.degree(v) == 2 for v in g.vertices):
        count_ok = count_ok and count == 2**n - 2
        expected = f", expected 2^{n} - 2"
    results.append(
        CheckResult(
            "orientation-count",
            "pass" if count_ok else "fail",
            f"{count} acyclic orientations{expected}",
        )
    )

    if count > max_orientations:
        results.append(
            CheckResult("invariants", "skip", f"{count} orientations exceeds the cap")
        )
        return results

    bad_range = 0
    for o in orientations:
        for cycle, value in zip(basis.fundamental_cycles, o.circulation_signature(basis)):
            if abs(value) >= len(cycle) or (value - len(cycle)) % 2 != 0:
                bad_range += 1
    results.append(
        CheckResult(
            "signature-range",
            "pass" if bad_range == 0 else "fail",
            f"{count} orientations x {len(basis.fundamental_cycles)} cycles",
        )
    )

    bad_firing = 0
    bad_playback = 0
    for o in orientations:
        sig = o.circulation_signature(basis)
        for v in o.sinks():
            if o.fire_sink(v).circulation_signature(basis) != sig:
                bad_firing += 1
            seq = o.playback_sequence(v)
            state = o
            for u in seq:
                state = state.fire_sink(u)
            if sorted(seq) != sorted(g.vertices) or state != o:
                bad_playback += 1
    results.append(
        CheckResult(
            "firing-preserves-signature",
            "pass" if bad_firing == 0 else "fail",
            f"all sink firings on {count} orientations",
        )
    )
    results.append(
        CheckResult(
            "playback-restores",
            "pass" if bad_playback == 0 else "fail",
            f"all (orientation, sink) pairs on {count} orientations",
        )
    )

    bad_roundtrip = 0
    bad_rotation = 0
    for o in orientations:
        w = word_from_orientation(o)
        if orientation_from_word(w, g) != o:
            bad_roundtrip += 1
        if orientation_from_word(rotate(w), g) != o.fire_source(w[0]):
            bad_rotation += 1
    results.append(
        CheckResult(
            "word-orientation-roundtrip",
            "pass" if bad_roundtrip == 0 else "fail",
            f"{count} orientations",
        )
    )
    results.append(
        CheckResult(
            "rotation-matches-source-firing",
            "pass" if bad_rotation == 0 else "fail",
            f"{count} canonical words",
        )
    )

    signature_partition = {
        frozenset(o.bits for o in members)
        for members in reachability_classes(g).values()
    }
    bfs_partition = {
        frozenset(o.bits for o in members)
        for members in reachability_classes_bfs(g)
    }
    results.append(
        CheckResult(
            "classes-match-firing-oracle",
            "pass" if signature_partition == bfs_partition else "fail",
            f"{len(signature_partition)} classes",
        )
    )
    return results
