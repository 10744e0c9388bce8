"""End-to-end acceptance suite.

Each test covers one release criterion at its stated tolerance (all exact
except the 1e-9 representation checks) and prints a single summary line;
run with `pytest tests/test_acceptance.py -v -s` to see them.
"""

import math
import random
import time
from itertools import combinations, permutations

from coxfire.conjugacy import (
    are_conjugate,
    build_representation,
    conjugacy_classes,
    conjugacy_witness,
    coxeter_elements,
    enumerate_group,
    oracle_are_conjugate,
    replay_witness,
)
from coxfire.graph import cycle_graph, path_graph, star_graph, trunk_limb_decompose
from coxfire.orientation import (
    StateBudgetExceeded,
    enumerate_acyclic_orientations,
    reachability_classes,
    reachability_classes_bfs,
    reachable,
    reachable_bfs,
    redirect_limb_edges,
)
from coxfire.words import (
    commutation_normal_form,
    orientation_from_word,
    rotate,
    word_from_orientation,
)

from families import (
    all_connected_graphs_up_to,
    paw_graph,
    random_connected_graph,
    random_orientation,
    random_tree,
    random_trunk_limb_graph,
)


def _ok(number: int, slug: str, detail: str) -> None:
    print(f"ACCEPT {number:02d} {slug}: PASS ({detail})")


def _partitions_agree(g) -> tuple[int, int]:
    """(class count, orientation count) with signature and BFS partitions equal."""
    by_signature = {
        frozenset(o.bits for o in members)
        for members in reachability_classes(g).values()
    }
    by_search = {
        frozenset(o.bits for o in members) for members in reachability_classes_bfs(g)
    }
    assert by_signature == by_search
    return len(by_signature), sum(len(c) for c in by_search)


def test_01_paw_graph_twelve_elements_two_classes():
    started = time.perf_counter()
    g = paw_graph()
    elements = coxeter_elements(g)
    assert len(elements) == 12
    classes = conjugacy_classes(g)
    assert len(classes) == 2
    # sizes asserted only after the exhaustive firing search agrees
    bfs_sizes = sorted(len(c) for c in reachability_classes_bfs(g))
    assert sorted(len(v) for v in classes.values()) == bfs_sizes == [6, 6]
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    _ok(1, "paw-classes", f"12 elements, 2 classes of 6, {elapsed:.3f}s")


def test_02_tree_counts():
    started = time.perf_counter()
    rng = random.Random(2024)
    graphs = [path_graph(n) for n in range(2, 11)]
    graphs += [star_graph(n) for n in range(2, 11)]
    graphs += [random_tree(rng, rng.randrange(2, 11)) for _ in range(20)]
    for g in graphs:
        n = len(g.vertices)
        assert len(enumerate_acyclic_orientations(g)) == 2 ** (n - 1)
        assert len(reachability_classes(g)) == 1
        if n <= 6:
            assert len(reachability_classes_bfs(g)) == 1
    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    _ok(2, "tree-counts", f"{len(graphs)} trees, 2^(n-1) orientations, 1 class each, {elapsed:.2f}s")


def test_03_cycle_counts():
    started = time.perf_counter()
    for n in range(3, 13):
        g = cycle_graph(n)
        orientations = enumerate_acyclic_orientations(g)
        assert len(orientations) == 2**n - 2
        classes = reachability_classes(g)
        assert len(classes) == n - 1
        assert sorted(len(v) for v in classes.values()) == sorted(
            math.comb(n, k) for k in range(1, n)
        )
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    _ok(3, "cycle-counts", f"n=3..12, 2^n-2 orientations, n-1 binomial classes, {elapsed:.2f}s")


def test_04_circulation_criterion_matches_search_oracle():
    started = time.perf_counter()
    rng = random.Random(4)
    graphs = all_connected_graphs_up_to(5)
    exhaustive = len(graphs)
    graphs += [random_connected_graph(rng, 6) for _ in range(50)]
    pairs_checked = 0
    for g in graphs:
        n_classes, n_orientations = _partitions_agree(g)
        # drive the pairwise API directly on a sample as well
        orientations = enumerate_acyclic_orientations(g)
        for _ in range(min(10, len(orientations))):
            o1 = rng.choice(orientations)
            o2 = rng.choice(orientations)
            assert reachable(o1, o2) == reachable_bfs(o1, o2)
            pairs_checked += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 300.0
    _ok(
        4,
        "circulation-vs-search",
        f"{exhaustive} exhaustive graphs + 50 random 6-vertex, "
        f"partitions equal, {pairs_checked} sampled pairs, {elapsed:.2f}s",
    )


def test_05_playback_fires_each_vertex_once_and_restores():
    checked = 0
    for g in all_connected_graphs_up_to(5):
        for o in enumerate_acyclic_orientations(g):
            for v in o.sinks():
                sequence = o.playback_sequence(v)
                assert sequence[0] == v
                assert sorted(sequence) == sorted(g.vertices)
                state = o
                for u in sequence:
                    state = state.fire_sink(u)
                assert state == o
                checked += 1
    _ok(5, "playback", f"{checked} (orientation, sink) pairs restored exactly")


def test_06_limb_redirection_stays_in_class():
    rng = random.Random(6)
    for _ in range(100):
        g = random_trunk_limb_graph(rng, rng.randrange(5, 9))
        decomposition = trunk_limb_decompose(g)
        assert decomposition.limb_edges()
        o = random_orientation(rng, g)
        new_arcs = []
        for u, v in sorted(decomposition.limb_edges()):
            if rng.random() < 0.8:
                new_arcs.append((u, v) if rng.random() < 0.5 else (v, u))
        redirected = redirect_limb_edges(o, decomposition, new_arcs)
        assert redirected.circulation_signature() == o.circulation_signature()
        assert reachable_bfs(o, redirected)
    _ok(6, "limb-redirection", "100 random trunk+limb graphs, signature and class preserved")


def test_07_rotation_matches_source_firing():
    words_checked = 0
    for g in all_connected_graphs_up_to(5):
        for w in permutations(g.vertices):
            o = orientation_from_word(w, g)
            assert orientation_from_word(rotate(w), g) == o.fire_source(w[0])
            words_checked += 1
    _ok(7, "rotation-firing-square", f"{words_checked} Coxeter words across all graphs <= 5 vertices")


def test_08_decision_agrees_with_group_oracle():
    started = time.perf_counter()
    # symmetric-group models: every pair of Coxeter elements of a path is
    # conjugate, and the brute-force search must agree
    for n in range(2, 6):
        g = path_graph(n)
        rep = build_representation(g, "permutation")
        group = enumerate_group(rep)
        assert len(group) == math.factorial(n + 1)
        words = [e.word for e in coxeter_elements(g)]
        for w1, w2 in combinations(words, 2):
            assert are_conjugate(w1, w2, g)
            assert oracle_are_conjugate(w1, w2, rep, group=group)

    # the paw graph generates an infinite group, so the matrix closure
    # exhausts any budget; fall back to the exhaustive firing oracle
    g = paw_graph()
    words = [e.word for e in coxeter_elements(g)]
    assert len(words) == 12
    rep = build_representation(g, "matrix")
    fallback = False
    try:
        enumerate_group(rep, budget=4000)
    except StateBudgetExceeded:
        fallback = True
    pairs = list(combinations(words, 2))
    assert len(pairs) == 66
    for w1, w2 in pairs:
        expected = reachable_bfs(
            orientation_from_word(w1, g), orientation_from_word(w2, g)
        ) if fallback else oracle_are_conjugate(w1, w2, rep)
        assert are_conjugate(w1, w2, g) == expected
    elapsed = time.perf_counter() - started
    assert elapsed < 300.0
    mode = "firing-search fallback" if fallback else "matrix closure"
    _ok(8, "decision-vs-group-oracle", f"paths n=2..5 all-conjugate, paw 66 pairs via {mode}, {elapsed:.2f}s")


def test_09_witnesses_replay_exactly():
    rng = random.Random(9)
    produced = 0
    while produced < 200:
        g = random_connected_graph(rng, rng.randrange(2, 7))
        vertices = list(g.vertices)
        w1 = tuple(rng.sample(vertices, len(vertices)))
        w2 = tuple(rng.sample(vertices, len(vertices)))
        if not are_conjugate(w1, w2, g):
            continue
        witness = conjugacy_witness(w1, w2, g)
        assert replay_witness(w1, witness, g) == w2
        produced += 1
    _ok(9, "witness-replay", "200 random conjugate pairs replayed to the exact target word")


def test_10_commutation_normal_form_properties():
    rng = random.Random(10)
    for _ in range(1000):
        g = random_connected_graph(rng, rng.randrange(2, 7))
        w = [rng.choice(g.vertices) for _ in range(rng.randrange(0, 13))]
        nf = commutation_normal_form(w, g)
        assert commutation_normal_form(nf, g) == nf
        assert sorted(nf) == sorted(w)
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if x != y and not g.has_edge(x, y):
                swapped = w[:i] + [y, x] + w[i + 2 :]
                assert commutation_normal_form(swapped, g) == nf
    _ok(10, "normal-form", "1000 random words: idempotent, multiset-preserving, swap-invariant")
