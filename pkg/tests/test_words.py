import random
from itertools import permutations

import pytest

from coxfire.graph import CoxeterGraph, DisconnectedGraphError, complete_graph, parse_graph
from coxfire.orientation import enumerate_acyclic_orientations
from coxfire.words import (
    commutation_equivalent,
    commutation_normal_form,
    has_intervening_neighbours,
    is_coxeter_word,
    orientation_from_word,
    parse_word,
    power,
    process_word,
    require_coxeter_word,
    rotate,
    word_from_orientation,
)

from families import all_connected_graphs_up_to, paw_graph, random_connected_graph, triangle


class TestParsing:
    def test_parse_word(self):
        g = paw_graph()
        assert parse_word("s0 s1  s2 s3", g) == ("s0", "s1", "s2", "s3")

    def test_unknown_generator(self):
        with pytest.raises(ValueError, match="unknown generator"):
            parse_word("s0 sX", paw_graph())

    def test_coxeter_word_validation(self):
        g = paw_graph()
        assert is_coxeter_word(("s3", "s1", "s0", "s2"), g)
        assert not is_coxeter_word(("s0", "s1"), g)
        with pytest.raises(ValueError, match="repeats"):
            require_coxeter_word(("s0", "s0", "s1", "s2"), g)
        with pytest.raises(ValueError, match="missing"):
            require_coxeter_word(("s0", "s1", "s2"), g)


class TestOrientationFromWord:
    def test_paw_word(self):
        g = paw_graph()
        o = orientation_from_word(("s0", "s1", "s2", "s3"), g)
        assert o.arcs() == (("s0", "s1"), ("s1", "s2"), ("s1", "s3"), ("s2", "s3"))

    def test_triangle_suffixes(self):
        g = triangle()
        o = orientation_from_word(("b", "c", "a"), g)
        assert set(o.arcs()) == {("b", "a"), ("b", "c"), ("c", "a")}
        o = orientation_from_word(("a", "b", "c", "a"), g)
        assert set(o.arcs()) == {("a", "b"), ("a", "c"), ("b", "c")}

    def test_partial_word_orients_spanned_subgraph(self):
        g = paw_graph()
        o = orientation_from_word(("s2", "s1"), g)
        assert o.graph.vertices == ("s1", "s2")
        assert o.arcs() == (("s2", "s1"),)

    def test_total_on_coxeter_words(self):
        g = paw_graph()
        for w in permutations(g.vertices):
            o = orientation_from_word(w, g)
            assert o.graph == g


class TestWordFromOrientation:
    def test_paw_canonical_word(self):
        g = paw_graph()
        o = orientation_from_word(("s0", "s1", "s2", "s3"), g)
        assert word_from_orientation(o) == ("s0", "s1", "s2", "s3")

    def test_triangle(self):
        g = triangle()
        o = orientation_from_word(("a", "b", "c"), g)
        assert word_from_orientation(o) == ("a", "b", "c")

    def test_is_linear_extension(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            for o in enumerate_acyclic_orientations(g)[:16]:
                w = word_from_orientation(o)
                position = {x: i for i, x in enumerate(w)}
                for tail, head in o.arcs():
                    assert position[tail] < position[head]

    def test_roundtrip_exhaustive(self):
        for g in all_connected_graphs_up_to(5):
            for o in enumerate_acyclic_orientations(g):
                assert orientation_from_word(word_from_orientation(o), g) == o

    def test_roundtrip_random_six_vertices(self):
        rng = random.Random(53)
        for _ in range(25):
            g = random_connected_graph(rng, 6)
            for o in enumerate_acyclic_orientations(g):
                assert orientation_from_word(word_from_orientation(o), g) == o


class TestRotation:
    def test_basic(self):
        assert rotate(("s0", "s1", "s2", "s3")) == ("s1", "s2", "s3", "s0")

    def test_full_cycle_is_identity(self):
        w = ("s0", "s1", "s2", "s3")
        out = w
        for _ in range(len(w)):
            out = rotate(out)
        assert out == w

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            rotate(())

    def test_matches_source_firing_exhaustive(self):
        for g in all_connected_graphs_up_to(4):
            for w in permutations(g.vertices):
                o = orientation_from_word(w, g)
                assert orientation_from_word(rotate(w), g) == o.fire_source(w[0])


class TestNormalForm:
    def test_paw_commuting_tail(self):
        g = paw_graph()
        # s0 commutes with s2 and s3
        nf1 = commutation_normal_form(("s1", "s2", "s0", "s3"), g)
        nf2 = commutation_normal_form(("s1", "s2", "s3", "s0"), g)
        assert nf1 == nf2

    def test_edgeless_graph_sorts(self):
        g = CoxeterGraph(["c", "a", "b"])
        # canonical vertex order is first-mention order, not name order
        assert commutation_normal_form(("b", "a", "c", "a"), g) == ("c", "a", "a", "b")

    def test_complete_graph_fixed(self):
        g = complete_graph(4)
        w = ("s3", "s1", "s2", "s0")
        assert commutation_normal_form(w, g) == w

    def test_idempotent_and_multiset_preserving(self):
        rng = random.Random(11)
        for _ in range(100):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            w = tuple(rng.choice(g.vertices) for _ in range(rng.randrange(0, 12)))
            nf = commutation_normal_form(w, g)
            assert sorted(nf) == sorted(w)
            assert commutation_normal_form(nf, g) == nf

    def test_invariant_under_legal_swaps(self):
        rng = random.Random(13)
        for _ in range(100):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            w = [rng.choice(g.vertices) for _ in range(rng.randrange(2, 12))]
            nf = commutation_normal_form(w, g)
            for i in range(len(w) - 1):
                x, y = w[i], w[i + 1]
                if x != y and not g.has_edge(x, y):
                    swapped = w[:i] + [y, x] + w[i + 2 :]
                    assert commutation_normal_form(swapped, g) == nf


class TestEquivalence:
    def test_paw_examples(self):
        g = paw_graph()
        assert commutation_equivalent(("s1", "s2", "s3", "s0"), ("s1", "s2", "s0", "s3"), g)
        assert not commutation_equivalent(("s0", "s1"), ("s1", "s0"), g)
        w = ("s2", "s0", "s3", "s1")
        assert commutation_equivalent(w, w, g)

    def test_matches_orientation_equality_for_coxeter_words(self):
        for g in all_connected_graphs_up_to(4):
            words = list(permutations(g.vertices))
            for w1 in words:
                o1 = orientation_from_word(w1, g)
                for w2 in words:
                    same_orientation = o1 == orientation_from_word(w2, g)
                    assert commutation_equivalent(w1, w2, g) == same_orientation

    def test_matches_orientation_equality_random_six_vertices(self):
        rng = random.Random(59)
        for _ in range(20):
            g = random_connected_graph(rng, 6)
            vertices = list(g.vertices)
            for _ in range(30):
                w1 = tuple(rng.sample(vertices, 6))
                w2 = tuple(rng.sample(vertices, 6))
                same_orientation = orientation_from_word(w1, g) == orientation_from_word(w2, g)
                assert commutation_equivalent(w1, w2, g) == same_orientation


class TestInterveningNeighbours:
    def test_triangle_cases(self):
        g = triangle()
        assert has_intervening_neighbours(("a", "b", "c", "a", "b", "c"), g)
        assert not has_intervening_neighbours(("a", "b", "a"), g)

    def test_coxeter_words_vacuous(self):
        g = paw_graph()
        for w in permutations(g.vertices):
            assert has_intervening_neighbours(w, g)

    def test_preserved_by_commutations(self):
        rng = random.Random(17)
        for _ in range(50):
            g = random_connected_graph(rng, rng.randrange(2, 6))
            base = list(g.vertices)
            rng.shuffle(base)
            w = list(power(base, rng.randrange(1, 4)))
            assert has_intervening_neighbours(w, g)
            for i in range(len(w) - 1):
                x, y = w[i], w[i + 1]
                if x != y and not g.has_edge(x, y):
                    swapped = w[:i] + [y, x] + w[i + 2 :]
                    assert has_intervening_neighbours(swapped, g)


class TestProcessWord:
    def test_triangle_single_reappearance(self):
        g = triangle()
        initial, plays = process_word(("a", "b", "c", "a"), g)
        assert set(initial.arcs()) == {("b", "a"), ("b", "c"), ("c", "a")}
        assert plays == ("a",)
        final = initial
        for v in plays:
            final = final.fire_sink(v)
        assert final == orientation_from_word(("a", "b", "c", "a"), g)

    def test_triangle_square_word(self):
        g = triangle()
        w = ("a", "b", "c", "a", "b", "c")
        initial, plays = process_word(w, g)
        assert initial == orientation_from_word(("a", "b", "c"), g)
        assert plays == ("c", "b", "a")
        state = initial
        for v in plays:
            state = state.fire_sink(v)
        assert state == initial  # one full sweep restores the start
        assert state == orientation_from_word(w, g)

    def test_coxeter_word_has_no_plays(self):
        g = paw_graph()
        w = ("s2", "s0", "s3", "s1")
        initial, plays = process_word(w, g)
        assert plays == ()
        assert initial == orientation_from_word(w, g)

    def test_replay_reaches_word_orientation(self):
        rng = random.Random(19)
        for _ in range(30):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            base = list(g.vertices)
            rng.shuffle(base)
            k = rng.randrange(1, 4)
            w = power(base, k)
            initial, plays = process_word(w, g)
            assert len(plays) == (k - 1) * len(base)
            for v in g.vertices:
                assert plays.count(v) == k - 1
            state = initial
            for i, v in enumerate(plays, start=1):
                state = state.fire_sink(v)
                if i % len(base) == 0:
                    assert state == initial
            assert state == orientation_from_word(w, g)

    def test_preconditions(self):
        g = triangle()
        with pytest.raises(ValueError, match="intervening"):
            process_word(("a", "b", "a", "c"), g)
        with pytest.raises(ValueError, match="must occur"):
            process_word(("a", "b"), g)
        with pytest.raises(DisconnectedGraphError):
            process_word(("a", "b"), parse_graph("a\nb"))


class TestPower:
    def test_square_of_paw_word(self):
        g = paw_graph()
        w = power(("s0", "s1", "s2", "s3"), 2)
        assert len(w) == 8
        assert has_intervening_neighbours(w, g)

    def test_identity_power(self):
        assert power(("a", "b"), 1) == ("a", "b")

    def test_alternating_word(self):
        g = parse_graph("a b 3")
        w = power(("a", "b"), 3)
        assert w == ("a", "b", "a", "b", "a", "b")
        assert has_intervening_neighbours(w, g)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            power(("a",), 0)

    def test_powers_keep_intervening_property(self):
        rng = random.Random(23)
        for _ in range(30):
            g = random_connected_graph(rng, rng.randrange(2, 7))
            base = list(g.vertices)
            rng.shuffle(base)
            assert has_intervening_neighbours(power(base, rng.randrange(1, 5)), g)


class TestBijection:
    def test_commutation_classes_biject_with_orientations(self):
        for g in all_connected_graphs_up_to(4):
            orientations = set(enumerate_acyclic_orientations(g))
            seen = {}
            for w in permutations(g.vertices):
                o = orientation_from_word(w, g)
                assert o in orientations
                seen.setdefault(o, set()).add(commutation_normal_form(w, g))
            # onto, and one normal form per orientation
            assert set(seen) == orientations
            assert all(len(forms) == 1 for forms in seen.values())
