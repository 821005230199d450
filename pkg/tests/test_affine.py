"""Affine Weyl group, translation words, and the quantum Bruhat graph."""
from __future__ import annotations

from itertools import product

import pytest

from siflag.affine import (
    adapted_sequence,
    affine_identity,
    affine_length,
    affine_simple,
    all_reduced_words,
    element_from_word,
    loop_translation_weight,
    minimal_loops,
    quantum_covers,
    s0_action,
    shortest_word,
    translation,
    translation_word,
    walk_quantum,
)
from siflag.rootdata import Coweight, Weight, build_root_system

A1 = build_root_system("A", 1)
A2 = build_root_system("A", 2)
C2 = build_root_system("C", 2)


def test_s0_action_examples():
    w = A1.fundamental_weight(1)
    assert s0_action(A1, 0, -w) == (-1, w)
    assert s0_action(A1, 0, w) == (1, -w)
    assert s0_action(A1, 5, Weight((0,))) == (5, Weight((0,)))


def test_group_law_and_inverse():
    for rs in (A1, A2, C2):
        letters = range(rs.rank + 1)
        for word in product(letters, repeat=4):
            x = element_from_word(rs, word)
            assert (x * x.inverse()).is_identity()
    # associativity spot check
    a = element_from_word(A2, (0, 1))
    b = element_from_word(A2, (2, 0))
    c = element_from_word(A2, (1, 2))
    assert (a * b) * c == a * (b * c)


def test_projection_is_homomorphism_exhaustive():
    for rs in (A1, A2, C2):
        bars = {i: (rs.theta_reflection() if i == 0 else rs.simple_reflection(i))
                for i in range(rs.rank + 1)}
        for length in range(9 if rs is A1 else 7):
            for word in product(range(rs.rank + 1), repeat=length):
                x = element_from_word(rs, word)
                finite = rs.identity
                for i in word:
                    finite = finite * bars[i]
                assert x.projection() == finite


def test_translation_words_a1():
    alpha_vee = Coweight((1,))
    assert translation_word(A1, -alpha_vee) == (1, 0)
    assert translation_word(A1, alpha_vee) == (0, 1)
    assert translation_word(A1, Coweight((0,))) == ()


def test_translation_word_multiplies_out():
    for rs in (A1, A2):
        betas = [Coweight(c) for c in product(range(-2, 3), repeat=rs.rank)]
        for beta in betas:
            word = translation_word(rs, beta)
            assert element_from_word(rs, word) == translation(rs, beta)
            assert len(word) == affine_length(translation(rs, beta))


def test_translations_commute_and_add():
    for rs in (A2, C2):
        b1 = Coweight((1, 0))
        b2 = Coweight((-1, 1))
        t1 = element_from_word(rs, translation_word(rs, b1))
        t2 = element_from_word(rs, translation_word(rs, b2))
        assert t1 * t2 == t2 * t1 == translation(rs, b1 + b2)


def test_length_formula_matches_bfs():
    for rs in (A1, A2, C2):
        seen = {affine_identity(rs): 0}
        frontier = [affine_identity(rs)]
        for depth in range(1, 7):
            nxt = []
            for x in frontier:
                for i in range(rs.rank + 1):
                    y = x * affine_simple(rs, i)
                    if y not in seen:
                        seen[y] = depth
                        nxt.append(y)
            frontier = nxt
        for x, dist in seen.items():
            assert affine_length(x) == dist


def test_shortest_word_is_reduced():
    x = element_from_word(A2, (0, 1, 2, 0, 1))
    word = shortest_word(x)
    assert element_from_word(A2, word) == x
    assert len(word) == affine_length(x)


def test_all_reduced_words():
    # finite part sanity: s1 s2 s1 = s2 s1 s2 in A2
    x = element_from_word(A2, (1, 2, 1))
    words = all_reduced_words(x)
    assert set(words) == {(1, 2, 1), (2, 1, 2)}
    for word in words:
        assert element_from_word(A2, word) == x
    assert all_reduced_words(affine_identity(A2)) == ((),)


def test_quantum_covers_examples():
    e = A1.identity
    s1 = A1.simple_reflection(1)
    assert [(c.letter, c.target) for c in quantum_covers(A1, e)] == [(1, s1)]
    assert [(c.letter, c.target) for c in quantum_covers(A1, s1)] == [(0, e)]

    w0 = A2.longest_element()
    covs = quantum_covers(A2, w0)
    assert [(c.letter, c.target) for c in covs] == [(0, A2.theta_reflection() * w0)]


def test_quantum_covers_classical_part_is_weak_order():
    for rs in (A2, C2):
        for w in rs.weyl_elements():
            for cov in quantum_covers(rs, w):
                if cov.letter != 0:
                    assert cov.target.length() == w.length() + 1
                    assert cov.target == rs.simple_reflection(cov.letter) * w


def test_adapted_sequence_examples():
    e = A1.identity
    s1 = A1.simple_reflection(1)
    assert adapted_sequence(A1, e, s1) == (1,)
    assert adapted_sequence(A1, e, e) == (0, 1)

    w0 = A2.longest_element()
    word = adapted_sequence(A2, A2.identity, w0)
    assert len(word) == 3
    assert all(i in (1, 2) for i in word)


def test_adapted_sequence_walks_correctly():
    for rs in (A2, C2):
        elems = rs.weyl_elements()
        for v in elems:
            for w in elems:
                word = adapted_sequence(rs, v, w)
                chain = walk_quantum(rs, word, v)
                assert chain[-1] == w
                if v == w:
                    assert len(word) >= 1


def test_adapted_sequence_exists_rank3():
    a3 = build_root_system("A", 3)
    elems = a3.weyl_elements()
    for v in elems[:6]:
        for w in elems:
            word = adapted_sequence(a3, v, w)
            assert walk_quantum(a3, word, v)[-1] == w


def test_loop_translation_weight_examples():
    e = A1.identity
    beta = loop_translation_weight(A1, (0, 1), e)
    assert beta == A1.theta_coroot

    twice = loop_translation_weight(A1, (0, 1, 0, 1), e)
    assert twice == Coweight((2,))

    with pytest.raises(ValueError):
        loop_translation_weight(A1, (1,), e)


def test_minimal_loops_a1():
    e = A1.identity
    s1 = A1.simple_reflection(1)
    assert minimal_loops(A1, e) == [(0, 1)]
    assert minimal_loops(A1, s1) == [(1, 0)]


def test_minimal_loops_walk_back():
    for rs in (A2, C2):
        for w in rs.weyl_elements():
            loops = minimal_loops(rs, w)
            assert loops
            for loop in loops:
                assert walk_quantum(rs, loop, w)[-1] == w
