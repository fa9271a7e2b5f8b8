import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bfs_closure
from polyrubik.permgroup import (
    DomainMismatch,
    GeneratorSet,
    NotMember,
    Permutation,
    build_bsgs,
    commutator,
    compose,
    format_word,
    inverse,
    invert_word,
    orbit,
    parse_word,
    sign,
)


def perms(degree):
    return st.permutations(list(range(degree))).map(Permutation)


def test_signs():
    assert sign(Permutation.from_cycles(4, [(0, 1)])) == -1
    assert sign(Permutation.from_cycles(4, [(0, 1, 2)])) == 1


def test_compose_is_right_to_left():
    a = Permutation.from_cycles(3, [(0, 1)])
    b = Permutation.from_cycles(3, [(1, 2)])
    # b first: 1 -> 2, then a fixes 2
    assert compose(a, b)(1) == 2
    assert compose(a, b) == a * b


def test_commuting_commutator():
    a = Permutation.from_cycles(5, [(0, 1)])
    b = Permutation.from_cycles(5, [(2, 3, 4)])
    assert commutator(a, b).is_identity()


@given(perms(7), perms(7))
def test_inverse_and_sign_are_homomorphic(a, b):
    assert (a * inverse(a)).is_identity()
    assert sign(a * b) == sign(a) * sign(b)
    assert inverse(a * b) == inverse(b) * inverse(a)


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        Permutation.identity(3) * Permutation.identity(4)


def test_symmetric_group_order():
    G = GeneratorSet(5, ["t", "c"], [Permutation.from_cycles(5, [(0, 1)]),
                                      Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])])
    assert build_bsgs(G).order == 120


@given(st.lists(perms(6), min_size=1, max_size=3), st.integers(0, 50))
@settings(max_examples=40, deadline=None)
def test_order_matches_bfs_closure(gens, seed):
    G = GeneratorSet(6, [f"g{i}" for i in range(len(gens))], gens)
    B = build_bsgs(G, seed)
    closure = bfs_closure(gens)
    assert B.order == len(closure)
    for img in list(closure)[:20]:
        assert B.contains(Permutation(img))


@given(st.lists(perms(6), min_size=1, max_size=3), perms(6))
@settings(max_examples=40, deadline=None)
def test_membership_matches_bfs_closure(gens, p):
    G = GeneratorSet(6, [f"g{i}" for i in range(len(gens))], gens)
    B = build_bsgs(G)
    assert B.contains(p) == (p.images in bfs_closure(gens))


@given(st.lists(perms(7), min_size=1, max_size=3), st.integers(0, 1000))
@settings(max_examples=40, deadline=None)
def test_factor_evaluates_to_target(gens, seed):
    G = GeneratorSet(7, [f"g{i}" for i in range(len(gens))], gens)
    B = build_bsgs(G)
    p = B.random_element(random.Random(seed))
    assert B.contains(p)
    assert G.evaluate(B.factor(p)) == p


def test_factor_identity_and_generator():
    G = GeneratorSet(4, ["a", "b"], [Permutation.from_cycles(4, [(0, 1, 2)]),
                                      Permutation.from_cycles(4, [(1, 2, 3)])])
    B = build_bsgs(G)
    assert B.factor(G.identity()) == []
    assert G.evaluate(B.factor(G["a"])) == G["a"]


def test_not_member():
    G = GeneratorSet(4, ["a"], [Permutation.from_cycles(4, [(0, 1)])])
    B = build_bsgs(G)
    with pytest.raises(NotMember):
        B.factor(Permutation.from_cycles(4, [(2, 3)]))


def test_orbit():
    G = GeneratorSet(6, ["a"], [Permutation.from_cycles(6, [(0, 1, 2)])])
    assert orbit(G, 1) == {0, 1, 2}
    assert orbit(G, 4) == {4}


def test_word_file_round_trip():
    word = [("F3:r0r1", False), ("F5:r1r2", True)]
    assert parse_word(format_word(word)) == word
    assert format_word(word) == "F3:r0r1\nF5:r1r2'\n"
    G = GeneratorSet(4, ["F3:r0r1", "F5:r1r2"], [Permutation.from_cycles(4, [(0, 1, 2)]),
                                                  Permutation.from_cycles(4, [(1, 2, 3)])])
    assert (G.evaluate(word) * G.evaluate(invert_word(word))).is_identity()


def test_word_evaluates_right_to_left():
    G = GeneratorSet(3, ["a", "b"], [Permutation.from_cycles(3, [(0, 1)]),
                                      Permutation.from_cycles(3, [(1, 2)])])
    assert G.evaluate([("a", False), ("b", False)]) == G["a"] * G["b"]


def test_random_elements_are_members():
    G = GeneratorSet(8, ["a", "b"], [Permutation.from_cycles(8, [(0, 1, 2, 3)]),
                                      Permutation.from_cycles(8, [(3, 4, 5, 6, 7)])])
    B = build_bsgs(G)
    rng = random.Random(3)
    assert all(B.contains(B.random_element(rng)) for _ in range(50))
