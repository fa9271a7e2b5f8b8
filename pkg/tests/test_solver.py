import itertools
import random

import pytest

from polyrubik import builders
from polyrubik.characterize import SIGMA, random_ambient
from polyrubik.permgroup import NotMember, Permutation, invert_word
from polyrubik.rubik import coordinate_system, move_generators, rubik_construction, rubik_group, wreath_repr, wreath_to_perm
from polyrubik.solver import (
    BadColors,
    BadRank,
    NotCoFacial,
    RankOutOfRange,
    SimplexPuzzle,
    bring_to_common_facet,
    commutator_three_cycle,
    orientation_fix,
    scramble,
    solve_generic,
    solve_simplex,
    three_cycle,
)


@pytest.fixture(scope="module")
def s4():
    L = builders.simplex(4)
    S = rubik_construction(L)
    return L, S, SimplexPuzzle.of(S)


def _face(P, *pts):
    m = 0
    for p in pts:
        m |= 1 << p
    return P.face[m]


def _cofacial_after(P, S, word, faces):
    p = move_generators(S).evaluate(word)
    locs = [S.stickers[p.images[S.index[(f, f)]]].location for f in faces]
    union = 0
    for f in locs:
        union |= P.mask[f]
    return union != P.full


# -- scrambles ------------------------------------------------------------------------

def test_scramble_length_zero(tet):
    G = move_generators(rubik_construction(tet))
    rec = scramble(G, 0, 3)
    assert rec.word == [] and rec.perm.is_identity()


def test_scramble_deterministic(tet):
    G = move_generators(rubik_construction(tet))
    assert scramble(G, 25, 11) == scramble(G, 25, 11)
    assert scramble(G, 25, 11).word != scramble(G, 25, 12).word


def test_scramble_records_evaluate(cube):
    G = move_generators(rubik_construction(cube))
    for seed in range(100):
        rec = scramble(G, 15, seed)
        assert len(rec.word) == 15
        assert G.evaluate(rec.word) == rec.perm


def test_scramble_negative_length(tet):
    with pytest.raises(ValueError):
        scramble(move_generators(rubik_construction(tet)), -1, 0)


# -- generic solving ---------------------------------------------------------------

@pytest.mark.parametrize("name", ["tet", "cube"])
def test_generic_round_trip(name, request):
    L = request.getfixturevalue(name)
    S = rubik_construction(L)
    G = move_generators(S)
    B = rubik_group(S)
    for seed in range(50):
        rec = scramble(G, 30, seed)
        word = solve_generic(B, rec.perm)
        assert G.evaluate(word) == rec.perm
        assert (G.evaluate(invert_word(word)) * rec.perm).is_identity()


def test_generic_identity(tet):
    S = rubik_construction(tet)
    word = solve_generic(rubik_group(S), Permutation.identity(len(S)))
    assert move_generators(S).evaluate(word).is_identity()


def test_generic_not_member(tet):
    S = rubik_construction(tet)
    C = coordinate_system(tet)
    w = random_ambient(C, random.Random(0), SIGMA, "simplex")
    with pytest.raises(NotMember):
        solve_generic(rubik_group(S), wreath_to_perm(w, S))


# -- transport ---------------------------------------------------------------------

def test_vertices_already_share_a_facet(s4):
    L, S, P = s4
    for trip in itertools.combinations(L.faces_of_rank(0), 3):
        assert bring_to_common_facet(S, trip) == []


@pytest.mark.parametrize("rank", [1, 2])
def test_bring_all_triples(s4, rank):
    L, S, P = s4
    for trip in itertools.combinations(L.faces_of_rank(rank), 3):
        word = bring_to_common_facet(S, trip)
        assert _cofacial_after(P, S, word, trip)


def test_bring_case_two(s4):
    L, S, P = s4
    trip = [_face(P, 0, 1, 2), _face(P, 0, 1, 3), _face(P, 0, 1, 4)]
    word = bring_to_common_facet(S, trip)
    assert len(word) >= 3
    assert _cofacial_after(P, S, word, trip)


def test_bring_accepts_stickers(s4):
    L, S, P = s4
    trip = [S.stickers[S.index[(f, f)]] for f in L.faces_of_rank(1)[:3]]
    word = bring_to_common_facet(S, trip)
    assert _cofacial_after(P, S, word, [s.location for s in trip])


def test_bring_errors(s4):
    L, S, P = s4
    with pytest.raises(BadRank):
        bring_to_common_facet(S, L.faces_of_rank(3)[:3])
    with pytest.raises(BadRank):
        bring_to_common_facet(S, [L.faces_of_rank(0)[0], L.faces_of_rank(1)[0], L.faces_of_rank(1)[1]])
    e = L.faces_of_rank(1)[0]
    with pytest.raises(NotCoFacial):
        bring_to_common_facet(S, [e, e, L.faces_of_rank(1)[1]])


# -- commutators and orientations ---------------------------------------------------

def test_three_cycle_of_edges(s4):
    L, S, P = s4
    C = coordinate_system(L)
    H = _face(P, 0, 1, 2, 3)
    trip = [_face(P, 0, 1), _face(P, 1, 2), _face(P, 2, 3)]
    p = move_generators(S).evaluate(commutator_three_cycle(S, trip, H))
    w = wreath_repr(C, S, p)
    assert w.sigma[0].is_identity() and w.sigma[2].is_identity()
    pos = C.face_pos[1]
    expected = Permutation.from_cycles(w.sigma[1].degree, [[pos[f] for f in trip]])
    assert w.sigma[1] == expected


def test_three_cycle_errors(s4, tet):
    L, S, P = s4
    H = _face(P, 0, 1, 2, 3)
    e = _face(P, 0, 1)
    with pytest.raises(NotCoFacial):
        commutator_three_cycle(S, [e, e, _face(P, 1, 2)], H)
    with pytest.raises(NotCoFacial):
        commutator_three_cycle(S, [e, _face(P, 1, 2), _face(P, 3, 4)], H)
    with pytest.raises(RankOutOfRange):
        commutator_three_cycle(S, [_face(P, 0, 1, 2), _face(P, 0, 1, 3), _face(P, 0, 2, 3)], H)
    St = rubik_construction(tet)
    with pytest.raises(RankOutOfRange):
        commutator_three_cycle(St, tet.faces_of_rank(0)[:3], tet.faces_of_rank(2)[0])


def test_every_edge_three_cycle_is_reachable(s4):
    L, S, P = s4
    C = coordinate_system(L)
    G = move_generators(S)
    pos = C.face_pos[1]
    rng = random.Random(5)
    edges = L.faces_of_rank(1)
    for _ in range(10):
        trip = rng.sample(edges, 3)
        w = wreath_repr(C, S, G.evaluate(three_cycle(S, trip)))
        assert w.sigma[1] == Permutation.from_cycles(w.sigma[1].degree, [[pos[f] for f in trip]])
        assert w.sigma[0].is_identity() and w.sigma[2].is_identity()


def _expected_swap(S, P, pairs):
    img = list(range(len(S)))
    for F, (g1, g2) in pairs:
        a = (P.full & ~P.mask[g1]).bit_length() - 1
        b = (P.full & ~P.mask[g2]).bit_length() - 1
        for i, (loc, col) in enumerate(S.stickers):
            if loc != F:
                continue
            m = P.mask[col]
            ma, mb = m >> a & 1, m >> b & 1
            m2 = m & ~(1 << a) & ~(1 << b) | (ma << b) | (mb << a)
            img[i] = S.index[(F, P.face[m2])]
    return Permutation(img)


def test_orientation_double_swap(s4):
    L, S, P = s4
    F1, F2 = _face(P, 0, 1), _face(P, 2, 3)
    c1 = (_face(P, 0, 1, 2, 3), _face(P, 0, 1, 2, 4))
    c2 = (_face(P, 0, 1, 2, 3), _face(P, 1, 2, 3, 4))
    word = orientation_fix(S, F1, F2, c1, c2)
    G = move_generators(S)
    p = G.evaluate(word)
    assert p == _expected_swap(S, P, [(F1, c1), (F2, c2)])
    assert (G.evaluate(invert_word(word)) * p).is_identity()


def test_orientation_errors(s4):
    L, S, P = s4
    F1, F2 = _face(P, 0, 1), _face(P, 2, 3)
    good = (_face(P, 0, 1, 2, 3), _face(P, 0, 1, 2, 4))
    with pytest.raises(BadColors):
        orientation_fix(S, F1, F2, good, (good[0], good[0]))
    with pytest.raises(BadColors):
        orientation_fix(S, F1, F2, good, good)  # facets not above F2
    with pytest.raises(RankOutOfRange):
        orientation_fix(S, _face(P, 0), _face(P, 1), good, good)


def test_tetrahedron_colors_via_generic(tet):
    # at n = 3 color swaps come from the factorization in the base group
    S = rubik_construction(tet)
    C = coordinate_system(tet)
    B = rubik_group(S)
    w = random_ambient(C, random.Random(9), "satisfy", "simplex")
    target = wreath_to_perm(w, S)
    assert move_generators(S).evaluate(solve_generic(B, target)) == target


# -- inductive solving ---------------------------------------------------------------

def test_solve_simplex_tetrahedron(tet):
    S = rubik_construction(tet)
    G = move_generators(S)
    for seed in range(20):
        rec = scramble(G, 30, seed)
        assert G.evaluate(solve_simplex(S, rec.perm)) == rec.perm


@pytest.mark.slow
def test_solve_simplex_four(s4):
    L, S, P = s4
    G = move_generators(S)
    for seed in range(3):
        rec = scramble(G, 40, seed)
        word = solve_simplex(S, rec.perm.inverse())
        assert (G.evaluate(word) * rec.perm).is_identity()


def test_solve_simplex_gate(tet):
    S = rubik_construction(tet)
    C = coordinate_system(tet)
    w = random_ambient(C, random.Random(1), SIGMA, "simplex")
    with pytest.raises(NotMember):
        solve_simplex(S, wreath_to_perm(w, S))
