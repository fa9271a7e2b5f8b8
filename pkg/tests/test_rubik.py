import random

import pytest

from conftest import bfs_closure
from polyrubik import builders
from polyrubik.face_lattice import is_isomorphic
from polyrubik.permgroup import Permutation
from polyrubik.rubik import (
    HypothesisViolated,
    IncoherentColors,
    NotRotation,
    canonical_character,
    coordinate_system,
    extend_move,
    extension_commutes,
    facets,
    move,
    move_generators,
    moves,
    rubik_construction,
    rubik_group,
    shares_at_most_one_ridge,
    wreath_identity,
    wreath_repr,
    wreath_to_perm,
)
from polyrubik.symmetry import cached_interval, facet_rotations, symmetry_data


def test_sticker_counts(tet, cube):
    assert len(rubik_construction(tet)) == 50
    assert len(rubik_construction(cube)) == 98
    D = builders.ditope(builders.polygon(3))
    S = rubik_construction(D)
    assert len(S) == 26
    # the two facet stickers never move; the other 24 sit on faces of the triangle
    assert sum(1 for s in S.stickers if D.rank[s.location] < D.dim - 1) == 24


def test_sticker_state_round_trip(tet):
    S = rubik_construction(tet)
    p = rubik_group(S).random_element(random.Random(1))
    assert S.perm_from_state(S.state(p)) == p


def test_identity_move(tet):
    S = rubik_construction(tet)
    H = facets(tet)[0]
    m = move(S, H, Permutation.identity(len(tet.proper)))
    assert m.perm.is_identity()


def test_facet_move_has_order_three(tet):
    S = rubik_construction(tet)
    H = facets(tet)[0]
    rot = facet_rotations(tet, H).perms[0]
    m = move(S, H, rot)
    assert not m.perm.is_identity()
    assert (m.perm ** 3).is_identity()


def test_reflection_is_not_a_move(tet):
    S = rubik_construction(tet)
    H = facets(tet)[0]
    refl = facet_rotations(tet, H, rotational=False).perms[0]
    with pytest.raises(NotRotation):
        move(S, H, refl)


def test_ditope_moves_touch_every_sticker():
    D = builders.ditope(builders.polygon(4))
    S = rubik_construction(D)
    for m in moves(S):
        located = {S.stickers[i].location for i in m.perm.support()}
        proper_p = [f for f in D.proper if D.rank[f] < D.dim - 1]
        assert set(proper_p) <= located


def test_simplex_group_order(tet):
    assert rubik_group(rubik_construction(tet)).order == 3732480


@pytest.mark.parametrize("k", [3, 4, 6])
def test_polygon_rotational_group_is_trivial(k):
    S = rubik_construction(builders.polygon(k))
    assert rubik_group(S).order == 1


def test_triangle_nonrotational_group_by_bfs():
    S = rubik_construction(builders.polygon(3))
    G = move_generators(S, rotational=False)
    assert len(bfs_closure(G.perms)) == 24
    assert rubik_group(S, rotational=False).order == 24


def _ridge_triples(L, rotational):
    for F in facets(L):
        for G in L.lower_covers[F]:
            low = cached_interval(L, L.bottom, G)
            data = symmetry_data(low)
            gens = data.rotation_gens if rotational else data.full_gens
            for phi in gens.perms:
                yield F, G, phi


def test_extension_commutes_simplex4(simplex4):
    S = rubik_construction(simplex4)
    triples = list(_ridge_triples(simplex4, True))
    assert len(triples) == 20
    assert all(extension_commutes(S, F, G, phi) for F, G, phi in triples)


def test_extension_commutes_cube_reflections(cube):
    S = rubik_construction(cube)
    triples = list(_ridge_triples(cube, False))
    assert len(triples) == 24
    assert all(extension_commutes(S, F, G, phi, rotational=False) for F, G, phi in triples)


def test_digon_breaks_extension_hypothesis():
    H = builders.hosotope(builders.polygon(2))
    assert not shares_at_most_one_ridge(H)
    S = rubik_construction(H)
    F = facets(H)[0]
    G = H.lower_covers[F][0]
    low = cached_interval(H, H.bottom, G)
    phi = Permutation.identity(len(low.proper))
    with pytest.raises(HypothesisViolated):
        extend_move(S, F, G, phi)


def test_coordinate_references():
    for n in (3, 4):
        C = coordinate_system(builders.simplex(n))
        for i in range(n - 1):
            assert is_isomorphic(C.A[i], builders.simplex(n - i - 1))
    C = coordinate_system(builders.hypercube(3))
    for i in range(2):
        assert is_isomorphic(C.A[i], builders.simplex(2 - i))
    P = builders.polygon(5)
    C = coordinate_system(P)
    assert is_isomorphic(C.A[0], builders.simplex(1))


def test_wreath_identity(tet):
    S = rubik_construction(tet)
    C = coordinate_system(tet)
    w = wreath_repr(C, S, Permutation.identity(len(S)))
    assert w.is_identity()
    assert w == wreath_identity(C)


def test_single_move_projections(tet):
    S = rubik_construction(tet)
    C = coordinate_system(tet)
    m = moves(S)[0]
    w = wreath_repr(C, S, m.perm)
    for i in (0, 1):
        cyc = w.sigma[i].cycles()
        assert sorted(len(c) for c in cyc if len(c) > 1) == [3]
    verts = {tet.faces_of_rank(0)[k] for c in w.sigma[0].cycles() for k in c if len(c) > 1}
    assert all(tet.leq(v, m.facet) for v in verts)


@pytest.mark.parametrize("name", ["tet", "cube"])
def test_wreath_repr_is_homomorphic(name, request):
    L = request.getfixturevalue(name)
    S = rubik_construction(L)
    C = coordinate_system(L, seed=5)
    B = rubik_group(S)
    rng = random.Random(0)
    for _ in range(100):
        p, q = B.random_element(rng), B.random_element(rng)
        wp, wq = wreath_repr(C, S, p), wreath_repr(C, S, q)
        assert wreath_repr(C, S, p * q) == wp * wq
        assert wreath_to_perm(wp, S) == p
        assert (wp * wp.inverse()).is_identity()


def test_incoherent_permutation_rejected(tet):
    S = rubik_construction(tet)
    C = coordinate_system(tet)
    # swap two stickers at different locations
    a = S.index[(tet.faces_of_rank(0)[0], tet.faces_of_rank(1)[0])]
    b = next(i for i, s in enumerate(S.stickers)
             if s.location == tet.faces_of_rank(0)[1] and tet.rank[s.color] == 1)
    with pytest.raises(IncoherentColors):
        wreath_repr(C, S, Permutation.from_cycles(len(S), [(a, b)]))


def test_character_trivial_on_moves(simplex4):
    S = rubik_construction(simplex4)
    C = coordinate_system(simplex4)
    G = move_generators(S)
    rng = random.Random(2)
    for _ in range(20):
        word = [(G.names[rng.randrange(len(G))], rng.random() < 0.5) for _ in range(10)]
        w = wreath_repr(C, S, G.evaluate(word))
        for i in range(1, 3):
            assert canonical_character(C, w, i)[1] == 0
    assert canonical_character(C, wreath_identity(C), 0)[1] == 0


def test_triangle_single_flip_has_nontrivial_character():
    P = builders.polygon(3)
    S = rubik_construction(P)
    C = coordinate_system(P)
    G = move_generators(S, rotational=False)
    w = wreath_repr(C, S, G.perms[0])
    assert canonical_character(C, w, 0, rotational=False)[1] == 0
    # flip the two colors at one vertex only
    ident = wreath_identity(C)
    flip = ident.tau[0][0].images[::-1]
    ident.tau[0][0] = Permutation(flip)
    assert canonical_character(C, ident, 0, rotational=False)[1] != 0
    assert not rubik_group(S, rotational=False).contains(wreath_to_perm(ident, S))
