import pytest

from polyrubik import builders
from polyrubik.characterize import simplex_vertex_action
from polyrubik.face_lattice import flags, from_hasse
from polyrubik.permgroup import GeneratorSet, build_bsgs, orbit
from polyrubik.symmetry import (
    apply,
    automorphism_group,
    base_flag_generators,
    face_map,
    facet_rotation_group,
    first_flag,
    is_automorphism,
    is_regular,
    rotation_subgroup,
    schlafli,
    split,
    stabilizer,
    symmetry_data,
)


def test_simplex_reflections_are_adjacent_transpositions():
    L = builders.simplex(4)
    rho = base_flag_generators(L, first_flag(L))
    # the first flag of the subset lattice is {0} < {0,1} < ...
    assert [simplex_vertex_action(L, r) for r in rho] == [
        (1, 0, 2, 3, 4), (0, 2, 1, 3, 4), (0, 1, 3, 2, 4), (0, 1, 2, 4, 3)]


def test_cube_first_reflection_flips_one_sign():
    Q = builders.hypercube(3)
    rho0 = base_flag_generators(Q, first_flag(Q))[0]
    vecs = builders.hypercube_vectors(3)
    fm = face_map(Q, rho0)
    idx = {v: k + 1 for k, v in enumerate(vecs)}
    flipped = [a for a in range(3)
               if all(fm[idx[v]] == idx[v[:a] + (-v[a],) + v[a + 1:]] for v in vecs)]
    assert len(flipped) == 1


@pytest.mark.parametrize("k", [3, 4, 7])
def test_polygon_dihedral(k):
    P = builders.polygon(k)
    assert automorphism_group(P).order == 2 * k
    assert rotation_subgroup(P).order == k


def test_group_orders():
    S4 = builders.simplex(4)
    assert automorphism_group(S4).order == 120
    assert rotation_subgroup(S4).order == 60
    P6 = builders.polygon(6)
    assert (automorphism_group(P6).order, rotation_subgroup(P6).order) == (12, 6)


def test_cube_rotations_satisfy_sign_rule():
    Q = builders.hypercube(3)
    B = rotation_subgroup(Q)
    assert B.order == 24
    vecs = builders.hypercube_vectors(3)
    idx = {v: k + 1 for k, v in enumerate(vecs)}
    axes = [tuple(1 if i == j else 0 for i in range(3)) for j in range(3)]
    for g in B.elements():
        fm = face_map(Q, g)
        images = [vecs[fm[idx[a]] - 1] for a in axes]
        pi = [next(i for i in range(3) if v[i] != 0) for v in images]
        lam = [images[j][pi[j]] for j in range(3)]
        inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if pi[a] > pi[b])
        assert lam[0] * lam[1] * lam[2] == (-1) ** inversions


def test_every_element_is_an_automorphism(cube):
    assert all(is_automorphism(cube, g) for g in automorphism_group(cube).elements())


def test_rho_group_is_flag_transitive(tet):
    fl = flags(tet)
    pos = {f: i for i, f in enumerate(fl)}
    data = symmetry_data(tet)
    acts = []
    from polyrubik.permgroup import Permutation
    for r in data.rho:
        fm = face_map(tet, r)
        acts.append(Permutation(pos[tuple(fm[x] for x in f)] for f in fl))
    G = GeneratorSet(len(fl), ["a", "b", "c"], acts)
    assert orbit(G, 0) == set(range(len(fl)))


def test_vertex_orbit(tet):
    G = symmetry_data(tet).full_gens
    v = tet.proper_index[tet.faces_of_rank(0)[0]]
    assert {tet.proper[x] for x in orbit(G, v)} == set(tet.faces_of_rank(0))


@pytest.mark.parametrize("L", [builders.simplex(3), builders.hypercube(3), builders.polygon(5),
                               builders.simplex(1), builders.hosotope(builders.polygon(4)),
                               builders.ditope(builders.simplex(3))])
def test_regular(L):
    assert is_regular(L, cross_check=True)


def test_square_regular_prism_not():
    ranks = {0: -1, 1: 0, 2: 0, 3: 0, 4: 0, 5: 1, 6: 1, 7: 1, 8: 1, 9: 2}
    covers = [(0, 1), (0, 2), (0, 3), (0, 4),
              (1, 5), (4, 5), (4, 6), (2, 6), (2, 7), (3, 7), (3, 8), (1, 8),
              (5, 9), (6, 9), (7, 9), (8, 9)]
    assert is_regular(from_hasse(2, ranks, covers))
    assert not is_regular(_triangular_prism(), cross_check=True)


def _triangular_prism():
    # vertices a0 a1 a2 b0 b1 b2; edges ai-a(i+1), bi-b(i+1), ai-bi
    verts = list(range(1, 7))
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    faces = [(0, 1, 2), (3, 4, 5), (0, 1, 6, 7), (1, 2, 7, 8), (2, 0, 8, 6)]
    ranks = {0: -1}
    covers = []
    for v in verts:
        ranks[v] = 0
        covers.append((0, v))
    for i, (a, b) in enumerate(edges):
        e = 7 + i
        ranks[e] = 1
        covers += [(1 + a, e), (1 + b, e)]
    for j, fe in enumerate(faces):
        f = 16 + j
        ranks[f] = 2
        covers += [(7 + i, f) for i in fe]
    ranks[21] = 3
    covers += [(16 + j, 21) for j in range(5)]
    return from_hasse(3, ranks, covers)


def test_schlafli():
    assert schlafli(builders.hypercube(3)) == [4, 3]
    assert schlafli(builders.simplex(4)) == [3, 3, 3]
    assert schlafli(builders.hosotope(builders.polygon(5))) == [2, 5]


def test_stabilizers(tet, cube):
    F = tet.faces_of_rank(2)[0]
    B = stabilizer(tet, F)
    assert B.order == 6
    lows = {split(tet, F, g)[1] for g in B.elements()}
    assert len(lows) == 6                      # restriction to the facet is injective
    ridge = cube.faces_of_rank(1)[0]
    assert stabilizer(cube, ridge).order == 4
    assert stabilizer(tet, tet.faces_of_rank(0)[0]).order == 6


def test_facet_rotation_groups(simplex4, cube):
    assert facet_rotation_group(simplex4, simplex4.faces_of_rank(3)[0]).order == 12
    assert facet_rotation_group(cube, cube.faces_of_rank(2)[0]).order == 4
    P = builders.polygon(5)
    D = builders.ditope(P)
    H = D.faces_of_rank(2)[0]
    assert facet_rotation_group(D, H).order == rotation_subgroup(P).order
    g = facet_rotation_group(D, H).generators.perms[0]
    assert apply(D, g, H) == H
