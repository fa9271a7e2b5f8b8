import json

import pytest

from polyrubik import builders
from polyrubik.face_lattice import (
    Cycle,
    FaceLattice,
    MultipleExtrema,
    NotIncident,
    RankGap,
    dual,
    flags,
    from_hasse,
    interval,
    is_isomorphic,
    is_polytope,
    validate_diamond,
    validate_prepolytope,
)


def segment():
    return from_hasse(1, {0: -1, 1: 0, 2: 0, 3: 1}, [(0, 1), (0, 2), (1, 3), (2, 3)])


def triangle_data():
    ranks = {0: -1, 1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 6: 1, 7: 2}
    covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (3, 6), (1, 6),
              (4, 7), (5, 7), (6, 7)]
    return ranks, covers


def test_segment_is_a_polytope():
    L = segment()
    assert L.dim == 1
    assert is_polytope(L)
    assert is_isomorphic(L, builders.simplex(1))


def test_triangle_has_six_flags():
    ranks, covers = triangle_data()
    L = from_hasse(2, ranks, covers)
    assert is_polytope(L)
    assert len(flags(L)) == 6


def test_rank_gap():
    with pytest.raises(RankGap):
        from_hasse(1, {0: -1, 1: 0, 2: 1}, [(0, 2), (0, 1), (1, 2)])


def test_cycle_detected():
    with pytest.raises(Cycle):
        from_hasse(1, {0: -1, 1: 0, 2: 0, 3: 1}, [(0, 1), (1, 2), (2, 1), (2, 3)])


def test_multiple_extrema():
    with pytest.raises(MultipleExtrema):
        from_hasse(1, {0: -1, 1: -1, 2: 0, 3: 1}, [(0, 2), (1, 2), (2, 3)])


def test_validate_simplex_ok(tet):
    assert validate_prepolytope(tet).ok
    assert validate_diamond(tet).ok


def test_detached_edge_breaks_flag_length(tet):
    # the edge keeps its vertices but loses its facets, so a maximal chain stops at rank 1
    edge = tet.faces_of_rank(1)[0]
    covers = [(a, b) for a, b in tet.covers if a != edge]
    L = FaceLattice(3, tet.rank, covers)
    rep = validate_prepolytope(L)
    assert ("flag-length", edge) in rep.violations
    assert ("extrema", edge) in rep.violations


def test_skipping_cover_is_a_flag_length_violation():
    L = FaceLattice(1, [-1, 0, 1], [(0, 1), (1, 2), (0, 2)])
    assert ("flag-length", (0, 2)) in validate_prepolytope(L).violations


def test_deleted_edge_without_induced_order_breaks_diamond(tet):
    edge = tet.faces_of_rank(1)[0]
    keep = [f for f in range(tet.num_faces) if f != edge]
    renum = {f: i for i, f in enumerate(keep)}
    covers = [(renum[a], renum[b]) for a, b in tet.covers if edge not in (a, b)]
    L = from_hasse(3, {renum[f]: tet.rank[f] for f in keep}, covers)
    assert not validate_diamond(L).ok


def test_two_triangles_glued_at_extrema_disconnected():
    ranks, covers = triangle_data()
    # second triangle: faces 8..13 hang between the same bottom and top
    ranks2 = dict(ranks)
    for f in range(8, 14):
        ranks2[f] = 0 if f < 11 else 1
    covers2 = list(covers) + [(0, 8), (0, 9), (0, 10), (8, 11), (9, 11), (9, 12),
                              (10, 12), (10, 13), (8, 13), (11, 7), (12, 7), (13, 7)]
    L = from_hasse(2, ranks2, covers2)
    rep = validate_prepolytope(L)
    assert ("connectivity", (0, 7)) in rep.violations


def test_diamond_ok_on_cube_and_digon(cube):
    assert validate_diamond(cube).ok
    assert validate_diamond(builders.polygon(2)).ok


def test_parallel_edge_breaks_diamond():
    ranks, covers = triangle_data()
    ranks = dict(ranks)
    ranks[8] = 1
    covers = covers + [(1, 8), (2, 8), (8, 7)]
    L = from_hasse(2, ranks, covers)
    rep = validate_diamond(L)
    assert not rep.ok
    assert ("diamond", (1, 7)) in rep.violations or ("diamond", (2, 7)) in rep.violations


def test_interval_of_simplex_facet(tet):
    F = tet.faces_of_rank(2)[0]
    assert is_isomorphic(interval(tet, tet.bottom, F), builders.simplex(2))


def test_cube_vertex_figure_is_triangle(cube):
    v = cube.faces_of_rank(0)[0]
    assert is_isomorphic(interval(cube, v, cube.top), builders.simplex(2))


def test_trivial_interval(tet):
    f = tet.faces_of_rank(1)[2]
    I = interval(tet, f, f)
    assert I.dim == -1
    assert I.num_faces == 1
    assert flags(I) == [(0,)]


def test_interval_requires_incidence(tet):
    a, b = tet.faces_of_rank(0)[:2]
    with pytest.raises(NotIncident):
        interval(tet, a, b)


def test_dual_counts(cube):
    D = dual(cube)
    assert D.f_vector() == [6, 12, 8]
    assert is_polytope(D)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_self_dual(n):
    assert is_isomorphic(dual(builders.simplex(n)), builders.simplex(n))


def test_dual_exchanges_hosotope_and_ditope():
    P = builders.polygon(4)
    assert is_isomorphic(dual(builders.hosotope(P)), builders.ditope(dual(P)))


@pytest.mark.parametrize("L, count", [
    (builders.polygon(3), 6), (builders.polygon(7), 14),
    (builders.simplex(3), 24), (builders.hypercube(3), 48),
])
def test_flag_counts(L, count):
    assert len(flags(L)) == count


def test_json_round_trip_is_exact(cube):
    text = cube.to_json()
    back = FaceLattice.from_json(text)
    assert back.to_json() == text
    assert json.loads(text)["faces"][5]["id"] == 5
