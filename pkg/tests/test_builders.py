import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrubik import builders
from polyrubik.face_lattice import flags, is_isomorphic, is_polytope, validate_diamond


def test_triangle():
    P = builders.polygon(3)
    assert P.f_vector() == [3, 3]
    assert P.num_faces == 8


def test_digon_is_a_polytope():
    assert validate_diamond(builders.polygon(2)).ok
    assert is_polytope(builders.polygon(2))


@given(st.integers(min_value=2, max_value=12))
@settings(max_examples=15, deadline=None)
def test_polygon_flags(k):
    assert len(flags(builders.polygon(k))) == 2 * k


def test_simplex_counts():
    assert builders.simplex(3).f_vector() == [4, 6, 4]
    assert len(flags(builders.simplex(4))) == 120


@pytest.mark.parametrize("n", range(0, 6))
def test_simplex_counts_by_rank(n):
    L = builders.simplex(n)
    assert L.f_vector() == [builders.simplex_face_count(n, r) for r in range(n)]
    assert is_polytope(L)


def test_hypercube_counts():
    assert builders.hypercube(3).f_vector() == [8, 12, 6]
    assert builders.hypercube(4).f_vector() == [16, 32, 24, 8]


@pytest.mark.parametrize("n", range(1, 5))
def test_hypercube_counts_by_rank(n):
    L = builders.hypercube(n)
    assert L.f_vector() == [builders.hypercube_face_count(n, r) for r in range(n)]
    assert is_polytope(L)


def test_one_dimensional_builders_agree():
    seg = builders.simplex(1)
    assert is_isomorphic(builders.hypercube(1), seg)


@pytest.mark.parametrize("k", [2, 3, 5])
def test_hosotope_and_ditope_of_polygon(k):
    H = builders.hosotope(builders.polygon(k))
    assert H.f_vector() == [2, k, k]
    D = builders.ditope(builders.polygon(k))
    assert D.f_vector() == [k, k, 2]
    assert is_polytope(H) and is_polytope(D)


def test_bad_parameters():
    with pytest.raises(builders.BadParameter):
        builders.polygon(1)
    with pytest.raises(builders.BadParameter):
        builders.simplex(-1)
    with pytest.raises(builders.BadParameter):
        builders.hypercube(0)


def test_invalid_base():
    from polyrubik.face_lattice import from_hasse
    broken = from_hasse(1, {0: -1, 1: 0, 2: 1}, [(0, 1), (1, 2)])
    with pytest.raises(builders.InvalidBase):
        builders.hosotope(broken)
