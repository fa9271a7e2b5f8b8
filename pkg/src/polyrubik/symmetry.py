"""Automorphism groups of regular polytopes.

An automorphism is stored as a :class:`Permutation` of the positions in
``L.proper``; the bottom and top faces are implicitly fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .face_lattice import FaceLattice, adjacent_flag, flags, interval, transport
from .permgroup import BSGS, GeneratorSet, Permutation, build_bsgs


class NotRegular(ValueError):
    pass


# -- conversions ----------------------------------------------------------------

def aut_from_face_map(L: FaceLattice, face_map) -> Permutation:
    idx = L.proper_index
    return Permutation(idx[face_map[f]] for f in L.proper)


def face_map(L: FaceLattice, aut: Permutation) -> tuple:
    """Full face map (indexed by face id) of an automorphism."""
    out = list(range(L.num_faces))
    proper = L.proper
    for k, f in enumerate(proper):
        out[f] = proper[aut.images[k]]
    return tuple(out)


def apply(L: FaceLattice, aut: Permutation, face: int) -> int:
    if face == L.bottom or face == L.top:
        return face
    return L.proper[aut.images[L.proper_index[face]]]


def is_automorphism(L: FaceLattice, aut: Permutation) -> bool:
    fm = face_map(L, aut)
    if any(L.rank[fm[f]] != L.rank[f] for f in range(L.num_faces)):
        return False
    return all(fm[hi] in L.upper_covers[fm[lo]] for lo, hi in L.covers)


def first_flag(L: FaceLattice, start=None) -> tuple:
    """The lexicographically least flag (through ``start`` when given)."""
    if start is None:
        chain = [L.bottom]
        while chain[-1] != L.top:
            chain.append(L.upper_covers[chain[-1]][0])
        return tuple(chain)
    below = [start]
    while below[-1] != L.bottom:
        below.append(L.lower_covers[below[-1]][0])
    above = [start]
    while above[-1] != L.top:
        above.append(L.upper_covers[above[-1]][0])
    return tuple(reversed(below)) + tuple(above[1:])


def cached_interval(L: FaceLattice, g: int, f: int) -> FaceLattice:
    key = ("interval", g, f)
    sub = L._cache.get(key)
    if sub is None:
        sub = interval(L, g, f)
        L._cache[key] = sub
    return sub


def restrict(L: FaceLattice, aut: Permutation, sub: FaceLattice) -> Permutation:
    """Restriction of ``aut`` to an interval lattice it stabilizes."""
    fm = face_map(L, aut)
    back = {p: k for k, p in enumerate(sub.parent_ids)}
    try:
        img = [back[fm[sub.parent_ids[k]]] for k in range(sub.num_faces)]
    except KeyError:
        raise ValueError("automorphism does not stabilize the interval") from None
    return aut_from_face_map(sub, img)


# -- flag generators --------------------------------------------------------

def base_flag_generators(L: FaceLattice, flag=None) -> list:
    """The automorphisms r_j sending ``flag`` to its j-adjacent flag."""
    if flag is None:
        flag = first_flag(L)
    out = []
    for j in range(L.dim):
        fm = transport(L, flag, L, adjacent_flag(L, flag, j))
        if fm is None:
            raise NotRegular(f"no automorphism realizes the {j}-adjacent flag")
        out.append(aut_from_face_map(L, fm))
    return out


@dataclass(frozen=True)
class SymmetryData:
    lattice: FaceLattice
    base_flag: tuple
    rho: list
    full_gens: GeneratorSet
    rotation_gens: GeneratorSet
    full_group: BSGS
    rotation_group: BSGS
    schlafli: list


def symmetry_data(L: FaceLattice, seed: int = 0) -> SymmetryData:
    key = ("symmetry", seed)
    data = L._cache.get(key)
    if data is not None:
        return data
    flag = first_flag(L)
    rho = base_flag_generators(L, flag)
    deg = len(L.proper)
    full = GeneratorSet(deg, [f"r{j}" for j in range(len(rho))], rho)
    rot = GeneratorSet(deg, [f"r{j - 1}r{j}" for j in range(1, len(rho))],
                       [rho[j - 1] * rho[j] for j in range(1, len(rho))])
    data = SymmetryData(L, flag, rho, full, rot, build_bsgs(full, seed), build_bsgs(rot, seed),
                        _schlafli(L, flag))
    L._cache[key] = data
    return data


def automorphism_group(L: FaceLattice) -> BSGS:
    return symmetry_data(L).full_group


def rotation_subgroup(L: FaceLattice) -> BSGS:
    return symmetry_data(L).rotation_group


def is_rotation(L: FaceLattice, aut: Permutation) -> bool:
    return symmetry_data(L).rotation_group.contains(aut)


def rho_parity(L: FaceLattice, aut: Permutation) -> int:
    """Parity (+1/-1) of a word for ``aut`` in the r_j.

    Well defined only when the rotation subgroup has index 2.
    """
    data = symmetry_data(L)
    if data.full_group.order != 2 * data.rotation_group.order:
        raise ValueError("rotation subgroup does not have index 2")
    return -1 if len(data.full_group.factor(aut)) % 2 else 1


def _schlafli(L, flag):
    out = []
    for j in range(1, L.dim):
        lo, hi = flag[j - 1], flag[j + 2]
        out.append(sum(1 for h in L.between(lo, hi) if L.rank[h] == j))
    return out


def schlafli(L: FaceLattice) -> list:
    return symmetry_data(L).schlafli


# -- regularity -----------------------------------------------------------------

def is_regular(L: FaceLattice, cross_check: bool = False) -> bool:
    """Whether the automorphism group is transitive on flags.

    With ``cross_check`` and at most 500 faces, the answer is compared
    against a brute-force automorphism count.
    """
    n_flags = len(flags(L))
    try:
        rho = base_flag_generators(L)
    except (NotRegular, ValueError):
        result = False
    else:
        if not rho:
            result = True
        else:
            G = GeneratorSet(len(L.proper), [f"r{j}" for j in range(len(rho))], rho)
            result = build_bsgs(G).order == n_flags
    if cross_check and L.num_faces <= 500:
        brute = count_automorphisms_bruteforce(L) == n_flags
        if brute != result:
            raise RuntimeError("regularity check disagrees with brute-force count")
    return result


def count_automorphisms_bruteforce(L: FaceLattice) -> int:
    """Rank-preserving order automorphisms, counted by graph matching."""
    import networkx as nx
    from networkx.algorithms.isomorphism import DiGraphMatcher

    D = nx.DiGraph()
    for f in range(L.num_faces):
        D.add_node(f, rank=L.rank[f])
    D.add_edges_from(L.covers)
    match = DiGraphMatcher(D, D, node_match=lambda a, b: a["rank"] == b["rank"])
    return sum(1 for _ in match.isomorphisms_iter())


# -- stabilizers ------------------------------------------------------------

def stabilizer(L: FaceLattice, face: int, seed: int = 0) -> BSGS:
    """The stabilizer of ``face`` in the automorphism group."""
    data = symmetry_data(L)
    pt = L.proper_index[face]
    B = build_bsgs(data.full_gens, seed, base=[pt])
    gens = B.strong_generators(1)
    G = GeneratorSet(len(L.proper), [f"s{i}" for i in range(len(gens))], gens)
    return build_bsgs(G, seed)


def split(L: FaceLattice, face: int, aut: Permutation) -> tuple:
    """Restrictions of a face-stabilizing automorphism below and above ``face``."""
    lower = cached_interval(L, L.bottom, face)
    upper = cached_interval(L, face, L.top)
    return lower, restrict(L, aut, lower), upper, restrict(L, aut, upper)


def facet_flag(L: FaceLattice, facet: int) -> tuple:
    return first_flag(L, facet)


def facet_rotations(L: FaceLattice, facet: int, rotational: bool = True) -> GeneratorSet:
    """Generators of the facet's own (rotation) group, lifted to ``L``."""
    if L.rank[facet] != L.dim - 1:
        raise ValueError(f"face {facet} is not a facet")
    key = ("facet_rotations", facet, rotational)
    G = L._cache.get(key)
    if G is not None:
        return G
    flag = facet_flag(L, facet)
    lifted = []
    for j in range(L.dim - 1):
        fm = transport(L, flag, L, adjacent_flag(L, flag, j))
        if fm is None:
            raise NotRegular(f"no automorphism realizes the {j}-adjacent flag")
        lifted.append(aut_from_face_map(L, fm))
    deg = len(L.proper)
    if rotational:
        G = GeneratorSet(deg, [f"r{j - 1}r{j}" for j in range(1, len(lifted))],
                         [lifted[j - 1] * lifted[j] for j in range(1, len(lifted))])
    else:
        G = GeneratorSet(deg, [f"r{j}" for j in range(len(lifted))], lifted)
    L._cache[key] = G
    return G


def facet_rotation_group(L: FaceLattice, facet: int, rotational: bool = True, seed: int = 0) -> BSGS:
    key = ("facet_rotation_group", facet, rotational, seed)
    B = L._cache.get(key)
    if B is None:
        B = build_bsgs(facet_rotations(L, facet, rotational), seed)
        L._cache[key] = B
    return B
