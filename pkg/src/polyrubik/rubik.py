"""Stickers, moves and Rubik's groups of a polytope, with wreath coordinates.

A sticker is an incident pair ``(location, color)`` of proper faces.  A
sticker permutation ``p`` sends the sticker in slot ``i`` to slot
``p(i)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .face_lattice import FaceLattice, transport
from .permgroup import BSGS, GeneratorSet, Permutation, build_bsgs
from .symmetry import (
    aut_from_face_map,
    apply,
    cached_interval,
    face_map,
    facet_flag,
    facet_rotation_group,
    facet_rotations,
    first_flag,
    restrict,
    symmetry_data,
)


class NotStabilizing(ValueError):
    pass


class NotRotation(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


class NotRankPreserving(ValueError):
    pass


class IncoherentColors(ValueError):
    pass


class NoCoordinateSystem(ValueError):
    pass


class Unsupported(ValueError):
    pass


class Sticker(NamedTuple):
    location: int
    color: int


class StickerSet:
    def __init__(self, lattice: FaceLattice):
        L = lattice
        self.lattice = L
        stickers = []
        for loc in L.proper:
            colors = [c for c in L.above(loc) if c != L.top]
            colors.sort(key=lambda c: (L.rank[c], c))
            stickers.extend(Sticker(loc, c) for c in colors)
        self.stickers = stickers
        self.index = {s: i for i, s in enumerate(stickers)}

    def __len__(self):
        return len(self.stickers)

    def __iter__(self):
        return iter(self.stickers)

    def __getitem__(self, i):
        return self.stickers[i]

    def by_location(self, loc):
        return [i for i, s in enumerate(self.stickers) if s.location == loc]

    def perm_from_face_map(self, fm, restrict_to=None) -> Permutation:
        """Sticker permutation induced by a face map on stickers at or below ``restrict_to``."""
        L = self.lattice
        idx = self.index
        img = []
        for i, (loc, col) in enumerate(self.stickers):
            if restrict_to is None or L.leq(loc, restrict_to):
                img.append(idx[(fm[loc], fm[col])])
            else:
                img.append(i)
        return Permutation(img)

    def state(self, p: Permutation) -> list:
        """Where each sticker went, as (location, color) pairs in slot order."""
        return [list(self.stickers[j]) for j in p.images]

    def perm_from_state(self, state) -> Permutation:
        try:
            return Permutation(self.index[tuple(x)] for x in state)
        except KeyError as e:
            raise ValueError(f"unknown sticker {e.args[0]}") from None


def rubik_construction(L: FaceLattice) -> StickerSet:
    S = L._cache.get("stickers")
    if S is None:
        S = StickerSet(L)
        L._cache["stickers"] = S
    return S


@dataclass(frozen=True)
class Move:
    facet: int
    rotation: Permutation
    perm: Permutation
    name: str


def move(S: StickerSet, facet: int, rot: Permutation, rotational: bool = True, name=None) -> Move:
    L = S.lattice
    if L.rank[facet] != L.dim - 1:
        raise ValueError(f"face {facet} is not a facet")
    if apply(L, rot, facet) != facet:
        raise NotStabilizing(f"automorphism does not fix facet {facet}")
    B = facet_rotation_group(L, facet, rotational)
    if not B.contains(rot):
        if rotational:
            raise NotRotation(f"automorphism is not a rotation of facet {facet}")
        raise NotStabilizing(f"automorphism does not restrict to facet {facet}")
    if name is None:
        word = B.factor(rot)
        name = f"F{facet}:" + (".".join(n + ("'" if inv else "") for n, inv in word) or "id")
    return Move(facet, rot, S.perm_from_face_map(face_map(L, rot), restrict_to=facet), name)


def facets(L: FaceLattice) -> tuple:
    return L.faces_of_rank(L.dim - 1)


def moves(S: StickerSet, rotational: bool = True) -> list:
    L = S.lattice
    out = []
    for H in facets(L):
        G = facet_rotations(L, H, rotational)
        for nm, rot in zip(G.names, G.perms):
            out.append(move(S, H, rot, rotational, name=f"F{H}:{nm}"))
    return out


def move_generators(S: StickerSet, rotational: bool = True) -> GeneratorSet:
    key = ("move_generators", rotational)
    G = S.lattice._cache.get(key)
    if G is None:
        ms = moves(S, rotational)
        G = GeneratorSet(len(S), [m.name for m in ms], [m.perm for m in ms])
        S.lattice._cache[key] = G
    return G


def rubik_group(S: StickerSet, rotational: bool = True, seed: int = 0) -> BSGS:
    key = ("rubik_group", rotational, seed)
    B = S.lattice._cache.get(key)
    if B is None:
        B = build_bsgs(move_generators(S, rotational), seed)
        S.lattice._cache[key] = B
    return B


# -- move extension -------------------------------------------------------------

def ridge_facets(L: FaceLattice, ridge: int) -> tuple:
    return L.upper_covers[ridge]


def shares_at_most_one_ridge(L: FaceLattice) -> bool:
    key = "one_ridge"
    ok = L._cache.get(key)
    if ok is None:
        seen = set()
        ok = True
        for G in L.faces_of_rank(L.dim - 2):
            pair = ridge_facets(L, G)
            if pair in seen:
                ok = False
                break
            seen.add(pair)
        L._cache[key] = ok
    return ok


def lift_ridge_rotation(L: FaceLattice, F: int, G: int, phi: Permutation) -> Permutation:
    """The automorphism of ``L`` fixing ``G`` and ``F`` that acts as ``phi`` below ``G``."""
    low = cached_interval(L, L.bottom, G)
    sub_flag = first_flag(low)
    src = tuple(low.parent_ids[x] for x in sub_flag)
    fm_low = face_map(low, phi)
    dst = tuple(low.parent_ids[fm_low[x]] for x in sub_flag)
    flag_src = src + (F, L.top)
    flag_dst = dst + (F, L.top)
    fm = transport(L, flag_src, L, flag_dst)
    if fm is None:
        raise ValueError("rotation does not extend to the polytope")
    return aut_from_face_map(L, fm)


def extend_move(S: StickerSet, F: int, G: int, phi: Permutation, rotational: bool = True) -> Move:
    """The move of ``L`` at the other facet over ``G`` extending ``phi``.

    ``phi`` is a rotation of ``G/F_-1`` given over that interval's proper
    faces.  Restricted to the stickers of ``F/F_-1`` the result acts as the
    move at facet ``G`` of ``F`` (see :func:`facet_level_move`).
    """
    L = S.lattice
    if not L.leq(G, F) or L.rank[G] != L.dim - 2 or L.rank[F] != L.dim - 1:
        from .face_lattice import NotIncident
        raise NotIncident(f"face {G} is not a ridge of facet {F}")
    if not shares_at_most_one_ridge(L):
        raise HypothesisViolated("two facets share more than one ridge")
    other = [H for H in ridge_facets(L, G) if H != F][0]
    rot = lift_ridge_rotation(L, F, G, phi)
    return move(S, other, rot, rotational)


def facet_level_move(S: StickerSet, F: int, G: int, phi: Permutation, rotational: bool = True):
    """The move at ``G`` on ``R(F/F_-1)``, embedded as a partial map on slots of ``S``.

    Returns ``(slots, images)``: the slots of ``S`` holding stickers of the
    facet and where the facet-level move sends each of them.
    """
    L = S.lattice
    sub = cached_interval(L, L.bottom, F)
    sub_S = rubik_construction(sub)
    back = {p: k for k, p in enumerate(sub.parent_ids)}
    rot = lift_ridge_rotation(L, F, G, phi)
    rot_sub = restrict(L, rot, sub)
    m = move(sub_S, back[G], rot_sub, rotational)
    slots = []
    images = []
    for k, (loc, col) in enumerate(sub_S.stickers):
        slots.append(S.index[(sub.parent_ids[loc], sub.parent_ids[col])])
        t_loc, t_col = sub_S.stickers[m.perm.images[k]]
        images.append(S.index[(sub.parent_ids[t_loc], sub.parent_ids[t_col])])
    return slots, images


def extension_commutes(S: StickerSet, F: int, G: int, phi: Permutation, rotational: bool = True) -> bool:
    m = extend_move(S, F, G, phi, rotational)
    slots, images = facet_level_move(S, F, G, phi, rotational)
    return all(m.perm.images[s] == t for s, t in zip(slots, images))


# -- coordinates ------------------------------------------------------------

@dataclass
class CoordinateSystem:
    """Reference co-face intervals and per-face isomorphisms.

    ``A[i]`` is ``F_n/F0`` for the reference face ``F0`` of rank ``i``;
    ``omega[i][k]`` maps positions of ``A[i].proper`` to face ids of ``L``
    above the ``k``-th face of rank ``i``.  ``B[i]`` is ``F0/F_-1``, kept
    for completeness.
    """

    lattice: FaceLattice
    reference: list
    A: list
    B: list
    omega: list
    transports: list
    face_pos: list = field(default_factory=list)
    omega_inv: list = field(default_factory=list)


def coordinate_system(L: FaceLattice, seed=None) -> CoordinateSystem:
    """Reference faces and transporting automorphisms for ranks ``0..n-2``.

    The face of rank ``i`` is reached from the reference by an element of
    the automorphism group, a rotation for vertices so that transported
    coordinates agree between vertices.  With ``seed`` the reference faces
    and transporters are drawn at random; with ``None`` they are the first
    face and the transversal elements.
    """
    data = symmetry_data(L)
    rng = random.Random(seed) if seed is not None else None
    refs, As, Bs, omegas, trans, pos, oinv = [], [], [], [], [], [], []
    for i in range(L.dim - 1):
        faces = L.faces_of_rank(i)
        F0 = faces[rng.randrange(len(faces))] if rng else faces[0]
        group = data.rotation_gens if i == 0 else data.full_gens
        Bg = build_bsgs(group, data.full_group.seed, base=[L.proper_index[F0]])
        lv = Bg.levels[0]
        stab = Bg.subgroup_at(1)
        A = cached_interval(L, F0, L.top)
        Bi = cached_interval(L, L.bottom, F0)
        om, tr = [], []
        for F in faces:
            u = lv.reps.get(L.proper_index[F])
            if u is None:
                raise NoCoordinateSystem(f"no transporting automorphism from face {F0} to {F}")
            g = Permutation(u)
            if rng:
                g = g * stab.random_element(rng)
            fm = face_map(L, g)
            om.append(tuple(fm[A.parent_ids[x]] for x in A.proper))
            tr.append(g)
        refs.append(F0)
        As.append(A)
        Bs.append(Bi)
        omegas.append(om)
        trans.append(tr)
        pos.append({F: k for k, F in enumerate(faces)})
        oinv.append([{f: x for x, f in enumerate(o)} for o in om])
    C = CoordinateSystem(L, refs, As, Bs, omegas, trans, pos, oinv)
    _check_vertex_coherence(C)
    return C


def _check_vertex_coherence(C: CoordinateSystem):
    L = C.lattice
    if L.dim < 2:
        return
    rot = symmetry_data(L).rotation_group
    t = C.transports[0]
    for k in range(1, len(t)):
        phi = t[k] * t[0].inverse()
        if not rot.contains(phi):
            raise NoCoordinateSystem("vertex transport is not a rotation")
        fm = face_map(L, phi)
        if tuple(fm[f] for f in C.omega[0][0]) != C.omega[0][k]:
            raise NoCoordinateSystem("vertex coordinates do not commute")


# -- wreath representation --------------------------------------------------------

@dataclass
class WreathElement:
    """Per rank ``i``: ``sigma[i]`` permutes rank-i faces (by position),
    ``tau[i][k]`` is the component at the ``k``-th face, a permutation of
    ``A[i].proper``.

    The sticker ``(G, omega_G(x))`` goes to ``(F, omega_F(tau^F(x)))`` with
    ``F = sigma(G)``.
    """

    coords: CoordinateSystem
    sigma: list
    tau: list

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        sig, tau = [], []
        for i in range(len(self.sigma)):
            sp, sq = self.sigma[i], other.sigma[i]
            sp_inv = sp.inverse()
            tau.append([self.tau[i][k] * other.tau[i][sp_inv.images[k]] for k in range(sp.degree)])
            sig.append(sp * sq)
        return WreathElement(self.coords, sig, tau)

    def inverse(self) -> "WreathElement":
        sig, tau = [], []
        for i in range(len(self.sigma)):
            s = self.sigma[i]
            # (tau, s)^-1 has component at F equal to tau^{s(F)}^-1
            tau.append([self.tau[i][s.images[k]].inverse() for k in range(s.degree)])
            sig.append(s.inverse())
        return WreathElement(self.coords, sig, tau)

    def is_identity(self) -> bool:
        return all(s.is_identity() for s in self.sigma) and all(
            t.is_identity() for ts in self.tau for t in ts)

    def __eq__(self, other):
        return self.sigma == other.sigma and self.tau == other.tau

    def shape(self) -> list:
        return [s.degree for s in self.sigma]


def wreath_identity(C: CoordinateSystem) -> WreathElement:
    L = C.lattice
    sig, tau = [], []
    for i in range(L.dim - 1):
        m = len(L.faces_of_rank(i))
        sig.append(Permutation.identity(m))
        tau.append([Permutation.identity(len(C.A[i].proper))] * m)
    return WreathElement(C, sig, tau)


def wreath_repr(C: CoordinateSystem, S: StickerSet, p: Permutation) -> WreathElement:
    L = C.lattice
    if p.degree != len(S):
        raise ValueError("permutation degree does not match the sticker set")
    st = S.stickers
    loc_map = {}
    color_map = {}
    for i, (loc, col) in enumerate(st):
        t_loc, t_col = st[p.images[i]]
        if L.rank[t_loc] != L.rank[loc] or L.rank[t_col] != L.rank[col]:
            raise NotRankPreserving(f"sticker {i} changes rank")
        if loc_map.setdefault(loc, t_loc) != t_loc:
            raise IncoherentColors(f"stickers at face {loc} split up")
        color_map.setdefault(loc, {})[col] = t_col
    for H in facets(L):
        if loc_map[H] != H:
            raise IncoherentColors(f"facet {H} is moved")
    sig, tau = [], []
    for i in range(L.dim - 1):
        faces = L.faces_of_rank(i)
        pos = C.face_pos[i]
        sigma = Permutation(pos[loc_map[F]] for F in faces)
        comps = [None] * len(faces)
        A = C.A[i]
        for g, G in enumerate(faces):
            f = sigma.images[g]
            cmap = color_map[G]
            om_G = C.omega[i][g]
            inv_F = C.omega_inv[i][f]
            comp = [inv_F[cmap[om_G[x]]] for x in range(len(A.proper))]
            comps[f] = Permutation(comp)
        for c in comps:
            if not _is_aut_of(A, c):
                raise IncoherentColors(f"color map at rank {i} is not an interval isomorphism")
        sig.append(sigma)
        tau.append(comps)
    return WreathElement(C, sig, tau)


def _is_aut_of(A: FaceLattice, c: Permutation) -> bool:
    if len(set(c.images)) != len(c.images):
        return False
    fm = face_map(A, c)
    if any(A.rank[fm[f]] != A.rank[f] for f in range(A.num_faces)):
        return False
    return all(fm[hi] in A.upper_covers[fm[lo]] for lo, hi in A.covers)


def wreath_to_perm(w: WreathElement, S: StickerSet) -> Permutation:
    """Sticker permutation of a wreath element; facets stay fixed."""
    C = w.coords
    L = C.lattice
    img = list(range(len(S)))
    idx = S.index
    for i in range(L.dim - 1):
        faces = L.faces_of_rank(i)
        for g, G in enumerate(faces):
            f = w.sigma[i].images[g]
            F = faces[f]
            t = w.tau[i][f]
            om_G, om_F = C.omega[i][g], C.omega[i][f]
            img[idx[(G, G)]] = idx[(F, F)]
            for x in range(len(om_G)):
                img[idx[(G, om_G[x])]] = idx[(F, om_F[t.images[x]])]
    return Permutation(img)


# -- canonical character ----------------------------------------------------------

def _vertex_action(A: FaceLattice, c: Permutation) -> tuple:
    verts = A.faces_of_rank(0)
    vpos = {v: k for k, v in enumerate(verts)}
    fm = face_map(A, c)
    return tuple(vpos[fm[v]] for v in verts)


def _is_simplex_like(A: FaceLattice) -> bool:
    key = "simplex_like"
    ok = A._cache.get(key)
    if ok is None:
        from math import factorial
        m = len(A.faces_of_rank(0))
        ok = symmetry_data(A).full_group.order == factorial(m) if A.dim >= 1 else True
        A._cache[key] = ok
    return ok


_PAIR_PARTITIONS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def _c3_exponent(images: tuple, m: int) -> int:
    if m == 3:
        cyc = (1, 2, 0)
        if images == (0, 1, 2):
            return 0
        return 1 if images == cyc else 2
    # m == 4: action on the three pair partitions
    def norm(part):
        return tuple(sorted(tuple(sorted(pair)) for pair in part))
    parts = [norm(p) for p in _PAIR_PARTITIONS]
    act = tuple(parts.index(norm([(images[a], images[b]) for a, b in p])) for p in parts)
    if act == (0, 1, 2):
        return 0
    return 1 if act == (1, 2, 0) else 2


def _sign_of(images) -> int:
    seen = [False] * len(images)
    parity = 0
    for i in range(len(images)):
        if not seen[i]:
            j = i
            length = 0
            while not seen[j]:
                seen[j] = True
                j = images[j]
                length += 1
            parity += length - 1
    return parity % 2


def character_of(A: FaceLattice, c: Permutation, rotation_only: bool) -> tuple:
    """Class of ``c`` in the abelianization, as ``(modulus, value)``."""
    if not _is_simplex_like(A):
        raise Unsupported("reference interval is not simplex-like")
    m = len(A.faces_of_rank(0))
    v = _vertex_action(A, c)
    if not rotation_only:
        return (2, _sign_of(v)) if m >= 2 else (1, 0)
    if m in (3, 4):
        return (3, _c3_exponent(v, m))
    return (1, 0)


def canonical_character(C: CoordinateSystem, w: WreathElement, i: int, rotational: bool = True) -> tuple:
    """Class of the product of the rank-``i`` components.

    Vertices use the rotation group of the reference interval in the
    rotational puzzle.  ``(modulus, 0)`` is the trivial class.
    """
    A = C.A[i]
    prod = Permutation.identity(len(A.proper))
    for t in w.tau[i]:
        prod = prod * t
    return character_of(A, prod, rotation_only=(i == 0 and rotational))




def aut_from_vertex_perm(A: FaceLattice, vperm) -> Permutation:
    """Automorphism of a simplex-like lattice with the given vertex action.

    ``vperm`` permutes positions in ``A.faces_of_rank(0)``.
    """
    verts = A.faces_of_rank(0)
    key = "vertex_sets"
    table = A._cache.get(key)
    if table is None:
        vsets = {f: frozenset(k for k, v in enumerate(verts) if A.leq(v, f)) for f in A.proper}
        table = (vsets, {s: f for f, s in vsets.items()})
        A._cache[key] = table
    vsets, by_set = table
    fm = list(range(A.num_faces))
    for f in A.proper:
        img = frozenset(vperm[k] for k in vsets[f])
        if img not in by_set:
            raise Unsupported("vertex permutation does not induce an automorphism")
        fm[f] = by_set[img]
    return aut_from_face_map(A, fm)


def vertex_action(A: FaceLattice, c: Permutation) -> tuple:
    return _vertex_action(A, c)
