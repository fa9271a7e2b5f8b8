"""Closed-form descriptions of Rubik's groups and the checks that compare them
with the permutation-group engine."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, factorial
from typing import Optional

from . import builders
from .face_lattice import FaceLattice
from .permgroup import GeneratorSet, NotMember, Permutation, build_bsgs
from .rubik import (
    CoordinateSystem,
    WreathElement,
    _c3_exponent,
    _sign_of,
    aut_from_vertex_perm,
    move,
    move_generators,
    moves,
    rubik_construction,
    rubik_group,
    vertex_action,
    wreath_repr,
    wreath_to_perm,
)
from .symmetry import aut_from_face_map, face_map, symmetry_data


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    failed_condition: Optional[str] = None

    def to_dict(self):
        return {"member": self.member, "failed_condition": self.failed_condition}


TAU0 = "tau0-product"
TAUI = "taui-parity"
SIGMA = "sigmai-parity"
RIDGE = "ridge-sign-link"


# -- order formulas -----------------------------------------------------------

def _c(n):
    return 3 if n in (3, 4) else 1


def simplex_order(n: int) -> int:
    if n < 3:
        raise builders.BadParameter("simplex_order needs n >= 3")
    prod = 1
    for i in range(n - 1):
        m = comb(n + 1, i + 1)
        prod *= factorial(n - i) ** m * factorial(m)
    return prod // (_c(n) * 2 ** (3 * n - 2))


def hypercube_order(n: int) -> int:
    if n < 3:
        raise builders.BadParameter("hypercube_order needs n >= 3")
    prod = 1
    for i in range(n - 1):
        m = 2 ** (n - i) * comb(n, i)
        prod *= factorial(n - i) ** m * factorial(m)
    return prod // (_c(n) * 2 ** (2 ** n + 2 * (n - 2)))


def polygon_nonrot_order(k: int) -> int:
    if k < 3:
        raise builders.BadParameter("polygon order needs k >= 3")
    return factorial(k) if k % 2 == 0 else 2 ** (k - 1) * factorial(k)


def hosohedron_order(k: int) -> int:
    return polygon_nonrot_order(k) * k


# -- membership predicates ----------------------------------------------------

def _product(ts, degree):
    out = Permutation.identity(degree)
    for t in ts:
        out = out * t
    return out


def _check_shape(w: WreathElement, counts):
    if len(w.sigma) != len(counts) or any(s.degree != m for s, m in zip(w.sigma, counts)):
        raise ShapeMismatch(f"expected face counts {counts}, got {w.shape()}")
    for i, ts in enumerate(w.tau):
        d = len(w.coords.A[i].proper)
        if len(ts) != counts[i] or any(t.degree != d for t in ts):
            raise ShapeMismatch(f"components at rank {i} have the wrong shape")


def _in_alt_derived(v: tuple) -> bool:
    """Whether a vertex permutation of ``m`` points lies in the commutator subgroup of Alt_m."""
    m = len(v)
    if _sign_of(v):
        return False
    if m == 3:
        return all(i == x for i, x in enumerate(v))
    if m == 4:
        return _c3_exponent(v, 4) == 0
    return True


def _common_conditions(w: WreathElement):
    A0 = w.coords.A[0]
    comps0 = w.tau[0]
    if any(_sign_of(vertex_action(A0, t)) for t in comps0):
        return TAU0
    if not _in_alt_derived(vertex_action(A0, _product(comps0, len(A0.proper)))):
        return TAU0
    for i in range(1, len(w.tau)):
        A = w.coords.A[i]
        if _sign_of(vertex_action(A, _product(w.tau[i], len(A.proper)))):
            return TAUI
    return None


def simplex_membership(w: WreathElement, n: int) -> MembershipVerdict:
    _check_shape(w, [comb(n + 1, i + 1) for i in range(n - 1)])
    failed = _common_conditions(w)
    if failed is None and any(s.sign() < 0 for s in w.sigma):
        failed = SIGMA
    return MembershipVerdict(failed is None, failed)


def hypercube_membership(w: WreathElement, n: int) -> MembershipVerdict:
    _check_shape(w, [2 ** (n - i) * comb(n, i) for i in range(n - 1)])
    failed = _common_conditions(w)
    if failed is None and any(w.sigma[i].sign() < 0 for i in range(n - 3)):
        failed = SIGMA
    if failed is None and w.sigma[n - 2].sign() != w.sigma[n - 3].sign():
        failed = RIDGE
    return MembershipVerdict(failed is None, failed)


# -- ambient elements ---------------------------------------------------------------

def _random_vertex_perm(rng, m, even=None):
    v = list(range(m))
    rng.shuffle(v)
    if even is not None and bool(_sign_of(v)) == even and m >= 2:
        v[0], v[1] = v[1], v[0]
    return tuple(v)


def _transposition(m, a=0, b=1):
    v = list(range(m))
    v[a], v[b] = v[b], v[a]
    return tuple(v)


def _three_cycle(m):
    v = list(range(m))
    v[0], v[1], v[2] = 1, 2, 0
    return tuple(v)


def random_ambient(C: CoordinateSystem, rng, conditions: str = "satisfy", family: str = "simplex") -> WreathElement:
    """A random element of the ambient wreath product.

    ``conditions="satisfy"`` returns one meeting every membership condition
    for ``family``; a condition tag returns one violating exactly that
    condition.
    """
    L = C.lattice
    n = L.dim
    sig, tau = [], []
    for i in range(n - 1):
        m = len(L.faces_of_rank(i))
        sig.append(Permutation(_random_vertex_perm(rng, m)))
        A = C.A[i]
        k = len(A.faces_of_rank(0))
        comps = []
        for _ in range(m):
            v = _random_vertex_perm(rng, k, even=True if i == 0 else None)
            comps.append(aut_from_vertex_perm(A, v))
        tau.append(comps)
    # repair: sigma parities
    for i in range(n - 1):
        need_even = family == "simplex" or i < n - 3 or i == n - 2
        if need_even and sig[i].sign() < 0:
            sig[i] = sig[i] * Permutation(_transposition(sig[i].degree))
    if family == "hypercube" and sig[n - 2].sign() != sig[n - 3].sign():
        sig[n - 2] = sig[n - 2] * Permutation(_transposition(sig[n - 2].degree))
    # repair: products of components
    for i in range(n - 1):
        A = C.A[i]
        k = len(A.faces_of_rank(0))
        prod = vertex_action(A, _product(tau[i], len(A.proper)))
        if i == 0:
            if not _in_alt_derived(prod):
                fix = _alt_derived_repair(prod)
                tau[0][0] = tau[0][0] * aut_from_vertex_perm(A, fix)
        elif _sign_of(prod):
            tau[i][0] = tau[i][0] * aut_from_vertex_perm(A, _transposition(k))
    w = WreathElement(C, sig, tau)
    if conditions == "satisfy":
        return w
    return _violate(w, conditions, family)


def _inv(v):
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[x] = i
    return tuple(out)


def _compose(a, b):
    return tuple(a[x] for x in b)


def _alt_derived_repair(prod):
    """An even vertex permutation ``x`` with ``x * prod`` in the derived subgroup
    (applied on the left of the first component, this multiplies the product on the left)."""
    m = len(prod)
    if m == 3:
        return _inv(prod)
    # m == 4: cancel the C3 class with a power of a 3-cycle
    c = _three_cycle(4)
    for x in (c, _compose(c, c)):
        if _in_alt_derived(_compose(x, prod)):
            return x
    raise AssertionError("unreachable")


def _violate(w: WreathElement, tag: str, family: str) -> WreathElement:
    C = w.coords
    n = C.lattice.dim
    sig = list(w.sigma)
    tau = [list(ts) for ts in w.tau]
    if tag == TAU0:
        A = C.A[0]
        k = len(A.faces_of_rank(0))
        if k not in (3, 4):
            raise ValueError("the vertex-product condition is vacuous here")
        # the first component is the leftmost factor of the product
        tau[0][0] = aut_from_vertex_perm(A, _three_cycle(k)) * tau[0][0]
    elif tag == TAUI:
        if n < 3:
            raise ValueError("no rank above vertices")
        A = C.A[1]
        tau[1][0] = tau[1][0] * aut_from_vertex_perm(A, _transposition(len(A.faces_of_rank(0))))
    elif tag == SIGMA:
        if family == "simplex":
            i = 1 if n >= 3 else 0
        else:
            if n - 3 <= 0:
                raise ValueError("no unlinked sigma parity condition in this dimension")
            i = 0
        sig[i] = sig[i] * Permutation(_transposition(sig[i].degree))
    elif tag == RIDGE:
        sig[n - 2] = sig[n - 2] * Permutation(_transposition(sig[n - 2].degree))
    else:
        raise ValueError(f"unknown condition {tag}")
    return WreathElement(C, sig, tau)


# -- Theta: simplex puzzle inside the hypercube puzzle -----------------------------------

def simplex_vertex_action(L: FaceLattice, aut: Permutation) -> tuple:
    """The permutation of ``{0..n}`` underlying an automorphism of ``simplex(n)``."""
    fm = face_map(L, aut)
    masks = builders.simplex_subsets(L.dim)
    pos = {m: i for i, m in enumerate(masks)}
    return tuple(masks[fm[pos[1 << b]]].bit_length() - 1 for b in range(L.dim + 1))


def cube_aut_from_coordinate_perm(Q: FaceLattice, pi) -> Permutation:
    """The cube automorphism moving entry ``i`` to position ``pi[i]`` without sign changes."""
    n = Q.dim
    vecs = builders.hypercube_vectors(n)
    idx = {v: k + 1 for k, v in enumerate(vecs)}
    fm = [0] * Q.num_faces
    for v in vecs:
        w = [0] * n
        for i in range(n):
            w[pi[i]] = v[i]
        fm[idx[v]] = idx[tuple(w)]
    return aut_from_face_map(Q, fm)


class Theta:
    """The embedding of the Rubik's group of ``simplex(n-1)`` into that of ``hypercube(n)``."""

    def __init__(self, n: int, seed: int = 0):
        self.n = n
        self.T = builders.simplex(n - 1)
        self.Q = builders.hypercube(n)
        self.ST = rubik_construction(self.T)
        self.SQ = rubik_construction(self.Q)
        self.GT = move_generators(self.ST)
        self.BT = rubik_group(self.ST, seed=seed)
        vecs = builders.hypercube_vectors(n)
        idx = {v: k + 1 for k, v in enumerate(vecs)}
        images = []
        self.pairs = []
        for mv in moves(self.ST):
            mask = builders.simplex_subsets(n - 1)[mv.facet]
            alpha = next(b for b in range(n) if not mask >> b & 1)
            pi = simplex_vertex_action(self.T, mv.rotation)
            aut = cube_aut_from_coordinate_perm(self.Q, pi)
            plus = tuple(1 if i == alpha else 0 for i in range(n))
            minus = tuple(-1 if i == alpha else 0 for i in range(n))
            mp = move(self.SQ, idx[plus], aut)
            mm = move(self.SQ, idx[minus], aut)
            self.pairs.append((mp.perm, mm.perm))
            images.append(mp.perm * mm.perm)
        self.images = GeneratorSet(len(self.SQ), list(self.GT.names), images)

    def commute(self) -> bool:
        return all(a * b == b * a for a, b in self.pairs)

    def of_word(self, word) -> Permutation:
        return self.images.evaluate(word)

    def __call__(self, mu: Permutation) -> Permutation:
        if not self.BT.contains(mu):
            raise NotMember("not an element of the simplex Rubik's group")
        return self.of_word(self.BT.factor(mu))

    def diagonal_order(self, seed: int = 0) -> int:
        """Order of the group generated by (generator, image) pairs."""
        return diagonal_group_order(self.GT, self.images, seed)

    def image_order(self, seed: int = 0) -> int:
        return build_bsgs(self.images, seed).order


def diagonal_group_order(G1: GeneratorSet, G2: GeneratorSet, seed: int = 0) -> int:
    """Order of the group generated by paired generators acting on the disjoint union.

    It equals ``|<G1>|`` exactly when ``g_i -> h_i`` extends to a
    homomorphism, and ``|<G2>|`` exactly when ``h_i -> g_i`` does.
    """
    d1 = G1.degree
    perms = [Permutation(a.images + tuple(d1 + x for x in b.images)) for a, b in zip(G1.perms, G2.perms)]
    return build_bsgs(GeneratorSet(d1 + G2.degree, list(G1.names), perms), seed).order


# -- ditopes and hosotopes -----------------------------------------------------

def ditope_iso_check(P: FaceLattice, seed: int = 0) -> dict:
    """Compare the Rubik's group of the ditope over ``P`` with the rotation group of ``P``."""
    D = builders.ditope(P)
    S = rubik_construction(D)
    G = move_generators(S)
    # faces of P other than its top keep their (rank, id) order in the ditope
    old = sorted((f for f in range(P.num_faces) if f != P.top), key=lambda f: (P.rank[f], f))
    to_d = {f: i for i, f in enumerate(old)}
    restricted = []
    for perm in G.perms:
        fm = list(range(P.num_faces))
        for f in P.proper:
            k = S.index[(to_d[f], to_d[f])]
            fm[f] = old[S.stickers[perm.images[k]].location]
        restricted.append(aut_from_face_map(P, fm))
    R = GeneratorSet(len(P.proper), list(G.names), restricted)
    rub = rubik_group(S, seed=seed).order
    rot = symmetry_data(P).rotation_group.order
    image = build_bsgs(R, seed).order
    diag = diagonal_group_order(G, R, seed)
    ok = rub == rot == image == diag
    return {"ok": ok, "rubik_order": rub, "rotation_order": rot, "image_order": image, "diagonal_order": diag}


def hosotope_embedding_check(P: FaceLattice, seed: int = 0) -> dict:
    """Order bookkeeping for the map to the non-rotational group of ``P`` times ``Gamma(P)``.

    Records the orders of the hosotope group, of the diagonal group pairing
    each move with its image, and of both projections.
    """
    Hs = builders.hosotope(P)
    S = rubik_construction(Hs)
    G = move_generators(S)
    SP = rubik_construction(P)
    old = sorted((f for f in range(P.num_faces) if f != P.bottom), key=lambda f: (P.rank[f], f))
    to_h = {f: 3 + i for i, f in enumerate(old)}
    from_h = {h: f for f, h in to_h.items()}
    first, second = [], []
    for perm in G.perms:
        img = []
        for (loc, col) in SP.stickers:
            t_loc, t_col = S.stickers[perm.images[S.index[(to_h[loc], to_h[col])]]]
            img.append(SP.index[(from_h[t_loc], from_h[t_col])])
        first.append(Permutation(img))
        # the stickers located at the first added vertex carry the whole automorphism
        fm = list(range(P.num_faces))
        for f in P.proper:
            fm[f] = from_h[S.stickers[perm.images[S.index[(1, to_h[f])]]].color]
        second.append(aut_from_face_map(P, fm))
    deg = len(SP) + len(P.proper)
    paired = GeneratorSet(deg, list(G.names),
                          [Permutation(a.images + tuple(len(SP) + x for x in b.images))
                           for a, b in zip(first, second)])
    hos = rubik_group(S, seed=seed).order
    image = build_bsgs(paired, seed).order
    diag = diagonal_group_order(G, paired, seed)
    proj1 = build_bsgs(GeneratorSet(len(SP), list(G.names), first), seed).order
    proj2 = build_bsgs(GeneratorSet(len(P.proper), list(G.names), second), seed).order
    nonrot = rubik_group(SP, rotational=False, seed=seed).order
    full = symmetry_data(P).full_group.order
    hypothesis = facet_stabilizers_generate(P, seed)
    return {
        "ok": hos == image == diag and proj1 == nonrot and (proj2 == full or not hypothesis),
        "facet_stabilizers_generate": hypothesis,
        "hosotope_order": hos,
        "image_order": image,
        "diagonal_order": diag,
        "first_projection_order": proj1,
        "nonrotational_order": nonrot,
        "second_projection_order": proj2,
        "automorphism_order": full,
    }


def facet_stabilizers_generate(P: FaceLattice, seed: int = 0) -> bool:
    """Whether the automorphism group is generated by stabilizers of facets."""
    from .symmetry import stabilizer
    gens = []
    for H in P.faces_of_rank(P.dim - 1):
        gens.extend(stabilizer(P, H, seed).generators.perms)
    G = GeneratorSet(len(P.proper), [f"g{i}" for i in range(len(gens))], gens)
    return build_bsgs(G, seed).order == symmetry_data(P).full_group.order


# -- counting identities -------------------------------------------------------

def subset_transposition_count(k: int, h: int, i: int = 0, j: int = 1) -> int:
    """Number of 2-cycles of the permutation of h-subsets induced by ``(i j)``."""
    from itertools import combinations
    moved = 0
    for sub in combinations(range(k), h):
        if (i in sub) != (j in sub):
            moved += 1
    return moved // 2


def cube_moved_faces(k: int, r: int, kind: str) -> int:
    """Faces of rank ``r`` of ``hypercube(k)`` moved by a coordinate swap or a sign flip."""
    moved = 0
    for v in builders.hypercube_vectors(k):
        if v.count(0) != r:
            continue
        if kind == "swap" and v[0] != v[1]:
            moved += 1
        if kind == "flip" and v[0] != 0:
            moved += 1
    return moved


def cube_swap_formula(k: int, r: int) -> int:
    if r == k - 1:
        return 4
    return 2 ** (k - r) * comb(k - 2, r) // 2 + 2 ** (k - r) * 2 * (comb(k - 2, r - 1) if r >= 1 else 0)


def cube_flip_formula(k: int, r: int) -> int:
    return 2 ** (k - r) * comb(k - 1, r)


# -- polygons -----------------------------------------------------------------

def polygon_edge_move_word(k: int, i: int) -> list:
    """The back-and-forth product of ``2(k-1)`` edge moves starting at edge ``i``.

    Edges are numbered ``1..k`` cyclically; the returned word uses the
    non-rotational move names and is evaluated right to left.
    """
    def name(j):
        j = (j - 1) % k + 1
        return f"F{k + j}:r0"
    forward = [name(j) for j in range(i, k + i)]           # applied first: i, i+1, ..., k+i-1
    backward = [name(j) for j in range(k + i - 2, i, -1)]  # then k+i-2, ..., i+1
    applied = forward + backward
    return [(nm, False) for nm in reversed(applied)]


def polygon_reflection_product(k: int) -> Permutation:
    """The product of the edge-fixing reflections of the k-gon, last edge leftmost."""
    P = builders.polygon(k)
    out = Permutation.identity(len(P.proper))
    from .symmetry import facet_rotations
    for j in range(k, 0, -1):
        out = out * facet_rotations(P, k + j, rotational=False).perms[0]
    return out
