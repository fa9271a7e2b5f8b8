"""Canonical constructors for polygons, simplices, hypercubes, hosotopes and ditopes.

Id orders are part of the external contract: sticker permutations are
serialized over them.
"""

from __future__ import annotations

from itertools import product
from math import comb

from .face_lattice import FaceLattice, is_polytope


class BadParameter(ValueError):
    pass


class InvalidBase(ValueError):
    pass


def _finish(dim, rank, covers, labels):
    return FaceLattice(dim, rank, covers, labels)


def polygon(k: int) -> FaceLattice:
    """The k-gon: vertices v1..vk, edge ei joins vi and v(i+1)."""
    if k < 2:
        raise BadParameter("polygon needs k >= 2")
    bottom, top = 0, 2 * k + 1
    vert = list(range(1, k + 1))
    edge = list(range(k + 1, 2 * k + 1))
    rank = [-1] + [0] * k + [1] * k + [2]
    labels = ["F-1"] + [f"v{i + 1}" for i in range(k)] + [f"e{i + 1}" for i in range(k)] + ["F2"]
    covers = [(bottom, v) for v in vert] + [(e, top) for e in edge]
    for i in range(k):
        covers.append((vert[i], edge[i]))
        covers.append((vert[(i + 1) % k], edge[i]))
    return _finish(2, rank, covers, labels)


def simplex_subsets(n: int) -> list:
    """Bitmasks over {0..n} in face-id order: by rank, then numeric value."""
    return sorted(range(1 << (n + 1)), key=lambda m: (bin(m).count("1"), m))


def simplex(n: int) -> FaceLattice:
    """Faces are the subsets of {0..n}, ordered by inclusion."""
    if n < 0:
        raise BadParameter("simplex needs n >= 0")
    masks = simplex_subsets(n)
    idx = {m: i for i, m in enumerate(masks)}
    rank = [bin(m).count("1") - 1 for m in masks]
    covers = []
    for m in masks:
        for b in range(n + 1):
            if not m >> b & 1:
                covers.append((idx[m], idx[m | 1 << b]))
    labels = ["{" + ",".join(str(b) for b in range(n + 1) if m >> b & 1) + "}" for m in masks]
    return _finish(n, rank, covers, labels)


def hypercube_vectors(n: int) -> list:
    """Entry vectors in {-1,0,1}^n in face-id order (bottom excluded).

    Sorted by rank (number of zero entries), then lexicographically.
    """
    vecs = list(product((-1, 0, 1), repeat=n))
    return sorted(vecs, key=lambda v: (v.count(0), v))


def hypercube_leq(g, f) -> bool:
    return all(fi == 0 or gi == fi for gi, fi in zip(g, f))


def hypercube(n: int) -> FaceLattice:
    """Faces {-1,0,1}^n plus a formal bottom; rank = number of zeros."""
    if n < 1:
        raise BadParameter("hypercube needs n >= 1")
    vecs = hypercube_vectors(n)
    idx = {v: i + 1 for i, v in enumerate(vecs)}
    rank = [-1] + [v.count(0) for v in vecs]
    covers = [(0, idx[v]) for v in vecs if v.count(0) == 0]
    for v in vecs:
        for i, x in enumerate(v):
            if x != 0:
                w = v[:i] + (0,) + v[i + 1:]
                covers.append((idx[v], idx[w]))
    sym = {-1: "-", 0: "0", 1: "+"}
    labels = ["F-1"] + ["".join(sym[x] for x in v) for v in vecs]
    return _finish(n, rank, covers, labels)


def _check_base(P):
    if not is_polytope(P):
        raise InvalidBase("base lattice is not a valid polytope")


def hosotope(P: FaceLattice) -> FaceLattice:
    """Add two vertices below every proper face of ``P``."""
    _check_base(P)
    n = P.dim
    old = sorted(range(P.num_faces), key=lambda f: (P.rank[f], f))
    # new ids: bottom, V1, V2, then P's non-bottom faces shifted up one rank
    new_id = {P.bottom: 0}
    nxt = 3
    for f in old:
        if f != P.bottom:
            new_id[f] = nxt
            nxt += 1
    rank = [-1, 0, 0] + [P.rank[f] + 1 for f in old if f != P.bottom]
    labels = [P.labels[P.bottom], "V1", "V2"] + [P.labels[f] for f in old if f != P.bottom]
    covers = [(0, 1), (0, 2)]
    for lo, hi in P.covers:
        if lo == P.bottom:
            covers.append((1, new_id[hi]))
            covers.append((2, new_id[hi]))
        else:
            covers.append((new_id[lo], new_id[hi]))
    return _finish(n + 1, rank, covers, labels)


def ditope(P: FaceLattice) -> FaceLattice:
    """Add two facets above every proper face of ``P``."""
    _check_base(P)
    n = P.dim
    old = sorted(range(P.num_faces), key=lambda f: (P.rank[f], f))
    new_id = {}
    for i, f in enumerate(f for f in old if f != P.top):
        new_id[f] = i
    w1 = len(new_id)
    w2, top = w1 + 1, w1 + 2
    new_id[P.top] = top
    rank = [P.rank[f] for f in old if f != P.top] + [n, n, n + 1]
    labels = [P.labels[f] for f in old if f != P.top] + ["W1", "W2", P.labels[P.top]]
    covers = [(w1, top), (w2, top)]
    for lo, hi in P.covers:
        if hi == P.top:
            covers.append((new_id[lo], w1))
            covers.append((new_id[lo], w2))
        else:
            covers.append((new_id[lo], new_id[hi]))
    return _finish(n + 1, rank, covers, labels)


def simplex_face_count(n, r):
    return comb(n + 1, r + 1)


def hypercube_face_count(n, r):
    return 2 ** (n - r) * comb(n, r)
