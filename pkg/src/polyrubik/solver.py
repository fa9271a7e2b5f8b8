"""Move words for targets: scrambles, BSGS factorization and the simplex solver.

A move word is a list of ``(name, inverse)`` tokens evaluated right to
left.  ``solve_*`` functions return a word whose value is the target, so
``invert_word`` of the result undoes a scrambled state.

The inductive simplex solver works on faces of the n-simplex written as
bit masks over the points ``0..n``.  It builds every operation it uses
from moves, checks each one by evaluation, and raises ``RuntimeError`` if
an operation does not act exactly as predicted.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .builders import simplex
from .permgroup import (
    BSGS,
    GeneratorSet,
    NotMember,
    Permutation,
    build_bsgs,
    invert_word,
    reduce_word,
)
from .rubik import StickerSet, move_generators, rubik_construction, rubik_group
from .symmetry import aut_from_face_map, apply, facet_rotation_group, facet_rotations


class BadRank(ValueError):
    pass


class NotCoFacial(ValueError):
    pass


class RankOutOfRange(ValueError):
    pass


class BadColors(ValueError):
    pass


class NotSimplex(ValueError):
    pass


# -- scrambles and generic solving ------------------------------------------------

@dataclass(frozen=True)
class ScrambleRecord:
    seed: int
    word: list
    perm: Permutation

    def to_dict(self) -> dict:
        return {"seed": self.seed, "word": [[n, bool(i)] for n, i in self.word],
                "perm": list(self.perm.images)}


def scramble(G: GeneratorSet, length: int, seed: int) -> ScrambleRecord:
    """A random word of exactly ``length`` tokens with no immediate cancellation."""
    if length < 0:
        raise ValueError("scramble length must be non-negative")
    rng = random.Random(seed)
    word = []
    while len(word) < length:
        tok = (G.names[rng.randrange(len(G.names))], rng.random() < 0.5)
        if word and word[-1] == (tok[0], not tok[1]):
            continue
        word.append(tok)
    return ScrambleRecord(seed, word, G.evaluate(word))


def solve_generic(B: BSGS, target: Permutation) -> list:
    """A word in ``B``'s generators evaluating to ``target``; raises NotMember."""
    return B.factor(target)


# -- simplex bookkeeping ----------------------------------------------------------

def _popcount(m: int) -> int:
    return bin(m).count("1")


def _bits(m: int) -> list:
    return [b for b in range(m.bit_length()) if m >> b & 1]


def _act(vperm, m: int) -> int:
    out = 0
    for b in _bits(m):
        out |= 1 << vperm[b]
    return out


def _vinv(vperm) -> tuple:
    out = [0] * len(vperm)
    for i, j in enumerate(vperm):
        out[j] = i
    return tuple(out)


def _vcompose(a, b) -> tuple:
    """``a`` after ``b``."""
    return tuple(a[j] for j in b)


def _parity(vperm) -> int:
    seen = [False] * len(vperm)
    odd = 0
    for i in range(len(vperm)):
        if seen[i]:
            continue
        j, k = i, 0
        while not seen[j]:
            seen[j] = True
            j = vperm[j]
            k += 1
        odd ^= (k - 1) & 1
    return odd


def _even_perms(npts: int, points) -> list:
    """Even permutations of ``points`` (identity elsewhere), lexicographic."""
    points = sorted(points)
    out = []
    for imgs in itertools.permutations(points):
        v = list(range(npts))
        for p, q in zip(points, imgs):
            v[p] = q
        v = tuple(v)
        if not _parity(v):
            out.append(v)
    return out


def _transposition(npts: int, a: int, b: int) -> tuple:
    v = list(range(npts))
    v[a], v[b] = b, a
    return tuple(v)


class SimplexPuzzle:
    """Mask-level view of the Rubik's group of an n-simplex."""

    def __init__(self, S: StickerSet):
        L = S.lattice
        self.S = S
        self.L = L
        self.n = n = L.dim
        self.npts = n + 1
        verts = L.faces_of_rank(0)
        if len(verts) != n + 1 or L.num_faces != 1 << (n + 1):
            raise NotSimplex("lattice is not a simplex")
        vbit = {v: k for k, v in enumerate(verts)}
        self.mask = [0] * L.num_faces
        for f in range(L.num_faces):
            self.mask[f] = sum(1 << vbit[v] for v in verts if L.leq(v, f))
        self.face = {m: f for f, m in enumerate(self.mask)}
        if len(self.face) != L.num_faces:
            raise NotSimplex("lattice is not a simplex")
        self.full = (1 << (n + 1)) - 1
        self.gens = move_generators(S)
        self._verts = verts
        self.gen_info = {}
        for H in L.faces_of_rank(n - 1):
            G = facet_rotations(L, H)
            for nm, aut in zip(G.names, G.perms):
                self.gen_info[f"F{H}:{nm}"] = (self.mask[H], self._vertex_perm(aut))
        self._move_words = {}
        self._group = None

    @classmethod
    def of(cls, S: StickerSet) -> "SimplexPuzzle":
        P = S.lattice._cache.get("simplex_puzzle")
        if P is None:
            P = cls(S)
            S.lattice._cache["simplex_puzzle"] = P
        return P

    @property
    def group(self) -> BSGS:
        if self._group is None:
            self._group = rubik_group(self.S)
        return self._group

    def _vertex_perm(self, aut) -> tuple:
        return tuple(self.mask[apply(self.L, aut, v)].bit_length() - 1 for v in self._verts)

    def faces(self, r: int) -> list:
        return sorted((m for m in self.face if _popcount(m) == r + 1 and m != self.full),
                      key=lambda m: self.face[m])

    def slot(self, loc: int, col: int) -> int:
        return self.S.index[(self.face[loc], self.face[col])]

    def sticker_masks(self, i: int) -> tuple:
        s = self.S[i]
        return self.mask[s.location], self.mask[s.color]

    def colors(self, loc: int) -> list:
        return [self.mask[c] for c in self.L.above(self.face[loc]) if c != self.L.top]

    def move_word(self, facet: int, vperm) -> list:
        """Word for the move at facet mask ``facet`` acting on points by ``vperm``."""
        key = (facet, tuple(vperm))
        w = self._move_words.get(key)
        if w is None:
            fm = [self.face[_act(vperm, self.mask[f])] for f in range(self.L.num_faces)]
            aut = aut_from_face_map(self.L, fm)
            fid = self.face[facet]
            B = facet_rotation_group(self.L, fid)
            w = [(f"F{fid}:{nm}", inv) for nm, inv in B.factor(aut)]
            self._move_words[key] = w
        return w

    def evaluate(self, word) -> Permutation:
        return self.gens.evaluate(word)

    def perm_from_map(self, changes: dict) -> Permutation:
        """Sticker permutation moving ``(loc, col)`` masks as listed, fixing the rest."""
        img = list(range(len(self.S)))
        for (l1, c1), (l2, c2) in changes.items():
            img[self.slot(l1, c1)] = self.slot(l2, c2)
        return Permutation(img)

    def sigma(self, p: Permutation, r: int) -> dict:
        """Location permutation at rank ``r`` as a dict of masks."""
        out = {}
        for F in self.faces(r):
            out[F] = self.sticker_masks(p.images[self.slot(F, F)])[0]
        return out

    def tau_points(self, p: Permutation, F: int) -> tuple:
        """Point permutation induced on the facets above ``F`` (requires p to fix F)."""
        v = list(range(self.npts))
        for a in _bits(self.full & ~F):
            G = self.full & ~(1 << a)
            loc, col = self.sticker_masks(p.images[self.slot(F, G)])
            if loc != F:
                raise ValueError("location is not fixed")
            v[a] = (self.full & ~col).bit_length() - 1
        return tuple(v)

    def rank_slots(self, r: int) -> list:
        return [i for i in range(len(self.S)) if _popcount(self.sticker_masks(i)[0]) == r + 1]


_FACET_PUZZLES: dict = {}


def _puzzle_for(n: int) -> SimplexPuzzle:
    P = _FACET_PUZZLES.get(n)
    if P is None:
        P = SimplexPuzzle.of(rubik_construction(simplex(n)))
        _FACET_PUZZLES[n] = P
    return P


def _cofacial(masks, full) -> bool:
    u = 0
    for m in masks:
        u |= m
    return u != full


def _apply_token(P: SimplexPuzzle, tok, m: int) -> int:
    K, v = tok
    return _act(v, m) if m & ~K == 0 else m


# -- transporting faces into one facet ---------------------------------------------

def _find_move(P, K, pred):
    for v in _even_perms(P.npts, _bits(K)):
        if pred(v):
            return v
    return None


def _bring_tokens(P: SimplexPuzzle, F1: int, F2: int, F3: int):
    """Up to three (facet, point permutation) moves making F1, F2, F3 cofacial."""
    full = P.full
    alpha = _bits(F1 & ~F2)[0]
    H1 = full & ~(1 << alpha)
    phi1 = _find_move(P, H1, lambda v: _popcount(_act(v, F2) & ~F1) == 1)
    if phi1 is None:
        return None
    toks = [(H1, phi1)]
    F2p = _act(phi1, F2)
    F3p = _apply_token(P, toks[0], F3)
    core = F1 & ~(1 << alpha)
    if core & ~F3p == 0:
        # F1 minus alpha lies in F3': first move F1 off that position
        delta = _bits(F3p & ~F1)[0]
        H3 = full & ~(1 << delta)

        def good3(v):
            if v[alpha] != alpha or _act(v, F2p) != F2p or _act(v, F1) == F1:
                return False
            return (_act(v, F1) & ~(1 << alpha)) & ~F3p != 0
        phi3 = _find_move(P, H3, good3)
        if phi3 is None:
            return None
        toks.append((H3, phi3))
        F1 = _act(phi3, F1)
        core = F1 & ~(1 << alpha)
    union = F1 | F2p
    for gamma in _bits(core & ~F3p):
        H2 = full & ~(1 << gamma)
        phi2 = _find_move(P, H2, lambda v: _act(v, F3p) & ~union == 0)
        if phi2 is not None:
            toks.append((H2, phi2))
            return toks
    return None


def _bfs_tokens(P: SimplexPuzzle, locs, depth: int = 3):
    """Breadth-first search over single moves; used when the direct route fails."""
    full = P.full
    all_moves = [(K, v) for K in P.faces(P.n - 1) for v in _even_perms(P.npts, _bits(K))[1:]]
    frontier = [(tuple(locs), [])]
    seen = {tuple(locs)}
    for _ in range(depth):
        nxt = []
        for state, toks in frontier:
            for tok in all_moves:
                st = tuple(_apply_token(P, tok, m) for m in state)
                if st in seen:
                    continue
                seen.add(st)
                if _cofacial(st, full):
                    return toks + [tok]
                nxt.append((st, toks + [tok]))
        frontier = nxt
    return None


def _tokens_word(P: SimplexPuzzle, toks) -> list:
    word = []
    for tok in toks:
        word = P.move_word(*tok) + word
    return word


def bring_to_common_facet(S: StickerSet, locations) -> list:
    """Word after which the three equal-rank locations share a facet.

    ``locations`` are face ids (or stickers, whose locations are used).
    At most three moves are used.
    """
    P = SimplexPuzzle.of(S)
    masks = _location_masks(P, locations)
    return _tokens_word(P, _bring(P, masks))


def _location_masks(P, locations):
    out = []
    for x in locations:
        f = x.location if hasattr(x, "location") else x
        out.append(P.mask[f])
    if len(out) != 3:
        raise ValueError("exactly three locations are needed")
    if len(set(out)) != 3:
        raise NotCoFacial("locations must be distinct")
    r = {_popcount(m) - 1 for m in out}
    if len(r) != 1 or not 0 <= min(r) <= P.n - 2:
        raise BadRank("locations must share one rank at most n-2")
    return out


def _bring(P: SimplexPuzzle, masks) -> list:
    if _cofacial(masks, P.full):
        return []
    for order in itertools.permutations(range(3)):
        F1, F2, F3 = (masks[i] for i in order)
        toks = _bring_tokens(P, F1, F2, F3)
        if toks is not None:
            break
    else:
        toks = _bfs_tokens(P, masks)
        if toks is None:
            raise RuntimeError("no transport into a common facet found")
    images = list(masks)
    for tok in toks:
        images = [_apply_token(P, tok, m) for m in images]
    if not _cofacial(images, P.full):
        raise RuntimeError("transport did not reach a common facet")
    return toks


def _images(P, toks, masks):
    for tok in toks:
        masks = [_apply_token(P, tok, m) for m in masks]
    return masks


# -- facet-level elements lifted through the facet embedding ----------------------

class _FacetFrame:
    """Relabelling between a facet of the n-simplex and the (n-1)-simplex."""

    def __init__(self, P: SimplexPuzzle, alpha: int):
        self.P = P
        self.alpha = alpha
        self.pts = [b for b in range(P.npts) if b != alpha]
        self.back = {p: i for i, p in enumerate(self.pts)}
        self.Q = _puzzle_for(P.n - 1)
        self._lifted = {}

    def down(self, m: int) -> int:
        return sum(1 << self.back[b] for b in _bits(m) if b != self.alpha)

    def up(self, m: int) -> int:
        return sum(1 << self.pts[b] for b in _bits(m))

    def vdown(self, v) -> tuple:
        return tuple(self.back[v[p]] for p in self.pts)

    def lift_word(self, word) -> list:
        out = []
        for name, inv in word:
            w = self._lifted.get(name)
            if w is None:
                K, v = self.Q.gen_info[name]
                vv = list(range(self.P.npts))
                for i, j in enumerate(v):
                    vv[self.pts[i]] = self.pts[j]
                w = self.P.move_word(self.up(K) | 1 << self.alpha, tuple(vv))
                self._lifted[name] = w
            out.extend(invert_word(w) if inv else w)
        return out


def _commutator_word(a: list, b: list) -> list:
    """Word for a⁻¹b⁻¹ab."""
    return invert_word(a) + invert_word(b) + a + b


def _twist_target(Q: SimplexPuzzle, sig: dict, twists: dict, choices=None) -> Permutation:
    """Facet-level permutation moving rank-r locations by ``sig`` with colors
    carried by the point permutations in ``twists`` (identity elsewhere)."""
    changes = {}
    for F, v in twists.items():
        G = sig.get(F, F)
        for c in Q.colors(F):
            changes[(F, c)] = (G, _act(v, c))
    return Q.perm_from_map(changes)


def _cycle_target(Q: SimplexPuzzle, cyc) -> Permutation:
    """A member of Q's group whose location action is the 3-cycle ``cyc`` and
    which fixes every sticker at other locations."""
    sig = {cyc[0]: cyc[1], cyc[1]: cyc[2], cyc[2]: cyc[0]}
    opts = {}
    for F in cyc:
        seen = {}
        for v in itertools.permutations(range(Q.npts)):
            if _act(v, F) != sig[F]:
                continue
            key = tuple(_act(v, c) for c in Q.colors(F))
            seen.setdefault(key, v)
        opts[F] = list(seen.values())
    first = {F: opts[F][0] for F in cyc}
    for F in reversed(cyc):
        for v in opts[F]:
            tw = dict(first)
            tw[F] = v
            t = _twist_target(Q, sig, tw)
            if Q.group.contains(t):
                return t
    for combo in itertools.product(*(opts[F] for F in cyc)):
        t = _twist_target(Q, sig, dict(zip(cyc, combo)))
        if Q.group.contains(t):
            return t
    raise RuntimeError("no facet-level element realizes the 3-cycle")


def _solve_facet(Q: SimplexPuzzle, target: Permutation) -> list:
    cache = Q.L._cache.setdefault("facet_solutions", {})
    w = cache.get(target.images)
    if w is None:
        w = _solve(Q, target)
        cache[target.images] = w
    return w


def _check_support(P: SimplexPuzzle, p: Permutation, ok) -> None:
    for i, j in enumerate(p.images):
        if i != j and not ok(P.sticker_masks(i)):
            raise RuntimeError("operation moves a sticker outside its predicted support")


# -- 3-cycles of locations -------------------------------------------------------

def _three_cycle_search(P: SimplexPuzzle, cyc, H: int):
    """Find (facet 3-cycle, point permutation) whose commutator is ``cyc``."""
    r = _popcount(cyc[0]) - 1
    inner = [m for m in P.faces(r) if m & ~H == 0]
    want = {F: F for F in inner}
    want.update({cyc[0]: cyc[1], cyc[1]: cyc[2], cyc[2]: cyc[0]})
    phis = _even_perms(P.npts, _bits(H))
    cands = [tuple(cyc)]
    for a, b, c in itertools.permutations(inner, 3):
        if a < b and a < c and (a, b, c) != tuple(cyc):
            cands.append((a, b, c))
    for s in cands:
        sf = {F: F for F in inner}
        sf.update({s[0]: s[1], s[1]: s[2], s[2]: s[0]})
        sb = {v: k for k, v in sf.items()}
        for phi in phis:
            pinv = _vinv(phi)
            if all(sb[_act(pinv, sf[_act(phi, F)])] == want[F] for F in inner):
                return s, phi
    return None


def _three_cycle_masks(P: SimplexPuzzle, cyc, H: int) -> list:
    found = _three_cycle_search(P, cyc, H)
    if found is None:
        raise NotCoFacial("no commutator realizes this 3-cycle inside the facet")
    s, phi = found
    alpha = (P.full & ~H).bit_length() - 1
    fr = _FacetFrame(P, alpha)
    t = _cycle_target(fr.Q, [fr.down(m) for m in s])
    mu_hat = fr.lift_word(_solve_facet(fr.Q, t))
    word = _commutator_word(mu_hat, P.move_word(H, phi))
    p = P.evaluate(word)
    r = _popcount(cyc[0]) - 1
    for k in range(P.n):
        sg = P.sigma(p, k)
        moved = {F: G for F, G in sg.items() if F != G}
        expect = {cyc[0]: cyc[1], cyc[1]: cyc[2], cyc[2]: cyc[0]} if k == r else {}
        if moved != expect:
            raise RuntimeError("commutator does not act as the predicted 3-cycle")
    _check_support(P, p, lambda lc: lc[0] & ~H == 0 and _popcount(lc[0]) == r + 1)
    return word


def commutator_three_cycle(S: StickerSet, locations, carrier: int) -> list:
    """Word whose location action is exactly the 3-cycle F1 → F2 → F3.

    The three locations must be distinct faces of one rank r ≤ n-3 lying
    in the facet ``carrier``.  The word is a commutator of a lifted
    facet-level element with a single move at ``carrier``.
    """
    P = SimplexPuzzle.of(S)
    if P.n < 4:
        raise RankOutOfRange("needs n >= 4")
    masks = [P.mask[x.location if hasattr(x, "location") else x] for x in locations]
    if len(masks) != 3 or len(set(masks)) != 3:
        raise NotCoFacial("three distinct locations are needed")
    r = {_popcount(m) - 1 for m in masks}
    if len(r) != 1 or not 0 <= min(r) <= P.n - 3:
        raise RankOutOfRange("locations must share one rank at most n-3")
    H = P.mask[carrier]
    if _popcount(H) != P.n or any(m & ~H for m in masks):
        raise NotCoFacial("locations do not lie in the carrier facet")
    return _three_cycle_masks(P, masks, H)


def _canonical(P: SimplexPuzzle, masks) -> tuple:
    key = P.L._cache.setdefault("point_perms", list(itertools.permutations(range(P.npts))))
    return min(tuple(_act(v, m) for m in masks) for v in key)


def _cycle_feasible(P: SimplexPuzzle, images) -> int:
    """A carrier facet in which the commutator route realizes ``images``, or 0."""
    cache = P.L._cache.setdefault("cycle_feasible", {})
    union = images[0] | images[1] | images[2]
    for alpha in _bits(P.full & ~union):
        H = P.full & ~(1 << alpha)
        key = _canonical(P, list(images) + [H])
        ok = cache.get(key)
        if ok is None:
            ok = _three_cycle_search(P, images, H) is not None
            cache[key] = ok
        if ok:
            return H
    return 0


def _pre_moves(P: SimplexPuzzle):
    """Move sequences of length 0, 1 and 2, tried before a transport."""
    yield ()
    singles = [(K, v) for K in P.faces(P.n - 1) for v in _even_perms(P.npts, _bits(K))[1:]]
    for t in singles:
        yield (t,)
    for t in singles:
        for u in singles:
            if t[0] != u[0]:
                yield (t, u)


def _transport_for_cycle(P: SimplexPuzzle, cyc):
    """Moves bringing ``cyc`` into a facet where the commutator route works."""
    for pre in _pre_moves(P):
        start = _images(P, pre, list(cyc))
        if len(set(start)) < 3:
            continue
        toks = list(pre) + _bring(P, start)
        images = _images(P, toks, list(cyc))
        H = _cycle_feasible(P, images)
        if H:
            return toks, images, H
    return None


def _direct_cycle(P: SimplexPuzzle, cyc) -> list:
    """Lifted facet-level 3-cycle on its own; it also cycles the faces one rank up."""
    toks = _bring(P, list(cyc))
    images = _images(P, toks, list(cyc))
    C = _tokens_word(P, toks)
    alpha = (P.full & ~(images[0] | images[1] | images[2])).bit_length() - 1
    fr = _FacetFrame(P, alpha)
    t = _cycle_target(fr.Q, [fr.down(m) for m in images])
    word = invert_word(C) + fr.lift_word(_solve_facet(fr.Q, t)) + C
    p = P.evaluate(word)
    r = _popcount(cyc[0]) - 1
    for k in range(r + 1):
        moved = {F: G for F, G in P.sigma(p, k).items() if F != G}
        expect = {cyc[0]: cyc[1], cyc[1]: cyc[2], cyc[2]: cyc[0]} if k == r else {}
        if moved != expect:
            raise RuntimeError("lifted 3-cycle acts wrongly at or below its rank")
    for k in range(r + 2, P.n - 1):
        if any(F != G for F, G in P.sigma(p, k).items()):
            raise RuntimeError("lifted 3-cycle moves faces two ranks up")
    return word


def _three_cycle_op(P: SimplexPuzzle, cyc) -> list:
    """Word with location action F1 → F2 → F3 at rank r ≤ n-3.

    The commutator route fixes every other location.  When no transport
    admits it (vertex 3-cycles of the 4-simplex), and r < n-3, the lifted
    facet element is used on its own and disturbs rank r+1.
    """
    r = _popcount(cyc[0]) - 1
    found = None
    if not (r == 0 and P.n == 4):
        found = _transport_for_cycle(P, cyc)
    if found is None:
        if r < P.n - 3:
            return _direct_cycle(P, cyc)
        raise NotCoFacial("no commutator realizes this 3-cycle")
    toks, images, H = found
    C = _tokens_word(P, toks)
    return invert_word(C) + _three_cycle_masks(P, images, H) + C


def three_cycle(S: StickerSet, locations) -> list:
    """Word whose rank-r location action is the 3-cycle F1 → F2 → F3, any r ≤ n-3.

    Combines the transport search with :func:`commutator_three_cycle`; at
    r < n-3 it may fall back to a lifted facet element that also moves
    faces of rank r+1.
    """
    P = SimplexPuzzle.of(S)
    if P.n < 4:
        raise RankOutOfRange("needs n >= 4")
    masks = [P.mask[x.location if hasattr(x, "location") else x] for x in locations]
    if len(masks) != 3 or len(set(masks)) != 3:
        raise NotCoFacial("three distinct locations are needed")
    r = {_popcount(m) - 1 for m in masks}
    if len(r) != 1 or not 0 <= min(r) <= P.n - 3:
        raise RankOutOfRange("locations must share one rank at most n-3")
    return _three_cycle_op(P, masks)


# -- orientation swaps --------------------------------------------------------

def _facet_twist_member(Q: SimplexPuzzle, twists: dict):
    t = _twist_target(Q, {}, twists)
    return t if Q.group.contains(t) else None


def _orientation_inner(P: SimplexPuzzle, want: dict, H: int):
    """Commutator word inside facet ``H`` whose only effect is the point
    permutations ``want`` (face mask -> point permutation) on colors."""
    r = _popcount(next(iter(want))) - 1
    alpha = (P.full & ~H).bit_length() - 1
    inner = [m for m in P.faces(r) if m & ~H == 0]
    ident = tuple(range(P.npts))
    phis = _even_perms(P.npts, _bits(H))
    cand = []
    for X in inner:
        free = _bits(H & ~X)
        for a, b in itertools.combinations(free, 2):
            cand.append((X, _transposition(P.npts, a, b)))
    fr = _FacetFrame(P, alpha)
    for (X1, u1), (X2, u2) in itertools.combinations(cand, 2):
        if X1 == X2:
            continue
        tw = {X1: u1, X2: u2}
        for phi in phis:
            pinv = _vinv(phi)
            ok = True
            for F in inner:
                t = tw.get(F, ident)
                tp = tw.get(_act(phi, F), ident)
                got = _vcompose(_vinv(t), _vcompose(pinv, _vcompose(tp, phi)))
                if got != want.get(F, ident):
                    ok = False
                    break
            if not ok:
                continue
            target = _facet_twist_member(fr.Q, {fr.down(X): fr.vdown(u) for X, u in tw.items()})
            if target is None:
                continue
            mu_hat = fr.lift_word(_solve_facet(fr.Q, target))
            return _commutator_word(mu_hat, P.move_word(H, phi))
    return None


def _expected_twist(P: SimplexPuzzle, want: dict) -> Permutation:
    changes = {}
    for F, v in want.items():
        for c in P.colors(F):
            changes[(F, c)] = (F, _act(v, c))
    return P.perm_from_map(changes)


def _orientation_op(P: SimplexPuzzle, F1: int, t1, F2: int, t2) -> list:
    """Word applying point transposition t1 to F1's colors and t2 to F2's."""
    target = _expected_twist(P, {F1: t1, F2: t2})
    r = _popcount(F1) - 1
    third = [m for m in P.faces(r) if m not in (F1, F2)][0]
    tried = set()
    for pre in _pre_moves(P):
        start = _images(P, pre, [F1, F2, third])
        if len(set(start)) < 3:
            continue
        toks = list(pre) + _bring(P, start)
        images = _images(P, toks, [F1, F2])
        C = _tokens_word(P, toks)
        Cv = P.evaluate(C)
        moved = Cv * target * Cv.inverse()
        want = {G: P.tau_points(moved, G) for G in images}
        key = _canonical(P, list(images) + [sum(1 << i for i in range(P.npts) if v[i] != i)
                                            for v in want.values()])
        if key in tried:
            continue
        tried.add(key)
        sw = set()
        for v in want.values():
            sw.update(i for i in range(P.npts) if v[i] != i)
        for alpha in _bits(P.full & ~(images[0] | images[1])):
            if alpha in sw:
                continue
            inner = _orientation_inner(P, want, P.full & ~(1 << alpha))
            if inner is None:
                continue
            if P.evaluate(inner) != moved:
                raise RuntimeError("commutator does not act as the predicted color swap")
            word = invert_word(C) + inner + C
            if P.evaluate(word) != target:
                raise RuntimeError("transported color swap is wrong")
            return word
    raise RuntimeError("no color-swap construction found")


def orientation_fix(S: StickerSet, F1: int, F2: int, colors1, colors2) -> list:
    """Word exchanging the two given facet colors at F1 and at F2.

    ``colors1`` and ``colors2`` are pairs of facet ids above F1 and F2.  The
    resulting permutation acts on the colors of F_i as the automorphism
    that swaps the two facets, and fixes every other sticker.
    """
    P = SimplexPuzzle.of(S)
    m1, m2 = P.mask[F1], P.mask[F2]
    r = _popcount(m1) - 1
    if _popcount(m2) - 1 != r or not 1 <= r <= P.n - 3:
        raise RankOutOfRange("both faces must have one rank between 1 and n-3")
    if m1 == m2:
        raise BadColors("faces must be distinct")
    ts = []
    for F, cols in ((m1, colors1), (m2, colors2)):
        g = [P.mask[c] for c in cols]
        if len(g) != 2 or g[0] == g[1] or any(_popcount(x) != P.n or x & F != F for x in g):
            raise BadColors("colors must be two distinct facets above the face")
        a, b = ((P.full & ~x).bit_length() - 1 for x in g)
        ts.append(_transposition(P.npts, a, b))
    return _orientation_op(P, m1, ts[0], m2, ts[1])


# -- ridges through the embedded tetrahedron ----------------------------------------

def _tetra_edge_group(Q: SimplexPuzzle):
    key = "edge_projection"
    hit = Q.L._cache.get(key)
    if hit is None:
        slots = Q.rank_slots(1)
        local = {s: k for k, s in enumerate(slots)}
        perms = [Permutation(local[p.images[s]] for s in slots) for p in Q.gens.perms]
        B = build_bsgs(GeneratorSet(len(slots), list(Q.gens.names), perms))
        hit = (slots, local, B)
        Q.L._cache[key] = hit
    return hit


def _ridge_inner(P: SimplexPuzzle, alpha: int, xs, mapping: dict) -> list:
    """Word realizing ``mapping`` (ridge sticker masks -> masks) on ridges
    through the tetrahedron spanned by alpha and ``xs``."""
    Hpts = sorted([alpha] + list(xs))
    Hmask = sum(1 << b for b in Hpts)
    X = P.full & ~Hmask
    back = {p: i for i, p in enumerate(Hpts)}
    Q = _puzzle_for(3)

    def down(m):
        return sum(1 << back[b] for b in _bits(m & Hmask))
    slots, local, B = _tetra_edge_group(Q)
    img = list(range(len(slots)))
    for (l1, c1), (l2, c2) in mapping.items():
        img[local[Q.slot(down(l1), down(c1))]] = local[Q.slot(down(l2), down(c2))]
    e = Permutation(img)
    word3 = B.factor(e)
    out = []
    for name, inv in word3:
        K, v = Q.gen_info[name]
        vv = list(range(P.npts))
        for i, j in enumerate(v):
            vv[Hpts[i]] = Hpts[j]
        w = P.move_word(sum(1 << Hpts[b] for b in _bits(K)) | X, tuple(vv))
        out.extend(invert_word(w) if inv else w)
    return out


def _ridge_colors_map(P, R1, R2, swap: bool) -> dict:
    """Sticker map sending ridge R1 to R2 (points outside in order, optionally swapped)."""
    a1 = _bits(P.full & ~R1)
    a2 = _bits(P.full & ~R2)
    if swap:
        a2 = a2[::-1]
    out = {(R1, R1): (R2, R2)}
    for x, y in zip(a1, a2):
        out[(R1, R1 | 1 << x)] = (R2, R2 | 1 << y)
    return out


def _restricted_equal(P, p, q, rank) -> bool:
    return all(p.images[i] == q.images[i] for i in P.rank_slots(rank))


def _ridge_op(P: SimplexPuzzle, ridges, mapping_of) -> list:
    """Transport ``ridges`` into a facet, realize the ridge-level action, transport back.

    ``mapping_of(images)`` gives the desired sticker map on the transported ridges.
    """
    toks = _bring(P, list(ridges))
    images = _images(P, toks, list(ridges))
    C = _tokens_word(P, toks)
    alpha = (P.full & ~(images[0] | images[1] | images[2])).bit_length() - 1
    xs = [_bits(P.full & ~m & ~(1 << alpha))[0] for m in images]
    mapping = mapping_of(images)
    inner = _ridge_inner(P, alpha, xs, mapping)
    want = P.perm_from_map(mapping)
    if not _restricted_equal(P, P.evaluate(inner), want, P.n - 2):
        raise RuntimeError("embedded tetrahedron word does not act as predicted on ridges")
    return invert_word(C) + inner + C, toks


def _ridge_three_cycle(P: SimplexPuzzle, cyc) -> list:
    tetra = _puzzle_for(3)
    slots, local, B = _tetra_edge_group(tetra)
    last = None
    for swaps in itertools.product((False, True), repeat=3):
        def mapping_of(im):
            out = {}
            for k in range(3):
                out.update(_ridge_colors_map(P, im[k], im[(k + 1) % 3], swaps[k]))
            return out
        try:
            word, _ = _ridge_op(P, cyc, mapping_of)
        except NotMember as e:
            last = e
            continue
        p = P.evaluate(word)
        sg = P.sigma(p, P.n - 2)
        moved = {F: G for F, G in sg.items() if F != G}
        if moved != {cyc[0]: cyc[1], cyc[1]: cyc[2], cyc[2]: cyc[0]}:
            raise RuntimeError("ridge 3-cycle acts on the wrong ridges")
        for F in P.faces(P.n - 2):
            if F not in cyc and P.tau_points(p, F) != tuple(range(P.npts)):
                raise RuntimeError("ridge 3-cycle disturbs another ridge")
        return word
    raise last or RuntimeError("no ridge 3-cycle found")


def _ridge_double_flip(P: SimplexPuzzle, R1: int, R2: int) -> list:
    R3 = next(m for m in P.faces(P.n - 2) if m not in (R1, R2))

    def mapping_of(im):
        out = {}
        for m in im[:2]:
            out.update(_ridge_colors_map(P, m, m, True))
        return out
    word, _ = _ridge_op(P, [R1, R2, R3], mapping_of)
    want = P.perm_from_map({**_ridge_colors_map(P, R1, R1, True), **_ridge_colors_map(P, R2, R2, True)})
    if not _restricted_equal(P, P.evaluate(word), want, P.n - 2):
        raise RuntimeError("ridge double flip is wrong")
    return word


# -- rank-0 orientations --------------------------------------------------------

def _rank_local(P, slots, p):
    local = {s: k for k, s in enumerate(slots)}
    return Permutation(local[p.images[s]] for s in slots)


def _vertex_twists(P: SimplexPuzzle, limit: int = 6) -> list:
    """Commutators of lifted facet-level vertex twists with single moves."""
    alpha = P.n
    H = P.full & ~(1 << alpha)
    fr = _FacetFrame(P, alpha)
    inner = [m for m in P.faces(0) if m & ~H == 0]
    out, seen = [], set()
    for X1, X2 in itertools.combinations(inner, 2):
        for u1 in _even_perms(P.npts, _bits(H & ~X1))[1:]:
            for u2 in _even_perms(P.npts, _bits(H & ~X2))[1:]:
                target = _facet_twist_member(fr.Q, {fr.down(X1): fr.vdown(u1),
                                                    fr.down(X2): fr.vdown(u2)})
                if target is None:
                    continue
                mu_hat = fr.lift_word(_solve_facet(fr.Q, target))
                for phi in _even_perms(P.npts, _bits(H))[1:]:
                    word = _commutator_word(mu_hat, P.move_word(H, phi))
                    p = P.evaluate(word)
                    if p.is_identity() or p.images in seen:
                        continue
                    seen.add(p.images)
                    out.append(word)
                    if len(out) >= limit:
                        return out
    return out


class _VertexOps:
    """Pure vertex-layer operations with words, grown on demand."""

    def __init__(self, P: SimplexPuzzle):
        self.P = P
        self.slots = P.rank_slots(0)
        self.words, self.perms, self.fresh = [], [], []
        for word in _vertex_twists(P):
            self.add(word)
        self.B = None
        self._next_gen = 0

    def add(self, word, p=None):
        P = self.P
        if p is None:
            p = P.evaluate(word)
        _check_support(P, p, lambda lc: _popcount(lc[0]) == 1)
        self.perms.append(_rank_local(P, self.slots, p))
        self.words.append(word)
        self.fresh.append((word, p))
        self.B = None

    def group(self) -> BSGS:
        if self.B is None:
            G = GeneratorSet(len(self.slots), [f"op{i}" for i in range(len(self.perms))],
                             list(self.perms))
            self.B = build_bsgs(G)
        return self.B

    def reduced_move(self) -> bool:
        """Add the vertex residue of the next move generator if it is new.

        Commutators only reach twists obeying the vertex product rule; single
        moves reduced through every other layer supply the rest.
        """
        P = self.P
        while self._next_gen < len(P.gens.names):
            name = P.gens.names[self._next_gen]
            self._next_gen += 1
            parts = []
            rest = _reduce_to_vertex_layer(P, P.gens[name], parts)
            if rest.is_identity() or self.group().contains(_rank_local(P, self.slots, rest)):
                continue
            self.add(invert_word([t for part in parts for t in part]) + [(name, False)], rest)
            return True
        return False

    def grow(self):
        """Conjugate the newest operations by every move generator."""
        fresh, self.fresh = self.fresh, []
        for w, p in fresh:
            for name in self.P.gens.names:
                g = self.P.gens[name]
                self.add([(name, True)] + w + [(name, False)], g.inverse() * p * g)


def _vertex_ops(P: SimplexPuzzle, residual: Permutation, max_rounds: int = 3) -> list:
    """Word for ``residual``, which must be trivial off the vertex layer."""
    V = P.L._cache.get("vertex_ops")
    if V is None:
        V = _VertexOps(P)
        P.L._cache["vertex_ops"] = V
    target = _rank_local(P, V.slots, residual)
    rounds = 0
    while not V.group().contains(target):
        if V.reduced_move():
            continue
        if rounds == max_rounds:
            raise RuntimeError("vertex operations do not reach the residual")
        V.grow()
        rounds += 1
    out = []
    for name, inv in V.group().factor(target):
        w = V.words[int(name[2:])]
        out.extend(invert_word(w) if inv else w)
    return out


# -- the inductive simplex solver ----------------------------------------------

def _fix_step(P, residual, word, parts):
    """Record ``word`` as the next factor and strip it from ``residual``."""
    v = P.evaluate(word)
    parts.append(word)
    return v.inverse() * residual


def _reduce_to_vertex_layer(P: SimplexPuzzle, R: Permutation, parts: list) -> Permutation:
    """Strip factors from ``R`` until only vertex-color twists remain."""
    n = P.n
    ident = tuple(range(P.npts))
    # ridges: locations, then the two-color flips
    R = _fix_sigma(P, R, n - 2, parts, lambda cyc: _ridge_three_cycle(P, cyc))
    flipped = [F for F in P.faces(n - 2) if P.tau_points(R, F) != ident]
    if len(flipped) % 2:
        raise NotMember("odd number of flipped ridges")
    for k in range(0, len(flipped), 2):
        R = _fix_step(P, R, _ridge_double_flip(P, flipped[k], flipped[k + 1]), parts)
    # lower ranks: locations bottom-up, since a lifted 3-cycle may disturb
    # the rank above it; then colors by paired swaps
    for r in range(n - 2):
        R = _fix_sigma(P, R, r, parts, lambda cyc: _three_cycle_op(P, cyc))
    for r in range(1, n - 2):
        R = _fix_orientations(P, R, r, parts)
    return R


def _solve(P: SimplexPuzzle, target: Permutation) -> list:
    if P.n <= 3:
        return solve_generic(P.group, target)
    parts = []
    R = _reduce_to_vertex_layer(P, target, parts)
    if not R.is_identity():
        R = _fix_step(P, R, _vertex_ops(P, R), parts)
    if not R.is_identity():
        raise RuntimeError("solver left a nontrivial residual")
    out = []
    for w in parts:
        out.extend(w)
    return reduce_word(out)


def _fix_sigma(P, R, r, parts, make):
    faces = P.faces(r)
    for _ in range(4 * len(faces) + 4):
        sg = P.sigma(R, r)
        moved = [F for F in faces if sg[F] != F]
        if not moved:
            return R
        F = moved[0]
        G = sg[F]
        Z = sg[G] if sg[G] != F else next(x for x in moved + faces if x not in (F, G))
        R = _fix_step(P, R, make((F, G, Z)), parts)
    raise RuntimeError("location fixing did not converge")


def _fix_orientations(P, R, r, parts):
    faces = P.faces(r)
    while True:
        items = []
        for F in faces:
            v = P.tau_points(R, F)
            x = next((i for i in range(P.npts) if v[i] != i), None)
            if x is not None:
                items.append((F, _transposition(P.npts, x, v[x])))
        if not items:
            return R
        F1, t1 = items[0]
        other = next(((F, t) for F, t in items[1:] if F != F1), None)
        if other is None:
            X = next(m for m in faces if m != F1)
            pts = _bits(P.full & ~X)
            other = (X, _transposition(P.npts, pts[0], pts[1]))
        R = _fix_step(P, R, _orientation_op(P, F1, t1, *other), parts)


def solve_simplex(S: StickerSet, target: Permutation) -> list:
    """Word for ``target`` built by the inductive commutator strategy.

    Ridges are fixed first through an embedded tetrahedron, then each lower
    rank by transported 3-cycles and paired color swaps; the vertex layer's
    orientations are finished by factoring in the group of pure vertex
    operations.  The base case n = 3 factors directly.
    """
    P = SimplexPuzzle.of(S)
    if not P.group.contains(target):
        raise NotMember("target is not in the Rubik's group")
    word = _solve(P, target)
    if P.evaluate(word) != target:
        raise RuntimeError("solution does not evaluate to the target")
    return word
