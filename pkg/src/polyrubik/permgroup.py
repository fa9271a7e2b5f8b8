"""Permutation groups: composition, Schreier-Sims, membership and factorization.

Permutations are stored as tuples of images.  Composition is functional,
``(a * b)(i) == a(b(i))``, so words are evaluated right to left.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import lcm
from operator import itemgetter
from typing import Iterable, Sequence


class DomainMismatch(ValueError):
    pass


class NotMember(ValueError):
    pass


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        self.images = tuple(images)
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        p = cls(img)
        if len(set(p.images)) != degree:
            raise ValueError("cycles overlap")
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self):
        return f"Permutation({self.cycle_string()})"

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def inverse(self) -> "Permutation":
        return inverse(self)

    def cycles(self) -> list:
        """Nontrivial cycles, each starting at its least point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def sign(self) -> int:
        return sign(self)

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))

    def support(self) -> list:
        return [i for i, x in enumerate(self.images) if x != i]


def _compose_images(a: tuple, b: tuple) -> tuple:
    if len(b) == 1:
        return (a[b[0]],)
    return itemgetter(*b)(a) if b else ()


def _inverse_images(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` after ``b``."""
    if a.degree != b.degree:
        raise DomainMismatch(f"degrees {a.degree} and {b.degree}")
    return Permutation(_compose_images(a.images, b.images))


def inverse(a: Permutation) -> Permutation:
    return Permutation(_inverse_images(a.images))


def sign(a: Permutation) -> int:
    parity = sum(len(c) - 1 for c in a.cycles()) % 2
    return -1 if parity else 1


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``a^-1 b^-1 a b``."""
    return inverse(a) * inverse(b) * a * b


# -- generator sets and words -------------------------------------------------

Token = tuple  # (name, inverse_flag)


@dataclass
class GeneratorSet:
    degree: int
    names: list = field(default_factory=list)
    perms: list = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")
        for p in self.perms:
            if p.degree != self.degree:
                raise DomainMismatch(f"generator of degree {p.degree} in a set of degree {self.degree}")
        self._index = {n: i for i, n in enumerate(self.names)}
        self._inverses = [inverse(p) for p in self.perms]

    @classmethod
    def from_pairs(cls, degree, pairs):
        pairs = list(pairs)
        return cls(degree, [n for n, _ in pairs], [p for _, p in pairs])

    def __len__(self):
        return len(self.names)

    def index(self, name) -> int:
        return self._index[name]

    def __getitem__(self, name) -> Permutation:
        return self.perms[self._index[name]]

    def token_perm(self, token) -> Permutation:
        name, inv = token
        i = self._index[name]
        return self._inverses[i] if inv else self.perms[i]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def evaluate(self, word) -> Permutation:
        """Value of ``t1 t2 ... tk``: ``tk`` acts first."""
        img = tuple(range(self.degree))
        idx = self._index
        perms = [p.images for p in self.perms]
        invs = [p.images for p in self._inverses]
        for name, inv in word:
            i = idx[name]
            img = _compose_images(img, invs[i] if inv else perms[i])
        return Permutation(img)


def invert_word(word) -> list:
    return [(name, not inv) for name, inv in reversed(word)]


def format_word(word) -> str:
    return "".join(f"{name}{chr(39) if inv else ''}\n" for name, inv in word)


def parse_word(text: str) -> list:
    out = []
    for line in text.splitlines():
        tok = line.strip()
        if not tok or tok.startswith("#"):
            continue
        if tok.endswith("'"):
            out.append((tok[:-1], True))
        else:
            out.append((tok, False))
    return out


def reduce_word(word, orders=None) -> list:
    """Cancel ``g g'`` pairs and reduce runs of one generator modulo its order."""
    stack = []  # entries [name, exponent]
    for name, inv in word:
        e = -1 if inv else 1
        if stack and stack[-1][0] == name:
            stack[-1][1] += e
            m = orders.get(name) if orders else None
            if m:
                stack[-1][1] %= m
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([name, e])
    out = []
    for name, e in stack:
        m = orders.get(name) if orders else None
        if m:
            e %= m
            if e > m // 2:
                e -= m
        out.extend([(name, e < 0)] * abs(e))
    return out


def orbit(G: GeneratorSet, point: int) -> set:
    seen = {point}
    queue = [point]
    for x in queue:
        for p in G.perms:
            y = p.images[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# -- BSGS ---------------------------------------------------------------------

class _Level:
    __slots__ = ("point", "gens", "orbit", "reps", "inv_reps")

    def __init__(self, point, degree):
        self.point = point
        self.gens = []          # indices into BSGS.strong
        self.orbit = [point]
        ident = tuple(range(degree))
        self.reps = {point: ident}
        self.inv_reps = {point: ident}


class BSGS:
    """Base and strong generating set with explicit transversals.

    Build with :func:`build_bsgs`.  Factorization tables are filled lazily on
    the first call to :meth:`factor`.
    """

    def __init__(self, generators: GeneratorSet, seed: int = 0):
        self.generators = generators
        self.degree = generators.degree
        self.seed = seed
        self.base = []
        self.levels = []
        self.strong = []        # (images, inverse images)
        self._tables = None
        self._orders = {n: p.order() for n, p in zip(generators.names, generators.perms)}

    # -- structure --------------------------------------------------------
    @property
    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.orbit)
        return out

    def orbit_sizes(self) -> list:
        return [len(lv.orbit) for lv in self.levels]

    def strong_generators(self, level=0) -> list:
        if level >= len(self.levels):
            return []
        return [Permutation(self.strong[i][0]) for i in self.levels[level].gens]

    def _new_level(self, point):
        self.base.append(point)
        self.levels.append(_Level(point, self.degree))

    def _extend_orbit(self, lv: _Level, gi):
        queue = []
        for p in list(lv.orbit):
            self._try_add(lv, p, gi, queue)
        for p in queue:
            for g in lv.gens:
                self._try_add(lv, p, g, queue)

    def _try_add(self, lv, p, gi, queue):
        s_img = self.strong[gi][0]
        q = s_img[p]
        if q in lv.reps:
            return
        u = _compose_images(s_img, lv.reps[p])
        lv.reps[q] = u
        lv.inv_reps[q] = _inverse_images(u)
        lv.orbit.append(q)
        queue.append(q)

    def _add_strong(self, img, level):
        if level == len(self.levels):
            moved = next(i for i, x in enumerate(img) if x != i)
            self._new_level(moved)
        gi = len(self.strong)
        self.strong.append((img, _inverse_images(img)))
        for l in range(level + 1):
            lv = self.levels[l]
            lv.gens.append(gi)
            self._extend_orbit(lv, gi)

    def _sift(self, img, start=0):
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            inv = lv.inv_reps.get(img[lv.point])
            if inv is None:
                return img, i
            img = _compose_images(inv, img)
        return img, len(self.levels)

    # -- queries ----------------------------------------------------------
    def _check(self, p):
        if p.degree != self.degree:
            raise DomainMismatch(f"permutation of degree {p.degree} against group of degree {self.degree}")

    def contains(self, p: Permutation) -> bool:
        self._check(p)
        img, _ = self._sift(p.images)
        return all(i == x for i, x in enumerate(img))

    def factor(self, p: Permutation) -> list:
        """A word in the generator names evaluating exactly to ``p``."""
        self._check(p)
        if not self.contains(p):
            raise NotMember("permutation is not in the group")
        tables = self._word_tables()
        img = p.images
        out = []
        for lv, table in zip(self.levels, tables):
            word, t_img, t_inv = table[img[lv.point]]
            out.extend(word)
            img = _compose_images(t_inv, img)
        names = self.generators.names
        return reduce_word([(names[abs(k) - 1], k < 0) for k in out], self._orders)

    def random_element(self, rng) -> Permutation:
        if not isinstance(rng, random.Random):
            rng = random.Random(rng)
        img = tuple(range(self.degree))
        for lv in self.levels:
            u = lv.reps[lv.orbit[rng.randrange(len(lv.orbit))]]
            img = _compose_images(img, u)
        return Permutation(img)

    def elements(self):
        """Iterate over all elements (small groups only)."""
        def rec(i, img):
            if i == len(self.levels):
                yield Permutation(img)
                return
            lv = self.levels[i]
            for pt in lv.orbit:
                yield from rec(i + 1, _compose_images(img, lv.reps[pt]))
        yield from rec(0, tuple(range(self.degree)))

    def subgroup_at(self, level: int) -> "BSGS":
        """The pointwise stabilizer of ``base[:level]``, sharing this chain.

        Only membership, order and random elements are meaningful on the
        result; its factorizations would be in the parent's generators.
        """
        sub = BSGS.__new__(BSGS)
        sub.generators = self.generators
        sub.degree = self.degree
        sub.seed = self.seed
        sub.base = self.base[level:]
        sub.levels = self.levels[level:]
        sub.strong = self.strong
        sub._tables = None
        sub._orders = self._orders
        return sub

    # -- word tables --------------------------------------------------------
    def _word_tables(self):
        if self._tables is None:
            self._tables = _fill_word_tables(self)
        return self._tables


def build_bsgs(G: GeneratorSet, seed: int = 0, base: Sequence[int] = (),
               random_sifts: int = 40, walk_length: int = 30) -> BSGS:
    """Schreier-Sims: a randomized warm-up followed by exhaustive checking.

    The warm-up sifts random generator walks until ``random_sifts``
    consecutive ones sift to the identity; the deterministic phase then
    sifts every Schreier generator, so the result is exact whatever the
    warm-up did.  Output depends only on ``(G, seed, base)``.
    """
    B = BSGS(G, seed)
    for b in base:
        B._new_level(b)
    gens = [p.images for p in G.perms if not p.is_identity()]
    if not gens:
        return B
    for g in gens:
        img, lvl = B._sift(g)
        if any(k != x for k, x in enumerate(img)):
            B._add_strong(img, lvl)

    rng = random.Random(seed)
    invs = [_inverse_images(g) for g in gens]
    quiet = 0
    while quiet < random_sifts:
        img = tuple(range(B.degree))
        for _ in range(walk_length):
            k = rng.randrange(len(gens))
            img = _compose_images(img, invs[k] if rng.random() < 0.5 else gens[k])
        img, lvl = B._sift(img)
        if any(k != x for k, x in enumerate(img)):
            B._add_strong(img, lvl)
            quiet = 0
        else:
            quiet += 1

    _schreier_sims(B)
    return B


def _schreier_sims(B: BSGS):
    checked = [set() for _ in B.levels]
    i = len(B.levels) - 1
    while i >= 0:
        while len(checked) < len(B.levels):
            checked.append(set())
        lv = B.levels[i]
        restart = None
        gi_pos = 0
        while gi_pos < len(lv.gens) and restart is None:
            gi = lv.gens[gi_pos]
            s_img = B.strong[gi][0]
            pos = 0
            while pos < len(lv.orbit):
                beta = lv.orbit[pos]
                pos += 1
                key = (beta, gi)
                if key in checked[i]:
                    continue
                checked[i].add(key)
                sg = _compose_images(lv.inv_reps[s_img[beta]], _compose_images(s_img, lv.reps[beta]))
                if all(k == x for k, x in enumerate(sg)):
                    continue
                img, lvl = B._sift(sg, start=i + 1)
                if any(k != x for k, x in enumerate(img)):
                    B._add_strong(img, lvl)
                    restart = lvl
                    break
            gi_pos += 1
        i = restart if restart is not None else i - 1


# -- short words for transversal elements ----------------------------------
# Words are lists of signed ints: k > 0 is generator k-1, k < 0 its inverse.

def _free_reduce(word):
    out = []
    for k in word:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return out


def _inv_word(word):
    return [-k for k in reversed(word)]


def _fill_word_tables(B: BSGS, max_rounds: int = 10000):
    """Find a word for every transversal element.

    Elements given by short random words, and products of words already
    found, are sifted through the chain; at each level a word is recorded
    for a point not yet covered or replaces a longer one.  Runs until every
    orbit point at every level has a word.
    """
    deg = B.degree
    ident = tuple(range(deg))
    tables = [{lv.point: ([], ident, ident)} for lv in B.levels]
    need = sum(len(lv.orbit) for lv in B.levels)
    have = len(B.levels)
    G = B.generators
    gens = [p.images for p in G.perms]
    invs = [_inverse_images(g) for g in gens]
    live = [i for i, g in enumerate(gens) if g != ident]
    rng = random.Random(B.seed + 1)
    cap = 32 + 2 * len(B.levels)

    def perm_of(k):
        return gens[k - 1] if k > 0 else invs[-k - 1]

    def insert(img, word):
        nonlocal have
        for i, lv in enumerate(B.levels):
            if len(word) > cap:
                return
            x = img[lv.point]
            entry = tables[i].get(x)
            if entry is None or len(word) < len(entry[0]):
                if entry is None:
                    have += 1
                new = (word, img, _inverse_images(img))
                tables[i][x] = new
                if entry is None:
                    return
                # keep sifting the displaced element
                img = _compose_images(new[2], entry[1])
                word = _free_reduce(_inv_word(word) + entry[0])
                if img == ident:
                    return
                continue
            img = _compose_images(entry[2], img)
            word = _free_reduce(_inv_word(entry[0]) + word)
            if img == ident:
                return

    for i in live:
        insert(gens[i], [i + 1])
        insert(invs[i], [-(i + 1)])
    rounds = 0
    stale = 0
    while have < need:
        rounds += 1
        if rounds > max_rounds:
            raise RuntimeError("could not complete factorization tables")
        before = have
        for _ in range(200):
            length = rng.randint(1, cap // 2)
            word = []
            img = ident
            for _ in range(length):
                k = rng.choice(live) + 1
                if rng.random() < 0.5:
                    k = -k
                word.append(k)
                img = _compose_images(img, perm_of(k))
            insert(img, _free_reduce(word))
        # products of recorded words
        entries = [e for t in tables for e in t.values() if e[0]]
        for _ in range(200):
            if not entries:
                break
            a = rng.choice(entries)
            b = rng.choice(entries)
            insert(_compose_images(a[1], b[1]), _free_reduce(a[0] + b[0]))
        if have == before:
            stale += 1
            if stale >= 3:
                cap *= 2
                stale = 0
        else:
            stale = 0
    return tables
