"""Finite graded posets representing abstract (pre-)polytopes.

Faces are dense integer ids.  Incidence is precomputed as reachability
bitsets (Python ints), so ``leq`` is a shift and a mask.
"""

from __future__ import annotations

import graphlib
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Flag = tuple  # n+2 face ids, bottom to top


class LatticeError(ValueError):
    """Malformed Hasse-diagram data."""


class MultipleExtrema(LatticeError):
    pass


class RankGap(LatticeError):
    pass


class Cycle(LatticeError):
    pass


class NotIncident(ValueError):
    pass


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    @classmethod
    def from_violations(cls, violations):
        return cls(ok=not violations, violations=list(violations))

    def to_dict(self):
        return {"ok": self.ok,
                "violations": [[name, _jsonable(w)] for name, w in self.violations]}


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    return w


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FaceLattice:
    """An immutable graded poset with a unique bottom and top.

    ``rank[f]`` is the rank of face ``f``; ``covers`` holds ``(lo, hi)``
    pairs with ``rank[hi] == rank[lo] + 1``.  ``parent_ids`` is set on
    lattices derived from another one (intervals, duals) and maps each
    face back to the face it came from.
    """

    def __init__(self, dim, rank, covers, labels=None, parent_ids=None):
        self.dim = dim
        self.rank = tuple(rank)
        self.covers = tuple(sorted(set(map(tuple, covers))))
        n_faces = len(self.rank)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n_faces))
        self.parent_ids = tuple(parent_ids) if parent_ids is not None else None

        upper = [[] for _ in range(n_faces)]
        lower = [[] for _ in range(n_faces)]
        for lo, hi in self.covers:
            upper[lo].append(hi)
            lower[hi].append(lo)
        self.upper_covers = tuple(tuple(sorted(u)) for u in upper)
        self.lower_covers = tuple(tuple(sorted(l)) for l in lower)

        by_rank = {}
        for f, r in enumerate(self.rank):
            by_rank.setdefault(r, []).append(f)
        self._by_rank = {r: tuple(fs) for r, fs in by_rank.items()}
        bottoms = self._by_rank.get(-1, ())
        tops = self._by_rank.get(dim, ())
        self.bottom = bottoms[0] if bottoms else None
        self.top = tops[0] if tops else None

        order = sorted(range(n_faces), key=lambda f: self.rank[f])
        down = [0] * n_faces
        for f in order:
            m = 1 << f
            for g in self.lower_covers[f]:
                m |= down[g]
            down[f] = m
        up = [0] * n_faces
        for f in reversed(order):
            m = 1 << f
            for g in self.upper_covers[f]:
                m |= up[g]
            up[f] = m
        self._up = tuple(up)
        self._down = tuple(down)

        self.proper = tuple(sorted((f for f in range(n_faces) if f != self.bottom and f != self.top),
                                   key=lambda f: (self.rank[f], f)))
        self.proper_index = {f: i for i, f in enumerate(self.proper)}
        self._middle_cache = {}
        self._cache = {}

    # -- basic queries ---------------------------------------------------
    @property
    def num_faces(self):
        return len(self.rank)

    def faces_of_rank(self, r):
        return self._by_rank.get(r, ())

    def f_vector(self):
        return [len(self.faces_of_rank(r)) for r in range(self.dim)]

    def leq(self, g, f):
        """True iff ``g`` precedes or equals ``f``."""
        return bool((self._up[g] >> f) & 1)

    def above(self, f):
        """Faces ``h`` with ``f <= h``, as a sorted tuple."""
        return tuple(_bits(self._up[f]))

    def below(self, f):
        return tuple(_bits(self._down[f]))

    def between(self, g, f):
        """Faces h with g <= h <= f."""
        return tuple(_bits(self._up[g] & self._down[f]))

    def middle(self, lo, hi):
        """Faces strictly between two faces whose ranks differ by two."""
        key = (lo, hi)
        res = self._middle_cache.get(key)
        if res is None:
            res = tuple(h for h in self.upper_covers[lo] if (self._down[hi] >> h) & 1)
            self._middle_cache[key] = res
        return res

    def __repr__(self):
        return f"FaceLattice(dim={self.dim}, f_vector={self.f_vector()})"

    # -- serialization -----------------------------------------------------
    def to_dict(self):
        return {
            "dim": self.dim,
            "faces": [{"id": f, "rank": r, "label": self.labels[f]} for f, r in enumerate(self.rank)],
            "covers": [[lo, hi] for lo, hi in self.covers],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data):
        faces = data["faces"]
        ranks = {int(f["id"]): int(f["rank"]) for f in faces}
        labels = {int(f["id"]): f.get("label", str(f["id"])) for f in faces}
        return from_hasse(int(data["dim"]), ranks, data["covers"], labels)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def from_hasse(n: int, ranks: Mapping[int, int], covers: Iterable[Sequence[int]],
               labels: Mapping[int, str] | None = None) -> FaceLattice:
    """Build a lattice from a Hasse diagram.

    Ids must be exactly ``0..len(ranks)-1``.  Raises ``Cycle`` if the cover
    graph has a directed cycle, ``RankGap`` if a cover does not climb exactly
    one rank, ``MultipleExtrema`` unless there is exactly one face of rank -1
    and one of rank ``n``.
    """
    n_faces = len(ranks)
    if set(ranks) != set(range(n_faces)):
        raise LatticeError("face ids must be dense 0..N-1")
    covers = [tuple(c) for c in covers]
    for lo, hi in covers:
        if lo not in ranks or hi not in ranks:
            raise LatticeError(f"cover {(lo, hi)} references unknown face")
    for f, r in ranks.items():
        if not -1 <= r <= n:
            raise LatticeError(f"face {f} has rank {r} outside [-1, {n}]")

    sorter = graphlib.TopologicalSorter({f: [] for f in ranks})
    for lo, hi in covers:
        sorter.add(hi, lo)
    try:
        tuple(sorter.static_order())
    except graphlib.CycleError as exc:
        raise Cycle(f"covers contain a cycle: {exc.args[1]}") from None

    for lo, hi in covers:
        if ranks[hi] != ranks[lo] + 1:
            raise RankGap(f"cover {(lo, hi)} goes from rank {ranks[lo]} to {ranks[hi]}")

    n_bottom = sum(1 for r in ranks.values() if r == -1)
    n_top = sum(1 for r in ranks.values() if r == n)
    if n_bottom != 1 or n_top != 1:
        raise MultipleExtrema(f"{n_bottom} faces of rank -1 and {n_top} of rank {n}")

    rank = [ranks[f] for f in range(n_faces)]
    lab = None if labels is None else [labels.get(f, str(f)) for f in range(n_faces)]
    return FaceLattice(n, rank, covers, lab)


# -- validation ---------------------------------------------------------------

def validate_prepolytope(L: FaceLattice) -> ValidationReport:
    """Check extrema, flag length and connectivity of every interval."""
    violations = []
    for f in range(L.num_faces):
        if not L.leq(L.bottom, f):
            violations.append(("extrema", f))
        elif not L.leq(f, L.top):
            violations.append(("extrema", f))

    # Every maximal chain must run bottom..top through all n+2 ranks.
    for lo, hi in L.covers:
        if L.rank[hi] != L.rank[lo] + 1:
            violations.append(("flag-length", (lo, hi)))
    for f in range(L.num_faces):
        if f != L.top and not L.upper_covers[f]:
            violations.append(("flag-length", f))
        if f != L.bottom and not L.lower_covers[f]:
            violations.append(("flag-length", f))

    for g in range(L.num_faces):
        for f in L.above(g):
            if L.rank[f] - L.rank[g] < 3:
                continue
            if not _proper_part_connected(L, g, f):
                violations.append(("connectivity", (g, f)))
    return ValidationReport.from_violations(violations)


def _proper_part_connected(L, g, f):
    inner = set(L.between(g, f)) - {g, f}
    if not inner:
        return True
    start = next(iter(inner))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in L.upper_covers[x] + L.lower_covers[x]:
            if y in inner and y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(inner)


def validate_diamond(L: FaceLattice) -> ValidationReport:
    violations = []
    for g in range(L.num_faces):
        for f in L.above(g):
            if L.rank[f] - L.rank[g] == 2 and len(L.middle(g, f)) != 2:
                violations.append(("diamond", (g, f)))
    return ValidationReport.from_violations(violations)


def is_polytope(L: FaceLattice) -> bool:
    return validate_prepolytope(L).ok and validate_diamond(L).ok


# -- derived lattices ---------------------------------------------------------

def interval(L: FaceLattice, g: int, f: int) -> FaceLattice:
    """The section ``f/g`` as a standalone lattice.

    Ids are reassigned in (rank, original id) order and ``parent_ids`` maps
    them back.  ``interval(L, f, f)`` is the one-face lattice of dimension -1.
    """
    if not L.leq(g, f):
        raise NotIncident(f"face {g} does not precede face {f}")
    old = sorted(L.between(g, f), key=lambda h: (L.rank[h], h))
    new_id = {h: i for i, h in enumerate(old)}
    base = L.rank[g]
    rank = [L.rank[h] - base - 1 for h in old]
    covers = [(new_id[lo], new_id[hi]) for lo, hi in L.covers if lo in new_id and hi in new_id]
    labels = [L.labels[h] for h in old]
    return FaceLattice(L.rank[f] - base - 1, rank, covers, labels, parent_ids=old)


def dual(L: FaceLattice) -> FaceLattice:
    """Reverse the order; rank r becomes n-1-r."""
    n = L.dim
    old = sorted(range(L.num_faces), key=lambda h: (n - 1 - L.rank[h], h))
    new_id = {h: i for i, h in enumerate(old)}
    rank = [n - 1 - L.rank[h] for h in old]
    covers = [(new_id[hi], new_id[lo]) for lo, hi in L.covers]
    labels = [L.labels[h] for h in old]
    return FaceLattice(n, rank, covers, labels, parent_ids=old)


# -- flags --------------------------------------------------------------------

def flags(L: FaceLattice) -> list:
    """All maximal chains, in lexicographic order of their id sequences."""
    out = []
    if L.dim < 0:
        return [(L.bottom,)]
    stack = [(L.bottom,)]
    while stack:
        chain = stack.pop()
        last = chain[-1]
        if last == L.top:
            out.append(chain)
            continue
        for h in reversed(L.upper_covers[last]):
            stack.append(chain + (h,))
    return out


def adjacent_flag(L: FaceLattice, flag: Flag, j: int) -> Flag:
    """The j-adjacent flag: replace the rank-j face by the other one."""
    lo, hi = flag[j], flag[j + 2]  # flag[0] is the bottom, flag[j+1] has rank j
    mid = L.middle(lo, hi)
    if len(mid) != 2:
        raise ValueError(f"diamond property fails between faces {lo} and {hi}")
    cur = flag[j + 1]
    other = mid[1] if mid[0] == cur else mid[0]
    return flag[:j + 1] + (other,) + flag[j + 2:]


def transport(L1: FaceLattice, f1: Flag, L2: FaceLattice, f2: Flag):
    """The isomorphism ``L1 -> L2`` sending flag ``f1`` to ``f2``, if any.

    Walks the flag graph of ``L1`` alongside ``L2`` and returns the induced
    face map as a tuple indexed by ``L1`` ids, or ``None`` when the walk is
    inconsistent.  Both lattices must satisfy the diamond property.
    """
    if L1.dim != L2.dim or L1.num_faces != L2.num_faces:
        return None
    n = L1.dim
    image = {f1: f2}
    queue = deque([f1])
    while queue:
        a = queue.popleft()
        b = image[a]
        for j in range(n):
            a2 = adjacent_flag(L1, a, j)
            b2 = adjacent_flag(L2, b, j)
            seen = image.get(a2)
            if seen is None:
                image[a2] = b2
                queue.append(a2)
            elif seen != b2:
                return None
    face_map = [None] * L1.num_faces
    for a, b in image.items():
        for x, y in zip(a, b):
            if face_map[x] is None:
                face_map[x] = y
            elif face_map[x] != y:
                return None
    if None in face_map or len(set(face_map)) != len(face_map):
        return None
    for lo, hi in L1.covers:
        if face_map[hi] not in L2.upper_covers[face_map[lo]]:
            return None
    return tuple(face_map)


def find_isomorphism(L1: FaceLattice, L2: FaceLattice):
    """Some isomorphism between two polytopes, or ``None``."""
    if L1.dim != L2.dim or L1.f_vector() != L2.f_vector():
        return None
    fl1 = flags(L1)
    if L1.dim < 1:
        return tuple(range(L1.num_faces)) if L1.num_faces == L2.num_faces else None
    base = fl1[0]
    for f2 in flags(L2):
        m = transport(L1, base, L2, f2)
        if m is not None:
            return m
    return None


def is_isomorphic(L1: FaceLattice, L2: FaceLattice) -> bool:
    return find_isomorphism(L1, L2) is not None
