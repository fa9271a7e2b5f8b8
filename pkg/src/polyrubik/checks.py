"""Named property suites shared by the CLI and the acceptance tests.

Each suite returns a JSON-ready dict with an ``ok`` flag and the counts it
was judged on.
"""

from __future__ import annotations

import random

from . import builders
from .characterize import (
    RIDGE,
    SIGMA,
    TAU0,
    TAUI,
    Theta,
    ditope_iso_check,
    hosotope_embedding_check,
    hypercube_membership,
    random_ambient,
    simplex_membership,
)
from .face_lattice import FaceLattice, is_isomorphic
from .permgroup import GeneratorSet
from .rubik import (
    canonical_character,
    coordinate_system,
    move_generators,
    rubik_construction,
    rubik_group,
    wreath_repr,
    wreath_to_perm,
)


def identify_family(L: FaceLattice):
    """``(family, parameter)`` for the built-in families, else ``(None, None)``."""
    n = L.dim
    if n >= 1 and L.num_faces == 1 << (n + 1) and is_isomorphic(L, builders.simplex(n)):
        return "simplex", n
    if n >= 1 and L.num_faces == 3 ** n + 1 and is_isomorphic(L, builders.hypercube(n)):
        return "hypercube", n
    if n == 2:
        k = len(L.faces_of_rank(0))
        if k >= 2 and is_isomorphic(L, builders.polygon(k)):
            return "polygon", k
    if n == 3:
        k = len(L.faces_of_rank(1))
        if len(L.faces_of_rank(0)) == 2 and k >= 2 and is_isomorphic(L, builders.hosotope(builders.polygon(k))):
            return "hosohedron", k
    return None, None


def _random_word(G: GeneratorSet, rng, length: int) -> list:
    if not G.names:
        return []
    return [(G.names[rng.randrange(len(G.names))], rng.random() < 0.5) for _ in range(length)]


def character_kernel(L: FaceLattice, words: int = 100, length: int = 20, seed: int = 0,
                     coord_seeds=(None, 1)) -> dict:
    """Canonical characters of random move words, per rank and coordinate system."""
    S = rubik_construction(L)
    G = move_generators(S)
    rng = random.Random(seed)
    samples = [G.evaluate(_random_word(G, rng, length)) for _ in range(words)]
    failures = {}
    for cs in coord_seeds:
        C = coordinate_system(L, seed=cs)
        for p in samples:
            w = wreath_repr(C, S, p)
            for i in range(L.dim - 1):
                if canonical_character(C, w, i)[1] != 0:
                    key = f"coords={cs},rank={i}"
                    failures[key] = failures.get(key, 0) + 1
    return {"check": "character-kernel", "ok": not failures, "words": words,
            "coordinate_systems": [str(c) for c in coord_seeds], "failures": failures}


def _tags(family: str, n: int) -> list:
    tags = [TAUI]
    if n in (3, 4):
        tags.insert(0, TAU0)
    if family == "simplex" or n > 3:
        tags.append(SIGMA)
    if family == "hypercube":
        tags.append(RIDGE)
    return tags


def membership_oracle(L: FaceLattice, samples: int = 100, seed: int = 0) -> dict:
    """Two-sided comparison of the closed-form membership test with the engine.

    Random group elements must pass the predicate; ambient elements built
    to break exactly one condition must fail BSGS membership.
    """
    family, n = identify_family(L)
    if family not in ("simplex", "hypercube"):
        raise ValueError("membership oracle needs a simplex or a hypercube")
    pred = simplex_membership if family == "simplex" else hypercube_membership
    S = rubik_construction(L)
    B = rubik_group(S)
    C = coordinate_system(L)
    rng = random.Random(seed)
    false_negatives = {}
    for _ in range(samples):
        v = pred(wreath_repr(C, S, B.random_element(rng)), n)
        if not v.member:
            false_negatives[v.failed_condition] = false_negatives.get(v.failed_condition, 0) + 1
    tags = _tags(family, n)
    false_positives = {}
    for k in range(samples):
        tag = tags[k % len(tags)]
        w = random_ambient(C, rng, tag, family)
        if pred(w, n).failed_condition != tag:
            raise RuntimeError(f"ambient element does not break exactly {tag}")
        if B.contains(wreath_to_perm(w, S)):
            false_positives[tag] = false_positives.get(tag, 0) + 1
    return {"check": "membership-oracle", "ok": not false_negatives and not false_positives,
            "family": family, "n": n, "samples": samples, "conditions": tags,
            "group_elements_failing_predicate": false_negatives,
            "violators_in_group": false_positives}


def theta_embedding(n: int, pairs: int = 100, length: int = 8, seed: int = 0) -> dict:
    """Homomorphism, commutation and image-membership checks for the simplex-in-cube map."""
    T = Theta(n, seed)
    rng = random.Random(seed)
    hom_fail = 0
    member_fail = 0
    CQ = coordinate_system(T.Q)
    for _ in range(pairs):
        a = T.GT.evaluate(_random_word(T.GT, rng, length))
        b = T.GT.evaluate(_random_word(T.GT, rng, length))
        ta, tb, tab = T(a), T(b), T(a * b)
        if tab != ta * tb:
            hom_fail += 1
        if not hypercube_membership(wreath_repr(CQ, T.SQ, tab), n).member:
            member_fail += 1
    diag, image, order = T.diagonal_order(seed), T.image_order(seed), T.BT.order
    commute = T.commute()
    ok = commute and not hom_fail and not member_fail and diag == image == order
    return {"check": "theta-embedding", "ok": ok, "n": n, "pairs": pairs, "commute": commute,
            "homomorphism_failures": hom_fail, "image_membership_failures": member_fail,
            "simplex_group_order": order, "diagonal_order": diag, "image_order": image}


def ditope_iso(P: FaceLattice, seed: int = 0) -> dict:
    out = {"check": "ditope-iso"}
    out.update(ditope_iso_check(P, seed))
    return out


def hosotope_embedding(P: FaceLattice, seed: int = 0) -> dict:
    out = {"check": "hosotope-embedding"}
    out.update(hosotope_embedding_check(P, seed))
    return out


CHECKS = ("character-kernel", "ditope-iso", "theta-embedding", "membership-oracle")


def run_check(name: str, L: FaceLattice, samples: int = 100, seed: int = 0) -> dict:
    """Run one named suite on ``L``."""
    if name == "character-kernel":
        return character_kernel(L, words=samples, seed=seed)
    if name == "ditope-iso":
        return ditope_iso(L, seed)
    if name == "membership-oracle":
        return membership_oracle(L, samples, seed)
    if name == "theta-embedding":
        family, n = identify_family(L)
        if family == "hypercube":
            return theta_embedding(n, samples, seed=seed)
        if family == "simplex":
            return theta_embedding(n + 1, samples, seed=seed)
        raise ValueError("theta embedding needs a simplex or a hypercube")
    raise ValueError(f"unknown check {name!r}")


def builtin_suite(samples: int = 50, seed: int = 0) -> list:
    """Every named suite on the built-in families it applies to."""
    S3, S4, Q3 = builders.simplex(3), builders.simplex(4), builders.hypercube(3)
    named = [("simplex(3)", S3), ("simplex(4)", S4), ("hypercube(3)", Q3)]
    out = []

    def add(subject, result):
        result["subject"] = subject
        out.append(result)

    for name, L in named:
        add(name, character_kernel(L, words=samples, seed=seed))
    for k in range(3, 7):
        add(f"polygon({k})", ditope_iso(builders.polygon(k), seed))
    add("simplex(3)", ditope_iso(S3, seed))
    add("hypercube(3)", ditope_iso(Q3, seed))
    for n in (3, 4):
        add(f"hypercube({n})", theta_embedding(n, samples, seed=seed))
    for name, L in named:
        add(name, membership_oracle(L, samples, seed))
    return out
