"""Engine orders next to closed forms for every family small enough to build.

    python3 scripts/order_tables.py [--seed 0] [--max-polygon 8]
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from polyrubik import builders
from polyrubik.characterize import (
    hosohedron_order,
    hypercube_order,
    polygon_nonrot_order,
    simplex_order,
)
from polyrubik.rubik import rubik_construction, rubik_group


@dataclass
class Config:
    seed: int = 0
    max_polygon: int = 8
    max_hosohedron: int = 7


def engine(L, rotational=True, seed=0):
    S = rubik_construction(L)
    t = time.perf_counter()
    order = rubik_group(S, rotational, seed).order
    return order, len(S), time.perf_counter() - t


def row(name, domain, eng, formula, secs):
    ratio = "" if formula in (None, 0) else f"{eng / formula:g}"
    print(f"{name:<22}{domain:>6}  {eng!s:>34}  {formula!s:>34}  {ratio:>6}  {secs:6.2f}s")


def main(cfg: Config) -> None:
    print(f"{'polytope':<22}{'dom':>6}  {'engine':>34}  {'formula':>34}  {'ratio':>6}  time")
    for n in (3, 4):
        o, d, s = engine(builders.simplex(n), seed=cfg.seed)
        row(f"simplex({n})", d, o, simplex_order(n), s)
    o, d, s = engine(builders.hypercube(3), seed=cfg.seed)
    row("hypercube(3)", d, o, hypercube_order(3), s)
    for k in range(3, cfg.max_polygon + 1):
        o, d, s = engine(builders.polygon(k), rotational=False, seed=cfg.seed)
        row(f"polygon({k}) nonrot", d, o, polygon_nonrot_order(k), s)
    for k in range(3, cfg.max_hosohedron + 1):
        o, d, s = engine(builders.hosotope(builders.polygon(k)), seed=cfg.seed)
        row(f"hosohedron({k})", d, o, hosohedron_order(k), s)
    print()
    print("closed forms only (no engine cross-check at this size):")
    for n in (5, 6):
        print(f"  simplex({n})   {simplex_order(n)}")
    for n in (4, 5):
        print(f"  hypercube({n}) {hypercube_order(n)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-polygon", type=int, default=8)
    ap.add_argument("--max-hosohedron", type=int, default=7)
    a = ap.parse_args()
    main(Config(a.seed, a.max_polygon, a.max_hosohedron))
