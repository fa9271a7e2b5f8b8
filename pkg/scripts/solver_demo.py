"""Scramble and solve simplex puzzles with both solvers; prints word lengths and timings.

    python3 scripts/solver_demo.py [--n 4] [--count 10] [--length 40]
"""

from __future__ import annotations

import argparse
import statistics
import time
from dataclasses import dataclass

from polyrubik import builders
from polyrubik.rubik import move_generators, rubik_construction, rubik_group
from polyrubik.solver import scramble, solve_generic, solve_simplex


@dataclass
class Config:
    n: int = 4
    count: int = 10
    length: int = 40
    seed: int = 0


def main(cfg: Config) -> None:
    L = builders.simplex(cfg.n)
    S = rubik_construction(L)
    G = move_generators(S)
    t = time.perf_counter()
    B = rubik_group(S)
    print(f"simplex({cfg.n}): {len(S)} stickers, {len(G)} generators, group built in "
          f"{time.perf_counter() - t:.2f}s")
    lengths = {"generic": [], "inductive": []}
    times = {"generic": [], "inductive": []}
    for k in range(cfg.count):
        rec = scramble(G, cfg.length, cfg.seed + k)
        target = rec.perm.inverse()
        for name, solve in (("generic", lambda p: solve_generic(B, p)),
                            ("inductive", lambda p: solve_simplex(S, p))):
            t = time.perf_counter()
            word = solve(target)
            times[name].append(time.perf_counter() - t)
            if not (G.evaluate(word) * rec.perm).is_identity():
                raise SystemExit(f"{name} solver failed on seed {cfg.seed + k}")
            lengths[name].append(len(word))
    for name in lengths:
        print(f"{name:>9}: median length {statistics.median(lengths[name]):.0f}, "
              f"max {max(lengths[name])}, median time {statistics.median(times[name]):.3f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(Config(a.n, a.count, a.length, a.seed))
