"""Orders of the hosohedron group and of its two projections, k = 2..8.

The first projection lands in the non-rotational group of the k-gon and
the second in the k-gon's automorphism group.  The last column says
whether facet stabilizers generate that automorphism group.

    python3 scripts/hosohedron_projections.py [--max-k 8]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from polyrubik import builders
from polyrubik.characterize import hosotope_embedding_check


@dataclass
class Config:
    max_k: int = 8
    seed: int = 0


def main(cfg: Config) -> None:
    cols = ("k", "hosotope", "proj1", "nonrot", "proj2", "|Aut|", "stab-gen", "ok")
    print(("{:>4}" + "{:>12}" * 6 + "{:>5}").format(*cols))
    for k in range(2, cfg.max_k + 1):
        r = hosotope_embedding_check(builders.polygon(k), cfg.seed)
        print(("{:>4}" + "{:>12}" * 6 + "{:>5}").format(
            k, r["hosotope_order"], r["first_projection_order"], r["nonrotational_order"],
            r["second_projection_order"], r["automorphism_order"],
            str(r["facet_stabilizers_generate"]), str(r["ok"])))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(Config(a.max_k, a.seed))
