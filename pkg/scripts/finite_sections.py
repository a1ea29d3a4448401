"""Section counts and global rigidity over S_n against colouring brute force."""

import argparse
import time
from dataclasses import dataclass

from gorigidity import corpus
from gorigidity.finite import analyse_finite, from_colouring
from gorigidity.oracles import proper_colourings, unique_colourability_bruteforce


@dataclass(frozen=True)
class Config:
    seed: int = 5
    extra: int = 12
    degrees: tuple[int, ...] = (3, 4)


def run(cfg: Config) -> None:
    start = time.perf_counter()
    for k, h in enumerate(corpus.small_graphs(cfg.seed, cfg.extra)):
        for n in cfg.degrees:
            col = corpus.first_colouring(h, n)
            if col is None:
                print(f"graph {k:2d} n={n}: not {n}-colourable")
                continue
            rep = analyse_finite(from_colouring(h, col, n))
            brute = len(proper_colourings(h, n))
            unique = unique_colourability_bruteforce(h, n)
            print(f"graph {k:2d} |V|={len(h.vertices)} |E|={len(h.edges)} n={n}: sections {rep.sections:5d} "
                  f"colourings {brute:5d}  rigid {rep.globally_rigid!s:5} unique {unique!s:5}")
    print(f"({time.perf_counter() - start:.2f}s)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--extra", type=int, default=Config.extra)
    ap.add_argument("--degrees", type=int, nargs="+", default=list(Config.degrees))
    args = ap.parse_args()
    run(Config(args.seed, args.extra, tuple(args.degrees)))


if __name__ == "__main__":
    main()
