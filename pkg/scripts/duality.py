"""Motion-space dimensions before and after dualisation on a seeded corpus."""

import argparse
from dataclasses import dataclass

from gorigidity import corpus
from gorigidity.motionspace import motion_space
from gorigidity.realisation import build, projective_dual_instance, scene_to_parallel_instance


@dataclass(frozen=True)
class Config:
    seed: int = 11
    size: int = 20


def run(cfg: Config) -> int:
    bad = 0
    for inst in corpus.duality_corpus(cfg.seed, cfg.size):
        if inst.kind == "projective":
            dual = projective_dual_instance(inst)
        else:
            dual = scene_to_parallel_instance(inst)
        a = motion_space(build(inst)).dim_piA
        b = motion_space(build(dual)).dim_piA
        bad += a != b
        print(f"{inst.kind:10s} -> {dual.kind:10s}  piA {a:3d} {b:3d}  {'ok' if a == b else 'MISMATCH'}")
    return bad


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--size", type=int, default=Config.size)
    run(Config(**vars(ap.parse_args())))


if __name__ == "__main__":
    main()
