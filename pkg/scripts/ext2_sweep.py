"""Compare the Ext^2 shortcut with the resolution over many seeded exact triples.

    python3 scripts/ext2_sweep.py --trials 200 --seed 1
"""

import argparse
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass

from mcmcat.category import RIGHT, FpFunctorModule, ext2_shortcut, ext_resolution, monogenic_category
from mcmcat.harness import random_functor, random_triple


@dataclass
class SweepConfig:
    trials: int = 100
    seed: int = 0
    min_n: int = 2
    max_n: int = 4


def sweep(cfg: SweepConfig) -> dict:
    rng = random.Random(cfg.seed)
    ns = list(range(cfg.min_n, cfg.max_n + 1))
    dims, mismatches = Counter(), []
    for i in range(cfg.trials):
        n = ns[i % len(ns)]
        cat = monogenic_category(n)
        alpha_p, alpha = random_triple(cat, rng)
        h = random_functor(cat, rng)
        s = ext2_shortcut(alpha_p, alpha, h)
        e = ext_resolution(2, FpFunctorModule(RIGHT, alpha), h)
        dims[(n, s)] += 1
        if s != e:
            mismatches.append({"trial": i, "n": n, "shortcut": s, "resolution": e})
    return {"config": asdict(cfg),
            "histogram": [{"n": n, "ext2_dim": d, "count": c} for (n, d), c in sorted(dims.items())],
            "mismatches": mismatches}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=4)
    out = sweep(SweepConfig(**vars(p.parse_args())))
    print(json.dumps(out, indent=2))
    raise SystemExit(1 if out["mismatches"] else 0)


if __name__ == "__main__":
    main()
