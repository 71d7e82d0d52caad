"""Print the gldim table: base ring, Krull dimension, dim E, gldim, pd of the simples.

    python3 scripts/gldim_table.py --max-n 5
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from mcmcat import rings
from mcmcat.algebra import DEFAULT_CAP, simple_pds
from mcmcat.category import category_for
from mcmcat.mcm import gldim_report


@dataclass
class TableConfig:
    max_n: int = 5
    cap: int = DEFAULT_CAP
    json: bool = False


def rows(cfg: TableConfig):
    specs = ["field", "dvr"] + [f"monogenic:{n}" for n in range(2, cfg.max_n + 1)]
    for spec in specs:
        r = rings.parse_ring(spec)
        t = time.perf_counter()
        rep = gldim_report(r, cfg.cap)
        row = {"ring": spec, "d": rep.d, "gldim": rep.to_json()["gldim"], "bounds": rep.to_json()["bounds"]}
        if r.is_artinian:
            e = category_for(r).auslander_algebra
            row["dim_E"] = e.dim
            row["simple_pds"] = [int(p) for p in simple_pds(e, cfg.cap)]
        row["seconds"] = round(time.perf_counter() - t, 3)
        yield row


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--json", action="store_true")
    cfg = TableConfig(**vars(p.parse_args()))
    out = list(rows(cfg))
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "rows": out}, indent=2))
        return
    print(f"{'ring':<14}{'d':>3}{'dim E':>8}{'gldim':>7}  {'bounds':<14}{'simple pds':<18}{'s':>7}")
    for row in out:
        print(f"{row['ring']:<14}{row['d']:>3}{row.get('dim_E', '-'):>8}{row['gldim']:>7}  "
              f"{row['bounds']:<14}{str(row.get('simple_pds', '-')):<18}{row['seconds']:>7}")


if __name__ == "__main__":
    main()
