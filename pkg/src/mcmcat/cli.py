"""Command line interface: ``mcmcat gldim|resolve|check``.

Exit codes: 0 success, 1 property violation, 2 unsupported input,
3 cap exceeded, 4 malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import Optional, Sequence

from . import __version__, dvr, rings
from .algebra import DEFAULT_CAP, _ext_int, min_resolution
from .category import (RIGHT, FpFunctorModule, category_for, fp_pd, projectivize, representable)
from .errors import MalformedInput, McmError
from .linalg import Matrix
from .harness import SUITES, SuiteConfig, run_suite
from .mcm import gldim_report, regularity_witness

log = logging.getLogger("mcmcat")

EXIT_OK, EXIT_VIOLATION = 0, 1


def _load_json(spec: str):
    try:
        with open(spec) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {spec}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{spec} is not valid JSON: {exc}") from exc


def _load_module(ring: rings.BaseRing, spec: str):
    if ring.kind == "dvr":
        if spec == "k":
            return dvr.RESIDUE_FIELD
        if spec == "R":
            return dvr.V
        return dvr.DvrModule.from_json(_load_json(spec))
    if spec == "k":
        return rings.residue_field(ring)
    if spec == "R":
        return rings.regular_module(ring)
    return rings.FinGenModule.from_json(ring, _load_json(spec))


def _load_functor(cat, spec: str) -> FpFunctorModule:
    if spec == "witness":
        # coker (-, R -> k), the standard pd-2 functor
        idx = cat.cyclic_index()
        n = cat.ring.n
        pi = cat.from_matrix(cat.summand(idx[n]), cat.summand(idx[1]),
                             Matrix([[1] + [0] * (n - 1)], rows=1, cols=n))
        return FpFunctorModule(RIGHT, pi)
    obj = _load_json(spec)
    try:
        p = obj["presenter"]
        f = cat.morphism(cat.obj(p["source"]), cat.obj(p["target"]), p["blocks"])
        return FpFunctorModule(obj.get("side", RIGHT), f)
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad functor JSON: {exc}") from exc


def cmd_gldim(args) -> tuple:
    ring = rings.parse_ring(args.ring)
    rep = gldim_report(ring, args.cap)
    out = {"command": "gldim", "ring": ring.descriptor(), "seed": args.seed, "cap": args.cap,
           "results": rep.to_json()}
    return out, EXIT_OK


def cmd_resolve(args) -> tuple:
    ring = rings.parse_ring(args.ring)
    res: dict = {}
    if ring.kind == "dvr":
        if args.functor:
            raise MalformedInput("over the DVR give a module; the functor is (-, M) on proj(V)")
        m = _load_module(ring, args.module or "R")
        ranks, _ = dvr.free_resolution(m)
        res = {"functor": {"side": RIGHT, "representing": m.to_json()}, "betti": ranks, "pd": _ext_int(dvr.pd_dvr(m))}
    else:
        cat = category_for(ring)
        if args.functor:
            g = _load_functor(cat, args.functor)
        else:
            m = _load_module(ring, args.module or "R")
            a, _ = cat.identify(m)
            g = representable(cat, a)
        mod = projectivize(g)
        if mod.dim == 0:
            res = {"betti": [], "pd": "-inf"}
        else:
            r = min_resolution(mod, args.cap)
            res = {"betti": r.betti_totals(), "betti_by_summand": [list(b) for b in r.betti()],
                   "pd": _ext_int(fp_pd(g, args.cap))}
        res["side"] = g.side
        res["presenter"] = g.presenter.to_json()
    out = {"command": "resolve", "ring": ring.descriptor(), "seed": args.seed, "cap": args.cap,
           "results": res}
    return out, EXIT_OK


def cmd_check(args) -> tuple:
    ring = rings.parse_ring(args.ring) if args.ring else None
    rep = run_suite(args.suite, SuiteConfig(seed=args.seed, trials=args.trials, ring=ring))
    out = {"command": "check", "suite": args.suite, "seed": args.seed,
           "ring": ring.descriptor() if ring else None, "results": rep.to_json()}
    if args.suite == "thm01":
        out["witnesses"] = [regularity_witness(rings.parse_ring(s)).to_json()
                            for s in ("field", "dvr", "monogenic:2", "monogenic:3")]
    return out, EXIT_OK if rep.passed else EXIT_VIOLATION


def _table(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            flat = isinstance(v, list) and all(isinstance(x, (int, str, bool)) for x in v)
            if isinstance(v, (dict, list)) and v and not flat:
                lines.append(f"{pad}{k}:")
                lines.append(_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (list, dict)) else v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(_table(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v) if isinstance(v, list) else v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcmcat", description="Global dimension of MCM categories.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="resolution length cap")
    common.add_argument("--timing", action="store_true",
                        help="add wall time to the report (breaks byte-identical output)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gldim", parents=[common], help="global dimension of MCM")
    g.add_argument("--ring", required=True, help="field | monogenic:<n> | dvr | artinian:<file>")
    g.set_defaults(func=cmd_gldim)

    r = sub.add_parser("resolve", parents=[common], help="minimal resolution of a functor")
    r.add_argument("--ring", required=True)
    r.add_argument("--module", help="module JSON file, or k / R; resolves (-, M)")
    r.add_argument("--functor", help="functor JSON file, or 'witness'")
    r.set_defaults(func=cmd_resolve)

    c = sub.add_parser("check", parents=[common], help="run a property harness")
    c.add_argument("suite", choices=sorted(SUITES))
    c.add_argument("--trials", type=int, default=None)
    c.add_argument("--ring", default=None)
    c.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    try:
        out, code = args.func(args)
    except McmError as exc:
        out = {"command": args.command, "error": type(exc).__name__, "message": str(exc)}
        code = exc.exit_code
    if args.timing:
        out["wall_time_s"] = round(time.perf_counter() - start, 3)
    if args.json or not sys.stdout.isatty():
        print(json.dumps(out, sort_keys=True))
    else:
        print(_table(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
