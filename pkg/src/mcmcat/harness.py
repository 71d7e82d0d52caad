"""Seeded property harnesses behind `mcmcat check`.

Every suite returns a :class:`SuiteReport`; the same (suite, seed, trials)
always produces the same report.  A failing case is recorded with enough
data to rebuild it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import dvr, rings
from .algebra import _ext_int, path_algebra_a2, truncated_polynomial_algebra
from .category import (RIGHT, AddCategory, CatMorphism, FpFunctorModule, check_left_exact, ext2_shortcut,
                       ext_resolution, fp_pd, is_coexact_at_summands, is_exact_at_summands,
                       monogenic_category, pseudo_cokernel, pseudo_kernel, swap_side)
from .errors import McmError
from .linalg import Matrix, Subspace
from .mcm import delta_naturality, gldim_report, pd_of_representable, regularity_witness
from .projmod import evaluation_functorification_check, standard_battery


@dataclass
class SuiteConfig:
    seed: int = 0
    trials: Optional[int] = None
    ring: Optional[rings.BaseRing] = None


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    cases: int = 0
    failures: list = field(default_factory=list)
    table: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, **data):
        self.failures.append(data)

    def to_json(self) -> dict:
        out = {"suite": self.suite, "seed": self.seed, "trials": self.trials, "cases": self.cases,
               "passed": self.passed, "failures": self.failures[:1]}
        if len(self.failures) > 1:
            out["more_failures"] = len(self.failures) - 1
        if self.table:
            out["table"] = self.table
        return out


# -- random objects ---------------------------------------------------------------

def partitions(total: int, largest: int):
    """Multisets of part sizes <= largest summing to total, as multiplicity vectors."""
    def rec(rest, top):
        if rest == 0:
            yield []
            return
        for p in range(min(rest, top), 0, -1):
            for tail in rec(rest - p, p):
                yield [p] + tail
    for parts in rec(total, largest):
        yield tuple(parts.count(i) for i in range(1, largest + 1))


def module_of_type(cat: AddCategory, mults) -> rings.FinGenModule:
    return cat.realize_object(cat.obj(mults))


def random_object(cat: AddCategory, rng: random.Random, max_total: int = 3):
    while True:
        m = tuple(rng.randint(0, 1) for _ in range(cat.n))
        if 0 < sum(m) <= max_total:
            return cat.obj(m)
        if cat.n == 1:
            return cat.obj((rng.randint(1, max_total),))


def random_morphism(cat: AddCategory, a, b, rng: random.Random) -> CatMorphism:
    v = [rng.randint(-1, 1) for _ in range(cat.hom_dim(a, b))]
    return cat.unflatten(a, b, v)


def random_functor(cat: AddCategory, rng: random.Random) -> FpFunctorModule:
    a, b = random_object(cat, rng), random_object(cat, rng)
    return FpFunctorModule(RIGHT, random_morphism(cat, a, b, rng))


def local_ring(name: str) -> rings.BaseRing:
    if name == "k[y,z]/(y,z)^2":
        d = 3
        prod = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2}
    elif name == "k[y,z]/(y^2,z^2)":
        d = 4
        prod = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2, (0, 3): 3, (3, 0): 3,
                (1, 2): 3, (2, 1): 3}
    elif name == "k[x]/(x^3)":
        d = 3
        prod = {(a, b): a + b for a in range(3) for b in range(3) if a + b < 3}
    else:
        raise KeyError(name)
    mult = [0] * d ** 3
    for (a, b), k in prod.items():
        mult[(a * d + b) * d + k] = 1
    ideal = [[1 if i == j else 0 for i in range(d)] for j in range(1, d)]
    return rings.BaseRing.artinian_local(d, mult, ideal)


def submodule_generated(m: rings.FinGenModule, vecs) -> Subspace:
    span = Subspace(Matrix.from_columns(vecs, m.dim)) if vecs else Subspace(Matrix.zeros(m.dim, 0))
    frontier = list(span.basis.columns())
    while frontier:
        new = []
        for v in frontier:
            for a in m.acts:
                w = a.apply(v)
                if not span.contains(w):
                    span = Subspace(Matrix.from_columns(list(span.basis.columns()) + [w], m.dim))
                    new.append(w)
        frontier = new
    return span


def random_local_module(r: rings.BaseRing, rng: random.Random) -> rings.FinGenModule:
    """R^g modulo the submodule generated by a few random vectors."""
    g = rng.randint(1, 2)
    reg = rings.regular_module(r)
    free = reg.direct_sum(*([reg] * (g - 1))) if g > 1 else reg
    vecs = [[rng.randint(-1, 1) for _ in range(free.dim)] for _ in range(rng.randint(0, 2))]
    sub = submodule_generated(free, [v for v in vecs if any(v)])
    return free.quotient(sub)[0] if sub.dim else free


# -- suites -----------------------------------------------------------------------

def suite_duality(cfg: SuiteConfig) -> SuiteReport:
    trials = cfg.trials or 20
    rep = SuiteReport("duality", cfg.seed, trials)
    rng = random.Random(cfg.seed)
    ns = [cfg.ring.n] if cfg.ring is not None and cfg.ring.kind == "monogenic" else [2, 3, 4]
    for n in ns:
        cat = monogenic_category(n)
        for total in range(0, 7):
            for mults in partitions(total, n):
                m = module_of_type(cat, mults)
                rep.cases += 1
                if rings.dagger(m).dim != m.dim or not rings.delta_is_iso(m):
                    rep.fail(ring=f"monogenic:{n}", module=list(mults), check="delta iso")
        # naturality of delta and contravariance of dagger on summand maps
        for u, um in enumerate(cat.modules):
            for v, vm in enumerate(cat.modules):
                for f in cat.homs[u][v].basis:
                    rep.cases += 1
                    if not delta_naturality(f, um, vm):
                        rep.fail(ring=f"monogenic:{n}", map=[u, v], check="delta naturality")
                    for w, wm in enumerate(cat.modules):
                        for g in cat.homs[v][w].basis[:1]:
                            lhs = rings.dagger_morphism(g @ f, um, wm)
                            rhs = rings.dagger_morphism(f, um, vm) @ rings.dagger_morphism(g, vm, wm)
                            if lhs != rhs:
                                rep.fail(ring=f"monogenic:{n}", maps=[u, v, w], check="dagger reverses composition")
    names = ["k[y,z]/(y,z)^2", "k[y,z]/(y^2,z^2)", "k[x]/(x^3)"]
    for i in range(30):
        name = names[i % len(names)]
        m = random_local_module(local_ring(name), rng)
        rep.cases += 1
        if rings.dagger(m).dim != m.dim or not rings.delta_is_iso(m):
            rep.fail(ring=name, module=m.to_json(), check="delta iso")
    pds = []
    for i in range(trials):
        cat = monogenic_category(2 + i % 3)
        g = random_functor(cat, rng)
        p, q = fp_pd(g), fp_pd(swap_side(g))
        rep.cases += 1
        pds.append([_ext_int(p), _ext_int(q)])
        if p != q:
            rep.fail(functor=g.presenter.to_json(), right=_ext_int(p), left=_ext_int(q), check="swap_side pd")
    rep.table = [{"swap_side_pds": pds}]
    return rep


def random_triple(cat: AddCategory, rng: random.Random):
    """(alpha', alpha) with alpha' the kernel of a random alpha, read in add X."""
    while True:
        a, b = random_object(cat, rng), random_object(cat, rng)
        alpha = random_morphism(cat, a, b, rng)
        alpha_p = pseudo_kernel(alpha)
        if alpha_p.source.is_zero:
            continue
        try:
            check_left_exact(alpha_p, alpha)
        except McmError:
            continue
        return alpha_p, alpha


def suite_ext2(cfg: SuiteConfig) -> SuiteReport:
    trials = cfg.trials or 50
    rep = SuiteReport("ext2", cfg.seed, trials)
    rng = random.Random(cfg.seed)
    dims = {}
    for i in range(trials):
        n = 2 + i % 3
        cat = monogenic_category(n)
        alpha_p, alpha = random_triple(cat, rng)
        h = random_functor(cat, rng)
        s = ext2_shortcut(alpha_p, alpha, h)
        e = ext_resolution(2, FpFunctorModule(RIGHT, alpha), h)
        rep.cases += 1
        dims[s] = dims.get(s, 0) + 1
        if s != e:
            rep.fail(ring=f"monogenic:{n}", alpha=alpha.to_json(), alpha_prime=alpha_p.to_json(),
                     h=h.presenter.to_json(), shortcut=s, resolution=e)
    rep.table = [{"ext2_dim": k, "count": v} for k, v in sorted(dims.items())]
    return rep


def suite_pseudo(cfg: SuiteConfig) -> SuiteReport:
    trials = cfg.trials or 30
    rep = SuiteReport("pseudo", cfg.seed, trials)
    rng = random.Random(cfg.seed)
    for i in range(trials):
        n = 2 + i % 3
        cat = monogenic_category(n)
        a, b = random_object(cat, rng), random_object(cat, rng)
        f = random_morphism(cat, a, b, rng)
        rep.cases += 1
        k = pseudo_kernel(f)
        c = pseudo_cokernel(f)
        if not is_exact_at_summands(k, f) or not is_coexact_at_summands(f, c):
            rep.fail(ring=f"monogenic:{n}", morphism=f.to_json())
    return rep


def suite_projmod(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("proj-mod", cfg.seed, cfg.trials or 12)
    algebras = [("k", truncated_polynomial_algebra(1)), ("k[x]/(x^2)", truncated_polynomial_algebra(2)),
                ("End(R+k)", monogenic_category(2).auslander_algebra),
                ("End(R+k)^op", monogenic_category(2).auslander_opposite),
                ("path A2", path_algebra_a2())]
    for name, a in algebras:
        r = evaluation_functorification_check(a, standard_battery(a, seed=cfg.seed, trials=rep.trials))
        rep.cases += r.functors
        rep.table.append({"algebra": name, **r.to_json()})
        for f in r.failures:
            rep.fail(algebra=name, **f)
    return rep


def _normal_form_depth(m: dvr.DvrModule) -> float:
    if m.is_zero:
        return math.inf
    return 0 if m.torsion else 1


def random_dvr_module(rng: random.Random) -> dvr.DvrModule:
    return dvr.DvrModule(rng.randint(0, 2), tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 2))))


def suite_depth(cfg: SuiteConfig) -> SuiteReport:
    trials = cfg.trials or 30
    rep = SuiteReport("depth", cfg.seed, trials)
    rng = random.Random(cfg.seed)
    for _ in range(trials):
        g, q = rng.randint(1, 3), rng.randint(0, 3)
        rows = [[[rng.randint(-2, 2) for _ in range(rng.randint(0, 3))] for _ in range(q)] for _ in range(g)]
        p = dvr.DvrPresentation.from_coefficients(rows, ncols=q)
        m = dvr.smith_local(p)
        rep.cases += 1
        dep = dvr.depth_dvr(m)
        # 0 -> K -> V^q -> V^g -> M -> 0 with K free
        length = 0 if q == 0 else (1 if dvr.local_rank(p) == q else 2)
        k1 = dvr.first_syzygy(p)
        ok = dep == _normal_form_depth(m) and dep >= 1 - length and k1.torsion == () \
            and k1.free_rank == dvr.local_rank(p) and dvr.depth_dvr(k1) >= min(1, dep + 1)
        if not ok:
            rep.fail(presentation=rows, module=m.to_json())
    for _ in range(20):
        m = random_dvr_module(rng)
        rep.cases += 1
        pdv = dvr.pd_dvr(m)
        expected = dvr.KRULL_DIM - _normal_form_depth(m)
        if pdv != expected:
            rep.fail(module=m.to_json(), pd=_ext_int(pdv), expected=_ext_int(expected))
    for _ in range(10):
        m = dvr.DvrModule(0, tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3))))
        rep.cases += 1
        if dvr.ext_functor_pd_dvr(m) != 1:
            rep.fail(module=m.to_json(), check="pd of Ext^1(M, -)")
    for n in (2, 3, 4):
        cat = monogenic_category(n)
        for total in range(0, 5):
            for mults in partitions(total, n):
                m = module_of_type(cat, mults)
                rep.cases += 1
                p = pd_of_representable(cat.ring, m)
                if p != (0 if total else -math.inf):
                    rep.fail(ring=f"monogenic:{n}", module=list(mults), pd=_ext_int(p))
    return rep


def suite_thm01(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("thm01", cfg.seed, cfg.trials or 0)
    ringset = [rings.BaseRing.field(), rings.BaseRing.dvr()] + [rings.BaseRing.monogenic(n) for n in range(2, 6)]
    for r in ringset:
        g = gldim_report(r)
        w = regularity_witness(r)
        rep.cases += 1
        row = {"ring": str(r), "d": r.krull_dim, "gldim": _ext_int(g.gldim), "regular": w.regular,
               "witness_coker": w.data.get("coker_dim")}
        rep.table.append(row)
        if w.regular != r.is_regular or (not w.regular and not w.data.get("coker_dim")):
            rep.fail(**row)
    return rep


SUITES: dict = {
    "duality": suite_duality,
    "ext2": suite_ext2,
    "proj-mod": suite_projmod,
    "depth": suite_depth,
    "thm01": suite_thm01,
    "pseudo": suite_pseudo,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteReport:
    fn: Callable = SUITES[name]
    return fn(cfg)
