"""Global dimension of MCM over the supported base rings and the regularity witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import dvr, rings
from .algebra import DEFAULT_CAP, min_resolution, _ext_int
from .category import (AddCategory, FpFunctorModule, RIGHT, category_for, ext2_shortcut, ext_resolution,
                       fp_pd, gldim_category, representable)
from .errors import PreconditionError, TheoremViolation, UnsupportedBase
from .linalg import Matrix, rank


@dataclass
class GldimReport:
    ring: str
    d: int
    gldim: float
    lower_bound_ok: bool
    upper_bound_ok: bool
    simple_betti: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ring": self.ring, "d": self.d, "gldim": _ext_int(self.gldim),
                "bounds": f"{self.d} <= {_ext_int(self.gldim)} <= {max(2, self.d)}",
                "lower_bound_ok": self.lower_bound_ok, "upper_bound_ok": self.upper_bound_ok,
                "simple_betti": self.simple_betti, "warnings": self.warnings}


def _check_bounds(r: rings.BaseRing, g: float):
    d = r.krull_dim
    lo, hi = d <= g, g <= max(2, d)
    if not (lo and hi):
        raise TheoremViolation(f"gldim {g} violates {d} <= gldim <= {max(2, d)} for {r}")
    # a field exactly when gldim is 0, a DVR exactly when it is 1
    is_field = r.kind == "field" or (r.kind == "monogenic" and r.n == 1)
    if (g == 0) != is_field:
        raise TheoremViolation(f"gldim 0 must characterize fields ({r}: {g})")
    if (g == 1) != (r.kind == "dvr"):
        raise TheoremViolation(f"gldim 1 must characterize the DVR ({r}: {g})")
    if r.krull_dim == 0 and g not in (0, 2):
        raise TheoremViolation(f"at d = 0 gldim must be 0 or 2, got {g}")
    return lo, hi


def gldim_report(r: rings.BaseRing, cap: int = DEFAULT_CAP,
                 generator: Optional[Sequence[rings.FinGenModule]] = None) -> GldimReport:
    warnings = []
    betti = []
    if r.kind == "dvr":
        g = dvr.gldim_proj_v()
        betti = [dvr.free_resolution(dvr.RESIDUE_FIELD)[0]]
    else:
        if r.kind == "artinian_local":
            if not generator:
                raise UnsupportedBase("no representation generator is known for this ring; supply one")
            cat = AddCategory.from_modules(r, generator)
            warnings.append("computed gldim of add(X) for the supplied X; equals gldim MCM only "
                            "if X is a representation generator")
        else:
            cat = category_for(r)
        g = gldim_category(cat, cap)
        E = cat.auslander_algebra
        betti = [min_resolution(E.simple(i), cap).betti_totals() for i in range(E.num_vertices)]
    if r.kind == "artinian_local":
        d = r.krull_dim
        return GldimReport(str(r), d, g, d <= g, g <= max(2, d), betti, warnings)
    lo, hi = _check_bounds(r, g)
    return GldimReport(str(r), r.krull_dim, g, lo, hi, betti, warnings)


def gldim_mcm(r: rings.BaseRing, cap: int = DEFAULT_CAP,
              generator: Optional[Sequence[rings.FinGenModule]] = None) -> float:
    return gldim_report(r, cap, generator).gldim


def pd_of_representable(r: rings.BaseRing, m, cap: int = DEFAULT_CAP) -> float:
    """pd of (-, M), checked against d - depth M."""
    if r.kind == "dvr":
        return dvr.functor_pd_representable_dvr(m)
    cat = category_for(r)
    a, _ = cat.identify(m)
    p = fp_pd(representable(cat, a), cap)
    expected = r.krull_dim - rings.depth_artinian(m)
    if p != expected:
        raise TheoremViolation(f"pd (-,M) = {p} but d - depth M = {expected}")
    return p


@dataclass
class WitnessReport:
    ring: str
    gldim: float
    regular: bool
    message: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"ring": self.ring, "gldim": _ext_int(self.gldim), "regular": self.regular,
                "message": self.message, "data": self.data}


def regularity_witness(r: rings.BaseRing, cap: int = DEFAULT_CAP) -> WitnessReport:
    """Certify regularity when gldim <= 1, else exhibit the failing splitting.

    For k[x]/(x^n), n >= 2: X = k, the free cover L = R -> k with kernel
    iota: Y = (x) -> R.  The restriction Hom(L, Y) -> Hom(Y, Y) is not onto,
    so iota has no left inverse, and its cokernel is Ext^2(G, H) for
    G = coker (-, L -> X) and H = (-, Y).
    """
    g = gldim_mcm(r, cap)
    if g <= 1:
        if not r.is_regular:
            raise TheoremViolation(f"gldim {g} <= 1 but {r} is not regular")
        label = "regular, nothing to witness" if r.krull_dim == 0 else "regular"
        return WitnessReport(str(r), g, True, label)
    if r.kind != "monogenic":
        raise UnsupportedBase("the witness is built for k[x]/(x^n)")
    n = r.n
    cat = category_for(r)
    idx = cat.cyclic_index()
    X, L, Y = cat.summand(idx[1]), cat.summand(idx[n]), cat.summand(idx[n - 1])
    proj = Matrix([[1] + [0] * (n - 1)], rows=1, cols=n)
    incl = Matrix([[1 if r_ == c + 1 else 0 for c in range(n - 1)] for r_ in range(n)], rows=n, cols=n - 1)
    pi = cat.from_matrix(L, X, proj)
    iota = cat.from_matrix(Y, L, incl)
    restrict = cat.pre(iota, Y)  # Hom(L, Y) -> Hom(Y, Y)
    end_dim = restrict.rows
    coker = end_dim - rank(restrict)
    G = FpFunctorModule(RIGHT, pi)
    H = representable(cat, Y)
    via_lemma = ext2_shortcut(iota, pi, H)
    via_resolution = ext_resolution(2, G, H, cap)
    if coker < 1 or via_lemma != coker or via_resolution != coker:
        raise TheoremViolation("expected a nonzero cokernel matching Ext^2")
    data = {"X": cat.names[idx[1]], "L": cat.names[idx[n]], "Y": cat.names[idx[n - 1]],
            "dim_hom_L_Y": restrict.cols, "dim_end_Y": end_dim, "rank_restriction": rank(restrict),
            "coker_dim": coker, "ext2_shortcut": via_lemma, "ext2_resolution": via_resolution}
    return WitnessReport(str(r), g, False, "iota has no left inverse: Coker Hom(iota, Y) != 0", data)


@dataclass
class NaturalIsoReport:
    dims_hom: list  # dim Hom(M, U) per summand
    dims_dual: list  # dim Hom(U^dagger, M^dagger) per summand
    isomorphic: bool
    squares: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.isomorphic and not self.failures


def natural_iso_check(m: rings.FinGenModule, cat: Optional[AddCategory] = None) -> NaturalIsoReport:
    """Hom((-)^dagger, M^dagger) = Hom(M, -) on the summands, via f -> f^dagger."""
    if not m.ring.is_artinian:
        raise PreconditionError("needs an Artinian base")
    cat = cat or category_for(m.ring)
    md = rings.dagger(m)
    hom_m = [rings.hom(m, u) for u in cat.modules]
    hom_d = [rings.hom(rings.dagger(u), md) for u in cat.modules]
    etas = []
    iso = True
    for u, umod in enumerate(cat.modules):
        cols = [hom_d[u].coords(rings.dagger_morphism(f, m, umod)) for f in hom_m[u].basis]
        eta = Matrix.from_columns(cols, hom_d[u].dim) if cols else Matrix.zeros(hom_d[u].dim, 0)
        etas.append(eta)
        if hom_m[u].dim != hom_d[u].dim or (eta.rows and rank(eta) != eta.rows):
            iso = False
    rep = NaturalIsoReport([h.dim for h in hom_m], [h.dim for h in hom_d], iso, 0)
    for u, umod in enumerate(cat.modules):
        for v, vmod in enumerate(cat.modules):
            for phi in cat.homs[u][v].basis:
                rep.squares += 1
                phi_d = rings.dagger_morphism(phi, umod, vmod)
                # Hom(M, phi) and Hom(phi^dagger, M^dagger)
                c2 = [hom_m[v].coords(phi @ f) for f in hom_m[u].basis]
                c1 = [hom_d[v].coords(g @ phi_d) for g in hom_d[u].basis]
                F2 = Matrix.from_columns(c2, hom_m[v].dim) if c2 else Matrix.zeros(hom_m[v].dim, 0)
                F1 = Matrix.from_columns(c1, hom_d[v].dim) if c1 else Matrix.zeros(hom_d[v].dim, 0)
                if F1 @ etas[u] != etas[v] @ F2:
                    rep.failures.append({"from": cat.names[u], "to": cat.names[v]})
    return rep


def delta_naturality(f: Matrix, m: rings.FinGenModule, n: rings.FinGenModule) -> bool:
    """delta_N o f == f^dagger-dagger o delta_M."""
    fd = rings.dagger_morphism(f, m, n)
    fdd = rings.dagger_morphism(fd, rings.dagger(n), rings.dagger(m))
    return rings.delta(n) @ f == fdd @ rings.delta(m)
