"""Finite additive categories add(X) and their finitely presented functor modules.

Morphisms between objects X_1^m_1 + ... + X_n^m_n are stored blockwise as
coefficient vectors in fixed bases of the summand hom spaces, and all
arithmetic goes through the composition tensors.  A right functor
presented by ``alpha: A -> B`` is coker (-, alpha); a left functor
presented by ``alpha`` is coker (alpha, -), i.e. (B, -) -> (A, -) -> F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from . import rings
from .algebra import DEFAULT_CAP, AlgRightModule, FdAlgebra, direct_sum, ext_algebra, gldim, pd
from .errors import MalformedInput, NotExact, PreconditionError, ShapeError, TheoremViolation, UnsupportedBase
from .linalg import QQ, Matrix, Subspace, hstack, kernel_basis, rank, solve

NEG_INF = -math.inf
RIGHT, LEFT = "right", "left"


@dataclass(frozen=True)
class ObjectSpec:
    mults: tuple

    def __post_init__(self):
        if any(m < 0 for m in self.mults):
            raise ShapeError("multiplicities must be nonnegative")

    @property
    def slots(self) -> tuple:
        """Summand index of every slot, summands ascending."""
        return tuple(i for i, m in enumerate(self.mults) for _ in range(m))

    @property
    def is_zero(self) -> bool:
        return not any(self.mults)

    def __add__(self, other: "ObjectSpec") -> "ObjectSpec":
        return ObjectSpec(tuple(a + b for a, b in zip(self.mults, other.mults)))


@dataclass(frozen=True, eq=False)
class CatMorphism:
    cat: "AddCategory"
    source: ObjectSpec
    target: ObjectSpec
    blocks: tuple  # blocks[t][s]: coords of the component X_{slot s} -> X_{slot t}

    def __eq__(self, other) -> bool:
        return isinstance(other, CatMorphism) and self.cat is other.cat and \
            self.source == other.source and self.target == other.target and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.blocks))

    def __matmul__(self, other: "CatMorphism") -> "CatMorphism":
        return self.cat.compose(self, other)

    def __add__(self, other: "CatMorphism") -> "CatMorphism":
        if (self.source, self.target) != (other.source, other.target):
            raise ShapeError("cannot add morphisms with different shapes")
        return CatMorphism(self.cat, self.source, self.target, tuple(
            tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(ra, rb))
            for ra, rb in zip(self.blocks, other.blocks)))

    def scale(self, c) -> "CatMorphism":
        c = QQ.coerce(c)
        return CatMorphism(self.cat, self.source, self.target,
                           tuple(tuple(tuple(c * x for x in b) for b in row) for row in self.blocks))

    def is_zero(self) -> bool:
        return not any(x for row in self.blocks for b in row for x in b)

    def to_json(self) -> dict:
        e = QQ.element_to_json
        return {"source": list(self.source.mults), "target": list(self.target.mults),
                "blocks": [[[e(x) for x in b] for b in row] for row in self.blocks]}


@dataclass(frozen=True)
class FpFunctorModule:
    side: str
    presenter: CatMorphism

    def __post_init__(self):
        if self.side not in (RIGHT, LEFT):
            raise MalformedInput(f"side must be {RIGHT!r} or {LEFT!r}")

    @property
    def cat(self) -> "AddCategory":
        return self.presenter.cat


def _mat(rows: int, cols: int, data) -> Matrix:
    return Matrix._raw(rows, cols, QQ, data)


class AddCategory:
    """add(X_1 + ... + X_n) presented by hom dimensions and composition tensors.

    ``comp[(i, j, l)][b][a]`` holds the coordinates in Hom(X_i, X_l) of
    f_b o g_a for g_a in Hom(X_i, X_j) and f_b in Hom(X_j, X_l).
    """

    def __init__(self, hom_dims, comp, identities, *, ring: Optional[rings.BaseRing] = None,
                 modules: Optional[Sequence[rings.FinGenModule]] = None, homs=None,
                 names: Optional[Sequence[str]] = None, check: bool = True):
        self.n = len(hom_dims)
        self.hom_dims = tuple(tuple(int(x) for x in row) for row in hom_dims)
        self.comp = comp
        self.identities = tuple(tuple(QQ.coerce(x) for x in v) for v in identities)
        self.ring = ring
        self.modules = tuple(modules) if modules is not None else None
        self.homs = homs
        self.names = tuple(names) if names else tuple(f"X{i + 1}" for i in range(self.n))
        self._post, self._pre = {}, {}
        for i in range(self.n):
            if len(self.identities[i]) != self.hom_dims[i][i]:
                raise MalformedInput("identity vector has the wrong length")
        if check:
            self._check()

    # -- construction ------------------------------------------------------
    @classmethod
    def from_modules(cls, ring: rings.BaseRing, modules: Sequence[rings.FinGenModule],
                     names: Optional[Sequence[str]] = None) -> "AddCategory":
        n = len(modules)
        H = [[rings.hom(modules[i], modules[j]) for j in range(n)] for i in range(n)]
        dims = [[H[i][j].dim for j in range(n)] for i in range(n)]
        comp = {}
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    comp[(i, j, l)] = [[tuple(H[i][l].coords(f @ g)) for g in H[i][j].basis]
                                       for f in H[j][l].basis]
        ids = [H[i][i].coords(Matrix.identity(modules[i].dim)) for i in range(n)]
        return cls(dims, comp, ids, ring=ring, modules=modules, homs=H, names=names)

    def _check(self):
        n, h = self.n, self.hom_dims
        for (i, j, l), t in self.comp.items():
            if len(t) != h[j][l] or any(len(r) != h[i][j] for r in t) or \
                    any(len(v) != h[i][l] for r in t for v in r):
                raise MalformedInput(f"composition tensor {(i, j, l)} has the wrong shape")
        for i in range(n):
            for j in range(n):
                for a in range(h[i][j]):
                    e = tuple(QQ.one if x == a else QQ.zero for x in range(h[i][j]))
                    if self._compose_coords(i, i, j, e, self.identities[i]) != e or \
                            self._compose_coords(i, j, j, self.identities[j], e) != e:
                        raise TheoremViolation("identity morphisms are not units for composition")
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    for m in range(n):
                        for a in range(h[i][j]):
                            ga = self._unit(h[i][j], a)
                            for b in range(h[j][l]):
                                fb = self._unit(h[j][l], b)
                                fg = self._compose_coords(i, j, l, fb, ga)
                                for c in range(h[l][m]):
                                    hc = self._unit(h[l][m], c)
                                    left = self._compose_coords(i, l, m, hc, fg)
                                    right = self._compose_coords(i, j, m, self._compose_coords(j, l, m, hc, fb), ga)
                                    if left != right:
                                        raise TheoremViolation("composition is not associative")

    @staticmethod
    def _unit(d: int, a: int) -> tuple:
        return tuple(QQ.one if x == a else QQ.zero for x in range(d))

    def _compose_coords(self, i, j, l, f, g) -> tuple:
        """f o g for g in Hom(X_i, X_j), f in Hom(X_j, X_l)."""
        out = [QQ.zero] * self.hom_dims[i][l]
        t = self.comp[(i, j, l)]
        for b, fb in enumerate(f):
            if fb:
                row = t[b]
                for a, ga in enumerate(g):
                    if ga:
                        c = fb * ga
                        for k, x in enumerate(row[a]):
                            if x:
                                out[k] += c * x
        return tuple(out)

    # -- objects and morphisms ---------------------------------------------
    def obj(self, *mults) -> ObjectSpec:
        if len(mults) == 1 and isinstance(mults[0], (list, tuple)):
            mults = tuple(mults[0])
        if len(mults) != self.n:
            raise ShapeError(f"expected {self.n} multiplicities")
        return ObjectSpec(tuple(int(m) for m in mults))

    def summand(self, i: int) -> ObjectSpec:
        return ObjectSpec(tuple(1 if j == i else 0 for j in range(self.n)))

    @property
    def zero_object(self) -> ObjectSpec:
        return ObjectSpec((0,) * self.n)

    def morphism(self, source: ObjectSpec, target: ObjectSpec, blocks) -> CatMorphism:
        ss, ts = source.slots, target.slots
        if len(blocks) != len(ts) or any(len(r) != len(ss) for r in blocks):
            raise ShapeError("block grid does not match the multiplicities")
        out = []
        for t, row in zip(ts, blocks):
            r = []
            for s, b in zip(ss, row):
                if len(b) != self.hom_dims[s][t]:
                    raise ShapeError(f"block for {self.names[s]} -> {self.names[t]} needs "
                                     f"{self.hom_dims[s][t]} coefficients")
                r.append(tuple(QQ.coerce(x) for x in b))
            out.append(tuple(r))
        return CatMorphism(self, source, target, tuple(out))

    def zero(self, source: ObjectSpec, target: ObjectSpec) -> CatMorphism:
        return CatMorphism(self, source, target, tuple(
            tuple((QQ.zero,) * self.hom_dims[s][t] for s in source.slots) for t in target.slots))

    def identity(self, a: ObjectSpec) -> CatMorphism:
        sl = a.slots
        return CatMorphism(self, a, a, tuple(
            tuple(self.identities[s] if p == q else (QQ.zero,) * self.hom_dims[s][t]
                  for q, s in enumerate(sl)) for p, t in enumerate(sl)))

    def compose(self, f: CatMorphism, g: CatMorphism) -> CatMorphism:
        """f o g."""
        if g.target != f.source:
            raise ShapeError("morphisms are not composable")
        ss, ms, ts = g.source.slots, g.target.slots, f.target.slots
        out = []
        for p, t in enumerate(ts):
            row = []
            for q, s in enumerate(ss):
                acc = [QQ.zero] * self.hom_dims[s][t]
                for r, m in enumerate(ms):
                    v = self._compose_coords(s, m, t, f.blocks[p][r], g.blocks[r][q])
                    acc = [x + y for x, y in zip(acc, v)]
                row.append(tuple(acc))
            out.append(tuple(row))
        return CatMorphism(self, g.source, f.target, tuple(out))

    def hom_dim(self, a: ObjectSpec, b: ObjectSpec) -> int:
        return sum(self.hom_dims[s][t] for t in b.slots for s in a.slots)

    def flatten(self, f: CatMorphism) -> list:
        """Coordinates in Hom(A, B), ordered by target slot, source slot, basis."""
        return [x for row in f.blocks for b in row for x in b]

    def unflatten(self, a: ObjectSpec, b: ObjectSpec, v: Sequence) -> CatMorphism:
        out, k = [], 0
        for t in b.slots:
            row = []
            for s in a.slots:
                d = self.hom_dims[s][t]
                row.append(tuple(QQ.coerce(x) for x in v[k:k + d]))
                k += d
            out.append(tuple(row))
        return CatMorphism(self, a, b, tuple(out))

    def hom_space(self, a: ObjectSpec, b: ObjectSpec) -> list:
        d = self.hom_dim(a, b)
        return [self.unflatten(a, b, self._unit(d, k)) for k in range(d)]

    # -- induced maps on hom spaces ------------------------------------------
    def _post_basis(self, i, j, l, b) -> list:
        """Matrix rows of g -> f_b o g : Hom(X_i, X_j) -> Hom(X_i, X_l)."""
        key = (i, j, l, b)
        if key not in self._post:
            t = self.comp[(i, j, l)][b]
            self._post[key] = [[t[a][k] for a in range(self.hom_dims[i][j])] for k in range(self.hom_dims[i][l])]
        return self._post[key]

    def _pre_basis(self, i, j, l, a) -> list:
        """Matrix rows of f -> f o g_a : Hom(X_j, X_l) -> Hom(X_i, X_l)."""
        key = (i, j, l, a)
        if key not in self._pre:
            t = self.comp[(i, j, l)]
            self._pre[key] = [[t[b][a][k] for b in range(self.hom_dims[j][l])] for k in range(self.hom_dims[i][l])]
        return self._pre[key]

    def post(self, c: ObjectSpec, f: CatMorphism) -> Matrix:
        """Hom(C, f) : Hom(C, A) -> Hom(C, B), g -> f o g."""
        h = self.hom_dims
        cs, ss, ts = c.slots, f.source.slots, f.target.slots
        col_off, off = {}, 0
        for q, s in enumerate(ss):
            for u, cu in enumerate(cs):
                col_off[(q, u)] = off
                off += h[cu][s]
        ncols = off
        rows = []
        for p, t in enumerate(ts):
            for u, cu in enumerate(cs):
                block_rows = [[QQ.zero] * ncols for _ in range(h[cu][t])]
                for q, s in enumerate(ss):
                    coeffs = f.blocks[p][q]
                    c0 = col_off[(q, u)]
                    for b, fb in enumerate(coeffs):
                        if fb:
                            P = self._post_basis(cu, s, t, b)
                            for k in range(h[cu][t]):
                                rowk = block_rows[k]
                                for a, x in enumerate(P[k]):
                                    if x:
                                        rowk[c0 + a] += fb * x
                rows.extend(block_rows)
        return _mat(len(rows), ncols, rows)

    def pre(self, f: CatMorphism, d: ObjectSpec) -> Matrix:
        """Hom(f, D) : Hom(B, D) -> Hom(A, D), psi -> psi o f."""
        h = self.hom_dims
        ds, ss, ts = d.slots, f.source.slots, f.target.slots
        col_off, off = {}, 0
        for w, dw in enumerate(ds):
            for p, t in enumerate(ts):
                col_off[(w, p)] = off
                off += h[t][dw]
        ncols = off
        rows = []
        for w, dw in enumerate(ds):
            for q, s in enumerate(ss):
                block_rows = [[QQ.zero] * ncols for _ in range(h[s][dw])]
                for p, t in enumerate(ts):
                    coeffs = f.blocks[p][q]
                    c0 = col_off[(w, p)]
                    for a, fa in enumerate(coeffs):
                        if fa:
                            P = self._pre_basis(s, t, dw, a)
                            for k in range(h[s][dw]):
                                rowk = block_rows[k]
                                for b, x in enumerate(P[k]):
                                    if x:
                                        rowk[c0 + b] += fa * x
                rows.extend(block_rows)
        return _mat(len(rows), ncols, rows)

    # -- realization by modules ---------------------------------------------
    def _need_modules(self):
        if self.modules is None:
            raise UnsupportedBase("this category has no module realization")

    def realize_object(self, a: ObjectSpec) -> rings.FinGenModule:
        self._need_modules()
        mods = [self.modules[s] for s in a.slots]
        if not mods:
            return rings.zero_module(self.ring)
        return mods[0].direct_sum(*mods[1:]) if len(mods) > 1 else mods[0]

    def realize(self, f: CatMorphism) -> Matrix:
        self._need_modules()
        dims = [m.dim for m in self.modules]
        ss, ts = f.source.slots, f.target.slots
        R, C = sum(dims[t] for t in ts), sum(dims[s] for s in ss)
        out = [[QQ.zero] * C for _ in range(R)]
        r0 = 0
        for p, t in enumerate(ts):
            c0 = 0
            for q, s in enumerate(ss):
                for a, x in enumerate(f.blocks[p][q]):
                    if x:
                        B = self.homs[s][t].basis[a]
                        for i in range(dims[t]):
                            for j in range(dims[s]):
                                if B[i, j]:
                                    out[r0 + i][c0 + j] += x * B[i, j]
                c0 += dims[s]
            r0 += dims[t]
        return _mat(R, C, out)

    def from_matrix(self, a: ObjectSpec, b: ObjectSpec, m: Matrix) -> CatMorphism:
        """The morphism A -> B realized by the module map ``m``."""
        self._need_modules()
        dims = [x.dim for x in self.modules]
        ss, ts = a.slots, b.slots
        if m.shape != (sum(dims[t] for t in ts), sum(dims[s] for s in ss)):
            raise ShapeError("matrix does not match the objects")
        out, r0 = [], 0
        for t in ts:
            row, c0 = [], 0
            for s in ss:
                blk = m.block(r0, r0 + dims[t], c0, c0 + dims[s])
                row.append(tuple(self.homs[s][t].coords(blk)))
                c0 += dims[s]
            out.append(tuple(row))
            r0 += dims[t]
        return CatMorphism(self, a, b, tuple(out))

    def cyclic_index(self) -> Optional[dict]:
        """size i -> summand index, when the summands are the cyclic k[x]/(x^i)."""
        if self.ring is None or self.ring.kind not in ("field", "monogenic") or self.modules is None:
            return None
        out = {}
        for idx, m in enumerate(self.modules):
            try:
                ref = rings.cyclic_module(self.ring, m.dim)
            except PreconditionError:
                return None
            if m != ref:
                return None
            out[m.dim] = idx
        return out

    def identify(self, m: rings.FinGenModule):
        """(object A, iso realize(A) -> m) for a module in add X."""
        idx = self.cyclic_index()
        if idx is None:
            raise UnsupportedBase("summand decomposition needs the cyclic inventory of k[x]/(x^n)")
        mults, iso = rings.nilpotency_decomposition(m)
        out = [0] * self.n
        for size, k in enumerate(mults, start=1):
            if k:
                if size not in idx:
                    raise PreconditionError(f"k[x]/(x^{size}) is not a summand of this category")
                out[idx[size]] = k
        # reorder the Jordan chains to the slot order of the object
        order = sorted(range(len(mults)), key=lambda s: idx.get(s + 1, -1))
        starts, off = {}, 0
        for size, k in enumerate(mults, start=1):
            starts[size] = off
            off += k * size
        cols = []
        for s in order:
            size = s + 1
            for c in range(mults[s]):
                base = starts[size] + c * size
                cols.extend(iso.col(base + r) for r in range(size))
        return ObjectSpec(tuple(out)), Matrix.from_columns(cols, m.dim) if cols else Matrix.zeros(m.dim, 0)

    # -- Auslander algebra -------------------------------------------------
    @cached_property
    def _ausl_offsets(self) -> dict:
        off, out = 0, {}
        for i in range(self.n):
            for j in range(self.n):
                out[(i, j)] = off
                off += self.hom_dims[j][i]
        return out

    @cached_property
    def auslander_algebra(self) -> FdAlgebra:
        """E = End(X_1 + ... + X_n); basis (i, j, a) = a-th basis map X_j -> X_i."""
        n, h, off = self.n, self.hom_dims, self._ausl_offsets
        dim = sum(h[j][i] for i in range(n) for j in range(n))
        table = [[{} for _ in range(dim)] for _ in range(dim)]
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    # (i, j, a) * (j, l, b) = f_a o g_b in Hom(X_l, X_i)
                    t = self.comp[(l, j, i)]
                    for a in range(h[j][i]):
                        for b in range(h[l][j]):
                            v = t[a][b]
                            entry = {off[(i, l)] + k: x for k, x in enumerate(v) if x}
                            table[off[(i, j)] + a][off[(j, l)] + b] = entry
        unit = [QQ.zero] * dim
        idems = []
        for i in range(n):
            e = [QQ.zero] * dim
            for k, x in enumerate(self.identities[i]):
                e[off[(i, i)] + k] = x
                unit[off[(i, i)] + k] = x
            idems.append(e)
        return FdAlgebra(dim, table, unit, idems, check=False)

    def algebra_element(self, f_coords: Sequence, s: int, t: int) -> list:
        """The element of e_t E e_s given by a map X_s -> X_t."""
        v = [QQ.zero] * self.auslander_algebra.dim
        o = self._ausl_offsets[(t, s)]
        for k, x in enumerate(f_coords):
            v[o + k] = x
        return v

    @cached_property
    def auslander_opposite(self) -> FdAlgebra:
        return self.auslander_algebra.opposite()

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        e = QQ.element_to_json
        out = {
            "names": list(self.names),
            "hom_dims": [list(r) for r in self.hom_dims],
            "identities": [[e(x) for x in v] for v in self.identities],
            "comp": [{"key": list(k), "tensor": [[[e(x) for x in v] for v in row] for row in t]}
                     for k, t in sorted(self.comp.items())],
        }
        if self.ring is not None:
            out["ring"] = self.ring.descriptor()
        if self.modules is not None:
            out["summands"] = [m.to_json() for m in self.modules]
            out["hom_basis"] = [[[b.to_json() for b in self.homs[i][j].basis] for j in range(self.n)]
                                for i in range(self.n)]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "AddCategory":
        try:
            if "ring" in obj and "summands" in obj:
                ring = rings.BaseRing.from_descriptor(obj["ring"])
                mods = [rings.FinGenModule.from_json(ring, m) for m in obj["summands"]]
                return cls.from_modules(ring, mods, obj.get("names"))
            co = QQ.coerce
            comp = {tuple(c["key"]): [[tuple(co(x) for x in v) for v in row] for row in c["tensor"]]
                    for c in obj["comp"]}
            return cls(obj["hom_dims"], comp, [[co(x) for x in v] for v in obj["identities"]],
                       names=obj.get("names"))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad category JSON: {exc}") from exc


@lru_cache(maxsize=None)
def monogenic_category(n: int) -> AddCategory:
    """add of k[x]/(x), ..., k[x]/(x^n) over k[x]/(x^n) (n = 1 is the field)."""
    mods = rings.indecomposables_monogenic(n)
    return AddCategory.from_modules(mods[0].ring, mods, [f"k[x]/(x^{i})" for i in range(1, n + 1)])


def category_for(ring: rings.BaseRing) -> AddCategory:
    if ring.kind == "field":
        return monogenic_category(1)
    if ring.kind == "monogenic":
        return monogenic_category(ring.n)
    raise UnsupportedBase(f"no built-in representation generator for {ring}")


# -- functor modules -----------------------------------------------------------

def representable(cat: AddCategory, a: ObjectSpec, side: str = RIGHT) -> FpFunctorModule:
    """(-, A) on the right, (A, -) on the left."""
    if side == RIGHT:
        return FpFunctorModule(RIGHT, cat.zero(cat.zero_object, a))
    return FpFunctorModule(LEFT, cat.zero(a, cat.zero_object))


def evaluate(g: FpFunctorModule, u: ObjectSpec):
    """(dimension of G(U), presentation matrix whose cokernel is G(U))."""
    cat, a = g.cat, g.presenter
    m = cat.post(u, a) if g.side == RIGHT else cat.pre(a, u)
    return m.rows - rank(m), m


def projectivize(g: FpFunctorModule) -> AlgRightModule:
    """G(X) as a right E-module (E-opposite for left functors)."""
    cat, a = g.cat, g.presenter
    if g.side == RIGHT:
        alg = cat.auslander_algebra
        src, tgt = a.source.slots, a.target.slots
        elem = lambda t, s: cat.algebra_element(a.blocks[t][s], src[s], tgt[t])
    else:
        alg = cat.auslander_opposite
        src, tgt = a.target.slots, a.source.slots
        elem = lambda t, s: cat.algebra_element(a.blocks[s][t], tgt[t], src[s])
    return _presented_module(alg, src, tgt, elem)


def _presented_module(alg: FdAlgebra, src: Sequence[int], tgt: Sequence[int], elem) -> AlgRightModule:
    """coker of the map (+)_s e_{src s} E -> (+)_t e_{tgt t} E, x_s -> sum_t elem(t, s) x_s."""
    projs = alg._projectives
    tdims = [projs[u].module.dim for u in tgt]
    toff = [sum(tdims[:p]) for p in range(len(tgt))]
    total = sum(tdims)
    cols = []
    for q, s in enumerate(src):
        pr = projs[s]
        elems = [elem(p, q) for p in range(len(tgt))]
        for c in pr.basis.basis.columns():
            v = [QQ.zero] * total
            for p, u in enumerate(tgt):
                if any(elems[p]):
                    img = projs[u].basis.coords(alg.product(elems[p], list(c)))
                    v[toff[p]:toff[p] + tdims[p]] = img
            cols.append(v)
    target = direct_sum(alg, [projs[u].module for u in tgt])
    if not cols:
        return target
    image = Subspace(Matrix.from_columns(cols, total))
    if image.dim == 0:
        return target
    return target.quotient(image)[0]


def fp_pd(g: FpFunctorModule, cap: int = DEFAULT_CAP) -> float:
    m = projectivize(g)
    alg = g.cat.auslander_algebra if g.side == RIGHT else g.cat.auslander_opposite
    alg.check_split()
    return pd(m, cap)


def gldim_category(cat: AddCategory, cap: int = DEFAULT_CAP) -> float:
    """gldim E, checked against the left side (the opposite algebra)."""
    right = gldim(cat.auslander_algebra, cap)
    left = gldim(cat.auslander_opposite, cap)
    if right != left:
        raise TheoremViolation(f"left and right global dimensions differ: {left} vs {right}")
    return right


def ext_resolution(n: int, g: FpFunctorModule, h: FpFunctorModule, cap: int = DEFAULT_CAP) -> int:
    if g.side != h.side:
        raise PreconditionError("Ext needs two functors on the same side")
    return ext_algebra(n, projectivize(g), projectivize(h), cap).dim


# -- pseudo-kernels and pseudo-cokernels ---------------------------------------

def _kernel_precover(cat: AddCategory, mat: Matrix, source: ObjectSpec) -> CatMorphism:
    """alpha = iota o pi with iota the kernel inclusion of ``mat`` and pi a precover."""
    dim = mat.cols
    K = Subspace(kernel_basis(mat))
    if K.dim == dim:
        return cat.identity(source)
    if K.dim == 0:
        return cat.zero(cat.zero_object, source)
    kmod = cat.realize_object(source).submodule(K)
    if cat.cyclic_index() is not None:
        # identity precover of the kernel, read through an isomorphism with add X
        a, iso = cat.identify(kmod)
        return cat.from_matrix(a, source, K.basis @ iso)
    # the universal map from add X: every basis map X_u -> K
    a = ObjectSpec(tuple(rings.hom(xu, kmod).dim for xu in cat.modules))
    blocks_cols = []
    for u, xu in enumerate(cat.modules):
        for b in rings.hom(xu, kmod).basis:
            blocks_cols.append(K.basis @ b)
    m = hstack(*blocks_cols, rows=dim)
    return cat.from_matrix(a, source, m)


def pseudo_kernel(beta: CatMorphism) -> CatMorphism:
    cat = beta.cat
    if cat.ring is None or not cat.ring.is_artinian:
        raise UnsupportedBase("pseudo-kernels are built from precovers at d = 0")
    alpha = _kernel_precover(cat, cat.realize(beta), beta.source)
    if not is_exact_at_summands(alpha, beta):
        raise TheoremViolation("pseudo-kernel sequence is not exact")
    return alpha


def pseudo_cokernel(alpha: CatMorphism) -> CatMorphism:
    """iota^dagger o delta_Y for iota the pseudo-kernel of alpha^dagger."""
    cat = alpha.cat
    if cat.ring is None or not cat.ring.is_artinian:
        raise UnsupportedBase("the dagger duality is only available at d = 0")
    xm, ym = cat.realize_object(alpha.source), cat.realize_object(alpha.target)
    a_dag = rings.dagger_morphism(cat.realize(alpha), xm, ym)  # Y^dagger -> X^dagger
    y_dag = rings.dagger(ym)
    K = Subspace(kernel_basis(a_dag))
    if K.dim == 0:
        return cat.zero(alpha.target, cat.zero_object)
    z = y_dag.submodule(K)
    iota = K.basis  # identity precover: Z -> Y^dagger
    gamma = rings.dagger_morphism(iota, z, y_dag) @ rings.delta(ym)  # Y -> Z^dagger
    w, psi = cat.identify(rings.dagger(z))
    psi_inv = solve(psi, Matrix.identity(psi.rows))
    out = cat.from_matrix(alpha.target, w, psi_inv @ gamma)
    if not is_coexact_at_summands(alpha, out):
        raise TheoremViolation("pseudo-cokernel sequence is not exact")
    return out


def is_exact_at_summands(f: CatMorphism, g: CatMorphism) -> bool:
    """Hom(U, A) -> Hom(U, B) -> Hom(U, C) exact for every summand U."""
    cat = f.cat
    for u in range(cat.n):
        U = cat.summand(u)
        pf, pg = cat.post(U, f), cat.post(U, g)
        if not (pg @ pf).is_zero():
            return False
        if rank(pf) != pg.cols - rank(pg):
            return False
    return True


def is_coexact_at_summands(f: CatMorphism, g: CatMorphism) -> bool:
    """Hom(C, U) -> Hom(B, U) -> Hom(A, U) exact for every summand U (g o f : A -> C)."""
    cat = f.cat
    for u in range(cat.n):
        U = cat.summand(u)
        pg, pf = cat.pre(g, U), cat.pre(f, U)
        if not (pf @ pg).is_zero():
            return False
        if rank(pg) != pf.cols - rank(pf):
            return False
    return True


# -- duality and side swapping -------------------------------------------------

@lru_cache(maxsize=None)
def _dagger_isos(cat: AddCategory):
    """sigma and isos theta_u : X_{sigma u} -> X_u^dagger."""
    sigma, thetas = [], []
    for u, xu in enumerate(cat.modules):
        obj, iso = cat.identify(rings.dagger(xu))
        if sum(obj.mults) != 1:
            raise TheoremViolation(f"dagger of {cat.names[u]} is not indecomposable")
        sigma.append(obj.mults.index(1))
        thetas.append(iso)
    return tuple(sigma), tuple(thetas)


def dagger_object(cat: AddCategory, a: ObjectSpec) -> ObjectSpec:
    sigma, _ = _dagger_isos(cat)
    out = [0] * cat.n
    for i, m in enumerate(a.mults):
        out[sigma[i]] += m
    return ObjectSpec(tuple(out))


def cat_dagger(f: CatMorphism) -> CatMorphism:
    """f^dagger : B^dagger -> A^dagger transported into add X along the theta isos."""
    cat = f.cat
    sigma, thetas = _dagger_isos(cat)
    ss, ts = f.source.slots, f.target.slots
    src, tgt = dagger_object(cat, f.target), dagger_object(cat, f.source)

    def slot_map(slots, obj):
        # position of each original slot inside the dagger object
        seen, out = {}, []
        starts = {}
        off = 0
        for i, m in enumerate(obj.mults):
            starts[i] = off
            off += m
        for s in slots:
            j = sigma[s]
            out.append(starts[j] + seen.get(j, 0))
            seen[j] = seen.get(j, 0) + 1
        return out

    tpos, spos = slot_map(ts, src), slot_map(ss, tgt)
    blocks = [[None] * len(src.slots) for _ in range(len(tgt.slots))]
    for p, t in enumerate(ts):
        for q, s in enumerate(ss):
            blk = CatMorphism(cat, cat.summand(s), cat.summand(t), ((f.blocks[p][q],),))
            d = rings.dagger_morphism(cat.realize(blk), cat.modules[s], cat.modules[t])
            th_inv = solve(thetas[s], Matrix.identity(thetas[s].rows))
            m = th_inv @ d @ thetas[t]
            blocks[spos[q]][tpos[p]] = tuple(cat.homs[sigma[t]][sigma[s]].coords(m))
    return CatMorphism(cat, src, tgt, tuple(tuple(r) for r in blocks))


def swap_side(g: FpFunctorModule) -> FpFunctorModule:
    """F -> F o (-)^dagger: dagger the presenter and flip the side."""
    cat = g.cat
    if cat.ring is None or not cat.ring.is_artinian:
        raise UnsupportedBase("the dagger duality is only available at d = 0")
    return FpFunctorModule(LEFT if g.side == RIGHT else RIGHT, cat_dagger(g.presenter))


# -- Ext^2 through a left exact triple -----------------------------------------

def check_left_exact(alpha_p: CatMorphism, alpha: CatMorphism):
    """0 -> A' -> A -> A'' exact as R-modules."""
    cat = alpha.cat
    if alpha_p.target != alpha.source:
        raise ShapeError("triple is not composable")
    m1, m2 = cat.realize(alpha_p), cat.realize(alpha)
    if not (m2 @ m1).is_zero():
        raise NotExact("alpha o alpha' != 0")
    r1, r2 = rank(m1), rank(m2)
    if r1 != m1.cols:
        raise NotExact("alpha' is not injective")
    if r1 != m1.rows - r2:
        raise NotExact("image of alpha' is not the kernel of alpha")


def ext2_shortcut(alpha_p: CatMorphism, alpha: CatMorphism, h: FpFunctorModule) -> int:
    """dim Coker H(alpha') for H = coker (-, gamma), G = coker (-, alpha)."""
    if h.side != RIGHT:
        raise PreconditionError("H must be a right functor")
    check_left_exact(alpha_p, alpha)
    cat, gamma = alpha.cat, h.presenter
    a_p, d = alpha_p.source, gamma.target
    m = hstack(cat.pre(alpha_p, d), cat.post(a_p, gamma), rows=cat.hom_dim(a_p, d))
    return m.rows - rank(m) if m.rows else 0


# -- a direct functor resolution at d = 0 -----------------------------------------

def head(cat: AddCategory, u: int, coords: Sequence):
    """Scalar part of an endomorphism of the summand X_u (local endomorphism ring)."""
    blk = CatMorphism(cat, cat.summand(u), cat.summand(u), ((tuple(coords),),))
    m = cat.realize(blk)
    return sum(m[i, i] for i in range(m.rows)) / m.rows


def fp_pd_direct(g: FpFunctorModule) -> float:
    """pd of a right functor from 0 -> (-, K) -> (-, A) -> (-, B) -> G -> 0.

    K -> A is the pseudo-kernel (a true kernel at d = 0), and pd is the top
    degree in which Ext(G, S_u) survives for some simple functor S_u; the
    Ext groups are the cohomology of S_u(B) -> S_u(A) -> S_u(K).
    """
    if g.side != RIGHT:
        raise PreconditionError("direct resolution is implemented for right functors")
    alpha = g.presenter
    cat = alpha.cat
    iota = pseudo_kernel(alpha)
    best = NEG_INF
    for u in range(cat.n):
        def s_map(f: CatMorphism) -> Matrix:
            # S_u(f) : S_u(target) -> S_u(source)
            rows = [q for q, s in enumerate(f.source.slots) if s == u]
            cols = [p for p, t in enumerate(f.target.slots) if t == u]
            data = [[head(cat, u, f.blocks[p][q]) for p in cols] for q in rows]
            return _mat(len(rows), len(cols), data)
        sa, si = s_map(alpha), s_map(iota)
        nb = sa.cols
        na = sa.rows
        nk = si.rows
        ra, ri = rank(sa) if sa.rows and sa.cols else 0, rank(si) if si.rows and si.cols else 0
        ext = [nb - ra, (na - ri) - ra, nk - ri]
        for i, e in enumerate(ext):
            if e:
                best = max(best, i)
    return best


# -- Yoneda --------------------------------------------------------------------

def yoneda_check(cat: AddCategory, a: ObjectSpec, b: ObjectSpec) -> bool:
    """Hom(A, B) -> Nat((B, -), (A, -)) is bijective.

    A natural transformation is a family of maps eta_U : Hom(B, U) -> Hom(A, U)
    over the summands U, natural for every basis morphism U -> U'.
    """
    n = cat.n
    U = [cat.summand(u) for u in range(n)]
    dB = [cat.hom_dim(b, U[u]) for u in range(n)]
    dA = [cat.hom_dim(a, U[u]) for u in range(n)]
    offs, off = [], 0
    for u in range(n):
        offs.append(off)
        off += dA[u] * dB[u]
    nvars = off
    rows = []
    for u in range(n):
        for v in range(n):
            for phi in cat.hom_space(U[u], U[v]):
                # eta_v o Hom(B, phi) = Hom(A, phi) o eta_u
                PB, PA = cat.post(b, phi), cat.post(a, phi)
                for i in range(dA[v]):
                    for j in range(dB[u]):
                        row = [QQ.zero] * nvars
                        # (eta_v PB)[i, j] = sum_k eta_v[i, k] PB[k, j]
                        for k in range(dB[v]):
                            if PB[k, j]:
                                row[offs[v] + i * dB[v] + k] += PB[k, j]
                        # (PA eta_u)[i, j] = sum_k PA[i, k] eta_u[k, j]
                        for k in range(dA[u]):
                            if PA[i, k]:
                                row[offs[u] + k * dB[u] + j] -= PA[i, k]
                        rows.append(row)
    nat_dim = nvars - (rank(_mat(len(rows), nvars, rows)) if rows else 0)
    basis = cat.hom_space(a, b)
    images = []
    for f in basis:
        vec = []
        for u in range(n):
            m = cat.pre(f, U[u])
            vec += [m[i, j] for i in range(dA[u]) for j in range(dB[u])]
        images.append(vec)
    r = rank(Matrix.from_columns(images, nvars)) if images else 0
    return r == len(basis) == nat_dim
