"""The equivalence between left functors on proj(A) and right A-modules.

Objects of proj(A) are the left ideals A e for idempotents e (including
e = 1).  A map A e -> A e' is right multiplication by an element of
e A e'.  A left functor F = coker((P_tgt, -) -> (P_src, -)) is presented
by elements c[s][t] of e_s A e_t, and evaluation e(F) = F(A) is a right
A-module.  Functorification f(M) = M (x)_A - comes back, and the
comparison map tau_P : F(A) (x)_A P -> F(P) is checked to be a natural
isomorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import FdAlgebra
from .linalg import QQ, Matrix, Subspace, hstack, kronecker, rank

__all__ = ["Presenter", "FunctorValue", "evaluate_functor", "tau_matrix",
           "evaluation_functorification_check", "standard_battery", "ProjModReport"]


@dataclass(frozen=True)
class Presenter:
    """alpha : (+)_s A e_src[s] -> (+)_t A e_tgt[t], b_s -> sum_s b_s c[s][t]."""

    src: tuple  # idempotent indices
    tgt: tuple
    coeffs: tuple  # coeffs[s][t] algebra vectors in e_src[s] A e_tgt[t]


@dataclass
class FunctorValue:
    """F(P) as a quotient: ambient W = (+)_s e_src[s] P, image of the relations."""

    spaces: list  # Subspace e_src[s] A e inside A, per s
    offsets: list
    total: int
    image: Subspace
    complement: tuple

    @property
    def dim(self) -> int:
        return self.total - self.image.dim

    def classes(self, v: Sequence) -> list:
        """Coordinates of the class of v in the chosen quotient basis."""
        red = self.image.reduce(v)
        return [red[c] for c in self.complement]

    def lift(self, i: int) -> list:
        v = [QQ.zero] * self.total
        v[self.complement[i]] = QQ.one
        return v

    def split(self, v: Sequence) -> list:
        """Components of v as algebra elements."""
        out = []
        for sp, o in zip(self.spaces, self.offsets):
            out.append(sp.basis.apply(v[o:o + sp.dim]))
        return out

    def join(self, elems: Sequence[Sequence]) -> list:
        v = []
        for sp, x in zip(self.spaces, elems):
            v += sp.coords(list(x))
        return v


def _corner(a: FdAlgebra, e: Sequence, f: Sequence) -> Subspace:
    """e A f as a subspace of A."""
    cols = [a.product(a.product(list(e), a.basis_vector(b)), list(f)) for b in range(a.dim)]
    return Subspace(Matrix.from_columns(cols, a.dim))


def _idem(a: FdAlgebra, i) -> tuple:
    return a.unit if i is None else a.idempotents[i]


def evaluate_functor(a: FdAlgebra, pres: Presenter, obj) -> FunctorValue:
    """F(A e) for e = idempotent ``obj`` (None for e = 1)."""
    e = _idem(a, obj)
    spaces = [_corner(a, a.idempotents[s], e) for s in pres.src]
    offsets, off = [], 0
    for sp in spaces:
        offsets.append(off)
        off += sp.dim
    total = off
    cols = []
    for t, it in enumerate(pres.tgt):
        corner = _corner(a, a.idempotents[it], e)
        for y in corner.basis.columns():
            v = []
            for s, sp in enumerate(spaces):
                v += sp.coords(a.product(list(pres.coeffs[s][t]), list(y)))
            cols.append(v)
    image = Subspace(Matrix.from_columns(cols, total) if cols else Matrix.zeros(total, 0))
    return FunctorValue(spaces, offsets, total, image, image.complement())


def _functor_on_morphism(a: FdAlgebra, fa: FunctorValue, fb: FunctorValue, c: Sequence) -> Matrix:
    """F(phi) : F(P) -> F(P') for phi = right multiplication by c, plus a well-definedness check."""
    def induced(v):
        return fb.join([a.product(x, list(c)) for x in fa.split(v)])

    for col in fa.image.basis.columns():
        if any(fb.classes(induced(col))):
            raise ValueError("right multiplication does not preserve the relations")
    cols = [fb.classes(induced(fa.lift(i))) for i in range(fa.dim)]
    return Matrix.from_columns(cols, fb.dim) if cols else Matrix.zeros(fb.dim, 0)


def _right_action(a: FdAlgebra, fA: FunctorValue, k: int) -> Matrix:
    """F(A) as a right module: the action of the basis element k is right multiplication."""
    return _functor_on_morphism(a, fA, fA, a.basis_vector(k))


def _left_action(a: FdAlgebra, P: Subspace, k: int) -> Matrix:
    cols = [P.coords(a.product(a.basis_vector(k), list(y))) for y in P.basis.columns()]
    return Matrix.from_columns(cols, P.dim) if cols else Matrix.zeros(P.dim, 0)


def _tensor_relations(a: FdAlgebra, rho: list, P: Subspace, q: int) -> Matrix:
    """Span of x a (x) y - x (x) a y inside F(A) (x)_k P."""
    p = P.dim
    mats = [kronecker(rho[k], Matrix.identity(p)) - kronecker(Matrix.identity(q), _left_action(a, P, k))
            for k in range(a.dim)]
    return hstack(*mats, rows=q * p)


def tau_matrix(a: FdAlgebra, fA: FunctorValue, fP: FunctorValue, P: Subspace) -> Matrix:
    """tau_P on F(A) (x)_k P: x (x) y -> F(mu^y)(x) with mu^y : A -> P, b -> b y."""
    cols = []
    for i in range(fA.dim):
        z = fA.split(fA.lift(i))
        for y in P.basis.columns():
            cols.append(fP.classes(fP.join([a.product(zs, list(y)) for zs in z])))
    return Matrix.from_columns(cols, fP.dim) if cols else Matrix.zeros(fP.dim, 0)


@dataclass
class ProjModReport:
    algebra_dim: int
    functors: int = 0
    objects: int = 0
    squares: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"algebra_dim": self.algebra_dim, "functors": self.functors, "objects": self.objects,
                "squares": self.squares, "failures": list(self.failures), "ok": self.ok}


def evaluation_functorification_check(a: FdAlgebra, battery: Sequence[Presenter] = None,
                                      seed: int = 0) -> ProjModReport:
    if battery is None:
        battery = standard_battery(a, seed=seed)
    objects = [None] + list(range(a.num_vertices))
    ideals = {o: _corner(a, a.unit, _idem(a, o)) for o in objects}
    homs = {(o, o2): _corner(a, _idem(a, o), _idem(a, o2)) for o in objects for o2 in objects}
    rep = ProjModReport(a.dim, objects=len(objects))
    for n, pres in enumerate(battery):
        rep.functors += 1
        values = {o: evaluate_functor(a, pres, o) for o in objects}
        fA = values[None]
        q = fA.dim
        rho = [_right_action(a, fA, k) for k in range(a.dim)]
        # e o f = id: M (x)_A A -> M, x (x) b -> x b
        regular = ideals[None]
        mu_cols = []
        for i in range(q):
            for b in regular.basis.columns():
                act = Matrix.zeros(q, q)
                for k, c in enumerate(b):
                    if c:
                        act = act + rho[k].scale(c)
                mu_cols.append(act.col(i))
        mu = Matrix.from_columns(mu_cols, q) if mu_cols else Matrix.zeros(q, 0)
        rel = _tensor_relations(a, rho, regular, q)
        if not (mu @ rel).is_zero() or rank(mu) != q or q * regular.dim - rank(rel) != q:
            rep.failures.append({"functor": n, "check": "M (x)_A A = M"})
        taus = {}
        for o in objects:
            P, fP = ideals[o], values[o]
            T = tau_matrix(a, fA, fP, P)
            rel = _tensor_relations(a, rho, P, q)
            taus[o] = T
            ok = (T @ rel).is_zero() and rank(T) == fP.dim and q * P.dim - rank(rel) == fP.dim
            if not ok:
                rep.failures.append({"functor": n, "object": "A" if o is None else f"A e{o}",
                                     "check": "tau isomorphism"})
        for o in objects:
            for o2 in objects:
                P, P2 = ideals[o], ideals[o2]
                for c in homs[(o, o2)].basis.columns():
                    rep.squares += 1
                    Fphi = _functor_on_morphism(a, values[o], values[o2], list(c))
                    # 1 (x) phi on F(A) (x)_k P
                    phi = Matrix.from_columns([P2.coords(a.product(list(y), list(c)))
                                               for y in P.basis.columns()], P2.dim) \
                        if P.dim else Matrix.zeros(P2.dim, 0)
                    lhs = Fphi @ taus[o]
                    rhs = taus[o2] @ kronecker(Matrix.identity(q), phi)
                    if lhs != rhs:
                        rep.failures.append({"functor": n, "square": [str(o), str(o2)]})
    return rep


def _random_element(a: FdAlgebra, corner: Subspace, rng: random.Random) -> tuple:
    coeffs = [rng.randint(-1, 1) for _ in range(corner.dim)]
    return tuple(corner.basis.apply(coeffs)) if corner.dim else tuple([QQ.zero] * a.dim)


def standard_battery(a: FdAlgebra, seed: int = 0, trials: int = 12, max_dim: int = 5) -> list:
    """Presenters of F(A) with dim at most ``max_dim``.

    For one-vertex algebras k[x]/(x^n) with n <= 2 this lists every module
    k^i (+) A^j up to isomorphism; otherwise seeded random presenters between
    sums of A e_i, together with the representables and the simples.
    """
    out = []
    nv = a.num_vertices
    zero = tuple([QQ.zero] * a.dim)
    if nv == 1 and a.dim <= 2:
        x = a.basis_vector(1) if a.dim == 2 else None
        for j in range(0, max_dim + 1):
            for i in range(0, max_dim + 1):
                if x is None and i:
                    continue
                size = i * (a.dim - 1) + j * a.dim if x is not None else j
                if size > max_dim or (x is None and j > max_dim):
                    continue
                src = (0,) * (i + j)
                tgt = (0,) * i
                coeffs = tuple(tuple(tuple(x) if s == t else zero for t in range(i))
                               for s in range(i + j))
                out.append(Presenter(src, tgt, coeffs))
        return out
    for v in range(nv):
        out.append(Presenter((v,), (), ((),)))
        # simple: A e_v modulo the radical part
        rad = a.radical
        cols = [a.product(list(j), list(a.idempotents[v])) for j in rad.basis.columns()]
        gens = []
        sp = Subspace(Matrix.from_columns(cols, a.dim))
        for w in range(nv):
            corner = _corner(a, a.idempotents[v], a.idempotents[w])
            for c in corner.basis.columns():
                if sp.contains(list(c)) and any(c):
                    gens.append((w, tuple(c)))
        tgt = tuple(w for w, _ in gens)
        coeffs = (tuple(c for _, c in gens),)
        out.append(Presenter((v,), tgt, coeffs))
    rng = random.Random(seed)
    made = 0
    attempts = 0
    while made < trials and attempts < trials * 20:
        attempts += 1
        src = tuple(rng.randrange(nv) for _ in range(rng.randint(1, 2)))
        tgt = tuple(rng.randrange(nv) for _ in range(rng.randint(0, 2)))
        coeffs = tuple(tuple(_random_element(a, _corner(a, a.idempotents[s], a.idempotents[t]), rng)
                             for t in tgt) for s in src)
        p = Presenter(src, tgt, coeffs)
        if evaluate_functor(a, p, None).dim <= max_dim:
            out.append(p)
            made += 1
    return out
