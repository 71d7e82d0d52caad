"""Cohen-Macaulay base rings and their finitely generated modules.

Artinian rings are finite-dimensional k-algebras; a module is a k-space
with one action matrix per chosen ring generator.  For k[x]/(x^n) the
generator is x, for a general Artinian local ring it is a basis of the
maximal ideal.  The DVR is handled by :mod:`mcmcat.dvr`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from . import dvr
from .algebra import FdAlgebra, truncated_polynomial_algebra
from .errors import MalformedInput, PreconditionError, TheoremViolation, UnsupportedBase
from .linalg import QQ, Matrix, Subspace, hstack, kernel_basis, kronecker, rank, solve, vstack

INF = math.inf


@dataclass(frozen=True)
class BaseRing:
    """``kind`` is one of field, monogenic, artinian_local, dvr."""

    kind: str
    n: int = 1
    mult: tuple = ()  # flat structure constants (artinian_local)
    maximal_ideal: tuple = ()  # basis vectors of m (artinian_local)
    unit: tuple = ()

    def __post_init__(self):
        if self.kind not in ("field", "monogenic", "artinian_local", "dvr"):
            raise MalformedInput(f"unknown ring kind {self.kind!r}")
        if self.kind == "monogenic" and self.n < 1:
            raise MalformedInput("monogenic ring needs n >= 1")
        if self.kind == "artinian_local":
            self._check_local()

    # -- constructors ------------------------------------------------------
    @classmethod
    def field(cls) -> "BaseRing":
        return cls("field", 1)

    @classmethod
    def monogenic(cls, n: int) -> "BaseRing":
        return cls("monogenic", n)

    @classmethod
    def dvr(cls) -> "BaseRing":
        return cls("dvr")

    @classmethod
    def artinian_local(cls, dim: int, mult: Sequence, maximal_ideal: Sequence[Sequence],
                       unit: Optional[Sequence] = None) -> "BaseRing":
        co = QQ.coerce
        u = tuple(co(x) for x in (unit if unit is not None else [1] + [0] * (dim - 1)))
        return cls("artinian_local", dim, tuple(co(x) for x in mult),
                   tuple(tuple(co(x) for x in v) for v in maximal_ideal), u)

    # -- basic data --------------------------------------------------------
    @property
    def krull_dim(self) -> int:
        return 1 if self.kind == "dvr" else 0

    @property
    def is_artinian(self) -> bool:
        return self.kind != "dvr"

    @property
    def is_regular(self) -> bool:
        return self.kind in ("field", "dvr") or (self.kind == "monogenic" and self.n == 1)

    @property
    def dim(self) -> int:
        """k-dimension of R (Artinian kinds)."""
        self._need_artinian()
        return self.n

    def _need_artinian(self):
        if not self.is_artinian:
            raise UnsupportedBase("operation needs an Artinian base ring")

    @property
    def algebra(self) -> FdAlgebra:
        return _ring_algebra(self)

    @property
    def generators(self) -> tuple:
        """Ring elements (coordinate vectors) whose actions define a module."""
        self._need_artinian()
        if self.kind == "artinian_local":
            return self.maximal_ideal
        n = self.n
        x = [0] * n
        if n > 1:
            x[1] = 1
        return (tuple(QQ.coerce(v) for v in x),)

    def _check_local(self):
        alg = FdAlgebra(self.n, list(self.mult), list(self.unit), [list(self.unit)])
        for a in range(self.n):
            for b in range(self.n):
                if alg.basis_product(a, b) != alg.basis_product(b, a):
                    raise MalformedInput("ring is not commutative")
        m = Matrix.from_columns(self.maximal_ideal, self.n) if self.maximal_ideal else \
            Matrix.zeros(self.n, 0)
        if rank(m) != self.n - 1 or rank(hstack(m, Matrix.column(self.unit))) != self.n:
            raise MalformedInput("maximal ideal must be a complement of the unit line")
        sub = Subspace(m)
        for x in self.maximal_ideal:
            power = list(x)
            for _ in range(self.n + 1):
                power = alg.product(power, list(x))
            if any(power):
                raise MalformedInput("maximal ideal element is not nilpotent")
            for y in self.maximal_ideal:
                if not sub.contains(alg.product(list(x), list(y))):
                    raise MalformedInput("maximal ideal is not closed under multiplication")

    def descriptor(self) -> dict:
        if self.kind == "artinian_local":
            return {"kind": "artinian_local", "dim": self.n,
                    "mult": [QQ.element_to_json(x) for x in self.mult],
                    "maximal_ideal": [[QQ.element_to_json(x) for x in v] for v in self.maximal_ideal]}
        if self.kind == "monogenic":
            return {"kind": "monogenic", "n": self.n}
        return {"kind": self.kind}

    @classmethod
    def from_descriptor(cls, obj: dict) -> "BaseRing":
        try:
            kind = obj["kind"]
            if kind == "field":
                return cls.field()
            if kind == "dvr":
                return cls.dvr()
            if kind == "monogenic":
                return cls.monogenic(int(obj["n"]))
            if kind == "artinian_local":
                mi = obj["maximal_ideal"]
                dim = int(obj.get("dim", len(mi) + 1))
                return cls.artinian_local(dim, obj["mult"], mi, obj.get("unit"))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad ring descriptor: {exc}") from exc
        raise MalformedInput(f"unknown ring kind {obj.get('kind')!r}")

    def __str__(self) -> str:
        if self.kind == "monogenic":
            return f"monogenic:{self.n}"
        return self.kind


@lru_cache(maxsize=None)
def _ring_algebra(r: BaseRing) -> FdAlgebra:
    if r.kind == "field":
        return truncated_polynomial_algebra(1)
    if r.kind == "monogenic":
        return truncated_polynomial_algebra(r.n)
    if r.kind == "artinian_local":
        return FdAlgebra(r.n, list(r.mult), list(r.unit), [list(r.unit)])
    raise UnsupportedBase("the DVR is not a finite-dimensional algebra")


def parse_ring(spec: str) -> BaseRing:
    """`field`, `monogenic:<n>`, `dvr`, `artinian:<file>`."""
    if spec == "field":
        return BaseRing.field()
    if spec == "dvr":
        return BaseRing.dvr()
    if spec.startswith("monogenic:"):
        try:
            return BaseRing.monogenic(int(spec.split(":", 1)[1]))
        except ValueError as exc:
            raise MalformedInput(f"bad ring descriptor {spec!r}") from exc
    if spec.startswith("artinian:"):
        path = spec.split(":", 1)[1]
        try:
            with open(path) as fh:
                return BaseRing.from_descriptor(json.load(fh))
        except OSError as exc:
            raise MalformedInput(f"cannot read {path}: {exc}") from exc
    if spec.startswith("{"):
        return BaseRing.from_descriptor(json.loads(spec))
    raise MalformedInput(f"bad ring descriptor {spec!r}")


class FinGenModule:
    """A finitely generated module over an Artinian base ring."""

    __slots__ = ("ring", "dim", "acts", "_hash")

    def __init__(self, ring: BaseRing, dim: int, acts: Sequence[Matrix], check: bool = True):
        ring._need_artinian()
        self.ring, self.dim = ring, dim
        self.acts = tuple(acts)
        if len(self.acts) != len(ring.generators) or any(a.shape != (dim, dim) for a in self.acts):
            raise MalformedInput("one square action matrix per ring generator is required")
        self._hash = hash((ring, dim, self.acts))
        if check:
            self._check()

    def _check(self):
        for i, a in enumerate(self.acts):
            for b in self.acts[i + 1:]:
                if a @ b != b @ a:
                    raise MalformedInput("generator actions do not commute")
        r = self.ring
        if r.kind in ("field", "monogenic"):
            if self.acts:
                p = Matrix.identity(self.dim)
                for _ in range(r.n):
                    p = p @ self.acts[0]
                if not p.is_zero():
                    raise MalformedInput(f"x^{r.n} does not act as zero")
            return
        alg = r.algebra
        gens = r.generators
        coords = _ideal_coords(r)
        for i, x in enumerate(gens):
            for j, y in enumerate(gens):
                prod = alg.product(list(x), list(y))
                c = coords.coords(prod)
                rhs = Matrix.zeros(self.dim, self.dim)
                for k, ck in enumerate(c):
                    if ck:
                        rhs = rhs + self.acts[k].scale(ck)
                if self.acts[i] @ self.acts[j] != rhs:
                    raise MalformedInput("actions violate the ring relations")

    def __eq__(self, other) -> bool:
        return isinstance(other, FinGenModule) and self.ring == other.ring and \
            self.dim == other.dim and self.acts == other.acts

    def __hash__(self) -> int:
        return self._hash

    def element_action(self, r: Sequence) -> Matrix:
        """Action of a ring element given in the ring's basis."""
        ring = self.ring
        out = Matrix.zeros(self.dim, self.dim)
        if ring.kind in ("field", "monogenic"):
            p = Matrix.identity(self.dim)
            for i, c in enumerate(r):
                if c:
                    out = out + p.scale(c)
                if self.acts:
                    p = p @ self.acts[0]
            return out
        unit_c, ideal_c = _split_unit(ring, r)
        out = Matrix.identity(self.dim).scale(unit_c)
        for k, c in enumerate(ideal_c):
            if c:
                out = out + self.acts[k].scale(c)
        return out

    def direct_sum(self, *others: "FinGenModule") -> "FinGenModule":
        from .linalg import block_diag
        mods = (self,) + others
        acts = [block_diag(*[m.acts[g] for m in mods]) for g in range(len(self.acts))]
        return FinGenModule(self.ring, sum(m.dim for m in mods), acts, check=False)

    def submodule(self, sub: Subspace) -> "FinGenModule":
        cols = sub.basis.columns()
        acts = []
        for a in self.acts:
            img = [sub.coords(a.apply(c)) for c in cols]
            acts.append(Matrix._raw(sub.dim, sub.dim, QQ, [[v[r] for v in img] for r in range(sub.dim)]))
        return FinGenModule(self.ring, sub.dim, acts, check=False)

    def quotient(self, sub: Subspace):
        comp = sub.complement()
        q = len(comp)
        acts = []
        for a in self.acts:
            red = [sub.reduce(a.col(c)) for c in comp]
            acts.append(Matrix._raw(q, q, QQ, [[v[c] for v in red] for c in comp]))
        rows = []
        for j in range(self.dim):
            v = [0] * self.dim
            v[j] = 1
            rows.append([sub.reduce(v)[c] for c in comp])
        proj = Matrix._raw(q, self.dim, QQ, [[rows[j][r] for j in range(self.dim)] for r in range(q)])
        return FinGenModule(self.ring, q, acts, check=False), proj

    def is_homomorphism(self, other: "FinGenModule", f: Matrix) -> bool:
        return all(f @ a == b @ f for a, b in zip(self.acts, other.acts))

    def to_json(self) -> dict:
        return {"dim": self.dim, "actions": [a.to_json() for a in self.acts]}

    @classmethod
    def from_json(cls, ring: BaseRing, obj: dict) -> "FinGenModule":
        try:
            return cls(ring, int(obj["dim"]), [Matrix.from_json(a) for a in obj["actions"]])
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad module JSON: {exc}") from exc

    def __repr__(self) -> str:
        return f"FinGenModule(dim={self.dim} over {self.ring})"


@lru_cache(maxsize=None)
def _ideal_coords(r: BaseRing) -> Subspace:
    return Subspace(Matrix.from_columns(r.maximal_ideal, r.n))


def _split_unit(r: BaseRing, x: Sequence):
    basis = Matrix.from_columns([r.unit] + list(r.maximal_ideal), r.n)
    sol = solve(basis, Matrix.column(list(x)))
    c = sol.col(0)
    return c[0], c[1:]


def zero_module(ring: BaseRing) -> FinGenModule:
    return FinGenModule(ring, 0, [Matrix.zeros(0, 0)] * len(ring.generators), check=False)


def cyclic_module(ring: BaseRing, i: int) -> FinGenModule:
    """k[x]/(x^i) over k[x]/(x^n) on the basis 1, x, ..., x^(i-1)."""
    if ring.kind not in ("field", "monogenic"):
        raise UnsupportedBase("cyclic modules k[x]/(x^i) need a monogenic ring")
    if not 1 <= i <= ring.n:
        raise PreconditionError(f"need 1 <= i <= {ring.n}")
    shift = Matrix([[1 if r == c + 1 else 0 for c in range(i)] for r in range(i)], rows=i, cols=i)
    return FinGenModule(ring, i, [shift])


def indecomposables_monogenic(n: int) -> list:
    ring = BaseRing.field() if n == 1 else BaseRing.monogenic(n)
    return [cyclic_module(ring, i) for i in range(1, n + 1)]


def residue_field(ring: BaseRing) -> FinGenModule:
    return FinGenModule(ring, 1, [Matrix([[0]])] * len(ring.generators))


def regular_module(ring: BaseRing) -> FinGenModule:
    alg = ring.algebra
    return FinGenModule(ring, ring.dim, [alg.left_mult(list(g)) for g in ring.generators])


def dualizing_module(ring: BaseRing) -> FinGenModule:
    """Omega = Hom_k(R, k) with (r.phi)(s) = phi(s r): the transposed regular action."""
    alg = ring.algebra
    return FinGenModule(ring, ring.dim, [alg.left_mult(list(g)).T for g in ring.generators])


class HomSpace:
    """Hom_R(M, N) with a fixed basis and a coordinate map."""

    def __init__(self, m: FinGenModule, n: FinGenModule):
        self.source, self.target = m, n
        if m.dim * n.dim == 0:
            self.basis = []
            self._sub = Subspace(Matrix.zeros(m.dim * n.dim, 0))
            return
        In, Im = Matrix.identity(n.dim), Matrix.identity(m.dim)
        eqs = [kronecker(A.T, In) - kronecker(Im, B) for A, B in zip(m.acts, n.acts)]
        if eqs:
            K = kernel_basis(vstack(*eqs))
        else:
            K = Matrix.identity(m.dim * n.dim)
        self._sub = Subspace(K)
        self.basis = [self._unvec(v) for v in self._sub.basis.columns()]

    def _unvec(self, v) -> Matrix:
        dm, dn = self.source.dim, self.target.dim
        return Matrix._raw(dn, dm, QQ, [[v[j * dn + i] for j in range(dm)] for i in range(dn)])

    @staticmethod
    def _vec(f: Matrix) -> list:
        return [f[i, j] for j in range(f.cols) for i in range(f.rows)]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: Matrix) -> list:
        v = self._vec(f)
        if not self._sub.contains(v):
            raise TheoremViolation("matrix is not a module homomorphism")
        return self._sub.coords(v)

    def contains(self, f: Matrix) -> bool:
        return self._sub.contains(self._vec(f))

    def element(self, coords: Sequence) -> Matrix:
        out = Matrix.zeros(self.target.dim, self.source.dim)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.scale(c)
        return out


@lru_cache(maxsize=4096)
def hom(m: FinGenModule, n: FinGenModule) -> HomSpace:
    return HomSpace(m, n)


def depth_artinian(m: FinGenModule) -> float:
    """inf{i : Ext^i(k, M) != 0}; the i = 0 term is the socle Hom(k, M)."""
    m.ring._need_artinian()
    if hom(residue_field(m.ring), m).dim > 0:
        return 0
    if m.dim == 0:
        return INF
    raise TheoremViolation("nonzero module over an Artinian local ring with zero socle")


@dataclass(frozen=True)
class DaggerData:
    module: FinGenModule  # M^dagger
    homs: HomSpace  # Hom_R(M, Omega), whose basis is the basis of M^dagger


@lru_cache(maxsize=4096)
def dagger_data(m: FinGenModule) -> DaggerData:
    ring = m.ring
    if not ring.is_artinian:
        raise UnsupportedBase("dagger is only implemented at d = 0")
    omega = dualizing_module(ring)
    H = hom(m, omega)
    acts = []
    for a in omega.acts:
        cols = [H.coords(a @ g) for g in H.basis]
        acts.append(Matrix._raw(H.dim, H.dim, QQ, [[c[r] for c in cols] for r in range(H.dim)]))
    return DaggerData(FinGenModule(ring, H.dim, acts, check=False), H)


def dagger(m: FinGenModule) -> FinGenModule:
    """M^dagger = Hom_R(M, Omega)."""
    return dagger_data(m).module


def dagger_morphism(f: Matrix, m: FinGenModule, n: FinGenModule) -> Matrix:
    """f : M -> N  gives  f^dagger : N^dagger -> M^dagger, g -> g o f."""
    dm, dn = dagger_data(m), dagger_data(n)
    cols = [dm.homs.coords(g @ f) for g in dn.homs.basis]
    return Matrix._raw(dm.homs.dim, dn.homs.dim, QQ, [[c[r] for c in cols] for r in range(dm.homs.dim)]) \
        if cols else Matrix.zeros(dm.homs.dim, 0)


def delta(m: FinGenModule) -> Matrix:
    """delta_M : M -> M^dagger-dagger, m -> (g -> g(m)), in the double-dual basis."""
    d1 = dagger_data(m)
    d2 = dagger_data(d1.module)
    omega_dim = m.ring.dim
    cols = []
    for j in range(m.dim):
        e = [0] * m.dim
        e[j] = 1
        # evaluation at e_j, a map M^dagger -> Omega: column c is g_c(e_j)
        ev_cols = [g.apply(e) for g in d1.homs.basis]
        ev = Matrix._raw(omega_dim, d1.homs.dim, QQ, [[c[r] for c in ev_cols] for r in range(omega_dim)]) \
            if ev_cols else Matrix.zeros(omega_dim, 0)
        cols.append(d2.homs.coords(ev))
    return Matrix._raw(d2.homs.dim, m.dim, QQ, [[c[r] for c in cols] for r in range(d2.homs.dim)]) \
        if cols else Matrix.zeros(d2.homs.dim, 0)


def delta_is_iso(m: FinGenModule) -> bool:
    d = delta(m)
    return d.rows == d.cols == m.dim and rank(d) == m.dim


def mcm_precover(m):
    """An MCM-precover: the identity at d = 0, the free cover over the DVR."""
    if isinstance(m, dvr.DvrModule):
        return dvr.mcm_precover_dvr(m)
    if not isinstance(m, FinGenModule):
        raise UnsupportedBase("unsupported module type")
    if m.ring.krull_dim != 0:
        raise UnsupportedBase("precovers are only constructive at d = 0 and over the DVR")
    return Matrix.identity(m.dim)


def factors_through(pi: Matrix, pi_source: FinGenModule, f: Matrix, f_source: FinGenModule) -> bool:
    """Whether f = pi o theta for some R-linear theta : f_source -> pi_source."""
    H = hom(f_source, pi_source)
    if not H.basis:
        return f.is_zero()
    cols = [HomSpace._vec(pi @ b) for b in H.basis]
    A = Matrix.from_columns(cols, f.rows * f.cols)
    return solve(A, Matrix.column(HomSpace._vec(f))) is not None


def nilpotency_decomposition(m: FinGenModule):
    """Jordan decomposition of x on a k[x]/(x^n)-module.

    Returns ``(multiplicities, iso)`` where ``iso`` maps the direct sum of
    the cyclic modules k[x]/(x^i), i = 1..n with the given multiplicities
    (i ascending, copies in selection order) isomorphically onto m.
    """
    ring = m.ring
    if ring.kind not in ("field", "monogenic"):
        raise UnsupportedBase("summand decomposition is only available for k[x]/(x^n)")
    n = ring.n
    X = m.acts[0] if m.acts else Matrix.zeros(m.dim, m.dim)
    powers = [Matrix.identity(m.dim)]
    for _ in range(n + 1):
        powers.append(powers[-1] @ X)
    kers = [Subspace(kernel_basis(P)) for P in powers]
    gens_by_size = {}
    for s in range(n, 0, -1):
        span = list(kers[s - 1].basis.columns())
        span += [X.apply(v) for v in kers[s + 1].basis.columns()] if s + 1 <= n + 1 else []
        cur = rank(Matrix.from_columns(span, m.dim)) if span else 0
        chosen = []
        for v in kers[s].basis.columns():
            trial = span + [list(v)]
            r = rank(Matrix.from_columns(trial, m.dim))
            if r > cur:
                span, cur = trial, r
                chosen.append(list(v))
        gens_by_size[s] = chosen
    mults = tuple(len(gens_by_size[i]) for i in range(1, n + 1))
    cols = []
    for i in range(1, n + 1):
        for v in gens_by_size[i]:
            w = v
            for _ in range(i):
                cols.append(w)
                w = X.apply(w)
    iso = Matrix.from_columns(cols, m.dim) if cols else Matrix.zeros(m.dim, 0)
    if rank(iso) != m.dim or iso.cols != m.dim:
        raise TheoremViolation("Jordan chains do not form a basis")
    return mults, iso


def isomorphic(m: FinGenModule, n: FinGenModule) -> bool:
    """Existence of an invertible intertwiner (generic combination test is not used: exact search)."""
    if m.dim != n.dim:
        return False
    if m.ring.kind in ("field", "monogenic"):
        return nilpotency_decomposition(m)[0] == nilpotency_decomposition(n)[0]
    raise UnsupportedBase("isomorphism test needs a monogenic ring")


def has_invertible_intertwiner(m: FinGenModule, n: FinGenModule) -> bool:
    """Brute check via hom space: some basis combination with nonzero determinant.

    Tries the basis elements and their pairwise sums; sufficient for the
    local endomorphism rings used in the tests.
    """
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    H = hom(m, n)
    cands = list(H.basis)
    cands += [a + b for i, a in enumerate(H.basis) for b in H.basis[i + 1:]]
    return any(rank(c) == m.dim for c in cands)
