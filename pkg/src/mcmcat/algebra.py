"""Finite-dimensional algebras with a complete set of orthogonal idempotents.

Right modules are the primary orientation.  A right module stores one action
matrix per algebra basis element acting on column vectors, so the module
axiom reads ``act[a*b] == act[b] @ act[a]``.  Left modules are right modules
over :meth:`FdAlgebra.opposite`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

from .errors import (MalformedInput, NonSplitTop, ResolutionCapExceeded, ShapeError,
                     TheoremViolation, UnsupportedField)
from .linalg import (QQ, Field, Matrix, Subspace, block_diag, hstack, kernel_basis, kronecker,
                     parse_field, rank, vstack)

DEFAULT_CAP = 32
NEG_INF = -math.inf


def _vec_add(p, acc: list, coeff, vec):
    for k, x in vec:
        acc[k] += coeff * x
    if p:
        for k, _ in vec:
            acc[k] %= p


class FdAlgebra:
    """Structure-constant presentation: ``e_a * e_b = sum_k c[a][b][k] e_k``."""

    def __init__(self, dim: int, table, unit: Sequence, idempotents: Sequence[Sequence],
                 field: Field = QQ, check: bool = True):
        self.dim = dim
        self.field = field
        co = field.coerce
        # table[a][b] is a tuple of (k, coeff) with coeff != 0
        if isinstance(table, (list, tuple)) and len(table) == dim ** 3 and dim > 0 and \
                not isinstance(table[0], (list, tuple, dict)):
            flat = table
            table = [[{k: flat[(a * dim + b) * dim + k] for k in range(dim)} for b in range(dim)]
                     for a in range(dim)]
        self._t = []
        for a in range(dim):
            row = []
            for b in range(dim):
                entry = table[a][b]
                items = entry.items() if isinstance(entry, dict) else enumerate(entry)
                row.append(tuple((int(k), co(c)) for k, c in items if co(c)))
            self._t.append(tuple(row))
        self._t = tuple(self._t)
        self.unit = tuple(co(x) for x in unit)
        self.idempotents = tuple(tuple(co(x) for x in e) for e in idempotents)
        if len(self.unit) != dim or any(len(e) != dim for e in self.idempotents):
            raise ShapeError("unit/idempotent vectors have the wrong length")
        if check:
            self._check_axioms()

    # -- arithmetic -------------------------------------------------------
    def basis_product(self, a: int, b: int) -> tuple:
        return self._t[a][b]

    def product(self, x: Sequence, y: Sequence) -> list:
        p = self.field.modulus
        acc = [self.field.zero] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            for b, yb in enumerate(y):
                if yb:
                    for k, c in self._t[a][b]:
                        acc[k] += xa * yb * c
        if p:
            acc = [v % p for v in acc]
        return acc

    def basis_vector(self, a: int) -> list:
        z, o = self.field.zero, self.field.one
        return [o if i == a else z for i in range(self.dim)]

    def _check_axioms(self):
        d = self.dim
        for a in range(d):
            for b in range(d):
                ab = self._t[a][b]
                for c in range(d):
                    left = [self.field.zero] * d
                    for k, x in ab:
                        _vec_add(self.field.modulus, left, x, self._t[k][c])
                    right = [self.field.zero] * d
                    for k, x in self._t[b][c]:
                        _vec_add(self.field.modulus, right, x, self._t[a][k])
                    if left != right:
                        raise MalformedInput(f"multiplication not associative at ({a},{b},{c})")
        u = list(self.unit)
        for a in range(d):
            e = self.basis_vector(a)
            if self.product(u, e) != e or self.product(e, u) != e:
                raise MalformedInput("unit is not a two-sided identity")
        total = [self.field.zero] * d
        for i, e in enumerate(self.idempotents):
            e = list(e)
            if self.product(e, e) != e:
                raise MalformedInput(f"idempotent {i} is not idempotent")
            for j, f in enumerate(self.idempotents):
                if i != j and any(self.product(e, list(f))):
                    raise MalformedInput(f"idempotents {i},{j} are not orthogonal")
            total = [x + y for x, y in zip(total, e)]
        if self.field.modulus:
            total = [x % self.field.modulus for x in total]
        if total != u:
            raise MalformedInput("idempotents do not sum to the unit")

    def left_mult(self, x: Sequence) -> Matrix:
        """Matrix of y -> x*y."""
        cols = [self.product(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix._raw(self.dim, self.dim, self.field,
                           [[c[i] for c in cols] for i in range(self.dim)])

    @cached_property
    def right_mult(self) -> tuple:
        """Matrices of y -> y*e_a for every basis element a."""
        z = self.field.zero
        out = []
        for a in range(self.dim):
            m = [[z] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                for k, c in self._t[j][a]:
                    m[k][j] = c
            out.append(Matrix._raw(self.dim, self.dim, self.field, m))
        return tuple(out)

    def opposite(self) -> "FdAlgebra":
        op = FdAlgebra.__new__(FdAlgebra)
        op.dim, op.field = self.dim, self.field
        op._t = tuple(tuple(self._t[b][a] for b in range(self.dim)) for a in range(self.dim))
        op.unit, op.idempotents = self.unit, self.idempotents
        return op

    def reorder_idempotents(self, perm: Sequence[int]) -> "FdAlgebra":
        out = FdAlgebra.__new__(FdAlgebra)
        out.dim, out.field, out._t, out.unit = self.dim, self.field, self._t, self.unit
        out.idempotents = tuple(self.idempotents[i] for i in perm)
        return out

    @property
    def num_vertices(self) -> int:
        return len(self.idempotents)

    # -- radical ----------------------------------------------------------
    @cached_property
    def radical(self) -> Subspace:
        """Jacobson radical as the kernel of the trace form (characteristic 0)."""
        if self.field.modulus:
            raise UnsupportedField("the trace-form radical needs characteristic 0")
        d = self.dim
        z = self.field.zero
        # tr(L_{e_k}) = sum_j coefficient of e_j in e_k e_j
        tr = []
        for k in range(d):
            s = z
            for j in range(d):
                for kk, c in self._t[k][j]:
                    if kk == j:
                        s += c
            tr.append(s)
        gram = [[sum((c * tr[k] for k, c in self._t[a][b]), z) for b in range(d)] for a in range(d)]
        J = Subspace(kernel_basis(Matrix._raw(d, d, self.field, gram)))
        self._verify_nilpotent(J)
        return J

    def _span_products(self, X: Subspace, Y: Subspace) -> Subspace:
        cols = [self.product(x, y) for x in X.basis.columns() for y in Y.basis.columns()]
        if not cols:
            return Subspace(Matrix.zeros(self.dim, 0, self.field))
        return Subspace(Matrix.from_columns(cols, self.dim, self.field))

    def _verify_nilpotent(self, J: Subspace):
        power = J
        for _ in range(self.dim + 1):
            if power.dim == 0:
                return
            nxt = self._span_products(power, J)
            if nxt.dim >= power.dim:
                raise TheoremViolation("trace-form kernel is not nilpotent")
            power = nxt
        raise TheoremViolation("trace-form kernel is not nilpotent")

    @cached_property
    def radical_squared(self) -> Subspace:
        J = self.radical
        return self._span_products(J, J)

    @cached_property
    def arrows(self) -> tuple:
        """Lifts of a basis of J/J^2; they generate J as a left ideal."""
        J, J2 = self.radical, self.radical_squared
        chosen = list(J2.basis.columns())
        out = []
        current = J2.dim
        for v in J.basis.columns():
            trial = chosen + [v]
            r = rank(Matrix.from_columns(trial, self.dim, self.field))
            if r > current:
                chosen, current = trial, r
                out.append(list(v))
        return tuple(out)

    def check_split(self):
        if self.dim - self.radical.dim != self.num_vertices:
            raise NonSplitTop(
                f"E/J has dimension {self.dim - self.radical.dim} but there are "
                f"{self.num_vertices} idempotents")

    # -- projectives ------------------------------------------------------
    @cached_property
    def _projectives(self) -> tuple:
        out = []
        for i, e in enumerate(self.idempotents):
            B = Subspace(self.left_mult(e))
            cols = B.basis.columns()
            acts = []
            for a in range(self.dim):
                R = self.right_mult[a]
                img = [B.coords(R.apply(c)) for c in cols]
                acts.append(Matrix._raw(B.dim, B.dim, self.field,
                                        [[v[r] for v in img] for r in range(B.dim)]))
            mod = AlgRightModule(self, B.dim, acts, check=False)
            gen = B.coords(list(e))
            rad_cols = [B.coords(self.product(list(e), j)) for j in self.radical.basis.columns()] \
                if not self.field.modulus else []
            rad = Subspace(Matrix.from_columns(rad_cols, B.dim, self.field)) if rad_cols else \
                Subspace(Matrix.zeros(B.dim, 0, self.field))
            out.append(_Projective(i, mod, B, tuple(gen), rad))
        return tuple(out)

    def projective(self, i: int) -> "AlgRightModule":
        """The indecomposable projective e_i E."""
        return self._projectives[i].module

    def simple(self, i: int) -> "AlgRightModule":
        pr = self._projectives[i]
        return pr.module.quotient(pr.rad)[0]

    def regular_module(self) -> "AlgRightModule":
        return AlgRightModule(self, self.dim, list(self.right_mult), check=False)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        e = self.field.element_to_json
        d = self.dim
        flat = []
        for a in range(d):
            for b in range(d):
                row = [self.field.zero] * d
                for k, c in self._t[a][b]:
                    row[k] = c
                flat.extend(e(x) for x in row)
        return {"dim": d, "field": str(self.field), "mult": flat,
                "unit": [e(x) for x in self.unit],
                "idempotents": [[e(x) for x in v] for v in self.idempotents]}

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "FdAlgebra":
        try:
            d = int(obj["dim"])
            f = parse_field(obj.get("field", "Q"))
            flat = [f.coerce(x) for x in obj["mult"]]
            unit = obj["unit"]
            idem = obj.get("idempotents") or [unit]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad algebra JSON: {exc}") from exc
        if len(flat) != d ** 3:
            raise MalformedInput("mult must have dim^3 entries")
        table = [[{k: flat[(a * d + b) * d + k] for k in range(d)} for b in range(d)] for a in range(d)]
        return cls(d, table, unit, idem, f, check=check)


@dataclass(frozen=True)
class _Projective:
    vertex: int
    module: "AlgRightModule"
    basis: Subspace  # e_i E inside E
    generator: tuple  # coordinates of e_i
    rad: Subspace  # e_i J in module coordinates

    def element(self, coords: Sequence) -> list:
        """The algebra element with the given coordinates in e_i E."""
        return self.basis.basis.apply(coords)


class AlgRightModule:
    """A finite-dimensional right module: ``act[a]`` is the matrix of m -> m*e_a."""

    def __init__(self, algebra: FdAlgebra, dim: int, action: Sequence[Matrix], check: bool = True):
        self.algebra, self.dim = algebra, dim
        self.action = tuple(action)
        if len(self.action) != algebra.dim or any(m.shape != (dim, dim) for m in self.action):
            raise ShapeError("action matrices have the wrong shape")
        if check:
            self._check_axioms()

    @property
    def field(self) -> Field:
        return self.algebra.field

    def _check_axioms(self):
        A = self.algebra
        if self.act(A.unit) != Matrix.identity(self.dim, self.field):
            raise MalformedInput("unit does not act as the identity")
        for a in range(A.dim):
            for b in range(A.dim):
                lhs = self._combo(A.basis_product(a, b))
                if lhs != self.action[b] @ self.action[a]:
                    raise MalformedInput(f"action does not respect e_{a} e_{b}")

    def _combo(self, terms) -> Matrix:
        z = self.field.zero
        p = self.field.modulus
        acc = [[z] * self.dim for _ in range(self.dim)]
        for k, c in terms:
            for i, row in enumerate(self.action[k]._r):
                ai = acc[i]
                for j, x in enumerate(row):
                    if x:
                        ai[j] += c * x
        if p:
            acc = [[x % p for x in r] for r in acc]
        return Matrix._raw(self.dim, self.dim, self.field, acc)

    def act(self, x: Sequence) -> Matrix:
        """Matrix of m -> m*x for an algebra element x."""
        return self._combo([(k, c) for k, c in enumerate(x) if c])

    def act_on(self, v: Sequence, x: Sequence) -> list:
        """The vector v*x."""
        acc = [self.field.zero] * self.dim
        p = self.field.modulus
        for k, c in enumerate(x):
            if c:
                w = self.action[k].apply(v)
                for i, y in enumerate(w):
                    acc[i] += c * y
        return [a % p for a in acc] if p else acc

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def vertex_space(self, i: int) -> Subspace:
        return Subspace(self.act(self.algebra.idempotents[i]))

    def vertex_dims(self) -> tuple:
        return tuple(self.vertex_space(i).dim for i in range(self.algebra.num_vertices))

    def radical(self) -> Subspace:
        """MJ, spanned by the images of the arrows."""
        if self.dim == 0 or not self.algebra.arrows:
            return Subspace(Matrix.zeros(self.dim, 0, self.field))
        return Subspace(hstack(*[self.act(a) for a in self.algebra.arrows]))

    def submodule(self, sub: Subspace) -> "AlgRightModule":
        """Restriction of the action to an invariant subspace (basis ``sub.basis``)."""
        cols = sub.basis.columns()
        acts = []
        for M in self.action:
            img = [sub.coords(M.apply(c)) for c in cols]
            acts.append(Matrix._raw(sub.dim, sub.dim, self.field,
                                    [[v[r] for v in img] for r in range(sub.dim)]))
        return AlgRightModule(self.algebra, sub.dim, acts, check=False)

    def quotient(self, sub: Subspace):
        """(M/sub, projection matrix)."""
        comp = sub.complement()
        q = len(comp)
        z, o = self.field.zero, self.field.one
        acts = []
        for M in self.action:
            reduced = [sub.reduce(M.col(c)) for c in comp]
            cols = [[v[c] for c in comp] for v in reduced]
            acts.append(Matrix._raw(q, q, self.field, [[v[r] for v in cols] for r in range(q)]))
        proj_cols = []
        for j in range(self.dim):
            red = sub.reduce([o if i == j else z for i in range(self.dim)])
            proj_cols.append([red[c] for c in comp])
        proj = Matrix._raw(q, self.dim, self.field, [[v[r] for v in proj_cols] for r in range(q)])
        return AlgRightModule(self.algebra, q, acts, check=False), proj

    def top(self) -> "AlgRightModule":
        return self.quotient(self.radical())[0]

    def top_multiplicities(self) -> tuple:
        self.algebra.check_split()
        rad = self.radical()
        out = []
        for i in range(self.algebra.num_vertices):
            e = self.act(self.algebra.idempotents[i])
            vi = rank(e)
            ri = rank(e @ rad.basis) if rad.dim else 0
            out.append(vi - ri)
        if sum(out) != self.dim - rad.dim:
            raise NonSplitTop("idempotent blocks do not exhaust the top")
        return tuple(out)

    def to_json(self) -> dict:
        return {"dim": self.dim, "action": [m.to_json() for m in self.action]}

    @classmethod
    def from_json(cls, algebra: FdAlgebra, obj: dict) -> "AlgRightModule":
        try:
            acts = [Matrix.from_json(m) for m in obj["action"]]
            return cls(algebra, int(obj["dim"]), acts)
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad module JSON: {exc}") from exc


def direct_sum(algebra: FdAlgebra, mods: Sequence[AlgRightModule]) -> AlgRightModule:
    d = sum(m.dim for m in mods)
    acts = [block_diag(*[m.action[a] for m in mods], field=algebra.field) for a in range(algebra.dim)]
    return AlgRightModule(algebra, d, acts, check=False)


@dataclass(frozen=True)
class ModuleMap:
    source: AlgRightModule
    target: AlgRightModule
    matrix: Matrix

    def is_homomorphism(self) -> bool:
        return all(self.matrix @ a == b @ self.matrix
                   for a, b in zip(self.source.action, self.target.action))


def hom_space(m: AlgRightModule, n: AlgRightModule) -> list:
    """Basis of Hom_E(m, n) as matrices (dim n x dim m)."""
    f = m.field
    if m.dim * n.dim == 0:
        return []
    In, Im = Matrix.identity(n.dim, f), Matrix.identity(m.dim, f)
    # f A = B f  <=>  (A^T kron I - I kron B) vec(f) = 0, column-stacked vec
    eqs = [kronecker(A.T, In) - kronecker(Im, B) for A, B in zip(m.action, n.action)]
    K = kernel_basis(vstack(*eqs))
    return [Matrix._raw(n.dim, m.dim, f, [[v[j * n.dim + i] for j in range(m.dim)]
                                          for i in range(n.dim)]) for v in K.columns()]


@dataclass
class CoverData:
    module: AlgRightModule  # P
    epi: Matrix  # P -> M
    summands: tuple  # vertex of each generator, in order
    generators: tuple  # generator images in M


def projective_cover(m: AlgRightModule) -> CoverData:
    A = m.algebra
    A.check_split()
    rad = m.radical()
    summands, gens = [], []
    for i in range(A.num_vertices):
        e = m.act(A.idempotents[i])
        vi = Subspace(e)
        start = [list(c) for c in (e @ rad.basis).columns()] if rad.dim else []
        chosen = start[:]
        cur = rank(Matrix.from_columns(chosen, m.dim, m.field)) if chosen else 0
        for v in vi.basis.columns():
            trial = chosen + [list(v)]
            r = rank(Matrix.from_columns(trial, m.dim, m.field))
            if r > cur:
                chosen, cur = trial, r
                summands.append(i)
                gens.append(tuple(v))
    projs = A._projectives
    P = direct_sum(A, [projs[i].module for i in summands])
    blocks = []
    for i, g in zip(summands, gens):
        pr = projs[i]
        # image of a basis element b of e_i E is g*b
        cols = [m.act_on(g, c) for c in pr.basis.basis.columns()]
        blocks.append(Matrix._raw(m.dim, len(cols), m.field,
                                  [[c[r] for c in cols] for r in range(m.dim)]))
    epi = hstack(*blocks, rows=m.dim, field=m.field)
    if rank(epi) != m.dim:
        raise TheoremViolation("projective cover map is not surjective")
    return CoverData(P, epi, tuple(summands), tuple(gens))


def _sum_radical(A: FdAlgebra, summands: Sequence[int]) -> Subspace:
    projs = A._projectives
    cols = []
    off = 0
    total = sum(projs[i].module.dim for i in summands)
    z = A.field.zero
    for i in summands:
        pr = projs[i]
        for c in pr.rad.basis.columns():
            v = [z] * total
            v[off:off + pr.module.dim] = c
            cols.append(v)
        off += pr.module.dim
    if not cols:
        return Subspace(Matrix.zeros(total, 0, A.field))
    return Subspace(Matrix.from_columns(cols, total, A.field))


@dataclass
class Resolution:
    """P_l -> ... -> P_0 -> M with P_k = sum of e_i E over ``summands[k]``.

    ``maps[0]`` is the augmentation P_0 -> M, ``maps[k]`` is P_k -> P_{k-1}.
    ``generators[k][g]`` is the image of the g-th generator of P_k (as a
    vector of P_{k-1}, or of M when k = 0).
    """

    algebra: FdAlgebra
    target: AlgRightModule
    modules: list = dc_field(default_factory=list)
    summands: list = dc_field(default_factory=list)
    maps: list = dc_field(default_factory=list)
    generators: list = dc_field(default_factory=list)
    complete: bool = False
    minimal: bool = True

    @property
    def length(self) -> float:
        if not self.complete:
            raise ResolutionCapExceeded(len(self.modules) - 1)
        return len(self.modules) - 1 if self.modules else NEG_INF

    def betti(self) -> list:
        n = self.algebra.num_vertices
        return [tuple(s.count(i) for i in range(n)) for s in self.summands]

    def betti_totals(self) -> list:
        return [len(s) for s in self.summands]

    def check_exact(self) -> bool:
        if not self.modules:
            return self.target.dim == 0
        eps = self.maps[0]
        if rank(eps) != self.target.dim:
            return False
        ranks = [rank(m) for m in self.maps]
        for k in range(1, len(self.maps)):
            if not (self.maps[k - 1] @ self.maps[k]).is_zero():
                return False
            if ranks[k - 1] + ranks[k] != self.modules[k - 1].dim:
                return False
        last = len(self.modules) - 1
        if self.complete and ranks[last] != self.modules[last].dim:
            return False
        return True

    def to_json(self) -> dict:
        return {"betti": [list(b) for b in self.betti()], "totals": self.betti_totals(),
                "complete": self.complete, "minimal": self.minimal,
                "length": _ext_int(self.length) if self.complete else None}


def _ext_int(v):
    if v == math.inf:
        return "inf"
    if v == -math.inf:
        return "-inf"
    return int(v)


def resolve(m: AlgRightModule, stages: int, check_minimal: bool = True) -> Resolution:
    """Compute P_0 .. P_(stages-1) of the minimal resolution (fewer if it stops)."""
    A = m.algebra
    res = Resolution(A, m)
    current = m
    inclusion = None  # basis of the current syzygy inside the previous projective
    for k in range(stages):
        if current.dim == 0:
            res.complete = True
            return res
        cov = projective_cover(current)
        if inclusion is None:
            res.maps.append(cov.epi)
            res.generators.append(cov.generators)
        else:
            res.maps.append(inclusion.basis @ cov.epi)
            res.generators.append(tuple(tuple(inclusion.basis.apply(g)) for g in cov.generators))
        res.modules.append(cov.module)
        res.summands.append(cov.summands)
        K = kernel_basis(cov.epi)
        if K.cols == 0:
            res.complete = True
            return res
        sub = Subspace(K)
        if check_minimal and not _sum_radical(A, cov.summands).contains_all(sub.basis):
            res.minimal = False
            raise TheoremViolation("syzygy not contained in P*J: cover is not minimal")
        current = cov.module.submodule(sub)
        inclusion = sub
    res.complete = False
    return res


def syzygy(m: AlgRightModule) -> AlgRightModule:
    cov = projective_cover(m)
    K = kernel_basis(cov.epi)
    return cov.module.submodule(Subspace(K)) if K.cols else AlgRightModule(m.algebra, 0, [
        Matrix.zeros(0, 0, m.field)] * m.algebra.dim, check=False)


def min_resolution(m: AlgRightModule, cap: int = DEFAULT_CAP) -> Resolution:
    if cap < 0:
        raise ValueError("cap must be >= 0")
    res = resolve(m, cap + 1)
    if not res.complete:
        raise ResolutionCapExceeded(cap)
    return res


def pd(m: AlgRightModule, cap: int = DEFAULT_CAP) -> float:
    if m.dim == 0:
        return NEG_INF
    return min_resolution(m, cap).length


def gldim(a: FdAlgebra, cap: int = DEFAULT_CAP) -> float:
    """max pd of the simple right modules."""
    a.check_split()
    return max(pd(a.simple(i), cap) for i in range(a.num_vertices))


def simple_pds(a: FdAlgebra, cap: int = DEFAULT_CAP) -> list:
    a.check_split()
    return [pd(a.simple(i), cap) for i in range(a.num_vertices)]


def _hom_complex_differential(res: Resolution, k: int, h: AlgRightModule, spaces) -> Matrix:
    """d^k : Hom(P_k, h) -> Hom(P_(k+1), h) in the bases of the spaces h e_i."""
    A = res.algebra
    src = res.summands[k]
    tgt = res.summands[k + 1] if k + 1 < len(res.summands) else ()
    rows_dim = sum(spaces[j].dim for j in tgt)
    cols_dim = sum(spaces[i].dim for i in src)
    f = A.field
    z = f.zero
    out = [[z] * cols_dim for _ in range(rows_dim)]
    if not tgt:
        return Matrix._raw(rows_dim, cols_dim, f, out)
    projs = A._projectives
    src_offsets, off = [], 0
    for i in src:
        src_offsets.append(off)
        off += projs[i].module.dim
    col_off = []
    off = 0
    for i in src:
        col_off.append(off)
        off += spaces[i].dim
    row = 0
    for gp, j in enumerate(tgt):
        y = res.generators[k + 1][gp]
        Sj = spaces[j]
        for g, i in enumerate(src):
            pr = projs[i]
            block = y[src_offsets[g]:src_offsets[g] + pr.module.dim]
            if not any(block):
                continue
            x = pr.element(block)
            X = h.act(x)
            for c, hv in enumerate(spaces[i].basis.columns()):
                img = Sj.coords(X.apply(hv))
                for r, val in enumerate(img):
                    out[row + r][col_off[g] + c] = val
        row += Sj.dim
    return Matrix._raw(rows_dim, cols_dim, f, out)


@dataclass
class ExtResult:
    degree: int
    dim: int
    basis: Matrix  # representatives, in coordinates of Hom(P_n, h)


def ext_algebra(n: int, m: AlgRightModule, h: AlgRightModule, cap: int = DEFAULT_CAP) -> ExtResult:
    """Ext^n(m, h) as the n-th cohomology of Hom(minimal resolution of m, h)."""
    if n < 0:
        raise ValueError("Ext degree must be >= 0")
    if n > cap:
        raise ResolutionCapExceeded(cap)
    A = m.algebra
    f = A.field
    res = resolve(m, n + 2)
    spaces = [h.vertex_space(i) for i in range(A.num_vertices)]
    if n >= len(res.summands):
        return ExtResult(n, 0, Matrix.zeros(0, 0, f))
    dn = _hom_complex_differential(res, n, h, spaces)
    cn = dn.cols
    ker = kernel_basis(dn) if dn.rows else Matrix.identity(cn, f)
    if n == 0:
        return ExtResult(0, ker.cols, ker)
    dprev = _hom_complex_differential(res, n - 1, h, spaces)
    img_rank = rank(dprev)
    d = ker.cols - img_rank
    # representatives: kernel vectors independent modulo the image
    chosen = list(dprev.columns())
    base_rank = img_rank
    reps = []
    for v in ker.columns():
        trial = chosen + [list(v)]
        r = rank(Matrix.from_columns(trial, cn, f))
        if r > base_rank:
            chosen, base_rank = trial, r
            reps.append(list(v))
    if len(reps) != d:
        raise TheoremViolation("cohomology representatives do not match the rank count")
    basis = Matrix.from_columns(reps, cn, f) if reps else Matrix.zeros(cn, 0, f)
    return ExtResult(n, d, basis)


def truncated_polynomial_algebra(n: int, field: Field = QQ) -> FdAlgebra:
    """k[x]/(x^n) on the basis 1, x, ..., x^(n-1), one idempotent."""
    table = [[{a + b: 1} if a + b < n else {} for b in range(n)] for a in range(n)]
    unit = [1] + [0] * (n - 1)
    return FdAlgebra(n, table, unit, [unit], field)


def path_algebra_a2(field: Field = QQ) -> FdAlgebra:
    """Path algebra of 1 -> 2 on the basis e1, e2, arrow (arrow = e1 * arrow * e2)."""
    table = [[{} for _ in range(3)] for _ in range(3)]
    table[0][0] = {0: 1}
    table[1][1] = {1: 1}
    table[0][2] = {2: 1}
    table[2][1] = {2: 1}
    return FdAlgebra(3, table, [1, 1, 0], [[1, 0, 0], [0, 1, 0]], field)
