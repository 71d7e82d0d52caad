"""Finitely generated modules over V = k[t] localized at (t).

Elements of presentation matrices are polynomials; a polynomial with nonzero
constant term is a unit of V and is treated as one during elimination, so no
fractions are ever formed.  Every module is brought to its invariant-factor
form ``V^r + V/(t^e1) + ... + V/(t^es)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import DegreeCapExceeded, MalformedInput, PreconditionError, TheoremViolation
from .linalg import QQ, Field

DEFAULT_DEGREE_CAP = 64
INF = math.inf
NEG_INF = -math.inf

# Krull dimension of V
KRULL_DIM = 1


class LocalPoly:
    """A polynomial in t, lowest degree first, with an explicit degree cap."""

    __slots__ = ("c", "field", "cap")

    def __init__(self, coeffs: Sequence = (), field: Field = QQ, cap: int = DEFAULT_DEGREE_CAP):
        co = field.coerce
        c = [co(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        if len(c) - 1 > cap:
            raise DegreeCapExceeded(f"degree {len(c) - 1} exceeds cap {cap}")
        self.c, self.field, self.cap = tuple(c), field, cap

    @classmethod
    def _raw(cls, c: list, field: Field, cap: int) -> "LocalPoly":
        while c and not c[-1]:
            c.pop()
        if len(c) - 1 > cap:
            raise DegreeCapExceeded(f"degree {len(c) - 1} exceeds cap {cap}")
        p = cls.__new__(cls)
        p.c, p.field, p.cap = tuple(c), field, cap
        return p

    @classmethod
    def monomial(cls, e: int, coeff=1, field: Field = QQ, cap: int = DEFAULT_DEGREE_CAP):
        return cls([0] * e + [coeff], field, cap)

    def like(self, coeffs) -> "LocalPoly":
        return LocalPoly(coeffs, self.field, self.cap)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def valuation(self) -> float:
        """t-adic order; +inf for zero."""
        for i, x in enumerate(self.c):
            if x:
                return i
        return INF

    def is_unit(self) -> bool:
        return bool(self.c) and bool(self.c[0])

    def shift_down(self, e: int) -> "LocalPoly":
        """Exact division by t^e (requires valuation >= e)."""
        if any(self.c[:e]):
            raise ValueError("not divisible")
        return LocalPoly._raw(list(self.c[e:]), self.field, self.cap)

    def __add__(self, other: "LocalPoly") -> "LocalPoly":
        p = self.field.modulus
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = (out[i] + x) % p if p else out[i] + x
        return LocalPoly._raw(out, self.field, self.cap)

    def __neg__(self) -> "LocalPoly":
        p = self.field.modulus
        return LocalPoly._raw([(-x) % p if p else -x for x in self.c], self.field, self.cap)

    def __sub__(self, other: "LocalPoly") -> "LocalPoly":
        return self + (-other)

    def __mul__(self, other: "LocalPoly") -> "LocalPoly":
        if not self.c or not other.c:
            return LocalPoly._raw([], self.field, self.cap)
        if self.degree + other.degree > self.cap:
            raise DegreeCapExceeded(
                f"product degree {self.degree + other.degree} exceeds cap {self.cap}")
        p = self.field.modulus
        out = [self.field.zero] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        if p:
            out = [x % p for x in out]
        return LocalPoly._raw(out, self.field, self.cap)

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalPoly) and self.c == other.c and self.field == other.field

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"LocalPoly({[str(x) for x in self.c]})"

    def to_json(self) -> list:
        e = self.field.element_to_json
        return [e(x) for x in self.c]


@dataclass(frozen=True)
class DvrModule:
    """V^free_rank + sum of V/(t^e) over ``torsion`` (sorted, positive)."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(e) for e in self.torsion)
        if self.free_rank < 0 or any(e <= 0 for e in t):
            raise MalformedInput("free rank must be >= 0 and exponents positive")
        object.__setattr__(self, "torsion", tuple(sorted(t)))

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def num_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    def direct_sum(self, other: "DvrModule") -> "DvrModule":
        return DvrModule(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def presentation(self, field: Field = QQ, cap: int = DEFAULT_DEGREE_CAP) -> "DvrPresentation":
        g = self.num_generators
        z = LocalPoly((), field, cap)
        rel = [[z] * len(self.torsion) for _ in range(g)]
        for i, e in enumerate(self.torsion):
            rel[self.free_rank + i][i] = LocalPoly.monomial(e, 1, field, cap)
        return DvrPresentation(g, rel, len(self.torsion))

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj: dict) -> "DvrModule":
        try:
            return cls(int(obj.get("free_rank", 0)), tuple(obj.get("torsion", ())))
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"bad DVR module JSON: {exc}") from exc


RESIDUE_FIELD = DvrModule(0, (1,))
V = DvrModule(1, ())
ZERO = DvrModule(0, ())


@dataclass
class DvrPresentation:
    """``generators`` x ``ncols`` relation matrix of LocalPoly entries."""

    generators: int
    relations: list
    ncols: int = dc_field(default=-1)

    def __post_init__(self):
        if self.ncols < 0:
            self.ncols = len(self.relations[0]) if self.relations else 0
        if len(self.relations) != self.generators or any(len(r) != self.ncols for r in self.relations):
            raise MalformedInput("relations matrix has the wrong shape")

    @classmethod
    def from_coefficients(cls, rows: Sequence[Sequence[Sequence]], field: Field = QQ,
                          cap: int = DEFAULT_DEGREE_CAP, ncols: Optional[int] = None):
        rel = [[LocalPoly(e, field, cap) for e in row] for row in rows]
        return cls(len(rel), rel, ncols if ncols is not None else (len(rel[0]) if rel else 0))


def _smith(pres: DvrPresentation, track_columns: bool = False):
    """Diagonalize by minimal-valuation pivoting.

    Returns the pivot valuations (nondecreasing) and, if requested, the column
    transform W (invertible over V) with ``P @ W`` row-equivalent to the diagonal.
    """
    g, q = pres.generators, pres.ncols
    A = [list(row) for row in pres.relations]
    sample = None
    for row in A:
        for x in row:
            sample = x
            break
        if sample is not None:
            break
    W = None
    if track_columns:
        if sample is None:
            field, cap = QQ, DEFAULT_DEGREE_CAP
        else:
            field, cap = sample.field, sample.cap
        one = LocalPoly([1], field, cap)
        zero = LocalPoly((), field, cap)
        W = [[one if i == j else zero for j in range(q)] for i in range(q)]
    vals = []
    for s in range(min(g, q)):
        best, bi, bj = INF, -1, -1
        for i in range(s, g):
            for j in range(s, q):
                v = A[i][j].valuation()
                if v < best:
                    best, bi, bj = v, i, j
                    if v == 0:
                        break
            if best == 0:
                break
        if best == INF:
            break
        A[s], A[bi] = A[bi], A[s]
        if bj != s:
            for row in A:
                row[s], row[bj] = row[bj], row[s]
            if W is not None:
                for row in W:
                    row[s], row[bj] = row[bj], row[s]
        v = int(best)
        u = A[s][s].shift_down(v)
        for i in range(s + 1, g):
            a = A[i][s]
            if a:
                w = a.shift_down(v)
                A[i] = [u * x - w * y for x, y in zip(A[i], A[s])]
        for j in range(s + 1, q):
            a = A[s][j]
            if a:
                w = a.shift_down(v)
                for row in A:
                    row[j] = u * row[j] - w * row[s]
                if W is not None:
                    for row in W:
                        row[j] = u * row[j] - w * row[s]
        vals.append(v)
    return vals, W


def smith_local(p: DvrPresentation) -> DvrModule:
    """Invariant-factor decomposition of coker(relations)."""
    vals, _ = _smith(p)
    return DvrModule(p.generators - len(vals), tuple(v for v in vals if v > 0))


def local_rank(p: DvrPresentation) -> int:
    """Rank of the relation matrix over the fraction field."""
    return len(_smith(p)[0])


def kernel_columns(p: DvrPresentation) -> list:
    """A V-basis of the kernel of the relation matrix, each as a column of LocalPoly."""
    vals, W = _smith(p, track_columns=True)
    r = len(vals)
    return [[W[i][j] for i in range(p.ncols)] for j in range(r, p.ncols)]


def first_syzygy(p: DvrPresentation) -> DvrModule:
    """Image of the relation matrix, i.e. the kernel of the free cover V^g -> coker."""
    ker = kernel_columns(p)
    if not ker:
        return DvrModule(p.ncols, ())
    rel = [[ker[j][i] for j in range(len(ker))] for i in range(p.ncols)]
    return smith_local(DvrPresentation(p.ncols, rel, len(ker)))


def free_resolution(m: DvrModule):
    """The minimal resolution 0 -> V^s -> V^(r+s) -> m -> 0 as (ranks, presentation)."""
    pres = m.presentation()
    ranks = [m.num_generators] + ([len(m.torsion)] if m.torsion else [])
    if m.is_zero:
        ranks = []
    return ranks, pres


def _mult_kernel(a: int, n_summand) -> Optional[DvrModule]:
    # kernel of multiplication by t^a on one cyclic summand
    if n_summand is None:  # free summand V
        return ZERO
    b = n_summand
    e = b - max(b - a, 0)
    return DvrModule(0, (e,)) if e > 0 else ZERO


def _mult_cokernel(a: int, n_summand) -> DvrModule:
    # cokernel of multiplication by t^a on one cyclic summand, via the local Smith form
    if n_summand is None:
        rel = [[LocalPoly.monomial(a)]]
    else:
        rel = [[LocalPoly.monomial(a), LocalPoly.monomial(n_summand)]]
    return smith_local(DvrPresentation(1, rel))


def ext_dvr(i: int, m: DvrModule, n: DvrModule) -> DvrModule:
    """Ext^i_V(m, n) from the minimal free resolution of m."""
    if i < 0:
        raise PreconditionError("Ext index must be >= 0")
    if i >= 2:
        return ZERO
    summands = [None] * n.free_rank + list(n.torsion)
    out = ZERO
    if i == 0:
        # Hom(V^(r+s), n) -> Hom(V^s, n): free generators contribute n, torsion
        # generators contribute the kernel of t^a on n
        for _ in range(m.free_rank):
            out = out.direct_sum(n)
        for a in m.torsion:
            for s in summands:
                out = out.direct_sum(_mult_kernel(a, s))
        return out
    for a in m.torsion:
        for s in summands:
            out = out.direct_sum(_mult_cokernel(a, s))
    return out


def depth_dvr(m: DvrModule) -> float:
    """inf{i : Ext^i(k, m) != 0}, with inf of the empty set = +inf."""
    for i in range(KRULL_DIM + 1):
        if not ext_dvr(i, RESIDUE_FIELD, m).is_zero:
            return i
    return INF


def pd_dvr(m: DvrModule) -> float:
    ranks, _ = free_resolution(m)
    if not ranks:
        return NEG_INF
    return len(ranks) - 1


@dataclass(frozen=True)
class DvrMap:
    """A map from V^source_rank to ``target`` given on the target's generators."""

    source_rank: int
    target: DvrModule
    matrix: tuple  # target.num_generators rows of LocalPoly

    def is_epimorphism(self) -> bool:
        t = self.target
        tp = t.presentation()
        rows = [list(self.matrix[i]) + list(tp.relations[i]) for i in range(t.num_generators)]
        return smith_local(DvrPresentation(t.num_generators, rows)).is_zero


def mcm_precover_dvr(m: DvrModule) -> DvrMap:
    """V^(r+s) -> m, generators to generators; over V, MCM = free."""
    g = m.num_generators
    one, zero = LocalPoly([1]), LocalPoly(())
    mat = tuple(tuple(one if i == j else zero for j in range(g)) for i in range(g))
    return DvrMap(g, m, mat)


def factor_through_precover(pi: DvrMap, f: DvrMap) -> DvrMap:
    """theta with pi o theta = f, for f from a free module (lift generator images)."""
    if f.target != pi.target:
        raise PreconditionError("maps have different targets")
    # pi sends the j-th basis vector to the j-th generator, so f's matrix lifts verbatim
    theta = DvrMap(f.source_rank, DvrModule(pi.source_rank, ()), f.matrix)
    return theta


def compose_into(pi: DvrMap, theta: DvrMap) -> tuple:
    """Matrix of pi o theta."""
    rows = []
    for i in range(len(pi.matrix)):
        row = []
        for j in range(theta.source_rank):
            acc = LocalPoly(())
            for k in range(pi.source_rank):
                acc = acc + pi.matrix[i][k] * theta.matrix[k][j]
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def maps_agree(m: DvrModule, a: tuple, b: tuple) -> bool:
    """Whether two generator-image matrices define the same map into m."""
    for i in range(m.num_generators):
        bound = None
        if i >= m.free_rank:
            bound = m.torsion[i - m.free_rank]
        for x, y in zip(a[i], b[i]):
            d = x - y
            if bound is None:
                if d:
                    return False
            elif d.valuation() < bound:
                return False
    return True


def functor_pd_representable_dvr(m: DvrModule) -> float:
    """pd of the right functor (-, m) on proj(V), identified with pd_dvr(m)."""
    pd = pd_dvr(m)
    expected = KRULL_DIM - depth_dvr(m)
    if pd != expected:
        raise TheoremViolation(f"pd (-,M) = {pd} but d - depth M = {expected} for {m}")
    return pd


def ext_functor_pd_dvr(m: DvrModule) -> int:
    """pd of Ext^1(m, -) restricted to MCM, via its module Ext^1(m, V)."""
    if m.free_rank or not m.torsion:
        raise PreconditionError("input must be a nonzero torsion module")
    e = ext_dvr(1, m, V)
    pd = pd_dvr(e)
    if pd != KRULL_DIM:
        raise TheoremViolation(f"pd Ext^1(M,V) = {pd}, expected {KRULL_DIM}")
    return int(pd)


def gldim_proj_v() -> int:
    """gldim of fp functors on proj(V) = gldim V, as the max pd over the indecomposables V, V/(t^e).

    By the structure theorem every f.g. module is a sum of these, and pd is
    constant (= 1) on the torsion cyclics; sampling e = 1 and a larger e
    keeps the computation honest without enumerating infinitely many.
    """
    cands = [V, RESIDUE_FIELD, DvrModule(0, (3,))]
    return int(max(pd_dvr(c) for c in cands))
