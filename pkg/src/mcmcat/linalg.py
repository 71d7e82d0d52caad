"""Dense exact linear algebra over the rationals and prime fields.

Matrices are immutable.  Rationals are ``gmpy2.mpq`` values; elements of a
prime field are the canonical integers ``0 .. p-1``.  All elimination uses the
same deterministic pivot rule (first nonzero entry, scanning columns left to
right and rows top to bottom), so every basis produced downstream is
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import MalformedInput, ShapeError


class Field:
    """Base class for the two supported exact fields."""

    modulus = 0

    def coerce(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)


@dataclass(frozen=True)
class Rationals(Field):
    modulus = 0

    def coerce(self, x):
        if isinstance(x, str):
            return _parse_rational(x)
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, float):
            raise MalformedInput(f"floating point entry {x!r} is not exact")
        return mpq(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def element_to_json(self, x) -> str:
        return f"{x.numerator}/{x.denominator}"

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        if self.p < 2 or not gmpy2.is_prime(self.p):
            raise MalformedInput(f"{self.p} is not prime")

    @property
    def modulus(self):  # type: ignore[override]
        return self.p

    def coerce(self, x):
        if isinstance(x, str):
            x = _parse_rational(x)
        if isinstance(x, float):
            raise MalformedInput(f"floating point entry {x!r} is not exact")
        if isinstance(x, (Fraction, type(mpq(0)))):
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def element_to_json(self, x) -> int:
        return int(x)

    def __str__(self) -> str:
        return f"Fp:{self.p}"


QQ = Rationals()


def _parse_rational(s: str):
    s = s.strip()
    try:
        if "/" in s:
            num, den = s.split("/")
            den_i = int(den)
            if den_i == 0:
                raise MalformedInput(f"zero denominator in {s!r}")
            return mpq(int(num), den_i)
        return mpq(int(s))
    except ValueError as exc:
        raise MalformedInput(f"cannot parse rational {s!r}") from exc


def parse_field(s: str) -> Field:
    if s == "Q":
        return QQ
    if s.startswith("Fp:"):
        try:
            return PrimeField(int(s[3:]))
        except ValueError as exc:
            raise MalformedInput(f"bad field descriptor {s!r}") from exc
    raise MalformedInput(f"bad field descriptor {s!r}")


class Matrix:
    """An immutable dense matrix over an exact field.

    Rows are stored as tuples; use the constructors rather than mutating.
    """

    __slots__ = ("rows", "cols", "field", "_r")

    def __init__(self, data: Sequence[Sequence], field: Field = QQ, *, rows=None, cols=None):
        co = field.coerce
        r = tuple(tuple(co(x) for x in row) for row in data)
        nrows = len(r) if rows is None else rows
        if cols is None:
            if not r:
                raise ShapeError("column count required for a matrix with no rows")
            cols = len(r[0])
        if len(r) != nrows or any(len(row) != cols for row in r):
            raise ShapeError("ragged matrix data")
        self.rows, self.cols, self.field, self._r = nrows, cols, field, r

    @classmethod
    def _raw(cls, rows: int, cols: int, field: Field, data) -> "Matrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m.field = rows, cols, field
        m._r = tuple(tuple(row) for row in data)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        z = field.zero
        return cls._raw(rows, cols, field, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(n, n, field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int, field: Field = QQ) -> "Matrix":
        co = field.coerce
        cols = [[co(x) for x in c] for c in columns]
        if any(len(c) != nrows for c in cols):
            raise ShapeError("column length mismatch")
        return cls._raw(nrows, len(cols), field, [[c[i] for c in cols] for i in range(nrows)])

    @classmethod
    def column(cls, entries: Sequence, field: Field = QQ) -> "Matrix":
        return cls([[x] for x in entries], field, rows=len(entries), cols=1)

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._r[i][j]

    def row(self, i: int) -> tuple:
        return self._r[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self._r)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.cols)]

    def tolist(self) -> list:
        return [list(row) for row in self._r]

    def entries(self) -> list:
        return [x for row in self._r for x in row]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, self.field,
                           [[self._r[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(len(idx), self.cols, self.field, [self._r[i] for i in idx])

    def select_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.rows, len(idx), self.field, [[row[j] for j in idx] for row in self._r])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix._raw(r1 - r0, c1 - c0, self.field, [row[c0:c1] for row in self._r[r0:r1]])

    def is_zero(self) -> bool:
        return not any(any(row) for row in self._r)

    # -- arithmetic -------------------------------------------------------
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.field != other.field:
            raise ShapeError("field mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        p = self.field.modulus
        if p:
            data = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self._r, other._r)]
        else:
            data = [[a + b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)]
        return Matrix._raw(self.rows, self.cols, self.field, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        p = self.field.modulus
        if p:
            data = [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self._r, other._r)]
        else:
            data = [[a - b for a, b in zip(r, s)] for r, s in zip(self._r, other._r)]
        return Matrix._raw(self.rows, self.cols, self.field, data)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        p = self.field.modulus
        if p:
            data = [[a * c % p for a in r] for r in self._r]
        else:
            data = [[a * c for a in r] for r in self._r]
        return Matrix._raw(self.rows, self.cols, self.field, data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if self.field != other.field:
            raise ShapeError("field mismatch")
        p = self.field.modulus
        z = self.field.zero
        n = other.cols
        sparse_b = [[(j, x) for j, x in enumerate(row) if x] for row in other._r]
        out = []
        for row in self._r:
            acc = [z] * n
            for k, a in enumerate(row):
                if a:
                    for j, b in sparse_b[k]:
                        acc[j] += a * b
            if p:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix._raw(self.rows, n, self.field, out)

    def apply(self, v: Sequence) -> list:
        """Matrix times a plain coordinate vector."""
        p = self.field.modulus
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for row in self._r:
            s = self.field.zero
            for j, x in nz:
                s += row[j] * x
            out.append(s % p if p else s)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self._r == other._r

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, str(self.field), self._r))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._r)
        return f"Matrix({self.rows}x{self.cols} over {self.field}: [{body}])"

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        e = self.field.element_to_json
        return {"rows": self.rows, "cols": self.cols, "field": str(self.field),
                "entries": [e(x) for x in self.entries()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        try:
            rows, cols = int(obj["rows"]), int(obj["cols"])
            field = parse_field(obj.get("field", "Q"))
            flat = list(obj["entries"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad matrix JSON: {exc}") from exc
        if len(flat) != rows * cols:
            raise MalformedInput("entries length does not equal rows*cols")
        data = [flat[i * cols:(i + 1) * cols] for i in range(rows)]
        return cls(data, field, rows=rows, cols=cols)


# -- elimination ------------------------------------------------------------

def _eliminate(rows: list, ncols: int, field: Field, limit: Optional[int] = None) -> list:
    """In-place Gauss-Jordan on a list of mutable rows; returns pivot columns.

    Only the first ``limit`` columns are searched for pivots (the remaining
    columns ride along, which is how the transform is tracked).
    """
    p = field.modulus
    limit = ncols if limit is None else limit
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        x = pr[c]
        if x != 1:
            inv = field.inv(x)
            if p:
                pr[:] = [y * inv % p for y in pr]
            else:
                pr[:] = [y * inv for y in pr]
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if f:
                if p:
                    for j in nz:
                        ri[j] = (ri[j] - f * pr[j]) % p
                else:
                    for j in nz:
                        ri[j] -= f * pr[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix):
    """Return ``(reduced, pivots, transform)`` with ``transform @ m == reduced``."""
    f = m.field
    z, o = f.zero, f.one
    rows = [list(row) + [o if i == j else z for j in range(m.rows)] for i, row in enumerate(m._r)]
    pivots = _eliminate(rows, m.cols + m.rows, f, limit=m.cols)
    reduced = Matrix._raw(m.rows, m.cols, f, [row[:m.cols] for row in rows])
    transform = Matrix._raw(m.rows, m.rows, f, [row[m.cols:] for row in rows])
    return reduced, tuple(pivots), transform


def _rref_rows(m: Matrix):
    rows = [list(row) for row in m._r]
    pivots = _eliminate(rows, m.cols, m.field)
    return rows, pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter side
    if m.cols < m.rows:
        m = m.T
    return len(_rref_rows(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the right null space, as the columns of the returned matrix.

    Each basis vector has a 1 at its free column and 0 at the others, so the
    free columns form an identity block (coordinates are read off directly).
    """
    f = m.field
    rows, pivots = _rref_rows(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    z, o = f.zero, f.one
    p = f.modulus
    vecs = []
    for fc in free:
        v = [z] * m.cols
        v[fc] = o
        for r, pc in enumerate(pivots):
            x = rows[r][fc]
            if x:
                v[pc] = (-x) % p if p else -x
        vecs.append(v)
    return Matrix._raw(m.cols, len(vecs), f, [[v[i] for v in vecs] for i in range(m.cols)])


def image_basis(m: Matrix) -> Matrix:
    """Basis of the column space in reduced column echelon form."""
    rows, pivots = _rref_rows(m.T)
    vecs = rows[:len(pivots)]
    return Matrix._raw(m.rows, len(vecs), m.field, [[v[i] for v in vecs] for i in range(m.rows)])


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some ``x`` with ``a @ x == b``, or ``None`` when the system is inconsistent."""
    if a.rows != b.rows:
        raise ShapeError(f"row counts differ: {a.rows} vs {b.rows}")
    f = a.field
    rows = [list(ra) + list(rb) for ra, rb in zip(a._r, b._r)]
    pivots = _eliminate(rows, a.cols + b.cols, f, limit=a.cols)
    r = len(pivots)
    for i in range(r, a.rows):
        if any(rows[i][a.cols:]):
            return None
    z = f.zero
    x = [[z] * b.cols for _ in range(a.cols)]
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][a.cols:]
    return Matrix._raw(a.cols, b.cols, f, x)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise ShapeError("field mismatch")
    p = a.field.modulus
    out = []
    for ra in a._r:
        for rb in b._r:
            if p:
                out.append([x * y % p for x in ra for y in rb])
            else:
                out.append([x * y for x in ra for y in rb])
    return Matrix._raw(a.rows * b.rows, a.cols * b.cols, a.field, out)


def hstack(*ms: Matrix, rows: Optional[int] = None, field: Field = QQ) -> Matrix:
    if not ms:
        if rows is None:
            raise ShapeError("hstack of nothing needs a row count")
        return Matrix.zeros(rows, 0, field)
    n = ms[0].rows
    if any(m.rows != n for m in ms):
        raise ShapeError("hstack row mismatch")
    data = [sum((m._r[i] for m in ms), ()) for i in range(n)]
    return Matrix._raw(n, sum(m.cols for m in ms), ms[0].field, data)


def vstack(*ms: Matrix, cols: Optional[int] = None, field: Field = QQ) -> Matrix:
    if not ms:
        if cols is None:
            raise ShapeError("vstack of nothing needs a column count")
        return Matrix.zeros(0, cols, field)
    n = ms[0].cols
    if any(m.cols != n for m in ms):
        raise ShapeError("vstack column mismatch")
    return Matrix._raw(sum(m.rows for m in ms), n, ms[0].field, [r for m in ms for r in m._r])


def block_diag(*ms: Matrix, field: Field = QQ) -> Matrix:
    if ms:
        field = ms[0].field
    R = sum(m.rows for m in ms)
    C = sum(m.cols for m in ms)
    z = field.zero
    out = []
    c0 = 0
    for m in ms:
        for row in m._r:
            out.append([z] * c0 + list(row) + [z] * (C - c0 - m.cols))
        c0 += m.cols
    return Matrix._raw(R, C, field, out)


class Subspace:
    """A subspace of k^n held by a reduced echelon basis.

    The basis vectors carry an identity block at the pivot positions, so
    coordinates, membership and reduction modulo the subspace are cheap.
    """

    __slots__ = ("ambient", "field", "basis", "pivots", "_vecs")

    def __init__(self, spanning: Matrix):
        rows, pivots = _rref_rows(spanning.T) if spanning.cols else ([], [])
        self.ambient = spanning.rows
        self.field = spanning.field
        self._vecs = [tuple(v) for v in rows[:len(pivots)]]
        self.pivots = tuple(pivots)
        self.basis = Matrix._raw(self.ambient, len(self._vecs), self.field,
                                 [[v[i] for v in self._vecs] for i in range(self.ambient)])

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Sequence) -> list:
        """Representative of ``v`` modulo the subspace with zeros at the pivots."""
        p = self.field.modulus
        w = list(v)
        for vec, pc in zip(self._vecs, self.pivots):
            c = w[pc]
            if c:
                if p:
                    w = [(a - c * b) % p for a, b in zip(w, vec)]
                else:
                    w = [a - c * b for a, b in zip(w, vec)]
        return w

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_all(self, m: Matrix) -> bool:
        return all(self.contains(c) for c in m.columns())

    def coords(self, v: Sequence) -> list:
        """Coordinates of a vector known to lie in the subspace."""
        return [v[pc] for pc in self.pivots]

    def complement(self) -> tuple:
        """Positions of standard basis vectors spanning a complement."""
        ps = set(self.pivots)
        return tuple(i for i in range(self.ambient) if i not in ps)
