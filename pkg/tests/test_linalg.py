import json

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from mcmcat.errors import MalformedInput, ShapeError
from mcmcat.linalg import (QQ, Matrix, PrimeField, Subspace, hstack, image_basis, kernel_basis,
                           kronecker, parse_field, rank, rref, solve, vstack)

F2 = PrimeField(2)


def test_rref_identity():
    red, piv, t = rref(Matrix.identity(2))
    assert red == Matrix.identity(2)
    assert piv == (0, 1)
    assert t == Matrix.identity(2)


def test_rref_rank_one():
    m = Matrix([[1, 2], [2, 4]])
    red, piv, t = rref(m)
    assert red == Matrix([[1, 2], [0, 0]])
    assert piv == (0,)
    assert t @ m == red


def test_rref_swap_f2():
    m = Matrix([[0, 1], [1, 0]], F2)
    red, piv, t = rref(m)
    # a single row swap, done by hand
    assert red == Matrix.identity(2, F2)
    assert piv == (0, 1)
    assert t == Matrix([[0, 1], [1, 0]], F2)


def test_kernel_examples():
    assert kernel_basis(Matrix.zeros(3, 3)).cols == 3
    assert rank(kernel_basis(Matrix.zeros(3, 3))) == 3
    assert kernel_basis(Matrix([[1, 2], [3, 4]])).cols == 0
    k = kernel_basis(Matrix([[1, 1, 0], [0, 0, 1]]))
    assert k.cols == 1
    v = k.col(0)
    # solved by hand: x1 = -x2, x3 = 0
    assert v[0] == -v[1] and v[0] != 0 and v[2] == 0


def test_solve_examples():
    b = Matrix([[1, 2], [3, 4]])
    assert solve(Matrix.identity(2), b) == b
    assert solve(Matrix([[1], [0]]), Matrix([[0], [1]])) is None
    assert solve(Matrix([[2]]), Matrix([[1]])) == Matrix([["1/2"]])


def test_rank_kron_stack():
    assert rank(Matrix.identity(4)) == 4
    assert kronecker(Matrix([[2]]), Matrix([[3]])) == Matrix([[6]])
    assert rank(Matrix([[1, 2], [2, 4]])) == 1
    a = Matrix([[1, 0], [0, 1]])
    assert hstack(a, a).shape == (2, 4)
    assert vstack(a, a).shape == (4, 2)
    with pytest.raises(ShapeError):
        hstack(a, Matrix([[1]]))
    with pytest.raises(ShapeError):
        a @ Matrix([[1, 2, 3]])


def test_prime_field_arithmetic():
    f = PrimeField(7)
    m = Matrix([[3, 5], [1, 2]], f)
    red, piv, t = rref(m)
    assert t @ m == red
    assert m[0, 0] == 3 and Matrix([[10]], f)[0, 0] == 3
    assert Matrix([["1/2"]], f)[0, 0] == 4
    with pytest.raises(MalformedInput):
        PrimeField(9)


def test_json_roundtrip():
    m = Matrix([["1/2", -3], [0, "4/6"]])
    obj = m.to_json()
    assert obj["entries"] == ["1/2", "-3/1", "0/1", "2/3"]
    assert obj["field"] == "Q"
    assert Matrix.from_json(json.loads(json.dumps(obj))) == m
    f = PrimeField(5)
    mf = Matrix([[7, 3]], f)
    assert mf.to_json()["entries"] == [2, 3]
    assert Matrix.from_json(mf.to_json()) == mf
    assert parse_field("Fp:5") == f
    with pytest.raises(MalformedInput):
        Matrix.from_json({"rows": 2, "cols": 2, "field": "Q", "entries": [1]})
    with pytest.raises(MalformedInput):
        Matrix([[0.5]])


def test_subspace_coords_and_reduce():
    m = Matrix([[1, 2], [1, 0], [0, 1]])
    s = Subspace(m)
    assert s.dim == 2
    for c in m.columns():
        assert s.contains(c)
        coords = s.coords(c)
        assert s.basis.apply(coords) == list(c)
    assert not s.contains([0, 0, 2])
    assert len(s.complement()) == 1


entries = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, field=QQ):
    r = draw(st.integers(0, 5))
    c = draw(st.integers(1, 5))
    data = [[draw(entries) for _ in range(c)] for _ in range(r)]
    return Matrix(data, field, rows=r, cols=c)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices(PrimeField(3)))
def test_rank_nullity_fp(m):
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    red, piv, t = rref(m)
    assert t @ m == red
    red2, piv2, _ = rref(red)
    assert red2 == red and piv2 == piv
    assert list(piv) == sorted(piv)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_contract(a, data):
    b = Matrix([[data.draw(entries)] for _ in range(a.rows)], rows=a.rows, cols=1)
    x = solve(a, b)
    if x is not None:
        assert a @ x == b
    else:
        assert rank(hstack(a, b)) > rank(a)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_image_basis_spans(m):
    im = image_basis(m)
    assert im.cols == rank(m)
    assert rank(hstack(im, m)) == im.cols


def test_rationals_are_exact():
    m = Matrix([[mpq(1, 3), 1], [1, 3]])
    assert rank(m) == 1
