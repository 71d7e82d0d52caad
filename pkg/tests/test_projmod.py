import pytest

from mcmcat import projmod
from mcmcat.algebra import path_algebra_a2, truncated_polynomial_algebra
from mcmcat.category import monogenic_category
from mcmcat.linalg import Matrix
from mcmcat.projmod import (Presenter, evaluate_functor, evaluation_functorification_check,
                            standard_battery)

from oracles import jordan_type

K = truncated_polynomial_algebra(1)
D = truncated_polynomial_algebra(2)


def test_exhaustive_battery_over_k():
    bat = standard_battery(K, max_dim=5)
    # k^j for j = 0..5
    assert sorted(evaluate_functor(K, p, None).dim for p in bat) == [0, 1, 2, 3, 4, 5]


def test_exhaustive_battery_over_dual_numbers():
    bat = standard_battery(D, max_dim=5)
    types = sorted(tuple(jordan_type(projmod._right_action(D, evaluate_functor(D, p, None), 1)))
                   for p in bat)
    # every k[x]/(x^2)-module k^i + A^j of dimension <= 5, each exactly once
    expected = sorted(tuple(sorted([1] * i + [2] * j)) for i in range(6) for j in range(3) if i + 2 * j <= 5)
    assert types == expected


def test_representable_evaluates_to_projective():
    a = monogenic_category(2).auslander_algebra
    for v in range(a.num_vertices):
        p = Presenter((v,), (), ((),))
        assert evaluate_functor(a, p, None).dim == a.projective(v).dim
        # F(A e_w) = e_v A e_w
        for w in range(a.num_vertices):
            corner = projmod._corner(a, a.idempotents[v], a.idempotents[w])
            assert evaluate_functor(a, p, w).dim == corner.dim


@pytest.mark.parametrize("name", ["k", "dual", "aus", "aus_op", "a2"])
def test_tau_is_natural_iso(name):
    a = {"k": K, "dual": D, "aus": monogenic_category(2).auslander_algebra,
         "aus_op": monogenic_category(2).auslander_opposite, "a2": path_algebra_a2()}[name]
    rep = evaluation_functorification_check(a, seed=4)
    assert rep.ok, rep.failures
    assert rep.functors > 0 and rep.squares > 0


def test_negative_control_detects_broken_tau(monkeypatch):
    real = projmod.tau_matrix

    def broken(a, fA, fP, P):
        t = real(a, fA, fP, P)
        return Matrix.zeros(t.rows, t.cols)

    monkeypatch.setattr(projmod, "tau_matrix", broken)
    rep = evaluation_functorification_check(D, standard_battery(D, max_dim=3))
    assert not rep.ok
    assert any(f.get("check") == "tau isomorphism" for f in rep.failures)


def test_report_json():
    rep = evaluation_functorification_check(K)
    j = rep.to_json()
    assert j["ok"] and j["algebra_dim"] == 1 and j["failures"] == []
