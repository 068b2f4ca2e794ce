import pytest

from quasihopf.constructors import (ConstructionError, GroupTable, cocycle_check, cyclic_cocycle,
                                    cyclic_group, direct_product, group_algebra, normalize_cocycle,
                                    symmetric_group, twisted_dual)
from quasihopf.field import GF, QQ
from quasihopf.integral import integral_spaces, semisimplicity_battery
from quasihopf.qhopf import validate
from quasihopf.tensor import map_legs


def abc(a, b, c):
    return -1 if a * b * c else 1


def test_group_table_rejects_non_groups():
    with pytest.raises(ConstructionError):
        GroupTable([[0, 1], [0, 1]])
    with pytest.raises(ConstructionError):
        GroupTable([[0, 1], [1, 2]])


def test_s3_group_algebra():
    H = group_algebra(symmetric_group(3))
    assert validate(H).ok
    assert any(H.b(i) * H.b(j) != H.b(j) * H.b(i) for i in range(6) for j in range(6))
    assert all(H.Sa(H.Sa(H.b(i))) == H.b(i) for i in range(6))
    L = integral_spaces(H).left
    assert len(L) == 1 and len(set(L[0].vector())) == 1


def test_z3_over_gf3_is_not_semisimple():
    H = group_algebra(cyclic_group(3), GF(3))
    assert validate(H).ok
    assert not semisimplicity_battery(H)["is_semisimple"]


def test_cocycle_checks():
    G = cyclic_group(2)
    assert cocycle_check(G, lambda a, b, c: 1).ok
    assert cocycle_check(G, abc).ok
    rep = cocycle_check(G, lambda a, b, c: -1 if a * b else 1)
    assert not rep.ok
    assert not rep["pentagon"].ok and not rep["cocycle_identity"].ok


def test_z3_carry_cocycle_over_gf7():
    F = GF(7)
    H = twisted_dual(cyclic_group(3), cyclic_cocycle(3, F(2)), F)
    assert validate(H).ok and H.phi != H.one(3)


def test_twisted_dual_z2_is_genuinely_quasi():
    H = twisted_dual(cyclic_group(2), abc)
    assert H.phi != H.one(3)
    assert validate(H).ok


def test_trivial_cocycle_gives_dual_group_algebra():
    G = symmetric_group(3)
    H = twisted_dual(G)
    K = group_algebra(G)
    assert H.phi == H.one(3)
    # Δ(δ_g) = Σ_{hk=g} δ_h⊗δ_k is the transpose of the group multiplication
    for g in range(G.n):
        want = sum((H.b(h) @ H.b(k) for h in range(G.n) for k in range(G.n) if G.mul(h, k) == g),
                   H.A.zero() @ H.A.zero())
        assert H.D(H.b(g)) == want
    # δ_i δ_j = [i=j] δ_i is the transpose of Δ(g) = g⊗g in k[G]
    for i in range(G.n):
        assert K.D(K.b(i)) == K.b(i) @ K.b(i)
        for j in range(G.n):
            assert H.b(i) * H.b(j) == (H.b(i) if i == j else H.A.zero())


def test_non_cocycle_is_refused():
    with pytest.raises(ConstructionError):
        twisted_dual(cyclic_group(2), lambda a, b, c: -1 if a * b else 1)


def test_normalization_shift():
    G = cyclic_group(2)
    # a coboundary-shifted (non-normalized) version of the trivial cocycle
    kappa = {(0, 0): QQ(2), (0, 1): QQ(1), (1, 0): QQ(1), (1, 1): QQ(1)}
    m = G.mul
    w = {(a, b, c): kappa[(b, c)] * kappa[(a, m(b, c))] / (kappa[(m(a, b), c)] * kappa[(a, b)])
         for a in range(2) for b in range(2) for c in range(2)}
    assert cocycle_check(G, w).ok
    wn = normalize_cocycle(G, w, QQ)
    assert all(v == 1 for t, v in wn.items() if 0 in t)
    H = twisted_dual(G, w)
    assert validate(H).ok
    one = H.one()
    assert map_legs(H.phi, [None, H.counit, None]) == one @ one


def test_direct_product():
    G = direct_product(cyclic_group(2), cyclic_group(3))
    assert G.n == 6
    H = group_algebra(G)
    assert validate(H).ok
    assert all(H.b(i) * H.b(j) == H.b(j) * H.b(i) for i in range(6) for j in range(6))
