import pytest

from quasihopf.bimodule import (Bimodule, H_gamma, check_coherence, check_dual_coaction_identities,
                                check_projection, check_qp_duality, check_structure_map,
                                check_tensor_over_H, check_UV_identities, coinvariants,
                                dual_bimodule, from_left_module, nu, nu_inverse,
                                regular_bimodule, regular_left_bimodule, tensor_over_H,
                                validate_bimodule, validate_left_bimodule)
from quasihopf.qhopf import IdentityFailure
from quasihopf.tensor import DualElement, LinMap, Module, compose
from conftest import load, sign_character, sweedler_twisted

QUASI = ["twisted_dual_z2", "twisted_dual_z3_gf7"]


def regular_module(H):
    return Module(H.A, H.dim, left=dict(H.A.mul), name="Hreg")


def trivial_module(H):
    return Module(H.A, 1, left={(a, 0): ((0, c),) for a, c in enumerate(H.counit.coeffs) if c},
                  name="k")


def instances():
    return [load("group_s3"), load("twisted_dual_z2"), load("twisted_dual_z3_gf7"),
            sweedler_twisted()]


@pytest.mark.parametrize("H", instances(), ids=lambda H: H.name)
def test_regular_bimodule(H):
    R = regular_bimodule(H)
    assert validate_bimodule(R).ok
    assert check_projection(R).ok
    assert check_structure_map(R).ok
    assert coinvariants(R).dim == 1


@pytest.mark.parametrize("H", instances(), ids=lambda H: H.name)
def test_free_bimodule_projection_formula(H):
    VH = from_left_module(H, regular_module(H))
    assert validate_bimodule(VH).ok
    n = H.dim
    one = H.A.unit_coeffs
    for v in range(n):
        for x in range(n):
            e = H.counit.coeffs[x]
            want = VH.M.zero()
            for k, c in one.items():
                want = want + VH.M.basis(v * n + k).scale(e * c)
            assert VH.E(VH.M.basis(v * n + x)) == want
    assert coinvariants(VH).dim == n


def test_structure_map_inverse_on_free_module():
    H = load("twisted_dual_z2")
    VH = from_left_module(H, regular_module(H))
    co = coinvariants(VH)
    f = nu(VH, co)
    g = nu_inverse(VH, co, f.domain)
    M = compose(g, f).matrix()
    assert all(M[i][j] == (1 if i == j else 0) for i in range(len(M)) for j in range(len(M)))


def test_hopf_projection_is_classical():
    H = load("group_s3")
    R = regular_bimodule(H)
    m = lambda x: R.M.vector(x.vector())
    assert R.E(m(H.one())) == m(H.one())
    for i in range(H.dim):
        g = H.b(i)
        assert R.E(m(g)) == m(g * H.Sa(g))


def test_flipped_coaction_fails_on_noncommutative():
    H = load("group_s3")
    R = regular_bimodule(H)
    g = H.b(1)
    flip = {k: {(t[1], t[0]): c for t, c in v.items()} for k, v in R.rho.images.items()}
    # Δ is cocommutative on k[G]; a genuine mutation twists one leg by a non-central element
    twisted = {k: {(t[0], t[1]): c for t, c in (R.coact(R.M.basis(k[0])) * (H.one() @ g)).terms.items()}
               for k in R.rho.images}
    bad = Bimodule(H, R.M, LinMap(R.rho.src, R.rho.dst, twisted))
    rep = validate_bimodule(bad)
    assert not rep.ok and rep.first_failure().witness
    assert Bimodule(H, R.M, LinMap(R.rho.src, R.rho.dst, flip)).rho.images == R.rho.images


def test_flipped_coaction_fails_on_twisted_sweedler():
    H = sweedler_twisted()
    R = regular_bimodule(H)
    flip = {k: {(t[1], t[0]): c for t, c in v.items()} for k, v in R.rho.images.items()}
    rep = validate_bimodule(Bimodule(H, R.M, LinMap(R.rho.src, R.rho.dst, flip)))
    assert not rep.ok


def test_H_gamma():
    H = load("group_s3")
    Heps = H_gamma(H, H.counit)
    assert Heps.rho.images == regular_bimodule(H).rho.images
    Hs = H_gamma(H, sign_character(H))
    assert validate_bimodule(Hs).ok and check_projection(Hs).ok
    assert coinvariants(Hs).dim == 1
    with pytest.raises(ValueError):
        H_gamma(H, DualElement(H.A, [1, 2, 0, 0, 0, 0]))


@pytest.mark.parametrize("name", QUASI)
def test_H_gamma_quasi(name):
    H = load(name)
    gamma = DualElement(H.A, [1] + [0] * (H.dim - 1))
    Hg = H_gamma(H, gamma)
    assert validate_bimodule(Hg).ok
    assert coinvariants(Hg).dim == 1


def test_trivial_module_gives_regular_bimodule():
    H = load("twisted_dual_z2")
    kH = from_left_module(H, trivial_module(H))
    assert kH.dim == H.dim
    assert validate_bimodule(kH).ok
    assert kH.rho.images == regular_bimodule(H).rho.images


def test_tensor_over_H_dimensions():
    H = load("group_z2")
    R = regular_bimodule(H)
    T = tensor_over_H(R, R)
    assert T.dim == H.dim
    assert coinvariants(T).dim == 1
    assert check_tensor_over_H(T).ok
    H = load("twisted_dual_z2")
    V = from_left_module(H, trivial_module(H))
    W = from_left_module(H, regular_module(H))
    T = tensor_over_H(V, W)
    assert T.dim == V.dim * W.dim // H.dim
    assert validate_bimodule(T).ok and check_tensor_over_H(T).ok


def test_coherence():
    H = load("twisted_dual_z2")
    R = regular_bimodule(H)
    assert check_coherence(R, R, R).ok


@pytest.mark.parametrize("H", instances(), ids=lambda H: H.name)
def test_dual_bimodule(H):
    K = regular_left_bimodule(H)
    assert validate_left_bimodule(K).ok
    assert check_dual_coaction_identities(K).ok
    assert check_UV_identities(H).ok
    D = dual_bimodule(K)
    assert validate_bimodule(D).ok
    assert check_qp_duality(K, D).ok
    assert coinvariants(D).dim == 1
    assert check_structure_map(D).ok


def test_hopf_case_dual_is_classical():
    H = load("group_s3")
    d = H.derived
    assert d.U == H.one(2) and d.V == H.one(2)


def test_coinvariant_characterizations_agree_or_raise():
    H = load("twisted_dual_z2")
    R = regular_bimodule(H)
    co = coinvariants(R)
    assert [R.E(b) for b in co.basis] == co.basis
