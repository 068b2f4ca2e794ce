from fractions import Fraction

import pytest

from quasihopf import integral
from quasihopf.crossed import trace_form_of
from quasihopf.integral import (analyze, check_sigma, cocentral_space, cointegral,
                                integral_spaces, sigma_from_lambda)
from quasihopf.tensor import DualElement
from conftest import ALL, load, sign_character, sweedler_twisted

# name: (left integral, cointegral, modulus, semisimple, quantum dim, symmetric)
EXPECTED = {
    "group_z2": ([1, 1], [1, 0], [1, 1], True, 2, True),
    "group_z3_q": ([1, 1, 1], [1, 0, 0], [1, 1, 1], True, 3, True),
    "group_z3_gf3": ([1, 1, 1], [1, 0, 0], [1, 1, 1], False, 0, True),
    "group_s3": ([1] * 6, [1, 0, 0, 0, 0, 0], [1] * 6, True, 6, True),
    "twisted_dual_z2": ([1, 0], [1, -1], [1, 0], True, 2, True),
    "twisted_dual_z3_gf7": ([1, 0, 0], [1, 2, 4], [1, 0, 0], True, 3, True),
    "sweedler": ([0, 1, 0, 1], [0, 0, 0, 1], [1, 0, -1, 0], False, 0, False),
}


def _coords(x):
    return list(x.vector()) if hasattr(x, "vector") else list(x.coeffs)


def _proportional(u, v):
    nz = [i for i, c in enumerate(v) if c]
    if not nz:
        return not any(u)
    t = u[nz[0]] / v[nz[0]]
    return all(a == t * b for a, b in zip(u, v))


@pytest.fixture(scope="module")
def analyses():
    return {name: analyze(load(name)) for name in ALL}


@pytest.mark.parametrize("name", ALL)
def test_all_checks_pass(analyses, name):
    An = analyses[name]
    bad = [(n, r.first_failure()) for n, r in An.reports() if not r.ok]
    assert not bad


@pytest.mark.parametrize("name", ALL)
def test_frozen_values(analyses, name):
    An = analyses[name]
    H = An.H
    F = H.F
    L, lam, mu, ss, qd, sym = EXPECTED[name]
    assert len(An.spaces.left) == 1
    assert _proportional(_coords(An.spaces.left[0]), [F(c) for c in L])
    assert _coords(An.cointegral.lam) == [F(c) for c in lam]
    assert _coords(An.mu) == [F(c) for c in mu]
    assert An.semisimple["is_semisimple"] is ss
    assert An.semisimple["quantum_dim"] == F(qd)
    assert An.symmetry["is_symmetric"] is sym
    assert An.cocentral["dimension"] == 1


@pytest.mark.parametrize("name", ALL)
def test_integrals_by_definition(analyses, name):
    # recompute Λ from the defining property directly on basis elements
    An = analyses[name]
    H = An.H
    for l in An.spaces.left:
        for a in H.basis():
            assert a * l == l.scale(H.eps(a))
    for r in An.spaces.right:
        for a in H.basis():
            assert r * a == r.scale(H.eps(a))


def test_haar_on_z3():
    H = load("group_z3_q")
    ss = integral.semisimplicity_battery(H)
    assert _coords(ss["lambda_e"]) == [3, 0, 0]
    assert _coords(ss["haar"]) == [Fraction(1, 3)] * 3


def test_haar_vanishes_in_characteristic_3():
    ss = integral.semisimplicity_battery(load("group_z3_gf3"))
    assert ss["lambda_e"].is_zero() and ss["haar"] is None
    assert "trace_form_nondegenerate" not in ss


def test_sweedler_not_unimodular():
    H = load("sweedler")
    sp = integral_spaces(H)
    assert len(sp.left) == len(sp.right) == 1
    assert not _proportional(_coords(sp.left[0]), _coords(sp.right[0]))
    An = analyze(H)
    assert An.symmetry["is_unimodular"] is False


def test_twisted_sweedler_matches_untwisted():
    A, B = analyze(load("sweedler")), analyze(sweedler_twisted())
    assert A.ok and B.ok
    assert _coords(A.mu) == _coords(B.mu)
    assert _proportional(_coords(A.spaces.left[0]), _coords(B.spaces.left[0]))


def test_sign_character_has_no_cocentral_forms():
    H = load("group_s3")
    sign = sign_character(H)
    assert cocentral_space(H, sign) == []
    An = analyze(H, [sign])
    assert An.cocentral["other"] == {0: 0}
    assert len(An.spaces.gamma[0]) == 1


def test_sigma_checks():
    H = load("group_s3")
    c = cointegral(H)
    Sig = sigma_from_lambda(H, c.lam)
    assert check_sigma(H, Sig, H.counit).ok
    bad = [row[:] for row in Sig]
    bad[0][1] += 1
    rep = check_sigma(H, bad, H.counit)
    assert not rep.ok and rep.first_failure().name == "sigma_right_invariant"


@pytest.mark.parametrize("name", ["group_s3", "twisted_dual_z2", "sweedler"])
def test_trace_form_agrees(name):
    H = load(name)
    assert trace_form_of(H.A) == integral.trace_form(H)


def test_fourier_and_radford_reports():
    for name in ("twisted_dual_z3_gf7", "sweedler"):
        H = load(name)
        c = cointegral(H)
        mu, mrep = integral.modulus(H, c)
        assert mrep.ok
        assert integral.check_fourier(H, c, mu).ok
        assert integral.radford(H, c, mu)["report"].ok


def test_cointegral_rescaling_is_detected():
    H = load("twisted_dual_z2")
    c = cointegral(H)
    wrong = DualElement(H.A, [1, 1])
    assert integral.lambda_from_sigma(H, sigma_from_lambda(H, c.lam), H.counit) == c.lam
    [S] = cocentral_space(H, H.counit)
    flat = lambda M: [c for row in M for c in row]  # noqa: E731
    assert _proportional(flat(sigma_from_lambda(H, c.lam)), flat(S))
    assert not _proportional(flat(sigma_from_lambda(H, wrong)), flat(S))
