import pytest
from hypothesis import given, settings, strategies as st

from quasihopf.field import QQ
from quasihopf.qhopf import (EmptySolution, QuasiHopf, deformed_coproduct, opposite,
                             solve_antipode_data, star, validate)
from quasihopf.tensor import DualElement, Element, map_legs
from conftest import ALL, load, sweedler_twisted

AXIOMS = [
    "associativity", "unit", "coproduct_multiplicative", "coproduct_unital",
    "counit_multiplicative", "counit_unital", "reassociator_invertible",
    "quasi_coassociativity", "pentagon", "counit_axiom", "counit_axiom_right",
    "reassociator_counit_middle", "reassociator_counit_outer",
    "antipode_antimultiplicative", "antipode_unital", "antipode_invertible",
    "antipode_alpha", "antipode_beta", "drinfeld_reassociator",
    "drinfeld_reassociator_inverse", "counit_antipode", "counit_alpha_beta",
]
DERIVED = [
    "drinfeld_twist_inverse", "drinfeld_twist_conjugation", "drinfeld_twist_gamma_delta",
    "drinfeld_twist_reassociator", "h_inverse", "h_conjugation", "h_reassociator",
    "qR_intertwiner", "pR_intertwiner", "qL_intertwiner", "pL_intertwiner",
    "qR_pR_inverse", "qL_pL_inverse", "qR_coassociator", "U_intertwiner", "V_intertwiner",
    "U_cocycle", "V_cocycle", "V_cocycle_displayed", "qR_from_qL", "pR_from_pL",
]


@pytest.mark.parametrize("name", ALL)
def test_bundled_instances_validate(name):
    rep = validate(load(name))
    assert rep.ok, rep.text()
    assert set(AXIOMS) <= set(rep.names())


@pytest.mark.parametrize("name", ALL)
def test_derived_identities(name):
    rep = load(name).derived.report
    assert rep.names() == DERIVED
    assert rep.ok, rep.text()


def test_hopf_case_derived_elements_are_trivial():
    H = load("group_s3")
    d = H.derived
    one2 = H.one(2)
    assert d.f == one2 and d.h == one2 and d.U == one2 and d.V == one2
    assert d.qR == one2 and d.pL == one2


def test_twisted_sweedler_is_genuinely_quasi():
    H = sweedler_twisted()
    assert H.phi != H.one(3)
    assert validate(H).ok
    assert H.derived.report.ok


def test_opposite_validates():
    for name in ("twisted_dual_z3_gf7", "sweedler"):
        Hop = opposite(load(name))
        assert validate(Hop).ok
        assert Hop.derived.report.ok


def test_opposite_of_twisted_sweedler():
    assert validate(opposite(sweedler_twisted())).ok


def _rebuild(H, **changes):
    parts = dict(A=H.A, delta=H.delta, counit=H.counit, phi=H.phi, S=H.S, alpha=H.alpha,
                 beta=H.beta)
    parts.update(changes)
    return QuasiHopf(parts["A"], parts["delta"], parts["counit"], parts["phi"], parts["S"],
                     parts["alpha"], parts["beta"], rescale=False)


def test_each_perturbation_hits_its_identity():
    H = load("twisted_dual_z2")
    rep = validate(_rebuild(H, beta=H.beta.scale(2)))
    assert rep.first_failure().name == "drinfeld_reassociator"
    phi = H.phi + (H.b(1) @ H.b(1) @ H.b(1)).scale(3)
    assert validate(_rebuild(H, phi=phi)).first_failure().name == "pentagon"
    eps = DualElement(H.A, [QQ(1), QQ(1)])
    assert not validate(_rebuild(H, counit=eps)).ok


def test_pentagon_witness_names_coefficient():
    H = load("twisted_dual_z2")
    phi = H.phi + (H.b(1) @ H.b(1) @ H.b(1)).scale(3)
    w = validate(_rebuild(H, phi=phi))["pentagon"].witness
    assert "coefficient of" in w


def test_antipode_solver_recovers_a_valid_pair():
    H = load("twisted_dual_z3_gf7")
    alpha, beta = solve_antipode_data(H.A, H.delta, H.counit, H.phi, H.S)[0]
    H2 = _rebuild(H, alpha=alpha, beta=beta)
    assert validate(H2).ok


def test_antipode_solver_reports_empty():
    H = load("group_z2")
    # S = 0 kills both antipode equations
    from quasihopf.tensor import LinMap
    S0 = LinMap((H.A,), (H.A,), {}, "S")
    with pytest.raises(EmptySolution):
        solve_antipode_data(H.A, H.delta, H.counit, H.phi, S0)


def test_deformed_coproduct_is_coproduct_in_hopf_case():
    H = load("group_s3")
    assert all(deformed_coproduct(H, H.b(i)) == H.D(H.b(i)) for i in range(H.dim))


coeffs = st.lists(st.integers(-3, 3), min_size=4, max_size=4)


@settings(max_examples=30, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_coproduct_is_algebra_map_twisted(a, b, c):
    H = sweedler_twisted()
    x = H.A.vector([QQ(v) for v in a])
    y = H.A.vector([QQ(v) for v in b])
    assert H.D(x * y) == H.D(x) * H.D(y)
    z = H.A.vector([QQ(v) for v in c])
    # quasi-coassociativity on an arbitrary element
    D = H.delta
    assert map_legs(H.D(z), [None, D]) * H.phi == H.phi * map_legs(H.D(z), [D, None])


@settings(max_examples=20, deadline=None)
@given(coeffs, coeffs)
def test_star_unit_is_counit(a, b):
    H = sweedler_twisted()
    phi = DualElement(H.A, [QQ(v) for v in a])
    assert star(H, H.counit, phi) == phi
    assert star(H, phi, H.counit) == phi
