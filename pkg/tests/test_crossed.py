import json
import time

import pytest

from quasihopf.crossed import (TwoSidedComodule, algebra_semisimple,
                               comodule_from_dict, comodule_to_dict, conjecture_probe,
                               diagonal_crossed_product, double_counit, hopf_double, omega,
                               trace_form_of, trivial_comodule, validate_comodule)
from quasihopf.integral import cointegral
from quasihopf.tensor import LinMap, invert_element, map_legs
from conftest import load


def _mul_index(H, i, j):
    [(k,)] = (H.b(i) * H.b(j)).terms
    return k


def _group_double_oracle(H):
    """Structure constants of D(k[G]): (g⊗δ_x)(h⊗δ_y) = gh ⊗ [y = h⁻¹xh] δ_y."""
    n = H.dim
    e = next(i for i in range(n) if H.b(i) == H.one())
    inv = {i: next(j for j in range(n) if _mul_index(H, i, j) == e) for i in range(n)}
    out = {}
    for g in range(n):
        for x in range(n):
            for h in range(n):
                for y in range(n):
                    if _mul_index(H, _mul_index(H, inv[h], x), h) == y:
                        out[(g * n + x, h * n + y)] = _mul_index(H, g, h) * n + y
    return out


def _check_against(X, table):
    B = X.B
    for p in range(B.dim):
        for q in range(B.dim):
            want = B.basis(table[(p, q)]) if (p, q) in table else B.zero()
            assert B.basis(p) * B.basis(q) == want, (p, q)


def test_trivial_comodule_gives_dual_algebra():
    for name in ("group_z2", "sweedler"):
        H = load(name)
        C = trivial_comodule(H)
        assert validate_comodule(C).ok
        X = diagonal_crossed_product(C, cross_check=None)
        assert X.report.ok and X.B.dim == H.dim
        # oracle: convolution (φψ)(b_k) = Σ φ(b_{k,1}) ψ(b_{k,2})
        n = H.dim
        for j in range(n):
            for l in range(n):
                want = [sum((c for (s, t), c in H.D(H.b(k)).terms.items() if s == j and t == l), H.F.zero)
                        for k in range(n)]
                got = X.B.basis(j) * X.B.basis(l)
                assert [got.coeff((k,)) for k in range(n)] == want


def test_double_z2():
    H = load("group_z2")
    X = diagonal_crossed_product(hopf_double(H), cross_check=None)
    B = X.B
    assert B.dim == 4 and X.report.ok
    assert all(B.basis(p) * B.basis(q) == B.basis(q) * B.basis(p) for p in range(4) for q in range(4))
    _check_against(X, _group_double_oracle(H))
    assert algebra_semisimple(B) is True


def test_double_s3_matches_textbook_and_is_fast():
    H = load("group_s3")
    t = time.time()
    X = diagonal_crossed_product(hopf_double(H))
    assert time.time() - t < 60
    assert X.B.dim == 36
    assert X.report.ok, X.report.first_failure()
    _check_against(X, _group_double_oracle(H))
    assert algebra_semisimple(X.B) is True
    names = [c.name for c in X.report.checks]
    assert "generating_matrix_commutation" in names and "generating_matrix_coproduct" in names


def test_omega_hopf_case_is_one():
    H = load("group_s3")
    C = hopf_double(H)
    assert omega(C) == H.one(5)


def test_omega_slot_by_slot_on_twisted_dual():
    H = load("twisted_dual_z2")
    F, n = H.F, H.dim
    u = H.b(0) + H.b(1).scale(F(2))
    Psi = u @ (H.b(0) + H.b(1).scale(F(3))) @ H.one() @ H.one() @ (H.b(0) + H.b(1).scale(F(-1)))
    d2 = LinMap.from_function((H.A,), (H.A,) * 3, lambda a: map_legs(H.D(a), [H.delta, None]))
    C = TwoSidedComodule(H, H.A, d2, Psi)
    Om = omega(C)
    # contraction: Ω^{abcde} = Σ h⁻¹[q,p] Ψ[i,j,c,d,e] S⁻¹[i→·] S⁻¹[j→·], multiplied slotwise
    hinv = H.derived.h_inv.terms
    Sinv = [H.Si(H.b(i)).terms for i in range(n)]
    want = {}
    for (p, q), c in hinv.items():
        for (i, j, k, l, m), d in Psi.terms.items():
            for (s,), e1 in Sinv[i].items():
                for (t,), e2 in Sinv[j].items():
                    left = (H.b(q) * H.b(s)).terms
                    right = (H.b(p) * H.b(t)).terms
                    for (a,), x in left.items():
                        for (b,), y in right.items():
                            key = (a, b, k, l, m)
                            want[key] = want.get(key, F.zero) + c * d * e1 * e2 * x * y
    want = {k: v for k, v in want.items() if v}
    assert Om.terms == want
    assert Om * invert_element(Om) == H.one(5)


def test_reassociator_without_Psi_fails_pentagon_only():
    H = load("twisted_dual_z2")
    with pytest.raises(ValueError):
        hopf_double(H)
    d2 = LinMap.from_function((H.A,), (H.A,) * 3, lambda a: map_legs(H.D(a), [H.delta, None]))
    rep = validate_comodule(TwoSidedComodule(H, H.A, d2, H.one(5)))
    assert [c.name for c in rep.checks if not c.ok] == ["comodule_pentagon"]


def test_sweedler_double_not_semisimple():
    H = load("sweedler")
    X = diagonal_crossed_product(hopf_double(H))
    assert X.report.ok and X.B.dim == 16
    assert algebra_semisimple(X.B) is False


def test_char_p_unsupported():
    H = load("group_z3_gf3")
    X = diagonal_crossed_product(hopf_double(H))
    assert X.report.ok
    assert algebra_semisimple(X.B) == "unsupported"


def test_trace_form_shortcut_matches_definition():
    H = load("sweedler")
    B = diagonal_crossed_product(trivial_comodule(H)).B
    F = B.F

    def Lmat(a):
        return [[(B.basis(a) * B.basis(m)).coeff((k,)) for m in range(B.dim)] for k in range(B.dim)]

    def tr_prod(P, Q):
        return sum((P[i][k] * Q[k][i] for i in range(len(P)) for k in range(len(P))), F.zero)
    assert trace_form_of(B) == [[tr_prod(Lmat(a), Lmat(b)) for b in range(B.dim)] for a in range(B.dim)]


def test_comodule_json_round_trip():
    H = load("group_z2")
    C = hopf_double(H)
    d = json.loads(json.dumps(comodule_to_dict(C)))
    C2 = comodule_from_dict(H, d)
    assert C2.delta2.images == C.delta2.images and C2.Psi.terms == C.Psi.terms
    assert validate_comodule(C2).ok


def test_comodule_json_rejects_bad_rows():
    from quasihopf.io import ParseError
    H = load("group_z2")
    d = comodule_to_dict(hopf_double(H))
    d["delta2"][0][1] = 7
    with pytest.raises(ParseError):
        comodule_from_dict(H, d)
    del d["Psi"]
    d["delta2"] = comodule_to_dict(hopf_double(H))["delta2"]
    with pytest.raises(ParseError):
        comodule_from_dict(H, d)


@pytest.mark.parametrize("name,expected", [("group_z2", True), ("group_z3_q", True),
                                           ("group_s3", True), ("sweedler", False)])
def test_conjecture_probe(name, expected):
    H = load(name)
    c = cointegral(H)
    X = diagonal_crossed_product(hopf_double(H))
    res = conjecture_probe(X, c.lam, c.r)
    assert res["experimental"] and res["nonzero"] and res["counit_multiplicative"]
    assert res["left_integral"] is expected


def test_probe_rejects_zero():
    H = load("group_z2")
    X = diagonal_crossed_product(hopf_double(H))
    res = conjecture_probe(X, cointegral(H).lam, H.A.zero())
    assert not res["nonzero"] and not res["left_integral"]


def test_double_counit_needs_regular_carrier():
    H = load("group_z2")
    with pytest.raises(ValueError):
        double_counit(diagonal_crossed_product(trivial_comodule(H)))
