"""Integrals, cointegrals, Fourier transforms, semisimplicity, Radford's formula and
cocentral bilinear forms."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .field import det, invert_matrix, matmul, nullspace, rank, rref, transpose
from .tensor import (
    DualElement, Element, LinMap, apply, expand, harpoon_left, harpoon_right,
    invert_element, map_legs,
)
from .qhopf import IdentityFailure, QuasiHopf, ValidationReport, _candidates, first_mismatch
from .bimodule import (
    Bimodule, H_gamma, coinvariants, dual_bimodule, regular_left_bimodule,
)

__all__ = [
    "DimensionViolation", "IntegralSpaces", "Cointegral", "integral_spaces", "cointegral",
    "right_integral_projection", "modulus", "fourier", "fourier_inv", "check_fourier",
    "semisimplicity_battery", "symmetry_check", "radford", "cocentral_forms",
    "sigma_from_lambda", "lambda_from_sigma", "cocentral_space", "check_sigma", "trace_form",
    "Analysis", "analyze",
]


class DimensionViolation(AssertionError):
    pass


def _vec_elem(H: QuasiHopf, v) -> Element:
    return H.A.vector(list(v))


def _echelon(vectors: list, F) -> list:
    rows, _ = rref(vectors, F) if vectors else ([], [])
    return [r for r in rows if any(r)]


def _stacked_nullspace(H: QuasiHopf, op) -> list:
    """Basis of {x : op(a, x) = 0 for all basis a}, op linear in x."""
    n = H.dim
    rows = []
    cols = [[op(a, H.b(j)) for a in H.basis()] for j in range(n)]
    for ai in range(n):
        for k in range(n):
            rows.append([cols[j][ai].coeff((k,)) for j in range(n)])
    return nullspace(rows, H.F, n)


def _S2(H: QuasiHopf, x: Element) -> Element:
    return H.Sa(H.Sa(x))


# -- integrals ------------------------------------------------------------------

@dataclass
class IntegralSpaces:
    left: list
    right: list
    gamma: dict = field(default_factory=dict)


def _l_gamma(H: QuasiHopf, gamma: DualElement) -> list:
    return _stacked_nullspace(H, lambda a, x: a * x - x.scale(gamma(a)))


def integral_spaces(H: QuasiHopf, characters: Sequence = ()) -> IntegralSpaces:
    """Left and right integrals (and L_γ for the supplied characters) as nullspaces."""
    L = _l_gamma(H, H.counit)
    R = _stacked_nullspace(H, lambda a, x: x * a - x.scale(H.eps(a)))
    if len(L) != 1 or len(R) != 1:
        raise DimensionViolation(f"dim L = {len(L)}, dim R = {len(R)}; expected 1 and 1")
    out = IntegralSpaces([_vec_elem(H, v) for v in L], [_vec_elem(H, v) for v in R])
    for i, g in enumerate(characters):
        out.gamma[i] = [_vec_elem(H, v) for v in _l_gamma(H, g)]
        if len(out.gamma[i]) != 1:
            raise DimensionViolation(f"dim L_gamma = {len(out.gamma[i])} for character {i}")
    return out


# -- cointegral -------------------------------------------------------------------

@dataclass
class Cointegral:
    lam: DualElement
    theta: LinMap
    Q: Element
    r: Element
    dual: Bimodule
    E_T: LinMap
    report: ValidationReport


def _dbar(H: QuasiHopf, x: Element) -> Element:
    d = H.derived
    return d.V * H.D(x) * d.U


def _projection_terms(H: QuasiHopf, a: Element, i: int) -> Element:
    """Δ̄(S⁻¹(q¹) a S²(q² b_i) S(β)), summed over q = q_R."""
    Sb = H.Sa(H.beta)
    bi = H.b(i)
    return expand(H.derived.qR,
                  lambda q1, q2: _dbar(H, H.Si(q1) * a * _S2(H, q2 * bi) * Sb), (H.A, H.A))


def _E_verbatim(H: QuasiHopf) -> list:
    """Matrix of the projection onto cointegrals, entry [a][j] = ⟨E(b^j)|b_a⟩.

    The first leg is paired with b^i and the second with the input functional.
    """
    n = H.dim
    M = [[H.F.zero] * n for _ in range(n)]
    for a in range(n):
        for i in range(n):
            for (k, j), c in _projection_terms(H, H.b(a), i).terms.items():
                if k == i:
                    M[a][j] += c
    return M


def _E_T_verbatim(H: QuasiHopf) -> LinMap:
    """E^T(a) = Σ_i (b^i⊗id)(Δ̄(S⁻¹(q¹)aS²(q²b_i)S(β)))."""
    def ET(a: Element) -> Element:
        out = H.A.zero()
        for i in range(H.dim):
            t = _projection_terms(H, a, i)
            out = out + map_legs(t, [DualElement.basis(H.A, i), None])
        return out
    return LinMap.from_function((H.A,), (H.A,), ET, "E^T")


def _omega_maps(H: QuasiHopf, lam: DualElement):
    """Matrices of ω_R(a) = a⇀λ and ω_L(a) = λ↼a in dual-basis coordinates (columns)."""
    n = H.dim
    B = H.basis()
    wR = [[lam(B[b] * B[a]) for a in range(n)] for b in range(n)]
    wL = [[lam(B[a] * B[b]) for a in range(n)] for b in range(n)]
    return wR, wL


def cointegral(H: QuasiHopf) -> Cointegral:
    """The left cointegral, as the coinvariants of the dual of (H, Δ), with its Frobenius data."""
    F, n = H.F, H.dim
    rep = ValidationReport()
    K = regular_left_bimodule(H)
    D = dual_bimodule(K)
    co = coinvariants(D)
    if co.dim != 1:
        raise DimensionViolation(f"dim of cointegrals = {co.dim}; expected 1")
    lam = DualElement(H.A, co.rows[0])
    Emat = D.E_map.matrix()
    rep.add("cointegral_projection_verbatim", None if _E_verbatim(H) == Emat else
            "closed projection formula differs from the bimodule projection")
    wR, wL = _omega_maps(H, lam)
    wR_inv = invert_matrix(wR, F)
    rep.add("cointegral_nondegenerate", None if wR_inv is not None else "omega_R singular")
    if wR_inv is None:
        rep.raise_on_failure()
    theta = LinMap.from_matrix((H.A,), (H.A,), matmul(wR_inv, wL), "theta")
    B = H.basis()
    rep.add("modular_automorphism", first_mismatch(
        (f"a=b{i}, b=b{j}", lam(B[i] * B[j]), lam(B[j] * theta(B[i])))
        for i in range(n) for j in range(n)))
    # Frobenius basis: u_i = b_i, λ(v_i u_j) = δ_ij
    G = [[lam(B[i] * B[j]) for j in range(n)] for i in range(n)]
    C = invert_matrix(G, F)
    Q = H.A.zero() @ H.A.zero()
    for i in range(n):
        v = H.A.vector(C[i])
        Q = Q + B[i] @ v
    rep.add("frobenius_basis", first_mismatch(itertools.chain(
        ((f"a=b{i}", map_legs(B[i] @ H.one() * Q, [lam, None]), B[i]) for i in range(n)),
        ((f"a=b{i}", map_legs(Q * (H.one() @ B[i]), [None, lam]), B[i]) for i in range(n)))))
    rep.add("frobenius_basis_modular", first_mismatch([("Q", Q, expand(
        Q, lambda u, v: theta(v) @ u, (H.A, H.A)))]))
    # right integrals and the transpose projection
    Rb = _stacked_nullspace(H, lambda a, x: x * a - x.scale(H.eps(a)))
    ET = LinMap.from_matrix((H.A,), (H.A,), transpose(Emat), "E^T")
    rep.add("transpose_projection_verbatim", None if _E_T_verbatim(H) == ET else
            "closed transpose formula differs from the transposed projection")
    ETm = ET.matrix()
    rep.add("transpose_projection_idempotent", None if matmul(ETm, ETm) == ETm else "E^T∘E^T != E^T")
    img = _echelon(transpose(ETm), F)
    rep.add("transpose_projection_image", None if img == _echelon(Rb, F) else
            f"image {img} differs from right integrals {Rb}")
    r0 = H.A.vector(Rb[0])
    pairing = lam(r0)
    rep.add("cointegral_integral_pairing", None if pairing else "<lambda|r> = 0")
    rep.raise_on_failure()
    r = r0.scale(F.one / pairing)
    Q9 = map_legs(_dbar(H, r), [H.S, None])
    rep.add("frobenius_basis_from_integral", first_mismatch([("Q", Q9, Q)]))
    out = Cointegral(lam, theta, Q, r, D, ET, rep)
    out.coinvariants = co
    return out


def right_integral_projection(H: QuasiHopf, c: Optional[Cointegral] = None) -> LinMap:
    return (c or cointegral(H)).E_T


# -- modulus ---------------------------------------------------------------------

def modulus(H: QuasiHopf, c: Optional[Cointegral] = None):
    """μ = ε∘θ_λ⁻¹ with the checks tying it to the cointegral and the integrals."""
    c = c or cointegral(H)
    F, n = H.F, H.dim
    rep = ValidationReport()
    B = H.basis()
    th_inv = c.theta.inverse()
    mu = DualElement.from_function(H.A, lambda a: H.eps(th_inv(a)))
    rep.add("modulus_character", first_mismatch(itertools.chain(
        ((f"a=b{i}, b=b{j}", mu(B[i] * B[j]), mu(B[i]) * mu(B[j]))
         for i in range(n) for j in range(n)), [("unit", mu(H.one()), F.one)])))
    mu_inv = DualElement.from_function(H.A, lambda a: mu(H.Sa(a)))
    rep.add("modulus_inverse", first_mismatch(
        (f"a=b{i}", map_legs(H.D(B[i]), [mu, mu_inv]).scalar(), H.eps(B[i])) for i in range(n)))
    rep.add("modular_automorphism_via_modulus", first_mismatch(
        (f"a=b{i}", c.theta(B[i]), H.Sa(harpoon_right(H.Sa(B[i]), mu, H.delta)))
        for i in range(n)))
    # the character by which H acts on cointegrals through ▷
    D = c.dual
    lam_vec = D.M.vector(c.lam.coeffs)
    gamma = []
    gw = None
    for i in range(n):
        img = D.adjoint(B[i], lam_vec).vector()
        piv = c.coinvariants.pivots[0]
        g = img[piv]
        gamma.append(g)
        if D.M.vector([g * x for x in c.lam.coeffs]) != D.M.vector(img):
            gw = f"a=b{i}: a▷lambda not proportional to lambda"
    rep.add("adjoint_character", gw)
    rep.add("adjoint_character_is_modulus", None if list(mu.coeffs) == gamma else
            f"gamma={gamma} mu={list(mu.coeffs)}")
    L = _l_gamma(H, H.counit)
    l = H.A.vector(L[0])
    unimodular = mu == H.counit
    s_inv = H.Sa(l)
    s_in_L = rank([L[0], s_inv.vector()], F) == 1
    twisted_trace = all(c.lam(B[i] * B[j]) == c.lam(B[j] * _S2(H, B[i]))
                        for i in range(n) for j in range(n))
    rep.add("unimodularity_criteria", None if unimodular == s_in_L == twisted_trace else
            f"mu=eps: {unimodular}, S(l) in L: {s_in_L}, lambda(ab)=lambda(bS^2 a): {twisted_trace}")
    rep.add("right_integral_left_action", first_mismatch(
        (f"a=b{i}", B[i] * c.r, c.r.scale(mu_inv(B[i]))) for i in range(n)))
    return mu, rep


# -- Fourier transforms -----------------------------------------------------------

def fourier(H: QuasiHopf, c: Cointegral, mu: DualElement):
    """F_λ(a) = S(a)⇀λ and F'_λ(a) = λ↼S⁻¹(a↼μ⁻¹) as maps H → Ĥ (dual-basis coordinates)."""
    D = c.dual
    lam = c.lam
    mu_inv = DualElement.from_function(H.A, lambda a: mu(H.Sa(a)))
    Fl = LinMap.from_function((H.A,), (D.M,), lambda a: D.M.vector(
        harpoon_left(H.Sa(a), lam).coeffs), "F")
    Fp = LinMap.from_function((H.A,), (D.M,), lambda a: D.M.vector(
        harpoon_right(lam, H.Si(harpoon_right(a, mu_inv, H.delta))).coeffs), "F'")
    return Fl, Fp


def fourier_inv(H: QuasiHopf, c: Cointegral) -> LinMap:
    """F_λ⁻¹(ψ) = (id⊗ψ)(Δ̄(r))."""
    D = c.dual
    dr = _dbar(H, c.r)
    return LinMap.from_function((D.M,), (H.A,), lambda p: map_legs(
        dr, [None, DualElement(H.A, p.vector())]), "F^-1")


def check_fourier(H: QuasiHopf, c: Cointegral, mu: DualElement) -> ValidationReport:
    rep = ValidationReport()
    D = c.dual
    n = H.dim
    B = H.basis()
    Fl, Fp = fourier(H, c, mu)
    Finv = fourier_inv(H, c)
    mu_inv = DualElement.from_function(H.A, lambda a: mu(H.Sa(a)))

    def fun(x: Element) -> DualElement:
        return DualElement(H.A, x.vector())

    rep.add("fourier_unit", None if fun(Fl(H.one())) == c.lam else "F(1) != lambda")
    rep.add("fourier_two_forms_agree", first_mismatch(
        (f"a=b{i}", Fl(B[i]), Fp(B[i])) for i in range(n)))
    rep.add("fourier_module_map", first_mismatch(itertools.chain(
        ((f"a=b{i}, b=b{j}", fun(Fl(B[i] * B[j])), harpoon_left(H.Sa(B[j]), fun(Fl(B[i]))))
         for i in range(n) for j in range(n)),
        ((f"a=b{i}, b=b{j}", fun(Fl(B[i] * B[j])), harpoon_right(
            fun(Fl(B[j])), H.Si(harpoon_right(B[i], mu_inv, H.delta))))
         for i in range(n) for j in range(n)))))
    Hmu = H_gamma(H, mu)
    T = Hmu.T

    def star(phi: DualElement, psi: DualElement) -> DualElement:
        return DualElement.from_function(H.A, lambda a: map_legs(_dbar(H, a), [phi, psi]).scalar())

    def rhs_F2(psi: DualElement, a: Element) -> DualElement:
        acc = DualElement(H.A, [H.F.zero] * n)
        for (x, y), cc in (T * H.D(a)).terms.items():
            acc = acc + fun(Fl(B[x])).scale(cc * psi(B[y]))
        return acc

    rep.add("fourier_coproduct", first_mismatch(
        (f"psi=b^{j}, a=b{i}", star(DualElement.basis(H.A, j), fun(Fl(B[i]))),
         rhs_F2(DualElement.basis(H.A, j), B[i])) for j in range(n) for i in range(n)))
    for name, f in (("fourier_comodule_map", Fl), ("fourier_comodule_map_second", Fp)):
        rep.add(name, first_mismatch(
            (f"a=b{i}", D.coact(f(B[i])), map_legs(T * H.D(B[i]), [f, None]))
            for i in range(n)))
    rep.add("fourier_inverse", first_mismatch(itertools.chain(
        ((f"a=b{i}", Finv(Fl(B[i])), B[i]) for i in range(n)),
        ((f"psi=b^{i}", Fl(Finv(D.M.basis(i))), D.M.basis(i)) for i in range(n)))))
    return rep


# -- semisimplicity ---------------------------------------------------------------

def trace_form(H: QuasiHopf) -> list:
    """Tr(L_a L_b) on basis pairs."""
    n = H.dim
    Ls = [H.A.left_regular(H.b(i)) for i in range(n)]
    out = [[H.F.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            P = matmul(Ls[i], Ls[j])
            out[i][j] = sum((P[k][k] for k in range(n)), H.F.zero)
    return out


def semisimplicity_battery(H: QuasiHopf, c: Optional[Cointegral] = None) -> dict:
    """λ_e two ways, Haar integral, separating idempotent, quantum dimension, trace form."""
    c = c or cointegral(H)
    F, n = H.F, H.dim
    rep = ValidationReport()
    B = H.basis()
    D = c.dual
    lam_e = DualElement(H.A, D.E(D.M.vector(H.counit.coeffs)).vector())
    tail = H.Sa(H.beta) * H.alpha
    closed = DualElement.from_function(H.A, lambda a: sum(
        (DualElement.basis(H.A, i)(a * _S2(H, B[i]) * tail) for i in range(n)), F.zero))
    rep.add("haar_functional_two_ways", None if lam_e == closed else
            f"projection {lam_e} != closed form {closed}")
    out = {"lambda_e": lam_e, "report": rep, "haar": None, "separating_idempotent": None,
           "quantum_dim": None}
    semisimple = not lam_e.is_zero()
    out["is_semisimple"] = semisimple
    if semisimple:
        e = c.r.scale(F.one / lam_e(c.r))
        out["haar"] = e
        rep.add("haar_integral", first_mismatch(itertools.chain(
            [("eps(e)", H.eps(e), F.one), ("S(e)", H.Sa(e), e)],
            ((f"a=b{i} left", B[i] * e, e.scale(H.eps(B[i]))) for i in range(n)),
            ((f"a=b{i} right", e * B[i], e.scale(H.eps(B[i]))) for i in range(n)))))
        P = map_legs(H.derived.qR * H.D(e) * (H.beta @ H.one()), [None, H.S])
        out["separating_idempotent"] = P
        rep.add("separating_idempotent", first_mismatch(itertools.chain(
            [("P1 P2", expand(P, lambda x, y: x * y, (H.A,)), H.one())],
            ((f"a=b{i}", (B[i] @ H.one()) * P, P * (H.one() @ B[i])) for i in range(n)))))
    else:
        Lb = _l_gamma(H, H.counit)
        rep.add("no_normalized_integral", None if H.eps(H.A.vector(Lb[0])) == 0 else
                "lambda_e = 0 but a left integral has nonzero counit")
    out["quantum_dim"] = lam_e(H.beta * H.Sa(H.alpha))
    if F.characteristic == 0:
        tf = det(trace_form(H), F) != 0
        out["trace_form_nondegenerate"] = tf
        rep.add("trace_form_agrees", None if tf == semisimple else
                f"trace form nondegenerate: {tf}, lambda_e nonzero: {semisimple}")
    return out


# -- symmetry -----------------------------------------------------------------------

def symmetry_check(H: QuasiHopf, c: Cointegral, mu: DualElement) -> dict:
    """Unimodularity, a witness for S² being inner, and the resulting trace."""
    F, n = H.F, H.dim
    B = H.basis()
    unimodular = mu == H.counit
    sol = _stacked_nullspace(H, lambda x, g: g * x - _S2(H, x) * g)
    space = [H.A.vector(v) for v in sol]
    witness = None
    for g in _candidates(space, F, H.one()):
        gi = invert_element(g)
        if gi is not None:
            witness = (g, gi)
            break
    out = {"is_unimodular": unimodular, "s2_inner_witness": witness[0] if witness else None}
    rep = ValidationReport()
    if not unimodular:
        out["is_symmetric"] = False
    elif witness is None:
        out["is_symmetric"] = False if not space else "undecided"
    else:
        out["is_symmetric"] = True
        tau = harpoon_left(witness[1], c.lam)
        out["trace"] = tau
        rep.add("symmetric_trace", first_mismatch(
            (f"a=b{i}, b=b{j}", tau(B[i] * B[j]), tau(B[j] * B[i]))
            for i in range(n) for j in range(n)))
        G = [[tau(B[i] * B[j]) for j in range(n)] for i in range(n)]
        rep.add("symmetric_trace_nondegenerate", None if det(G, F) != 0 else "degenerate trace")
    out["report"] = rep
    return out


# -- Radford ---------------------------------------------------------------------

def radford(H: QuasiHopf, c: Cointegral, mu: DualElement) -> dict:
    """Comodulus u and the S⁴ formula."""
    F, n = H.F, H.dim
    B = H.basis()
    rep = ValidationReport()
    dr = _dbar(H, c.r)
    u = map_legs(dr, [c.lam, None])
    lamS = DualElement.from_function(H.A, lambda a: c.lam(H.Sa(a)))
    v = map_legs(dr, [None, lamS])
    u_inv = invert_element(u)
    if u_inv is None:
        raise IdentityFailure("comodulus_invertible", f"u = {u!r} is not invertible")
    mu_inv = DualElement.from_function(H.A, lambda a: mu(H.Sa(a)))
    Smu = LinMap.from_function((H.A,), (H.A,), lambda a: harpoon_right(H.Sa(a), mu, H.delta), "S_mu")
    Smu_inv = Smu.inverse()
    rep.add("comodulus_inverse", first_mismatch([
        ("u S^2(v)", u * _S2(H, v), H.one()), ("S^2(v) u", _S2(H, v) * u, H.one()),
        ("S_mu^-2(v)", Smu_inv(Smu_inv(v)), u_inv)]))
    rep.add("radford_formula", first_mismatch(
        (f"a=b{i}", u_inv * B[i] * u, _S2(H, Smu(Smu(B[i])))) for i in range(n)))
    f_mu = map_legs(H.derived.f, [mu, None])
    f_mu_inv = invert_element(f_mu)
    S3 = lambda x: H.Sa(_S2(H, x))  # noqa: E731
    rep.add("radford_s4", first_mismatch(
        (f"b=b{i}", _S2(H, _S2(H, B[i])),
         S3(f_mu_inv) * H.Sa(u) * harpoon_right(harpoon_left(mu, B[i], H.delta), mu_inv, H.delta)
         * H.Sa(u_inv) * S3(f_mu)) for i in range(n)))
    return {"u": u, "u_inv": u_inv, "v": v, "f_mu": f_mu, "report": rep}


# -- cocentral forms ---------------------------------------------------------------

def sigma_from_lambda(H: QuasiHopf, lam: DualElement) -> list:
    """Σ_λ(a⊗b) = λ(S⁻¹(α)aβS(b)) as a matrix indexed by basis pairs."""
    B = H.basis()
    Sa = H.Si(H.alpha)
    return [[lam(Sa * B[a] * H.beta * H.Sa(B[b])) for b in range(H.dim)] for a in range(H.dim)]


def _sigma_eval(Sig, x: Element):
    F = x.F
    return sum((c * Sig[k][m] for (k, m), c in x.terms.items()), F.zero)


def lambda_from_sigma(H: QuasiHopf, Sig, mu: DualElement, Hmu: Optional[Bimodule] = None,
                      p=None, q=None) -> DualElement:
    """λ_Σ(a) = Σ(p·(a⊗1)·q) with H acting on the second factor through H_μ."""
    d = H.derived
    p = p if p is not None else d.pL
    q = q if q is not None else d.qL
    Hmu = Hmu or H_gamma(H, mu)
    K = regular_left_bimodule(H)
    one_m = Element(H.F, (Hmu.M,), H.one().terms)

    def lam(a: Element):
        x = p * (Element(H.F, (K.M,), a.terms) @ one_m) * q
        return _sigma_eval(Sig, x)

    return DualElement.from_function(H.A, lam)


def _constraint_rows(H: QuasiHopf, K, M: Bimodule) -> list:
    """Rows of the linear system cutting out biinvariant cocentral forms on K⊗M."""
    F = H.F
    nk, nm = K.dim, M.dim
    idx = lambda k, m: k * nm + m  # noqa: E731
    rows = []
    Kb, Mb = K.basis(), M.basis()
    B = H.basis()

    def row_from(terms_minus: list) -> Optional[list]:
        r = [F.zero] * (nk * nm)
        for terms, sign in terms_minus:
            for (k, m), c in terms.items():
                r[idx(k, m)] += sign * c
        return r if any(r) else None

    for k, m in itertools.product(range(nk), range(nm)):
        base = {(k, m): F.one}
        for a in range(H.dim):
            e = H.eps(B[a])
            x = ((Kb[k] @ Mb[m]) * H.D(B[a])).terms
            y = (H.D(B[a]) * (Kb[k] @ Mb[m])).terms
            for t in (x, y):
                r = row_from([(t, F.one), (base, -e)])
                if r:
                    rows.append(r)
    # cocentrality, one row per output basis element of H
    phi, phi_inv = H.phi, H.phi_inv
    for k, m in itertools.product(range(nk), range(nm)):
        lhs = phi * (K.coact(Kb[k]) @ Mb[m]) * phi_inv  # (A, K, M)
        rhs = phi_inv * (Kb[k] @ M.coact(Mb[m])) * phi  # (K, M, A)
        per = {}
        for (h, kk, mm), c in lhs.terms.items():
            per.setdefault(h, {})
            per[h][(kk, mm)] = per[h].get((kk, mm), F.zero) + c
        for (kk, mm, h), c in rhs.terms.items():
            per.setdefault(h, {})
            per[h][(kk, mm)] = per[h].get((kk, mm), F.zero) - c
        for h in sorted(per):
            r = row_from([(per[h], F.one)])
            if r:
                rows.append(r)
    return rows


def cocentral_space(H: QuasiHopf, gamma: DualElement) -> list:
    """Basis of biinvariant cocentral forms on H⊗H_γ, each as a matrix."""
    K = regular_left_bimodule(H)
    M = H_gamma(H, gamma)
    rows = _constraint_rows(H, K, M)
    n = H.dim
    ns = nullspace(rows, H.F, n * n) if rows else [
        [H.F.one if i == j else H.F.zero for i in range(n * n)] for j in range(n * n)]
    return [[v[a * n:(a + 1) * n] for a in range(n)] for v in ns]


def check_sigma(H: QuasiHopf, Sig, gamma: DualElement) -> ValidationReport:
    """Biinvariance and cocentrality of a given form on H⊗H_γ."""
    K = regular_left_bimodule(H)
    M = H_gamma(H, gamma)
    B = H.basis()
    rep = ValidationReport()
    Kb, Mb = K.basis(), M.basis()
    pairs = list(itertools.product(range(K.dim), range(M.dim)))
    rep.add("sigma_right_invariant", first_mismatch(
        (f"k={k}, m={m}, a=b{a}", _sigma_eval(Sig, (Kb[k] @ Mb[m]) * H.D(B[a])),
         H.eps(B[a]) * Sig[k][m]) for k, m in pairs for a in range(H.dim)))
    rep.add("sigma_left_invariant", first_mismatch(
        (f"k={k}, m={m}, a=b{a}", _sigma_eval(Sig, H.D(B[a]) * (Kb[k] @ Mb[m])),
         H.eps(B[a]) * Sig[k][m]) for k, m in pairs for a in range(H.dim)))

    def lhs(k, m):
        x = H.phi * (K.coact(Kb[k]) @ Mb[m]) * H.phi_inv
        acc = H.A.zero()
        for (h, kk, mm), c in x.terms.items():
            acc = acc + H.b(h).scale(c * Sig[kk][mm])
        return acc

    def rhs(k, m):
        x = H.phi_inv * (Kb[k] @ M.coact(Mb[m])) * H.phi
        acc = H.A.zero()
        for (kk, mm, h), c in x.terms.items():
            acc = acc + H.b(h).scale(c * Sig[kk][mm])
        return acc

    rep.add("sigma_cocentral", first_mismatch(
        (f"k={k}, m={m}", lhs(k, m), rhs(k, m)) for k, m in pairs))
    return rep


def cocentral_forms(H: QuasiHopf, c: Cointegral, mu: DualElement, characters: Sequence = ()) -> dict:
    F, n = H.F, H.dim
    rep = ValidationReport()
    d = H.derived
    Sig = sigma_from_lambda(H, c.lam)
    Hmu = H_gamma(H, mu)
    choices = [(p, q) for p in (d.pL, d.pR) for q in (d.qL, d.qR)]
    lams = [lambda_from_sigma(H, Sig, mu, Hmu, p, q) for p, q in choices]
    rep.add("cointegral_from_form_choices", first_mismatch(
        (f"choice {i}", l, lams[0]) for i, l in enumerate(lams)))
    rep.add("cointegral_form_round_trip", first_mismatch([("lambda", lams[0], c.lam)]))
    for ch in check_sigma(H, Sig, mu).checks:
        rep.checks.append(ch)
    space = cocentral_space(H, mu)
    rep.add("cocentral_dimension", None if len(space) == 1 else f"dimension {len(space)}")
    for i, S0 in enumerate(space):
        lam0 = lambda_from_sigma(H, S0, mu, Hmu)
        rep.add(f"form_cointegral_round_trip_{i}",
                None if sigma_from_lambda(H, lam0) == S0 else "Sigma -> lambda -> Sigma differs")
    other = {}
    for i, g in enumerate(characters):
        if g == mu:
            continue
        other[i] = len(cocentral_space(H, g))
        rep.add(f"cocentral_vanishes_{i}", None if other[i] == 0 else
                f"character {i} != mu has {other[i]} forms")
    norm = c.lam(H.Si(H.alpha) * H.beta)
    lam0 = c.lam.scale(F.one / norm) if norm else None
    if lam0 is not None:
        S0 = sigma_from_lambda(H, lam0)
        rep.add("normalized_form", None if S0[0][0] == F.one or _sigma_eval(
            S0, H.one() @ H.one()) == F.one else "Sigma_0(1⊗1) != 1")
    return {"sigma": Sig, "dimension": len(space), "other": other, "normalized": lam0,
            "report": rep}


# -- full analysis ---------------------------------------------------------------

@dataclass
class Analysis:
    H: QuasiHopf
    spaces: IntegralSpaces
    cointegral: Cointegral
    mu: DualElement
    semisimple: dict
    symmetry: dict
    radford: dict
    cocentral: dict
    fourier: ValidationReport
    modulus_report: ValidationReport

    def reports(self) -> list:
        return [("cointegral", self.cointegral.report), ("modulus", self.modulus_report),
                ("fourier", self.fourier), ("semisimplicity", self.semisimple["report"]),
                ("symmetry", self.symmetry["report"]), ("radford", self.radford["report"]),
                ("cocentral", self.cocentral["report"])]

    @property
    def ok(self) -> bool:
        return all(r.ok for _, r in self.reports())


def analyze(H: QuasiHopf, characters: Sequence = ()) -> Analysis:
    spaces = integral_spaces(H, characters)
    c = cointegral(H)
    mu, mrep = modulus(H, c)
    return Analysis(H, spaces, c, mu, semisimplicity_battery(H, c), symmetry_check(H, c, mu),
                    radford(H, c, mu), cocentral_forms(H, c, mu, characters),
                    check_fourier(H, c, mu), mrep)
