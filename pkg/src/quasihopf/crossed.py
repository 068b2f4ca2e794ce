"""Two-sided comodule algebras and the diagonal crossed product A⋈Ĥ."""
from __future__ import annotations

import itertools
import random
from typing import Optional

from .field import det
from .tensor import Algebra, DualElement, Element, LinMap, apply, expand, invert_element, map_legs
from .qhopf import IdentityFailure, QuasiHopf, ValidationReport, first_mismatch

__all__ = [
    "TwoSidedComodule", "CrossedProduct", "validate_comodule", "omega",
    "diagonal_crossed_product", "algebra_semisimple", "conjecture_probe", "hopf_double",
    "trivial_comodule", "comodule_from_dict", "comodule_to_dict", "trace_form_of",
    "double_counit", "load_comodule",
]


class TwoSidedComodule:
    """(A, δ, Ψ) with δ: A → H⊗A⊗H and Ψ ∈ H⊗H⊗A⊗H⊗H."""

    def __init__(self, H: QuasiHopf, A: Algebra, delta2: LinMap, Psi: Element,
                 Psi_inv: Optional[Element] = None, name: str = ""):
        self.H = H
        self.A = A
        self.delta2 = delta2
        self.Psi = Psi
        self._Psi_inv = Psi_inv
        self.name = name or A.name

    def d(self, a: Element) -> Element:
        return apply(self.delta2, a)

    @property
    def Psi_inv(self) -> Element:
        if self._Psi_inv is None:
            inv = invert_element(self.Psi)
            if inv is None:
                raise IdentityFailure("comodule_Psi_invertible", "Psi has no inverse")
            self._Psi_inv = inv
        return self._Psi_inv


def _ones(H: QuasiHopf, A: Algebra, pattern: str) -> Element:
    """Unit of a tensor product given by a pattern like 'HHAHH'."""
    x = Element(H.F, (), {(): H.F.one})
    for ch in pattern:
        x = x @ (H.one() if ch == "H" else A.unit())
    return x


def trivial_comodule(H: QuasiHopf) -> TwoSidedComodule:
    """A = k with δ(1) = 1⊗1⊗1 and Ψ = 1."""
    F = H.F
    A = Algebra(F, 1, {(0, 0): ((0, 1),)}, {0: 1}, ["1"], "k")
    one = H.one()
    d2 = LinMap((A,), (H.A, A, H.A), {(0,): (one @ A.unit() @ one).terms}, "delta")
    return TwoSidedComodule(H, A, d2, _ones(H, A, "HHAHH"), name="k")


def hopf_double(H: QuasiHopf, Psi: Optional[Element] = None) -> TwoSidedComodule:
    """A = H with δ = (Δ⊗id)∘Δ; Ψ = 1 unless supplied (required when φ ≠ 1)."""
    if Psi is None:
        if H.phi != H.one(3):
            raise ValueError("reassociator is not trivial; a Psi must be supplied")
        Psi = H.one(5)
    d2 = LinMap.from_function((H.A,), (H.A, H.A, H.A),
                              lambda a: map_legs(H.D(a), [H.delta, None]), "delta")
    return TwoSidedComodule(H, H.A, d2, Psi, name=f"{H.name}")


def validate_comodule(C: TwoSidedComodule) -> ValidationReport:
    H, A = C.H, C.A
    rep = ValidationReport()
    Ab = [A.basis(i) for i in range(A.dim)]
    one = H.one()
    rep.add("comodule_algebra_associative", A.check_associative())
    rep.add("comodule_coaction_multiplicative", first_mismatch(itertools.chain(
        ((f"a={i}, b={j}", C.d(Ab[i] * Ab[j]), C.d(Ab[i]) * C.d(Ab[j]))
         for i in range(A.dim) for j in range(A.dim)),
        [("unit", C.d(A.unit()), one @ A.unit() @ one)])))
    inv = invert_element(C.Psi) if C._Psi_inv is None else C._Psi_inv
    rep.add("comodule_Psi_invertible", None if inv is not None and C.Psi * inv == _ones(H, A, "HHAHH")
            else "Psi has no two-sided inverse")
    if inv is not None:
        C._Psi_inv = inv
    rep.add("comodule_quasi_coassociative", first_mismatch(
        (f"a={i}", map_legs(C.d(a), [None, C.delta2, None]) * C.Psi,
         C.Psi * map_legs(C.d(a), [H.delta, None, H.delta])) for i, a in enumerate(Ab)))
    Psi = C.Psi
    lhs = (one @ Psi @ one) * map_legs(Psi, [None, H.delta, None, H.delta, None]) \
        * (H.phi @ A.unit() @ H.phi_inv)
    rhs = map_legs(Psi, [None, None, C.delta2, None, None]) * map_legs(Psi, [H.delta, None, None, None, H.delta])
    rep.add("comodule_pentagon", first_mismatch([("Psi", lhs, rhs)]))
    rep.add("comodule_counit", first_mismatch(
        (f"a={i}", map_legs(C.d(a), [H.counit, None, H.counit]), a) for i, a in enumerate(Ab)))
    unit3 = one @ A.unit() @ one
    rep.add("comodule_Psi_counit", first_mismatch([
        ("inner", map_legs(Psi, [None, H.counit, None, H.counit, None]), unit3),
        ("outer", map_legs(Psi, [H.counit, None, None, None, H.counit]), unit3)]))
    return rep


def omega(C: TwoSidedComodule) -> Element:
    """Ω = (h⁻¹)^{21}·(S⁻¹⊗S⁻¹⊗id⊗id⊗id)(Ψ)."""
    H, A = C.H, C.A
    h_inv = H.derived.h_inv
    h21 = expand(h_inv, lambda x, y: y @ x @ A.unit() @ H.one() @ H.one(), (H.A, H.A, A, H.A, H.A))
    return h21 * map_legs(C.Psi, [H.S_inv, H.S_inv, None, None, None])


class CrossedProduct:
    def __init__(self, C: TwoSidedComodule, B: Algebra, Om: Element, report: ValidationReport):
        self.C = C
        self.B = B
        self.Omega = Om
        self.report = report
        self.n = C.H.dim

    def pair(self, a: int, j: int) -> int:
        return a * self.n + j

    def embed(self, x: Element) -> Element:
        """a ↦ a⊗ε̂."""
        H = self.C.H
        terms: dict = {}
        for (a,), c in x.terms.items():
            for j, e in enumerate(H.counit.coeffs):
                if e:
                    k = (self.pair(a, j),)
                    terms[k] = terms.get(k, H.F.zero) + c * e
        return Element(H.F, (self.B,), terms)

    def element(self, a: Element, psi: DualElement) -> Element:
        terms: dict = {}
        for (i,), c in a.terms.items():
            for j, e in enumerate(psi.coeffs):
                if e:
                    terms[(self.pair(i, j),)] = terms.get((self.pair(i, j),), self.C.H.F.zero) + c * e
        return Element(self.C.H.F, (self.B,), terms)

    def R(self) -> Element:
        """Σ b_i ⊗ (1⊗b^i) in H⊗B."""
        H, A = self.C.H, self.C.A
        out = {}
        for i in range(self.n):
            for (a,), c in A.unit().terms.items():
                out[(i, self.pair(a, i))] = c
        return Element(H.F, (H.A, self.B), out)


def _left_right_matrices(H: QuasiHopf, left: Element, right: Element) -> list:
    """Matrix of y ↦ left·y·right."""
    n = H.dim
    M = [[H.F.zero] * n for _ in range(n)]
    for y in range(n):
        for (k,), c in (left * H.b(y) * right).terms.items():
            M[k][y] = c
    return M


def _products_with(C: TwoSidedComodule, Om: Element, k: int) -> dict:
    """(a_i⊗e^j)(a_k⊗e^l) for all i, j, l, from

    ab₀Ω³ ⊗ [y ↦ e^j(b₁Ω⁴y₁Ω²S⁻¹(b₋₁)) e^l(Ω⁵y₂Ω¹)].
    """
    H, A = C.H, C.A
    n, F = H.dim, H.F
    out: dict = {}
    coprods = [H.D(H.b(t)).terms for t in range(n)]
    Abasis = [A.basis(i) for i in range(A.dim)]
    for (bm, b0, b1), c in C.d(A.basis(k)).terms.items():
        for (o1, o2, o3, o4, o5), w in Om.terms.items():
            tail = A.basis(b0) * A.basis(o3)
            if not tail.terms:
                continue
            M1 = _left_right_matrices(H, H.b(b1) * H.b(o4), H.b(o2) * H.Si(H.b(bm)))
            M2 = _left_right_matrices(H, H.b(o5), H.b(o1))
            cw = c * w
            for j, l in itertools.product(range(n), repeat=2):
                fvals = []
                for t in range(n):
                    v = F.zero
                    for (y1, y2), d in coprods[t].items():
                        x1 = M1[j][y1]
                        if x1:
                            v += d * x1 * M2[l][y2]
                    fvals.append(v)
                if not any(fvals):
                    continue
                for i in range(A.dim):
                    acc = out.setdefault((i, j, l), {})
                    for (a,), ca in (Abasis[i] * tail).terms.items():
                        for t, v in enumerate(fvals):
                            if v:
                                key = a * n + t
                                acc[key] = acc.get(key, F.zero) + cw * ca * v
    return out


def _product_second(C: TwoSidedComodule, Om: Element, i: int, j: int, k: int, l: int) -> dict:
    """Same product from a(φ₁▷b◁Ŝ⁻¹(φ₃))Ω³ ⊗ (Ω²⇀φ₂↼Ω⁴)(Ω¹⇀ψ↼Ω⁵), with Δ̂²(φ)(x⊗y⊗z) = φ(xyz)."""
    H, A = C.H, C.A
    n, F = H.dim, H.F
    out: dict = {}
    B = H.basis()
    ej = DualElement.basis(H.A, j)
    el = DualElement.basis(H.A, l)
    coprods = [H.D(B[t]).terms for t in range(n)]
    for p, q, s in itertools.product(range(n), repeat=3):
        c3 = ej(B[p] * B[q] * B[s])
        if not c3:
            continue
        phi1 = DualElement.basis(H.A, p)
        phi3S = DualElement.from_function(H.A, lambda x: DualElement.basis(H.A, s)(H.Si(x)))
        bmid = map_legs(C.d(A.basis(k)), [phi3S, None, phi1])
        for (o1, o2, o3, o4, o5), w in Om.terms.items():
            apart = A.basis(i) * bmid * A.basis(o3)
            if not apart.terms:
                continue
            for t in range(n):
                v = F.zero
                for (y1, y2), d in coprods[t].items():
                    v += d * DualElement.basis(H.A, q)(B[o4] * B[y1] * B[o2]) * el(B[o5] * B[y2] * B[o1])
                if v:
                    for (a,), ca in apart.terms.items():
                        key = a * n + t
                        out[key] = out.get(key, F.zero) + c3 * w * ca * v
    return out


def diagonal_crossed_product(C: TwoSidedComodule, cross_check: Optional[int] = 64,
                             seed: int = 0) -> CrossedProduct:
    """Structure constants of A⋈Ĥ with the algebra and generating-matrix checks.

    The second (Δ̂-based) form of the product is compared on ``cross_check``
    seeded random basis pairs, or on all pairs when ``cross_check`` is None.
    """
    H, A = C.H, C.A
    n, F = H.dim, H.F
    Om = omega(C)
    rep = ValidationReport()
    dim = A.dim * n
    mul = {}
    for k in range(A.dim):
        for (i, j, l), t in _products_with(C, Om, k).items():
            t = {key: c for key, c in t.items() if c}
            if t:
                mul[(i * n + j, k * n + l)] = tuple(sorted(t.items()))
    unit = {}
    for (a,), c in A.unit().terms.items():
        for j, e in enumerate(H.counit.coeffs):
            if e:
                unit[a * n + j] = unit.get(a * n + j, F.zero) + c * e
    labels = [f"{A.labels[a]}#{H.A.labels[j]}*" for a in range(A.dim) for j in range(n)]
    B = Algebra(F, dim, mul, unit, labels, f"{C.name}#dual")
    pairs = list(itertools.product(range(dim), repeat=2))
    if cross_check is not None and cross_check < len(pairs):
        pairs = random.Random(seed).sample(pairs, cross_check)
    rep.add("crossed_product_two_formulas", first_mismatch(
        (f"({p},{q})", dict(B.mul.get((p, q), ())),
         {k: c for k, c in _product_second(C, Om, p // n, p % n, q // n, q % n).items() if c})
        for p, q in pairs))
    rep.add("crossed_product_associative", B.check_associative())
    rep.add("crossed_product_unit", B.check_unit())
    out = CrossedProduct(C, B, Om, rep)
    Ab = [A.basis(i) for i in range(A.dim)]
    rep.add("crossed_product_embedding", first_mismatch(itertools.chain(
        ((f"a={i}, b={j}", out.embed(Ab[i] * Ab[j]), out.embed(Ab[i]) * out.embed(Ab[j]))
         for i in range(A.dim) for j in range(A.dim)),
        [("unit", out.embed(A.unit()), B.unit())])))
    R = out.R()
    one_B = B.unit()
    rep.add("generating_matrix_counit", first_mismatch([("R", map_legs(R, [H.counit, None]), one_B)]))

    def emb3(x: Element) -> Element:
        """Embed the A-leg (middle) of an element of H⊗A⊗H into B."""
        terms: dict = {}
        for (p, a, q), c in x.terms.items():
            for (b,), d in out.embed(A.basis(a)).terms.items():
                terms[(p, b, q)] = terms.get((p, b, q), F.zero) + c * d
        return Element(F, (H.A, B, H.A), terms)

    def rel47(a: Element):
        lhs = R * (H.one() @ out.embed(a))
        rhs = expand(emb3(C.d(a)), lambda am, a0, a1: (a1 @ a0) * R * (H.Si(am) @ one_B),
                     (H.A, B))
        return lhs, rhs

    rep.add("generating_matrix_commutation", first_mismatch(
        (f"a={i}", *rel47(a)) for i, a in enumerate(Ab)))
    R13 = expand(R, lambda x, b: x @ H.one() @ b, (H.A, H.A, B))
    R23 = expand(R, lambda x, b: H.one() @ x @ b, (H.A, H.A, B))
    DR = map_legs(R, [H.delta, None])
    lhs = R13 * R23
    rhs = _sandwich(Om, out, DR, B, H)
    rep.add("generating_matrix_coproduct", first_mismatch([("R13 R23", lhs, rhs)]))
    return out


def _sandwich(Om: Element, out: CrossedProduct, DR: Element, B: Algebra, H: QuasiHopf) -> Element:
    """Σ [Ω⁴⊗Ω⁵⊗Ω³] (Δ⊗id)(R) [Ω²⊗Ω¹⊗1]."""
    one_B = B.unit()
    return expand(Om, lambda o1, o2, o3, o4, o5:
                  (o4 @ o5 @ out.embed(o3)) * DR * (o2 @ o1 @ one_B), (H.A, H.A, B))


def trace_form_of(B: Algebra) -> list:
    """Tr(L_a L_b) = Tr(L_{ab}) on basis pairs (B associative)."""
    F, n = B.F, B.dim
    tr = []
    for k in range(n):
        t = F.zero
        for m in range(n):
            for idx, c in B.mul.get((k, m), ()):
                if idx == m:
                    t += c
        tr.append(t)
    return [[sum((c * tr[idx] for idx, c in B.mul.get((i, j), ())), F.zero) for j in range(n)]
            for i in range(n)]


def algebra_semisimple(B: Algebra):
    """True/False via the trace form in characteristic 0; "unsupported" otherwise."""
    if B.F.characteristic != 0:
        return "unsupported"
    return det(trace_form_of(B), B.F) != 0


def double_counit(X: CrossedProduct) -> list:
    """ε_B(a⊗ψ) = ε(a)ψ(S⁻¹(α)) on the basis of B (A must be H)."""
    H = X.C.H
    if X.C.A is not H.A:
        raise ValueError("the counit formula needs A = H")
    Sa = H.Si(H.alpha)
    n = H.dim
    return [H.counit.coeffs[p // n] * Sa.coeff((p % n,)) for p in range(X.B.dim)]


def conjecture_probe(X: CrossedProduct, lam: DualElement, r: Element) -> dict:
    """EXPERIMENTAL: is r paired with β⇀λ a left integral of the double?

    The conjecture is stated for D(H) = Ĥ⋈H; here the carrier is H⊗Ĥ, so the
    element is placed as r⊗(β⇀λ) with (β⇀λ)(y) = λ(yβ).  Returns the verdict
    together with whether ε_B is multiplicative (a sanity check of the flip).
    """
    H, B = X.C.H, X.B
    eB = double_counit(X)
    bl = DualElement.from_function(H.A, lambda y: lam(y * H.beta))
    x = X.element(r, bl)
    left = bool(x.terms) and all(B.basis(p) * x == x.scale(eB[p]) for p in range(B.dim))
    right = bool(x.terms) and all(x * B.basis(p) == x.scale(eB[p]) for p in range(B.dim))

    def ev(y: Element):
        return sum((eB[k[0]] * c for k, c in y.terms.items()), H.F.zero)

    mult = all(ev(B.basis(p) * B.basis(q)) == eB[p] * eB[q]
               for p in range(B.dim) for q in range(B.dim)) and ev(B.unit()) == H.F.one
    return {"left_integral": left, "right_integral": right, "nonzero": bool(x.terms),
            "counit_multiplicative": mult, "experimental": True,
            "convention": "D(H) = H#dual carrier; element r (x) (beta -> lambda)"}


# -- JSON -----------------------------------------------------------------------------

def comodule_from_dict(H: QuasiHopf, data: dict) -> TwoSidedComodule:
    from .io import ParseError, _element, _scalar, algebra_from_dict

    if not isinstance(data, dict):
        raise ParseError("comodule file must be a JSON object")
    if "algebra" not in data:
        raise ParseError("missing field 'algebra'")
    A = algebra_from_dict(data["algebra"])
    if A.F != H.F:
        raise ParseError("comodule algebra and quasi-Hopf algebra are over different fields")
    F, n, m = H.F, H.dim, A.dim
    rows = data.get("delta2")
    if not isinstance(rows, list):
        raise ParseError("delta2: expected a list")
    flat = []
    for r, row in enumerate(rows):
        if isinstance(row, list) and len(row) == 3 and isinstance(row[1], list):
            row = [row[0]] + list(row[1]) + [row[2]]
        flat.append(row)
    images: dict = {}
    sizes = (m, n, m, n)
    for r, row in enumerate(flat):
        where = f"delta2[{r}]"
        if not isinstance(row, list) or len(row) != 5:
            raise ParseError(f"{where}: expected [i, j, k, l, scalar]")
        for v, size in zip(row[:4], sizes):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                raise ParseError(f"{where}: index {v!r} out of range")
        c = _scalar(F, row[4], where)
        img = images.setdefault((row[0],), {})
        key = tuple(row[1:4])
        img[key] = img.get(key, F.zero) + c
    d2 = LinMap((A,), (H.A, A, H.A), images, "delta")

    def five(key, required):
        if key not in data:
            if required:
                raise ParseError(f"missing field {key!r}")
            return None
        out = []
        for r, row in enumerate(data[key]):
            where = f"{key}[{r}]"
            if not isinstance(row, list) or len(row) != 6:
                raise ParseError(f"{where}: expected 5 indices and a scalar")
            for v, size in zip(row[:5], (n, n, m, n, n)):
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                    raise ParseError(f"{where}: index {v!r} out of range")
            out.append((tuple(row[:5]), _scalar(F, row[5], where)))
        return _element(F, (H.A, H.A, A, H.A, H.A), out)

    Psi = five("Psi", True)
    Psi_inv = five("Psi_inv", False)
    return TwoSidedComodule(H, A, d2, Psi, Psi_inv, data.get("name", A.name))


def comodule_to_dict(C: TwoSidedComodule) -> dict:
    from .io import _fmt_terms, algebra_to_dict

    F = C.H.F
    d = {"algebra": algebra_to_dict(C.A)}
    d["delta2"] = [[k[0]] + list(t) + [F.fmt(c)] for k in sorted(C.delta2.images)
                   for t, c in sorted(C.delta2.images[k].items())]
    d["Psi"] = _fmt_terms(F, C.Psi)
    if C.name:
        d["name"] = C.name
    return d


def load_comodule(H: QuasiHopf, path) -> TwoSidedComodule:
    from .io import read_json

    return comodule_from_dict(H, read_json(path))
