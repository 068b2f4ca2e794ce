"""Instance factory: group algebras, ω-twisted dual group algebras, Sweedler's algebra."""
from __future__ import annotations

import itertools
from typing import Callable, Optional, Sequence

from .field import Field, QQ
from .tensor import Algebra, DualElement, Element, LinMap, map_legs
from .qhopf import QuasiHopf, ValidationReport, first_mismatch, solve_antipode_data, validate

__all__ = [
    "GroupTable", "cyclic_group", "symmetric_group", "direct_product",
    "group_algebra", "twisted_dual", "cocycle_check", "normalize_cocycle",
    "cyclic_cocycle", "sweedler", "ConstructionError",
]


class ConstructionError(ValueError):
    pass


class GroupTable:
    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 name: str = ""):
        self.n = len(table)
        self.table = [list(r) for r in table]
        self.labels = list(labels) if labels else [f"g{i}" for i in range(self.n)]
        self.name = name
        if any(len(r) != self.n or any(not 0 <= x < self.n for x in r) for r in self.table):
            raise ConstructionError("group table must be an n×n table of indices in range")
        ids = [e for e in range(self.n)
               if all(self.table[e][g] == g and self.table[g][e] == g for g in range(self.n))]
        if not ids:
            raise ConstructionError("group table has no identity")
        self.e = ids[0]
        for a, b, c in itertools.product(range(self.n), repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ConstructionError(f"group table not associative at {(a, b, c)}")
        self.inv = []
        for g in range(self.n):
            inv = [h for h in range(self.n) if self.table[g][h] == self.e and self.table[h][g] == self.e]
            if not inv:
                raise ConstructionError(f"element {g} has no inverse")
            self.inv.append(inv[0])

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def to_json(self) -> dict:
        return {"labels": self.labels, "table": self.table}

    @classmethod
    def from_json(cls, data: dict) -> "GroupTable":
        return cls(data["table"], data.get("labels"), data.get("name", ""))


def cyclic_group(n: int) -> GroupTable:
    return GroupTable([[(a + b) % n for b in range(n)] for a in range(n)],
                      ["e"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)], f"Z{n}")


def symmetric_group(k: int = 3) -> GroupTable:
    perms = sorted(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p·q)(i) = p(q(i))
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    labels = ["".join(str(x + 1) for x in p) for p in perms]
    return GroupTable(table, labels, f"S{k}")


def direct_product(G: GroupTable, K: GroupTable) -> GroupTable:
    pairs = list(itertools.product(range(G.n), range(K.n)))
    index = {p: i for i, p in enumerate(pairs)}
    table = [[index[(G.mul(a, c), K.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    labels = [f"({G.labels[a]},{K.labels[b]})" for a, b in pairs]
    return GroupTable(table, labels, f"{G.name}x{K.name}")


def _hopf(A: Algebra, delta: LinMap, counit: DualElement, S: LinMap, name: str) -> QuasiHopf:
    one = A.unit()
    phi = one @ one @ one
    return QuasiHopf(A, delta, counit, phi, S, one, one, phi_inv=phi, name=name)


def group_algebra(G: GroupTable, F: Field = QQ, name: str = "") -> QuasiHopf:
    """k[G] with Δ(g) = g⊗g, φ = 1, S(g) = g⁻¹, α = β = 1."""
    n = G.n
    A = Algebra(F, n, {(a, b): ((G.mul(a, b), 1),) for a in range(n) for b in range(n)},
                {G.e: 1}, G.labels, name or f"k[{G.name}]")
    one = F.one
    delta = LinMap((A,), (A, A), {(g,): {(g, g): one} for g in range(n)}, "Delta")
    counit = DualElement(A, [one] * n)
    S = LinMap((A,), (A,), {(g,): {(G.inv[g],): one} for g in range(n)}, "S")
    return _hopf(A, delta, counit, S, A.name)


def cyclic_cocycle(n: int, zeta) -> Callable[[int, int, int], object]:
    """ω(a, b, c) = ζ^{a·[b + c ≥ n]} on ℤ/n (the carry cocycle)."""
    def omega(a, b, c):
        return zeta ** (a * (1 if b + c >= n else 0))
    return omega


def _omega_table(G: GroupTable, omega, F: Field) -> dict:
    if callable(omega):
        return {t: F(omega(*t)) for t in itertools.product(range(G.n), repeat=3)}
    table = {t: F.one for t in itertools.product(range(G.n), repeat=3)}
    for t, v in omega.items():
        table[tuple(t)] = F(v)
    return table


def normalize_cocycle(G: GroupTable, w: dict, F: Field) -> dict:
    """Shift by a coboundary so that ω = 1 whenever an argument is the identity.

    With κ(e, x) = ω(e, e, x)⁻¹, κ(x, e) = ω(x, e, e) and κ = 1 otherwise,
    ω·δκ is normalized whenever ω is a cocycle.
    """
    e = G.e
    kappa = {}
    for x in range(G.n):
        for y in range(G.n):
            if x == e:
                kappa[(x, y)] = F.one / w[(e, e, y)]
            elif y == e:
                kappa[(x, y)] = w[(x, e, e)]
            else:
                kappa[(x, y)] = F.one
    m = G.mul
    return {(a, b, c): v * kappa[(b, c)] * kappa[(a, m(b, c))]
            / (kappa[(m(a, b), c)] * kappa[(a, b)])
            for (a, b, c), v in w.items()}


def _cocycle_identity_witness(G: GroupTable, w: dict) -> Optional[str]:
    m = G.mul
    for a, b, c, d in itertools.product(range(G.n), repeat=4):
        lhs = w[(a, b, m(c, d))] * w[(m(a, b), c, d)]
        rhs = w[(b, c, d)] * w[(a, m(b, c), d)] * w[(a, b, c)]
        if lhs != rhs:
            return f"(a,b,c,d)={(a, b, c, d)}: {lhs} != {rhs}"
    return None


def _twisted_dual_parts(G: GroupTable, w: dict, F: Field, name: str):
    n = G.n
    A = Algebra(F, n, {(g, g): ((g, 1),) for g in range(n)}, {g: 1 for g in range(n)},
                [f"d_{l}" for l in G.labels], name)
    one = F.one
    images = {}
    for g in range(n):
        images[(g,)] = {(h, k): one for h in range(n) for k in range(n) if G.mul(h, k) == g}
    delta = LinMap((A,), (A, A), images, "Delta")
    counit = DualElement(A, [one if g == G.e else F.zero for g in range(n)])
    phi = Element(F, (A, A, A), {t: v for t, v in w.items()})
    S = LinMap((A,), (A,), {(g,): {(G.inv[g],): one} for g in range(n)}, "S")
    return A, delta, counit, phi, S


def cocycle_check(G: GroupTable, omega, F: Field = QQ) -> ValidationReport:
    """Check ω both as a 3-cocycle and via the pentagon of the reassociator it defines."""
    rep = ValidationReport()
    w = _omega_table(G, omega, F)
    zero = next((t for t, v in w.items() if not v), None)
    rep.add("cocycle_nonzero", None if zero is None else f"omega{zero} = 0")
    if zero is not None:
        return rep
    abstract = _cocycle_identity_witness(G, w)
    rep.add("cocycle_identity", abstract)
    A, delta, counit, phi, S = _twisted_dual_parts(G, w, F, "check")
    one = A.unit()
    lhs = map_legs(phi, [None, None, delta]) * map_legs(phi, [delta, None, None])
    rhs = (one @ phi) * map_legs(phi, [None, delta, None]) * (phi @ one)
    pent = first_mismatch([("phi", lhs, rhs)])
    rep.add("pentagon", pent)
    if (abstract is None) != (pent is None):
        raise AssertionError("cocycle identity and pentagon disagree")
    return rep


def twisted_dual(G: GroupTable, omega=None, F: Field = QQ, name: str = "") -> QuasiHopf:
    """Functions on G with reassociator Σ ω(g,h,l) δ_g⊗δ_h⊗δ_l; α, β solved."""
    if omega is None:
        omega = lambda a, b, c: 1  # noqa: E731
    w = _omega_table(G, omega, F)
    rep = cocycle_check(G, w, F)
    if not rep.ok:
        bad = rep.first_failure()
        raise ConstructionError(f"{bad.name}: {bad.witness}")
    e = G.e
    if any(w[t] != F.one for t in w if e in t):
        w = normalize_cocycle(G, w, F)
    A, delta, counit, phi, S = _twisted_dual_parts(G, w, F, name or f"k^{G.name}_omega")
    try:
        alpha, beta = solve_antipode_data(A, delta, counit, phi, S)[0]
    except ValueError as err:
        raise ConstructionError(str(err)) from err
    H = QuasiHopf(A, delta, counit, phi, S, alpha, beta, name=A.name)
    r = validate(H)
    if not r.ok:
        bad = r.first_failure()
        raise ConstructionError(f"twisted dual fails {bad.name}: {bad.witness}")
    return H


def sweedler(F: Field = QQ) -> QuasiHopf:
    """Sweedler's 4-dimensional Hopf algebra: g² = 1, x² = 0, xg = −gx."""
    words = [(a, b) for a in range(2) for b in range(2)]  # g^a x^b
    idx = {w: i for i, w in enumerate(words)}
    mul = {}
    for (a, b) in words:
        for (c, d) in words:
            if b + d > 1:
                continue
            sign = -1 if b * c else 1
            mul[(idx[(a, b)], idx[(c, d)])] = ((idx[((a + c) % 2, b + d)], sign),)
    A = Algebra(F, 4, mul, {0: 1}, ["1", "x", "g", "gx"], "Sweedler")
    g, x = A.basis(idx[(1, 0)]), A.basis(idx[(0, 1)])
    one = A.unit()
    dg = g @ g
    dx = x @ one + g @ x
    images = {}
    for (a, b) in words:
        val = one @ one
        for _ in range(a):
            val = val * dg
        for _ in range(b):
            val = val * dx
        images[(idx[(a, b)],)] = val.terms
    delta = LinMap((A,), (A, A), images, "Delta")
    counit = DualElement(A, [1 if b == 0 else 0 for (a, b) in words])
    Sg, Sx = g, -(g * x)
    Simg = {}
    for (a, b) in words:
        val = one
        for _ in range(b):
            val = val * Sx
        for _ in range(a):
            val = val * Sg
        Simg[(idx[(a, b)],)] = val.terms
    S = LinMap((A,), (A,), Simg, "S")
    return _hopf(A, delta, counit, S, "Sweedler")
