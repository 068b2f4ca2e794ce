"""Algebras by structure constants, elements of tensor products and linear maps.

An element of V_1 ⊗ ... ⊗ V_n is stored sparsely as a dict from index tuples
to nonzero scalars.  The factors ("spaces") may be algebras or modules over
an algebra; products are taken leg by leg, so an algebra leg times a module
leg uses the left action and a module leg times an algebra leg uses the right
action.  That lets the same ``*`` cover H⊗H, M⊗H, H⊗M and mixed tensors such
as H⊗H⊗A⊗H⊗H.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Optional, Sequence

from .field import Field, invert_matrix, rref

__all__ = [
    "Space", "Algebra", "Module", "Element", "LinMap", "DualElement",
    "DegreeMismatch", "map_legs", "embed_legs", "permute", "tensor",
    "invert_element", "expand", "harpoon_left", "harpoon_right", "pair",
    "dual_mul", "basis_keys",
]


class DegreeMismatch(ValueError):
    pass


class Space:
    """A finite-dimensional vector space with labelled basis."""

    def __init__(self, F: Field, dim: int, labels: Optional[Sequence[str]] = None, name: str = ""):
        self.F = F
        self.dim = dim
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("label count does not match dimension")
        self.name = name

    def basis(self, i: int) -> "Element":
        return Element(self.F, (self,), {(i,): self.F.one})

    def zero(self) -> "Element":
        return Element(self.F, (self,), {})

    def vector(self, coeffs: Sequence) -> "Element":
        return Element(self.F, (self,), {(i,): c for i, c in enumerate(coeffs)})

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} dim={self.dim}>"


class Algebra(Space):
    """Unital associative algebra given by structure constants.

    ``mul`` maps (i, j) to a tuple of (k, c) pairs with b_i b_j = Σ c b_k.
    """

    def __init__(self, F: Field, dim: int, mul: dict, unit: dict,
                 labels: Optional[Sequence[str]] = None, name: str = ""):
        super().__init__(F, dim, labels, name)
        self.mul = {key: tuple((k, F(c)) for k, c in terms if c)
                    for key, terms in mul.items()}
        self.unit_coeffs = {k: F(c) for k, c in unit.items() if c}

    @classmethod
    def from_table(cls, F: Field, dim: int, entries: Iterable, unit: dict, **kw) -> "Algebra":
        """Build from sparse [i, j, k, c] quadruples."""
        mul: dict = {}
        for i, j, k, c in entries:
            acc = dict(mul.get((i, j), ()))
            acc[k] = acc.get(k, F.zero) + F(c)
            mul[(i, j)] = tuple(acc.items())
        return cls(F, dim, mul, unit, **kw)

    def product(self, i: int, j: int):
        return self.mul.get((i, j), ())

    def unit(self) -> "Element":
        return Element(self.F, (self,), {(k,): c for k, c in self.unit_coeffs.items()})

    def one(self, n: int = 1) -> "Element":
        x = Element(self.F, (), {(): self.F.one})
        for _ in range(n):
            x = x @ self.unit()
        return x

    def check_associative(self):
        """First basis triple (i, j, k) violating associativity, or None."""
        for i in range(self.dim):
            bi = self.basis(i)
            for j in range(self.dim):
                bij = bi * self.basis(j)
                for k in range(self.dim):
                    bk = self.basis(k)
                    if bij * bk != bi * (self.basis(j) * bk):
                        return (i, j, k)
        return None

    def check_unit(self):
        """First basis index where the unit fails to act as identity, or None."""
        u = self.unit()
        for i in range(self.dim):
            b = self.basis(i)
            if u * b != b or b * u != b:
                return i
        return None

    def left_regular(self, x: "Element") -> list:
        """Matrix of b ↦ x·b on the basis (columns are images)."""
        cols = [(x * self.basis(j)) for j in range(self.dim)]
        return [[cols[j].coeff((i,)) for j in range(self.dim)] for i in range(self.dim)]

    def opposite(self) -> "Algebra":
        mul = {(j, i): terms for (i, j), terms in self.mul.items()}
        return Algebra(self.F, self.dim, mul, self.unit_coeffs, self.labels, self.name + "^op")


class Module(Space):
    """Carrier with a left and/or right action of an algebra.

    ``left`` maps (a, m) and ``right`` maps (m, a) to tuples of (k, c).
    """

    def __init__(self, algebra: Algebra, dim: int, left: Optional[dict] = None,
                 right: Optional[dict] = None, labels=None, name: str = ""):
        super().__init__(algebra.F, dim, labels, name)
        self.algebra = algebra
        self.left = left
        self.right = right


def _leg_table(s1: Space, s2: Space):
    """Product function and result space for one leg of a tensor product."""
    if s1 is s2 and isinstance(s1, Algebra):
        return s1.product, s1
    if isinstance(s1, Algebra) and isinstance(s2, Module) and s2.algebra is s1:
        if s2.left is None:
            raise DegreeMismatch(f"{s2!r} has no left action")
        left = s2.left
        return (lambda a, m: left.get((a, m), ())), s2
    if isinstance(s1, Module) and isinstance(s2, Algebra) and s1.algebra is s2:
        if s1.right is None:
            raise DegreeMismatch(f"{s1!r} has no right action")
        right = s1.right
        return (lambda m, a: right.get((m, a), ())), s1
    raise DegreeMismatch(f"cannot multiply {s1!r} by {s2!r}")


class Element:
    """Sparse element of a tensor product of spaces."""

    __slots__ = ("F", "spaces", "terms")

    def __init__(self, F: Field, spaces: tuple, terms: dict):
        self.F = F
        self.spaces = tuple(spaces)
        self.terms = {k: c for k, c in terms.items() if c}

    @property
    def degree(self) -> int:
        return len(self.spaces)

    def coeff(self, key: tuple):
        return self.terms.get(key, self.F.zero)

    def _check(self, other: "Element"):
        if self.spaces != other.spaces:
            raise DegreeMismatch(f"spaces differ: {self.spaces} vs {other.spaces}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, self.F.zero) + c
        return Element(self.F, self.spaces, t)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.F, self.spaces, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "Element":
        c = self.F(c) if not self.F.owns(c) else c
        return Element(self.F, self.spaces, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "Element":
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} times degree {other.degree}")
        if self.degree == 0:
            return Element(self.F, (), {(): self.coeff(()) * other.coeff(())})
        tables = [_leg_table(a, b) for a, b in zip(self.spaces, other.spaces)]
        spaces = tuple(t[1] for t in tables)
        prods = [t[0] for t in tables]
        out: dict = {}
        zero = self.F.zero
        if self.degree == 1:
            p = prods[0]
            for (i,), c1 in self.terms.items():
                for (j,), c2 in other.terms.items():
                    tab = p(i, j)
                    if tab:
                        c = c1 * c2
                        for k, cc in tab:
                            out[(k,)] = out.get((k,), zero) + c * cc
            return Element(self.F, spaces, out)
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                tabs = []
                for p, i, j in zip(prods, k1, k2):
                    tab = p(i, j)
                    if not tab:
                        break
                    tabs.append(tab)
                else:
                    c = c1 * c2
                    if all(len(t) == 1 for t in tabs):
                        key = tuple(t[0][0] for t in tabs)
                        for t in tabs:
                            c = c * t[0][1]
                        out[key] = out.get(key, zero) + c
                        continue
                    partial = [((), c)]
                    for tab in tabs:
                        partial = [(key + (k,), cc * d) for key, cc in partial for k, d in tab]
                    for key, cc in partial:
                        out[key] = out.get(key, zero) + cc
        return Element(self.F, spaces, out)

    def __matmul__(self, other: "Element") -> "Element":
        return tensor(self, other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.spaces == other.spaces and self.terms == other.terms

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def vector(self) -> list:
        """Dense coefficient vector in lexicographic basis order."""
        return [self.coeff(k) for k in basis_keys(self.spaces)]

    def scalar(self):
        if self.degree != 0:
            raise DegreeMismatch("not a scalar")
        return self.coeff(())

    def legs(self) -> list:
        """Terms as (coefficient, [basis element per leg]) pairs, in sorted order."""
        return [(c, [s.basis(i) for s, i in zip(self.spaces, k)])
                for k, c in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items()):
            lab = "⊗".join(s.labels[i] for s, i in zip(self.spaces, k))
            parts.append(f"{c}*{lab}" if lab else str(c))
        return " + ".join(parts)


def basis_keys(spaces: Sequence[Space]):
    return itertools.product(*[range(s.dim) for s in spaces])


def tensor(x: Element, y: Element) -> Element:
    if x.F != y.F:
        raise DegreeMismatch("field mismatch")
    t = {k1 + k2: c1 * c2 for k1, c1 in x.terms.items() for k2, c2 in y.terms.items()}
    return Element(x.F, x.spaces + y.spaces, t)


class LinMap:
    """Linear map between tensor products, stored by images of basis keys.

    ``images`` maps a source key to a dict {target key: scalar}; missing keys
    map to zero.
    """

    def __init__(self, src: tuple, dst: tuple, images: dict, name: str = ""):
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.F = (src[0] if src else dst[0]).F
        self.images = {k: {t: c for t, c in v.items() if c} for k, v in images.items()}
        self.name = name

    @classmethod
    def from_function(cls, src: tuple, dst: tuple, fn: Callable[[Element], Element], name=""):
        images = {}
        for key in basis_keys(src):
            x = Element(src[0].F, src, {key: src[0].F.one})
            y = fn(x)
            if y.spaces != tuple(dst):
                raise DegreeMismatch(f"{name}: image lands in {y.spaces}, expected {dst}")
            images[key] = y.terms
        return cls(src, dst, images, name)

    @classmethod
    def identity(cls, spaces: tuple) -> "LinMap":
        one = spaces[0].F.one
        return cls(spaces, spaces, {k: {k: one} for k in basis_keys(spaces)}, "id")

    def __call__(self, x: Element) -> Element:
        return apply(self, x)

    def matrix(self) -> list:
        src = list(basis_keys(self.src))
        dst = list(basis_keys(self.dst))
        z = self.F.zero
        return [[self.images.get(s, {}).get(d, z) for s in src] for d in dst]

    @classmethod
    def from_matrix(cls, src: tuple, dst: tuple, M: list, name="") -> "LinMap":
        srck = list(basis_keys(src))
        dstk = list(basis_keys(dst))
        images = {s: {d: M[r][c] for r, d in enumerate(dstk) if M[r][c]}
                  for c, s in enumerate(srck)}
        return cls(src, dst, images, name)

    def inverse(self) -> Optional["LinMap"]:
        inv = invert_matrix(self.matrix(), self.F)
        if inv is None:
            return None
        return LinMap.from_matrix(self.dst, self.src, inv, f"{self.name}^-1")

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.src == other.src and self.dst == other.dst
                and all(self.images.get(k, {}) == other.images.get(k, {})
                        for k in basis_keys(self.src)))

    __hash__ = None

    def __repr__(self):
        return f"<LinMap {self.name} {len(self.src)}->{len(self.dst)}>"


def apply(f: LinMap, x: Element) -> Element:
    if x.spaces != f.src:
        raise DegreeMismatch(f"{f.name}: argument spaces {x.spaces} != {f.src}")
    out: dict = {}
    zero = x.F.zero
    for k, c in x.terms.items():
        for t, d in f.images.get(k, {}).items():
            out[t] = out.get(t, zero) + c * d
    return Element(x.F, f.dst, out)


def compose(f: LinMap, g: LinMap) -> LinMap:
    """f ∘ g."""
    if g.dst != f.src:
        raise DegreeMismatch("shape mismatch in compose")
    images = {k: apply(f, Element(g.F, g.dst, v)).terms for k, v in g.images.items()}
    return LinMap(g.src, f.dst, images, f"{f.name}∘{g.name}")


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    images = {}
    for k1, v1 in f.images.items():
        for k2, v2 in g.images.items():
            images[k1 + k2] = {t1 + t2: c1 * c2 for t1, c1 in v1.items() for t2, c2 in v2.items()}
    return LinMap(f.src + g.src, f.dst + g.dst, images, f"{f.name}⊗{g.name}")


def map_legs(x: Element, maps: Sequence) -> Element:
    """Apply a single-leg map (or None for identity) to each leg of ``x``.

    Maps may change the number of legs (Δ gives two, ε gives none), so the
    result's degree is the sum of the target degrees.  DualElements are
    accepted and act as functionals.
    """
    if len(maps) != x.degree:
        raise DegreeMismatch(f"{len(maps)} maps for degree {x.degree}")
    maps = [m.as_map() if isinstance(m, DualElement) else m for m in maps]
    spaces: tuple = ()
    for s, m in zip(x.spaces, maps):
        if m is None:
            spaces += (s,)
        else:
            if m.src != (s,):
                raise DegreeMismatch(f"{m.name} applied to leg in {s!r}")
            spaces += m.dst
    out: dict = {}
    zero = x.F.zero
    for k, c in x.terms.items():
        partial = [((), c)]
        for i, m in zip(k, maps):
            if m is None:
                partial = [(key + (i,), cc) for key, cc in partial]
                continue
            img = m.images.get((i,))
            if not img:
                partial = []
                break
            partial = [(key + t, cc * d) for key, cc in partial for t, d in img.items()]
        for key, cc in partial:
            out[key] = out.get(key, zero) + cc
    return Element(x.F, spaces, out)


def embed_legs(x: Element, slots: Sequence[int], n: int, fill: Optional[Algebra] = None) -> Element:
    """Place leg k of ``x`` into slot ``slots[k]`` (1-based) of an n-fold tensor, unit elsewhere."""
    if len(slots) != x.degree:
        raise DegreeMismatch("one slot per leg required")
    if len(set(slots)) != len(slots):
        raise ValueError(f"duplicate slot in {slots}")
    if any(s < 1 or s > n for s in slots):
        raise ValueError(f"slot out of range 1..{n}: {slots}")
    free = [p for p in range(1, n + 1) if p not in slots]
    if free:
        if fill is None:
            fill = next((s for s in x.spaces if isinstance(s, Algebra)), None)
        if fill is None:
            raise ValueError("no algebra available to fill empty slots")
    spaces = [None] * n
    for leg, s in enumerate(slots):
        spaces[s - 1] = x.spaces[leg]
    for p in free:
        spaces[p - 1] = fill
    unit_terms = list(fill.unit_coeffs.items()) if free else []
    out: dict = {}
    zero = x.F.zero
    for k, c in x.terms.items():
        partial = [([None] * n, c)]
        for leg, s in enumerate(slots):
            for key, _ in partial:
                key[s - 1] = k[leg]
        for p in free:
            partial = [(key[:p - 1] + [u] + key[p:], cc * uc)
                       for key, cc in partial for u, uc in unit_terms]
        for key, cc in partial:
            t = tuple(key)
            out[t] = out.get(t, zero) + cc
    return Element(x.F, tuple(spaces), out)


def permute(x: Element, slots: Sequence[int]) -> Element:
    return embed_legs(x, slots, x.degree)


def expand(x: Element, fn: Callable, out_spaces: Optional[tuple] = None) -> Element:
    """Σ_terms c · fn(leg_1, ..., leg_n) with each leg a basis element.

    This realizes the suppressed-summation notation: ``expand(phi, lambda X, Y, Z: ...)``.
    """
    acc: Optional[Element] = None
    for k, c in x.terms.items():
        y = fn(*[s.basis(i) for s, i in zip(x.spaces, k)])
        y = y.scale(c)
        acc = y if acc is None else acc + y
    if acc is None:
        if out_spaces is None:
            raise ValueError("expand of zero element needs out_spaces")
        return Element(x.F, out_spaces, {})
    return acc


def _unit_of(spaces: tuple, F: Field) -> Element:
    x = Element(F, (), {(): F.one})
    for s in spaces:
        if not isinstance(s, Algebra):
            raise DegreeMismatch("unit only exists on algebra legs")
        x = x @ s.unit()
    return x


def _nilpotent_inverse(x: Element, one: Element, max_steps: int = 8) -> Optional[Element]:
    n = one - x
    acc = one
    p = one
    for _ in range(max_steps):
        p = p * n
        if p.is_zero():
            return acc
        acc = acc + p
    return None


def invert_element(x: Element) -> Optional[Element]:
    """Two-sided inverse in the tensor-product algebra, or None."""
    F = x.F
    one = _unit_of(x.spaces, F)
    if x == one:
        return one
    y = _nilpotent_inverse(x, one)
    if y is None:
        keys = list(basis_keys(x.spaces))
        index = {k: i for i, k in enumerate(keys)}
        cols = []
        for k in keys:
            col = (x * Element(F, x.spaces, {k: F.one})).terms
            cols.append(col)
        n = len(keys)
        aug = [[F.zero] * (n + 1) for _ in range(n)]
        for j, col in enumerate(cols):
            for t, c in col.items():
                aug[index[t]][j] = c
        for t, c in one.terms.items():
            aug[index[t]][n] = c
        R, piv = rref(aug, F)
        if len(piv) != n or piv[-1] != n - 1:
            return None
        y = Element(F, x.spaces, {keys[c]: row[n] for row, c in zip(R, piv)})
    if x * y != one or y * x != one:
        return None
    return y


class DualElement:
    """Linear functional on a space, given by coefficients in the dual basis."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: Space, coeffs: Sequence):
        if len(coeffs) != space.dim:
            raise DegreeMismatch("dual coefficient count does not match dimension")
        self.space = space
        self.coeffs = tuple(space.F(c) if not space.F.owns(c) else c for c in coeffs)

    @classmethod
    def basis(cls, space: Space, i: int) -> "DualElement":
        F = space.F
        return cls(space, [F.one if j == i else F.zero for j in range(space.dim)])

    @classmethod
    def from_function(cls, space: Space, fn: Callable[[Element], object]) -> "DualElement":
        return cls(space, [fn(space.basis(i)) for i in range(space.dim)])

    def __call__(self, x: Element):
        return pair(self, x)

    def as_map(self) -> LinMap:
        return LinMap((self.space,), (), {(i,): {(): c} for i, c in enumerate(self.coeffs)},
                      "functional")

    def __add__(self, other):
        return DualElement(self.space, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return DualElement(self.space, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return DualElement(self.space, [-a for a in self.coeffs])

    def scale(self, c):
        return DualElement(self.space, [c * a for a in self.coeffs])

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, DualElement):
            return NotImplemented
        return self.space is other.space and self.coeffs == other.coeffs

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        return "DualElement(" + ", ".join(str(c) for c in self.coeffs) + ")"


def pair(psi: DualElement, x: Element):
    if x.spaces != (psi.space,):
        raise DegreeMismatch("pairing needs a degree-1 element of the same space")
    F = psi.space.F
    return sum((psi.coeffs[k[0]] * c for k, c in x.terms.items()), F.zero)


def harpoon_left(x, y, delta: Optional[LinMap] = None):
    """x ⇀ y.

    For an algebra element a and functional ψ: ⟨a⇀ψ|b⟩ = ψ(ba).
    For a functional ψ and element a: ψ⇀a = a₁ψ(a₂), which needs ``delta``.
    """
    if isinstance(x, Element) and isinstance(y, DualElement):
        A = y.space
        return DualElement.from_function(A, lambda b: pair(y, b * x))
    if isinstance(x, DualElement) and isinstance(y, Element):
        if delta is None:
            raise ValueError("ψ⇀a needs the coproduct")
        return map_legs(apply(delta, y), [None, x])
    raise TypeError("harpoon_left takes (Element, DualElement) or (DualElement, Element)")


def harpoon_right(x, y, delta: Optional[LinMap] = None):
    """x ↼ y.

    For a functional ψ and element a: ⟨ψ↼a|b⟩ = ψ(ab).
    For an element a and functional ψ: a↼ψ = ψ(a₁)a₂, which needs ``delta``.
    """
    if isinstance(x, DualElement) and isinstance(y, Element):
        A = x.space
        return DualElement.from_function(A, lambda b: pair(x, y * b))
    if isinstance(x, Element) and isinstance(y, DualElement):
        if delta is None:
            raise ValueError("a↼ψ needs the coproduct")
        return map_legs(apply(delta, x), [y, None])
    raise TypeError("harpoon_right takes (DualElement, Element) or (Element, DualElement)")


def dual_mul(phi: DualElement, psi: DualElement, coproduct: Callable[[Element], Element]) -> DualElement:
    """⟨φψ|a⟩ = ⟨φ⊗ψ|Δ(a)⟩ for any two-legged coproduct-like map."""
    A = phi.space
    return DualElement.from_function(A, lambda a: map_legs(coproduct(a), [phi, psi]).scalar())
