"""Exact scalars over Q or GF(p) and dense linear algebra on top of them.

Matrices are plain lists of rows.  Every routine is pure: inputs are never
mutated, and elimination uses a fixed pivot rule (first nonzero entry in the
current column, scanning rows top to bottom) so derived bases are
reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "Field", "ModP", "QQ", "GF", "FieldMismatch",
    "rref", "rank", "solve", "nullspace", "invert_matrix", "det",
    "matmul", "matvec", "transpose", "identity", "zeros", "row_basis",
]


class FieldMismatch(ValueError):
    pass


class ModP:
    """Residue class modulo a prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"{other} has no image in GF({self.p})")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError(f"0 in GF({self.p})")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModP(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ModP(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Either the rationals (``p is None``) or the prime field GF(p)."""

    def __init__(self, p: Optional[int] = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    @property
    def characteristic(self) -> int:
        return self.p or 0

    def __call__(self, x):
        if self.p is None:
            if isinstance(x, ModP):
                raise FieldMismatch("GF(p) scalar used over Q")
            if isinstance(x, str):
                return Fraction(x.strip())
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) scalar used over GF({self.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"{x} has no image in GF({self.p})")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, int):
            return ModP(x, self.p)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def owns(self, x) -> bool:
        if self.p is None:
            return isinstance(x, Fraction)
        return isinstance(x, ModP) and x.p == self.p

    def fmt(self, x) -> str:
        """Serialize: 'a/b' (or 'a') over Q, the residue in [0, p) over GF(p)."""
        return str(x)

    def to_json(self):
        return "Q" if self.p is None else {"GF": self.p}

    @classmethod
    def from_json(cls, spec) -> "Field":
        if spec == "Q":
            return QQ
        if isinstance(spec, dict) and set(spec) == {"GF"}:
            return GF(int(spec["GF"]))
        raise ValueError(f"bad field spec {spec!r}")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse the CLI syntax ``Q`` or ``GF:p``."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text.upper().startswith("GF:"):
            return GF(int(text[3:]))
        raise ValueError(f"bad field {text!r}; expected Q or GF:p")

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = Field()
_gf_cache: dict = {}


def GF(p: int) -> Field:
    if p not in _gf_cache:
        _gf_cache[p] = Field(p)
    return _gf_cache[p]


# -- dense matrices ---------------------------------------------------------

def zeros(F: Field, rows: int, cols: int) -> list:
    return [[F.zero] * cols for _ in range(rows)]


def identity(F: Field, n: int) -> list:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*A)]


def matmul(A, B) -> list:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col) if a and b), start=_zero_like(row, col))
             for col in Bt] for row in A]


def _zero_like(row, col):
    x = row[0] if row else col[0]
    return x - x


def matvec(A, x) -> list:
    return [sum((a * b for a, b in zip(row, x) if a and b), start=x[0] - x[0]) for row in A]


def rref(A: Sequence[Sequence], F: Field) -> tuple[list, list[int]]:
    """Reduced row echelon form and pivot columns of ``A``."""
    M = [list(row) for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        pr = M[r]
        nz = [j for j in range(c, cols) if pr[j]]
        for i in range(rows):
            if i != r and M[i][c]:
                t = M[i][c]
                Mi = M[i]
                for j in nz:
                    Mi[j] = Mi[j] - t * pr[j]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A, F: Field) -> int:
    if not A:
        return 0
    return len(rref(A, F)[1])


def row_basis(vectors: Iterable[Sequence], F: Field, length: int) -> list[list]:
    """Canonical basis (nonzero rref rows) of the span of ``vectors``."""
    vs = [list(v) for v in vectors]
    if not vs:
        return []
    R, _ = rref(vs, F)
    return R


def _check_fields(F: Field, *blocks):
    for block in blocks:
        for x in block:
            if not F.owns(x):
                raise FieldMismatch(f"{x!r} does not belong to {F}")


def solve(A, b, F: Field) -> Optional[list]:
    """Some x with A x = b, or None when b is outside the column space.

    Free variables are set to zero, so the returned solution is the unique one
    supported on the pivot columns.
    """
    if len(A) != len(b):
        raise ValueError("row count of A does not match length of b")
    _check_fields(F, b, *A)
    cols = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    if not aug:
        return []
    R, piv = rref(aug, F)
    if piv and piv[-1] == cols:
        return None
    x = [F.zero] * cols
    for row, c in zip(R, piv):
        x[c] = row[cols]
    return x


def nullspace(A, F: Field, cols: Optional[int] = None) -> list[list]:
    """Basis of ker A, returned as the rows of a reduced echelon matrix."""
    if cols is None:
        cols = len(A[0]) if A else 0
    if not A:
        return identity(F, cols)
    R, piv = rref(A, F)
    pset = set(piv)
    basis = []
    for f in range(cols):
        if f in pset:
            continue
        v = [F.zero] * cols
        v[f] = F.one
        for row, c in zip(R, piv):
            if row[f]:
                v[c] = -row[f]
        basis.append(v)
    if not basis:
        return []
    return rref(basis, F)[0]


def invert_matrix(A, F: Field) -> Optional[list]:
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    if n == 0:
        return []
    aug = [list(row) + e for row, e in zip(A, identity(F, n))]
    R, piv = rref(aug, F)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return [row[n:] for row in R]


def det(A, F: Field):
    """Determinant by elimination."""
    n = len(A)
    M = [list(row) for row in A]
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d = d * M[c][c]
        inv = F.one / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                t = M[i][c] * inv
                M[i] = [x - t * y for x, y in zip(M[i], M[c])]
    return d
