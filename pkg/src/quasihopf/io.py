"""JSON serialization of quasi-Hopf algebras and two-sided comodule algebras."""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

from .field import Field
from .tensor import Algebra, DualElement, Element, LinMap, basis_keys
from .qhopf import QuasiHopf, ValidationReport, validate

__all__ = ["ParseError", "ValidationError", "load", "save", "loads", "dumps",
           "to_dict", "from_dict", "max_dim"]


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        bad = report.first_failure()
        super().__init__(f"{bad.name}: {bad.witness}" if bad else "invalid")


def max_dim() -> int:
    return int(os.environ.get("QHOPF_MAX_DIM", "64"))


def _scalar(F: Field, v, where: str):
    try:
        if isinstance(v, (int, str)) and not isinstance(v, bool):
            return F(v)
    except (ValueError, ZeroDivisionError) as err:
        raise ParseError(f"{where}: bad scalar {v!r} ({err})") from err
    raise ParseError(f"{where}: bad scalar {v!r}; expected a string or integer")


def _index(v, n: int, where: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
        raise ParseError(f"{where}: index {v!r} out of range 0..{n - 1}")
    return v


def _entries(data: dict, key: str, arity: int, n: int, F: Field, required=True):
    if key not in data:
        if required:
            raise ParseError(f"missing field {key!r}")
        return None
    rows = data[key]
    if not isinstance(rows, list):
        raise ParseError(f"{key}: expected a list")
    out = []
    for r, row in enumerate(rows):
        where = f"{key}[{r}]"
        if not isinstance(row, list) or len(row) != arity + 1:
            raise ParseError(f"{where}: expected {arity} indices and a scalar")
        idx = tuple(_index(v, n, where) for v in row[:arity])
        out.append((idx, _scalar(F, row[arity], where)))
    return out


def _element(F, spaces, entries) -> Element:
    terms: dict = {}
    for k, c in entries:
        terms[k] = terms.get(k, F.zero) + c
    return Element(F, spaces, terms)


def _linmap(F, src, dst, entries, name) -> LinMap:
    images: dict = {}
    for k, c in entries:
        img = images.setdefault(k[:1], {})
        img[k[1:]] = img.get(k[1:], F.zero) + c
    return LinMap(src, dst, images, name)


def algebra_from_dict(data: dict, name: str = "") -> Algebra:
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    try:
        F = Field.from_json(data.get("field"))
    except (ValueError, TypeError) as err:
        raise ParseError(f"field: {err}") from err
    n = data.get("dim")
    if not isinstance(n, int) or n < 1:
        raise ParseError("dim: expected a positive integer")
    if n > max_dim():
        raise ParseError(f"dim {n} exceeds QHOPF_MAX_DIM={max_dim()}")
    labels = data.get("basis") or [f"b{i}" for i in range(n)]
    if len(labels) != n:
        raise ParseError("basis: label count does not match dim")
    mul: dict = {}
    for (i, j, k), c in _entries(data, "mul", 3, n, F):
        acc = dict(mul.get((i, j), ()))
        acc[k] = acc.get(k, F.zero) + c
        mul[(i, j)] = tuple(acc.items())
    unit = {}
    for (k,), c in _entries(data, "unit", 1, n, F):
        unit[k] = unit.get(k, F.zero) + c
    return Algebra(F, n, mul, unit, [str(x) for x in labels], name or data.get("name", ""))


def from_dict(data: dict, name: str = "") -> QuasiHopf:
    A = algebra_from_dict(data, name)
    F, n = A.F, A.dim
    A1, A2, A3 = (A,), (A, A), (A, A, A)
    delta = _linmap(F, A1, A2, _entries(data, "delta", 3, n, F), "Delta")
    eps = [F.zero] * n
    for (i,), c in _entries(data, "counit", 1, n, F):
        eps[i] = eps[i] + c
    counit = DualElement(A, eps)
    phi = _element(F, A3, _entries(data, "phi", 3, n, F))
    phi_inv_e = _entries(data, "phi_inv", 3, n, F, required=False)
    phi_inv = _element(F, A3, phi_inv_e) if phi_inv_e is not None else None
    S = _linmap(F, A1, A1, _entries(data, "S", 2, n, F), "S")
    S_inv_e = _entries(data, "S_inv", 2, n, F, required=False)
    S_inv = _linmap(F, A1, A1, S_inv_e, "S^-1") if S_inv_e is not None else None
    alpha = _element(F, A1, _entries(data, "alpha", 1, n, F))
    beta = _element(F, A1, _entries(data, "beta", 1, n, F))
    return QuasiHopf(A, delta, counit, phi, S, alpha, beta, phi_inv=phi_inv, S_inv=S_inv,
                     name=name or data.get("name", ""))


def _fmt_terms(F, x: Element) -> list:
    return [list(k) + [F.fmt(c)] for k, c in sorted(x.terms.items())]


def _fmt_map(F, m: LinMap) -> list:
    out = []
    for k in sorted(m.images):
        for t, c in sorted(m.images[k].items()):
            out.append(list(k) + list(t) + [F.fmt(c)])
    return out


def algebra_to_dict(A: Algebra) -> dict:
    F = A.F
    return {
        "field": F.to_json(), "dim": A.dim, "basis": list(A.labels),
        "mul": [[i, j, k, F.fmt(c)] for (i, j) in sorted(A.mul) for k, c in A.mul[(i, j)]],
        "unit": [[k, F.fmt(c)] for k, c in sorted(A.unit_coeffs.items())],
    }


def to_dict(H: QuasiHopf, with_inverses: bool = True) -> dict:
    F = H.F
    d = algebra_to_dict(H.A)
    if H.name:
        d["name"] = H.name
    d["delta"] = _fmt_map(F, H.delta)
    d["counit"] = [[i, F.fmt(c)] for i, c in enumerate(H.counit.coeffs) if c]
    d["phi"] = _fmt_terms(F, H.phi)
    if with_inverses:
        d["phi_inv"] = _fmt_terms(F, H.phi_inv)
    d["S"] = _fmt_map(F, H.S)
    if with_inverses:
        d["S_inv"] = _fmt_map(F, H.S_inv)
    d["alpha"] = _fmt_terms(F, H.alpha)
    d["beta"] = _fmt_terms(F, H.beta)
    return d


def dumps(H: QuasiHopf, with_inverses: bool = True) -> str:
    return json.dumps(to_dict(H, with_inverses), indent=1, sort_keys=True) + "\n"


def read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ParseError(f"{path}: {err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: line {err.lineno} column {err.colno}: {err.msg}") from err


def loads(text: str, force: bool = False, name: str = "") -> QuasiHopf:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"line {err.lineno} column {err.colno}: {err.msg}") from err
    return _finish(from_dict(data, name), force)


def _finish(H: QuasiHopf, force: bool) -> QuasiHopf:
    if not force:
        rep = validate(H)
        if not rep.ok:
            raise ValidationError(rep)
    return H


def load(path, force: bool = False) -> QuasiHopf:
    """Read a quasi-Hopf algebra; refuses input that fails validation unless ``force``."""
    data = read_json(path)
    return _finish(from_dict(data, name=data.get("name", Path(path).stem)
                             if isinstance(data, dict) else ""), force)


def save(H: QuasiHopf, path, with_inverses: bool = True):
    Path(path).write_text(dumps(H, with_inverses), encoding="utf-8")
