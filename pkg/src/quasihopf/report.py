"""Deterministic reports (JSON and text) for quasi-Hopf algebras and crossed products."""
from __future__ import annotations

import json
from typing import Optional, Sequence

from .tensor import DualElement, Element
from .qhopf import IdentityFailure, QuasiHopf, ValidationReport, validate
from . import bimodule, integral

__all__ = ["axioms", "battery", "crossed_battery", "to_json", "to_text", "first_failure"]


def _vec(x) -> list:
    if x is None:
        return None
    if isinstance(x, DualElement):
        return [x.space.F.fmt(c) for c in x.coeffs]
    if isinstance(x, Element):
        return [x.F.fmt(c) for c in x.vector()]
    return x


def _checks(rep: ValidationReport) -> list:
    return [{"name": c.name, "ok": c.ok, **({"witness": c.witness} if c.witness else {})}
            for c in rep.checks]


def axioms(H: QuasiHopf) -> ValidationReport:
    """Axiom suite followed by the derived-element identities."""
    rep = validate(H)
    if not rep.ok:
        return rep
    try:
        extra = H.derived.report
    except IdentityFailure as err:
        extra = ValidationReport()
        extra.add(err.name, err.witness or "failed")
    rep.checks.extend(extra.checks)
    return rep


def battery(H: QuasiHopf, characters: Sequence = ()) -> dict:
    """Full invariant battery; every section carries its check list."""
    F = H.F
    out: dict = {"name": H.name, "field": F.to_json(), "dim": H.dim}
    ax = axioms(H)
    sections = {"axioms": _checks(ax)}
    out["sections"] = sections
    if not ax.ok:
        out["ok"] = False
        return out
    try:
        A = integral.analyze(H, characters)
    except (IdentityFailure, integral.DimensionViolation) as err:
        sections["battery"] = [{"name": getattr(err, "name", "dimension"), "ok": False,
                                "witness": str(err)}]
        out["ok"] = False
        return out
    c = A.cointegral
    out["dims"] = {"L": len(A.spaces.left), "R": len(A.spaces.right),
                   "cointegrals": len(c.coinvariants.rows)}
    out["left_integral"] = _vec(A.spaces.left[0])
    out["right_integral"] = _vec(c.r)
    out["cointegral"] = _vec(c.lam)
    out["modulus"] = _vec(A.mu)
    out["unimodular"] = A.symmetry["is_unimodular"]
    ss = A.semisimple
    out["semisimple"] = ss["is_semisimple"]
    out["haar_integral"] = _vec(ss["haar"])
    out["quantum_dim"] = F.fmt(ss["quantum_dim"])
    sym = A.symmetry["is_symmetric"]
    out["symmetric"] = sym
    out["radford_ok"] = A.radford["report"].ok
    out["cocentral_dim"] = A.cocentral["dimension"]
    out["normalized_cointegral"] = _vec(A.cocentral["normalized"])
    st = bimodule.check_structure_map(c.dual, c.coinvariants)
    for name, rep in A.reports():
        sections[name] = _checks(rep)
    sections["structure_map"] = _checks(st)
    out["ok"] = A.ok and st.ok
    return out


def crossed_battery(X) -> dict:
    """Report for a diagonal crossed product."""
    from .crossed import algebra_semisimple

    B = X.B
    ss = algebra_semisimple(B)
    out = {"name": B.name, "field": B.F.to_json(), "dim": B.dim,
           "commutative": all(B.basis(p) * B.basis(q) == B.basis(q) * B.basis(p)
                              for p in range(B.dim) for q in range(p + 1, B.dim)),
           "semisimple": ss, "sections": {"crossed_product": _checks(X.report)},
           "ok": X.report.ok}
    return out


def to_json(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def _fmt(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def to_text(report: dict) -> str:
    lines = []
    for key in sorted(k for k in report if k != "sections"):
        val = report[key]
        if isinstance(val, dict):
            val = ", ".join(f"{k}={_fmt(val[k])}" for k in sorted(val))
        lines.append(f"{key}: {_fmt(val) if not isinstance(val, str) else val}")
    for name, checks in report.get("sections", {}).items():
        lines.append(f"[{name}]")
        for c in checks:
            line = f"  {c['name']}: {'PASS' if c['ok'] else 'FAIL'}"
            if c.get("witness"):
                line += f"  [{c['witness']}]"
            lines.append(line)
    return "\n".join(lines) + "\n"


def first_failure(report: dict) -> Optional[dict]:
    for name, checks in report.get("sections", {}).items():
        for c in checks:
            if not c["ok"]:
                return {"section": name, **c}
    return None
