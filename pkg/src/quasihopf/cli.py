"""Command-line front end: ``qhopf validate|report|make|double|crossed|probe-conjecture|gallery``."""
from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Optional

from . import bimodule, crossed, integral, io, report
from .constructors import (ConstructionError, GroupTable, cocycle_check, cyclic_group,
                           group_algebra, symmetric_group, sweedler, twisted_dual)
from .field import Field
from .qhopf import IdentityFailure, QuasiHopf, ValidationReport
from .tensor import DualElement, LinMap

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- file resolution --------------------------------------------------------------------

def gallery_names() -> list:
    root = resources.files("quasihopf") / "gallery"
    out = [p.name[:-5] for p in root.iterdir() if p.name.endswith(".json")]
    out += ["mutants/" + p.name[:-5] for p in (root / "mutants").iterdir() if p.name.endswith(".json")]
    return sorted(out)


def resolve(path: str, base: Optional[Path] = None) -> Path:
    """A filesystem path, or ``gallery:<name>`` for a bundled file."""
    if path.startswith("gallery:"):
        name = path[len("gallery:"):]
        p = resources.files("quasihopf") / "gallery" / f"{name}.json"
        if not p.is_file():
            raise InputError(f"no bundled file named {name!r}")
        return Path(str(p))
    p = Path(path)
    if base is not None and not p.is_absolute():
        p = base / p
    return p


def read(path: str, base: Optional[Path] = None) -> tuple:
    p = resolve(path, base)
    try:
        return io.read_json(p), p
    except io.ParseError as err:
        raise InputError(str(err)) from err


def _qhopf(ref, base: Path) -> QuasiHopf:
    """Inline dict or a path to a quasi-Hopf file."""
    if isinstance(ref, str):
        data, p = read(ref, base)
        name = data.get("name", p.stem) if isinstance(data, dict) else ""
    else:
        data, name = ref, ""
    return io.from_dict(data, name)


def load_qhopf(path: str) -> QuasiHopf:
    data, p = read(path)
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    return io.from_dict(data, data.get("name", p.stem))


def parse_field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as err:
        raise InputError(f"--field: {err}") from err


def parse_group(text: str) -> GroupTable:
    """``cyclic:n``, ``S3`` or a group-table file."""
    if text.startswith("cyclic:"):
        return cyclic_group(int(text.split(":", 1)[1]))
    if text.upper() == "S3":
        return symmetric_group(3)
    data, _ = read(text)
    return _group_from(data)


def _group_from(data) -> GroupTable:
    try:
        if isinstance(data, dict) and "cyclic" in data:
            return cyclic_group(int(data["cyclic"]))
        if isinstance(data, dict) and data.get("symmetric") == 3:
            return symmetric_group(3)
        return GroupTable.from_json(data)
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"group: {err}") from err


def _cocycle_table(data: dict, F: Field) -> dict:
    rows = data.get("omega", [])
    out = {}
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise InputError(f"omega[{r}]: expected [a, b, c, value]")
        out[tuple(row[:3])] = io._scalar(F, row[3], f"omega[{r}]")
    return out


# -- output helpers ---------------------------------------------------------------------

def emit(text: str, out: Optional[str] = None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _report_text(rep: ValidationReport, title: str) -> str:
    lines = [title] + ["  " + c.line() for c in rep.checks]
    bad = rep.first_failure()
    lines.append(f"result: {'PASS' if bad is None else 'FAIL'}")
    if bad is not None:
        lines.append(f"witness: {bad.name}: {bad.witness}")
    return "\n".join(lines) + "\n"


def _emit_report(rep: ValidationReport, title: str, as_json: bool) -> int:
    if as_json:
        emit(report.to_json({"kind": title, "ok": rep.ok,
                             "checks": report._checks(rep)}))
    else:
        emit(_report_text(rep, title))
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- subcommands ------------------------------------------------------------------------

def cmd_validate(args) -> int:
    data, p = read(args.file)
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    base = p.parent
    if "sigma" in data:
        return _validate_sigma(data["sigma"], base, args.json)
    if "coaction" in data:
        return _validate_coaction(data, base, args.json)
    if "omega" in data:
        try:
            F = Field.from_json(data.get("field", "Q"))
        except ValueError as err:
            raise InputError(f"field: {err}") from err
        G = _group_from(data.get("group", {"cyclic": 2}))
        return _emit_report(cocycle_check(G, _cocycle_table(data, F), F), "cocycle", args.json)
    if "delta2" in data:
        if not args.over:
            raise InputError("a comodule-algebra file needs --over <quasi-Hopf file>")
        H = load_qhopf(args.over)
        C = crossed.comodule_from_dict(H, data)
        return _emit_report(crossed.validate_comodule(C), "comodule", args.json)
    H = io.from_dict(data, data.get("name", p.stem))
    return _emit_report(report.axioms(H), "quasi-Hopf", args.json)


def _validate_sigma(spec: dict, base: Path, as_json: bool) -> int:
    """Biinvariance and cocentrality of a supplied form on H⊗H_γ (γ defaults to the modulus)."""
    H = _qhopf(spec.get("quasi_hopf"), base)
    F, n = H.F, H.dim
    form = spec.get("form")
    if not isinstance(form, list) or len(form) != n or any(
            not isinstance(r, list) or len(r) != n for r in form):
        raise InputError(f"sigma.form: expected a {n}x{n} matrix")
    Sig = [[io._scalar(F, v, "sigma.form") for v in row] for row in form]
    if "gamma" in spec:
        gamma = DualElement(H.A, [io._scalar(F, v, "sigma.gamma") for v in spec["gamma"]])
    else:
        gamma, _ = integral.modulus(H, integral.cointegral(H))
    return _emit_report(integral.check_sigma(H, Sig, gamma), "cocentral form", as_json)


def _validate_coaction(data: dict, base: Path, as_json: bool) -> int:
    """Regular carrier H with both actions by multiplication and a supplied coaction."""
    H = _qhopf(data.get("quasi_hopf"), base)
    F, n = H.F, H.dim
    reg = bimodule.regular_bimodule(H)
    images: dict = {}
    for r, row in enumerate(data["coaction"]):
        if not isinstance(row, list) or len(row) != 4:
            raise InputError(f"coaction[{r}]: expected [m, m', h, scalar]")
        idx = tuple(io._index(v, n, f"coaction[{r}]") for v in row[:3])
        img = images.setdefault(idx[:1], {})
        img[idx[1:]] = img.get(idx[1:], F.zero) + io._scalar(F, row[3], f"coaction[{r}]")
    Bm = bimodule.Bimodule(H, reg.M, LinMap((reg.M,), (reg.M, H.A), images, "rho"), "custom")
    return _emit_report(bimodule.validate_bimodule(Bm), "bimodule", as_json)


def cmd_report(args) -> int:
    H = load_qhopf(args.file)
    rep = report.battery(H)
    emit(report.to_json(rep) if args.json else report.to_text(rep))
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_make(args) -> int:
    F = parse_field(args.field)
    try:
        if args.kind == "group":
            if args.table:
                G = _group_from(read(args.table)[0])
            elif args.cyclic:
                G = cyclic_group(args.cyclic)
            elif args.symmetric:
                G = symmetric_group(args.symmetric)
            else:
                raise InputError("make group needs --table, --cyclic or --symmetric")
            H = group_algebra(G, F, name=args.name or "")
        elif args.kind == "twisted-dual":
            G = parse_group(args.group)
            omega = None
            if args.cocycle:
                omega = _cocycle_table(read(args.cocycle)[0], F)
            H = twisted_dual(G, omega, F, name=args.name or "")
        else:
            H = sweedler(F)
    except ConstructionError as err:
        print(f"construction failed: {err}", file=sys.stderr)
        return EXIT_FAIL
    emit(io.dumps(H), args.output)
    return EXIT_OK


def _double_of(path: str, psi: Optional[str]) -> crossed.CrossedProduct:
    H = load_qhopf(path)
    Psi = None
    if psi:
        data, _ = read(psi)
        if not isinstance(data, dict):
            raise InputError("Psi file must be a JSON object")
        Psi = io._element(H.F, (H.A,) * 5, io._entries(data, "Psi", 5, H.dim, H.F))
    try:
        C = crossed.hopf_double(H, Psi)
    except ValueError as err:
        raise InputError(f"{err} (use --psi)") from err
    return _crossed_of(C)


def _crossed_of(C: crossed.TwoSidedComodule) -> crossed.CrossedProduct:
    rep = crossed.validate_comodule(C)
    if not rep.ok:
        bad = rep.first_failure()
        raise IdentityFailure(bad.name, bad.witness)
    return crossed.diagonal_crossed_product(C)


def cmd_double(args) -> int:
    X = _double_of(args.file, args.psi)
    rep = report.crossed_battery(X)
    emit(report.to_json(rep) if args.json else report.to_text(rep))
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_crossed(args) -> int:
    H = load_qhopf(args.algebra)
    data, _ = read(args.comodule)
    X = _crossed_of(crossed.comodule_from_dict(H, data))
    rep = report.crossed_battery(X)
    emit(report.to_json(rep) if args.json else report.to_text(rep))
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_probe(args) -> int:
    X = _double_of(args.file, args.psi)
    H = X.C.H
    c = integral.cointegral(H)
    res = crossed.conjecture_probe(X, c.lam, c.r)
    res = {"EXPERIMENTAL": True, "name": H.name, "double_dim": X.B.dim,
           "left_integral": res["left_integral"], "right_integral": res["right_integral"],
           "counit_multiplicative": res["counit_multiplicative"],
           "convention": res["convention"]}
    if args.json:
        emit(report.to_json(res))
    else:
        emit("EXPERIMENTAL conjecture probe\n" + "".join(
            f"{k}: {report._fmt(res[k]) if not isinstance(res[k], str) else res[k]}\n"
            for k in sorted(res) if k != "EXPERIMENTAL"))
    return EXIT_OK


def cmd_gallery(args) -> int:
    if not args.name:
        emit("".join(f"{n}\n" for n in gallery_names()))
        return EXIT_OK
    p = resolve("gallery:" + args.name)
    emit(p.read_text(encoding="utf-8"), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qhopf", description="exact quasi-Hopf algebra kernel")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="axiom report for a quasi-Hopf, comodule, cocycle, "
                                        "coaction or form file")
    p.add_argument("file")
    p.add_argument("--over", help="quasi-Hopf file for a comodule-algebra input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("report", help="full integral battery")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("make", help="construct an instance")
    p.add_argument("kind", choices=["group", "twisted-dual", "sweedler"])
    p.add_argument("--table")
    p.add_argument("--cyclic", type=int)
    p.add_argument("--symmetric", type=int)
    p.add_argument("--group", default="cyclic:2")
    p.add_argument("--cocycle")
    p.add_argument("--field", default="Q")
    p.add_argument("--name")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_make)

    for name, fn, hlp in (("double", cmd_double, "Drinfeld double of a Hopf-case instance"),
                          ("probe-conjecture", cmd_probe, "EXPERIMENTAL integral probe")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("file")
        p.add_argument("--psi", help="file with a Psi for the coaction (Δ⊗id)∘Δ")
        p.add_argument("--json", action="store_true")
        p.set_defaults(fn=fn)

    p = sub.add_parser("crossed", help="diagonal crossed product")
    p.add_argument("algebra")
    p.add_argument("comodule")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_crossed)

    p = sub.add_parser("gallery", help="list or print bundled files")
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_gallery)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, io.ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except IdentityFailure as err:
        print(f"FAIL {err.name}: {err.witness}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, KeyError, TypeError) as err:
        print(f"error: malformed input ({type(err).__name__}: {err})", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run())
