"""Acceptance suite: one PASS/FAIL line per criterion.

All comparisons are exact (zero tolerance).  Time limits are pinned below.
Run with ``pytest -s tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""
import contextlib
import functools
import io as _io
import json
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quasihopf import io, report  # noqa: E402
from quasihopf.bimodule import check_structure_map  # noqa: E402
from quasihopf.cli import run  # noqa: E402
from quasihopf.crossed import algebra_semisimple, diagonal_crossed_product, hopf_double  # noqa: E402
from quasihopf.integral import analyze, fourier, fourier_inv, semisimplicity_battery  # noqa: E402
from quasihopf.tensor import compose  # noqa: E402
from conftest import BUNDLED, gallery_path, sign_character  # noqa: E402

TOLERANCE = 0
AXIOM_SECONDS = 5.0
DOUBLE_S3_SECONDS = 60.0

MUTANTS = {
    "broken_pentagon": "pentagon",
    "wrong_beta": "drinfeld_reassociator",
    "bad_coaction": "coaction_quasi_coassociative",
    "non_cocycle": "cocycle_identity",
    "perturbed_sigma": "sigma_right_invariant",
}


@functools.lru_cache(maxsize=None)
def _load(name):
    return io.load(gallery_path(name))


@functools.lru_cache(maxsize=None)
def _analysis(name):
    H = _load(name)
    return analyze(H, [sign_character(H)] if name == "group_s3" else [])


def _failed(rep):
    return [c.name for c in rep.checks if not c.ok]


def _nullspace_q(rows, n):
    """Independent Fraction Gaussian elimination; basis of the right kernel."""
    m = [[Fraction(x) for x in r] for r in rows]
    piv, r = [], 0
    for c in range(n):
        k = next((i for i in range(r, len(m)) if m[i][c]), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        m[r] = [x / m[r][c] for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                m[i] = [a - m[i][c] * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    out = []
    for f in (c for c in range(n) if c not in piv):
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -m[i][f]
        out.append(v)
    return out


def _left_integrals_oracle(H):
    n = H.dim
    rows = []
    for a in range(n):
        e = H.eps(H.b(a))
        for k in range(n):
            rows.append([Fraction((H.b(a) * H.b(x)).coeff((k,))) - (e if k == x else 0)
                         for x in range(n)])
    return _nullspace_q(rows, n)


def _proportional(u, v):
    i = next(k for k, c in enumerate(v) if c)
    return all(a * v[i] == b * u[i] for a, b in zip(u, v))


# -- criteria ------------------------------------------------------------------------

def criterion_1():
    t = time.perf_counter()
    bad = {}
    for name in BUNDLED:
        H = io.load(gallery_path(name))
        f = _failed(report.axioms(H))
        if f:
            bad[name] = f
    dt = time.perf_counter() - t
    return not bad and dt < AXIOM_SECONDS, f"failures={bad or 'none'} time={dt:.2f}s (limit {AXIOM_SECONDS}s)"


def criterion_2():
    bad = []
    for name in BUNDLED:
        An = _analysis(name)
        dims = (len(An.spaces.left), len(An.spaces.right), len(An.cointegral.coinvariants.rows))
        if dims != (1, 1, 1):
            bad.append(f"{name} dims {dims}")
        f = [c for c in _failed(An.cointegral.report) if c in ("cointegral_nondegenerate", "frobenius_basis")]
        if f:
            bad.append(f"{name} {f}")
    for name, want in (("group_z2", [1, 1]), ("twisted_dual_z2", [1, 0])):
        H = _load(name)
        [oracle] = _left_integrals_oracle(H)
        got = [Fraction(c) for c in _analysis(name).spaces.left[0].vector()]
        if not (_proportional(oracle, want) and _proportional(got, want)):
            bad.append(f"{name} L={got} oracle={oracle}")
    return not bad, "; ".join(bad) or "dim L = dim R = dim cointegrals = 1; oracle spans agree"


def criterion_3():
    bad = {}
    for name in BUNDLED:
        c = _analysis(name).cointegral
        f = _failed(check_structure_map(c.dual, c.coinvariants))
        if f:
            bad[name] = f
    return not bad, f"failures={bad or 'none'}"


def criterion_4():
    bad = {}
    for name in BUNDLED:
        An = _analysis(name)
        H, c = An.H, An.cointegral
        Fl, _ = fourier(H, c, An.mu)
        M = compose(fourier_inv(H, c), Fl).matrix()
        ident = all(M[i][j] == (1 if i == j else 0) for i in range(H.dim) for j in range(H.dim))
        f = _failed(An.fourier) + ([] if ident else ["inverse_matrix"])
        if f:
            bad[name] = f
    return not bad, f"module map, coproduct, comodule maps, inverse; failures={bad or 'none'}"


def criterion_5():
    q = semisimplicity_battery(_load("group_z3_q"))
    p = semisimplicity_battery(_load("group_z3_gf3"))
    third = Fraction(1, 3)
    checks = {
        "Q lambda_e != 0": not q["lambda_e"].is_zero(),
        "Q haar": q["haar"] is not None and [Fraction(x) for x in q["haar"].vector()] == [third] * 3,
        "Q report": not _failed(q["report"]),
        "Q separating idempotent": "separating_idempotent" in [c.name for c in q["report"].checks],
        "GF3 lambda_e = 0": p["lambda_e"].is_zero() and p["haar"] is None,
        "GF3 report": not _failed(p["report"]),
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"failed={bad or 'none'}"


def criterion_6():
    bad = {name: _failed(_analysis(name).radford["report"]) for name in BUNDLED}
    bad = {k: v for k, v in bad.items() if v}
    return not bad, f"failures={bad or 'none'}"


def criterion_7():
    bad = []
    for name in BUNDLED:
        cc = _analysis(name).cocentral
        if cc["dimension"] != 1 or _failed(cc["report"]):
            bad.append(f"{name} dim={cc['dimension']} {_failed(cc['report'])}")
    other = _analysis("group_s3").cocentral["other"]
    if other != {0: 0}:
        bad.append(f"sign character forms {other}")
    return not bad, "; ".join(bad) or "dim 1 at mu, dim 0 at the sign character of S3"


def criterion_8():
    bad, times = [], {}
    for name in ("group_z2", "group_s3"):
        t = time.perf_counter()
        X = diagonal_crossed_product(hopf_double(_load(name)))
        ss = algebra_semisimple(X.B)
        times[name] = time.perf_counter() - t
        if _failed(X.report) or ss is not True:
            bad.append(f"{name} {_failed(X.report)} semisimple={ss}")
    if times["group_s3"] >= DOUBLE_S3_SECONDS:
        bad.append("D(S3) too slow")
    return not bad, (("; ".join(bad) or "associative, generating-matrix relations, semisimple")
                     + f"; D(S3) {times['group_s3']:.1f}s (limit {DOUBLE_S3_SECONDS}s)")


def criterion_9():
    bad = []
    for name, identity in MUTANTS.items():
        buf = _io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(_io.StringIO()):
            rc = run(["validate", f"gallery:mutants/{name}", "--json"])
        checks = json.loads(buf.getvalue())["checks"]
        first = next((c for c in checks if not c["ok"]), None)
        if rc != 1 or first is None or first["name"] != identity or not first.get("witness"):
            bad.append(f"{name}: rc={rc} first={first and first['name']}")
    return not bad, "; ".join(bad) or "5/5 rejected with witness at the expected identity"


def criterion_10():
    bad = []
    for name in BUNDLED:
        for extra in ([], ["--json"]):
            cmd = [sys.executable, "-m", "quasihopf", "report", f"gallery:{name}", *extra]
            a, b = (subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2))
            if a != b or not a:
                bad.append(f"{name} {extra}")
    return not bad, "; ".join(bad) or "byte-identical across two processes (text and JSON)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(i, ok, detail):
    return f"criterion {i}: {'PASS' if ok else 'FAIL'} (tolerance={TOLERANCE}) {detail}"


@pytest.mark.parametrize("i", range(1, len(CRITERIA) + 1))
def test_criterion(i, capsys):
    ok, detail = CRITERIA[i - 1]()
    with capsys.disabled():
        print("\n" + _line(i, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(i, *f()) for i, f in enumerate(CRITERIA, 1)]
    for r in results:
        print(_line(*r))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
