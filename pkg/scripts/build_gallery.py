"""Regenerate the bundled instances and mutants under src/quasihopf/gallery."""
import json
from pathlib import Path

from quasihopf import integral, io
from quasihopf.constructors import cyclic_cocycle, cyclic_group, group_algebra, symmetric_group, sweedler, twisted_dual
from quasihopf.field import GF, QQ

OUT = Path(__file__).resolve().parent.parent / "src" / "quasihopf" / "gallery"


def put(name, data):
    path = OUT / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def abc(a, b, c):
    return -1 if a * b * c else 1


def main():
    F7 = GF(7)
    inst = {
        "group_z2": group_algebra(cyclic_group(2), QQ, "k[Z2]"),
        "group_s3": group_algebra(symmetric_group(3), QQ, "k[S3]"),
        "group_z3_q": group_algebra(cyclic_group(3), QQ, "k[Z3]"),
        "group_z3_gf3": group_algebra(cyclic_group(3), GF(3), "k[Z3]/GF3"),
        "twisted_dual_z2": twisted_dual(cyclic_group(2), abc, QQ, "k^Z2_omega"),
        "twisted_dual_z3_gf7": twisted_dual(cyclic_group(3), cyclic_cocycle(3, F7(2)), F7,
                                            "k^Z3_omega/GF7"),
        "sweedler": sweedler(QQ),
    }
    for name, H in inst.items():
        put(name, io.to_dict(H))

    tw = io.to_dict(inst["twisted_dual_z2"])

    # reassociator with ω(1,1,1) = 2: normalized and invertible, but not a cocycle
    bad = json.loads(json.dumps(tw))
    bad["name"] = "broken_pentagon"
    bad["phi"] = [r[:3] + (["2"] if r[:3] == [1, 1, 1] else [r[3]]) for r in bad["phi"]]
    bad.pop("phi_inv")
    put("mutants/broken_pentagon", bad)

    bad = json.loads(json.dumps(tw))
    bad["name"] = "wrong_beta"
    bad["beta"] = [[i, str(2 * QQ(c))] for i, c in bad["beta"]]
    put("mutants/wrong_beta", bad)

    # ρ(m) = Δ(m)(1⊗1 + δ_1⊗δ_1): a bimodule map with the counit property, not quasi-coassociative
    H = inst["twisted_dual_z2"]
    c = H.one(2) + (H.b(1) @ H.b(1))
    rows = []
    for m in range(H.dim):
        for (x, h), v in (H.D(H.b(m)) * c).terms.items():
            rows.append([m, x, h, QQ.fmt(v)])
    put("mutants/bad_coaction", {"quasi_hopf": "../twisted_dual_z2.json", "coaction": rows})

    put("mutants/non_cocycle", {"group": {"cyclic": 2}, "field": "Q",
                                "omega": [[1, 1, 0, "-1"], [1, 1, 1, "-1"]]})

    S3 = inst["group_s3"]
    c3 = integral.cointegral(S3)
    Sig = integral.sigma_from_lambda(S3, c3.lam)
    form = [[QQ.fmt(v) for v in row] for row in Sig]
    form[0][1] = QQ.fmt(QQ(form[0][1]) + 1)
    put("mutants/perturbed_sigma", {"sigma": {"quasi_hopf": "../group_s3.json", "form": form}})


if __name__ == "__main__":
    main()
