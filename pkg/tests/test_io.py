import json

import pytest

from quasihopf import io
from quasihopf.field import QQ
from conftest import ALL, gallery_path, load, sweedler_twisted


@pytest.mark.parametrize("name", ALL)
def test_round_trip(name):
    H = load(name)
    H2 = io.loads(io.dumps(H))
    assert H2.structure_equal(H)
    assert io.dumps(H2) == io.dumps(H)


def test_round_trip_without_inverses():
    H = sweedler_twisted()
    H2 = io.loads(io.dumps(H, with_inverses=False))
    assert H2.structure_equal(H)


def test_rationals_serialize_as_fractions():
    text = io.dumps(sweedler_twisted())
    assert '"1/2"' in text or '"-1/2"' in text


def test_malformed_inputs():
    with pytest.raises(io.ParseError):
        io.loads("{not json")
    good = json.loads(gallery_path("group_z2").read_text())
    bad = dict(good, mul=[[0, 0, 5, "1"]])
    with pytest.raises(io.ParseError, match="out of range"):
        io.loads(json.dumps(bad))
    bad = dict(good, mul=[[0, 0, 0, 1.5]])
    with pytest.raises(io.ParseError, match="bad scalar"):
        io.loads(json.dumps(bad))
    bad = dict(good)
    del bad["delta"]
    with pytest.raises(io.ParseError, match="delta"):
        io.loads(json.dumps(bad))


def test_invalid_structure_is_refused_unless_forced():
    data = json.loads(gallery_path("mutants/wrong_beta").read_text())
    with pytest.raises(io.ValidationError) as err:
        io.loads(json.dumps(data))
    assert err.value.report.first_failure().name == "drinfeld_reassociator"
    H = io.loads(json.dumps(data), force=True)
    assert H.beta != load("twisted_dual_z2").beta


def test_max_dim_guard(monkeypatch):
    monkeypatch.setenv("QHOPF_MAX_DIM", "4")
    with pytest.raises(io.ParseError, match="QHOPF_MAX_DIM"):
        io.load(gallery_path("group_s3"))
    assert io.load(gallery_path("sweedler")).dim == 4


def test_save_and_load(tmp_path):
    H = load("twisted_dual_z3_gf7")
    p = tmp_path / "h.json"
    io.save(H, p)
    assert io.load(p).structure_equal(H)
