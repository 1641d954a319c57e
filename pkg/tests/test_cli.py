import json

import pytest
from click.testing import CliRunner

from edtopo.cli import main

TELO = "space: telophase\ncoord 0 = inf\ncoord 1 = 3\ndefault = periodic(inf*, 2)\n"


@pytest.fixture
def run():
    runner = CliRunner()

    def go(*args):
        return runner.invoke(main, [str(a) for a in args])
    return go


@pytest.fixture
def telo(tmp_path):
    p = tmp_path / "pt.txt"
    p.write_text(TELO)
    return p


def test_nbase_dump(run, telo):
    r = run("nbase", telo, "--stages", 100, "--dump")
    assert r.exit_code == 0
    assert len(r.output.split()) == 100


def test_nbase_check(run, telo):
    r = run("nbase", telo, "--check", "--stages", 10000, "--atom-bound", 200)
    assert r.exit_code == 0 and r.output.startswith("PASS")


def test_nbase_malformed(run, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("space: telophase\ncoord 0 = banana\ndefault = periodic(1)\n")
    r = run("nbase", bad)
    assert r.exit_code == 2
    assert "line 2" in r.output


def test_roundtrip_pass(run, telo):
    r = run("roundtrip", "telophase<->telograph", telo, "--stages", 2000, "--atom-bound", 50)
    assert r.exit_code == 0, r.output
    assert r.output.startswith("PASS")


def test_roundtrip_zero_stages(run, telo):
    r = run("roundtrip", "telophase<->telograph", telo, "--stages", 0)
    assert r.exit_code == 0
    assert "PASS" in r.stdout and "vacuous" in r.stdout
    assert "warning" in r.stderr


def test_roundtrip_mismatched_space(run, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("space: golomb\nvalue = 5\n")
    r = run("roundtrip", "telophase<->telograph", p)
    assert r.exit_code == 2


def test_roundtrip_unknown_name(run):
    r = run("roundtrip", "nope")
    assert r.exit_code == 2


def test_roundtrip_random_instances_json(run):
    r = run("roundtrip", "dcodcea->telograph", "--instances", 3, "--seed", 4, "--json")
    assert r.exit_code == 0
    rep = json.loads(r.output)
    assert rep["ok"] and len(rep["instances"]) == 3


def test_reduce(run, telo):
    r = run("reduce", "telophase<->telograph", telo, "--stages", 50)
    assert r.exit_code == 0


def test_classify(run):
    assert run("classify", "ord", "w2*0+w*1+0").output.strip() == "I_inf"
    assert run("classify", "ord", "w3").output.split() == ["I_0", "I_0bar"]
    assert run("classify", "kb", "[]").output.split() == ["I_0", "I_inf"]
    assert run("classify", "kb", "[2,5,0]").output.strip() == "I_1"
    assert run("classify", "ord", "0").exit_code == 2


def test_nbase_default_check(run, telo):
    assert run("nbase", telo, "--check").exit_code == 0


def test_witness_golomb(run):
    assert run("witness", "golomb", "encode", "110").output.strip() == "33"
    assert run("witness", "golomb", "decode", 33, "--length", 2).output.strip() == "11"


def test_witness_surj(run):
    r = run("witness", "surj", "telophase", "0,0,0,1")
    assert r.exit_code == 0 and r.output.strip() == "2"
    assert run("witness", "surj", "telophase", "1,0,0").output.strip() == "UNDETERMINED"
    assert run("witness", "surj", "doubleorigin", "2,3,0,0").exit_code == 1


def test_witness_preimage_and_amax(run):
    assert run("witness", "preimage", "telophase", "--bound", 8).exit_code == 0
    assert run("witness", "amax", "check", "len", 2).exit_code == 0
    assert run("witness", "amax", "check", "sigma", "0:3").exit_code == 0
    assert run("witness", "amax", "embed", 2, "--atoms", 8).exit_code == 0


def test_construct_writes_transcript(run, tmp_path):
    out = tmp_path / "t.tsv"
    r = run("construct", "proper-sigma2", "--stages", 200, "--out", out)
    assert r.exit_code == 0 and r.output.startswith("PASS")
    lines = out.read_text().splitlines()
    assert len(lines) == 200 and all(ln.endswith("invariants=OK") for ln in lines)


def test_construct_json_deterministic(run):
    a = run("construct", "no-minimal", "--stages", 500, "--json")
    b = run("construct", "no-minimal", "--stages", 500, "--json")
    assert a.exit_code == 0 and a.output == b.output
    assert json.loads(a.output)["ok"]


def test_construct_rejects_bad_target(run):
    r = run("construct", "no-minimal", "--stages", 10, "--target", "steps:1,0")
    assert r.exit_code == 2


def test_unknown_flag(run, telo):
    assert run("nbase", telo, "--bogus").exit_code == 2
