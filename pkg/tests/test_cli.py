import json

import pytest

from heistruct.cli import certify_family, main
from heistruct.tautological import generate_family, verify_certificate


def run(args, capsys):
    code = main(args)
    return code, capsys.readouterr()


def test_build_example_and_descend(tmp_path, capsys):
    ex = tmp_path / "ex.json"
    assert main(["build-example", "--n", "1", "--k", "0", "--out", str(ex)]) == 0
    obj = json.loads(ex.read_text())
    assert set(obj) == {"rep", "boundary", "reference_point"}
    code, out = run(["descend", "--in", str(ex)], capsys)
    assert code == 0
    assert json.loads(out.out)["tautological"] is True


def test_build_example_bad_k(capsys):
    code, out = run(["build-example", "--n", "1", "--k", "3"], capsys)
    assert code == 2
    assert "k must lie" in out.err


def test_closure_accepts_matrices_and_actions(tmp_path, capsys):
    ex = tmp_path / "ex.json"
    main(["build-example", "--n", "1", "--k", "1", "--out", str(ex)])
    code, out = run(["closure", "--in", str(ex)], capsys)
    assert code == 0
    obj = json.loads(out.out)
    assert len(obj["basis"]) == 5 and "filtration" in obj
    mats = tmp_path / "m.json"
    mats.write_text(json.dumps([{"rows": 3, "cols": 3, "entries": [["0", "1", "0"], ["0", "0", "0"], ["0", "0", "0"]]},
                                {"rows": 3, "cols": 3, "entries": [["0", "0", "0"], ["0", "0", "1"], ["0", "0", "0"]]}]))
    code, out = run(["closure", "--in", str(mats)], capsys)
    assert code == 0 and len(json.loads(out.out)["basis"]) == 4


def test_taut_invariant_certify(tmp_path, capsys):
    left, right = tmp_path / "l.json", tmp_path / "r.json"
    a, b = generate_family(1, [1, 2])
    left.write_text(json.dumps(a.to_json()))
    right.write_text(json.dumps(b.to_json()))
    code, out = run(["taut-from-matrix", "--in", str(left)], capsys)
    assert code == 0 and len(json.loads(out.out)["algebra"]["basis"]) == 4
    code, out = run(["invariant", "--in", str(right)], capsys)
    assert code == 0 and json.loads(out.out)["polynomial"] == "x^2 + 4"
    code, out = run(["certify", "--left", str(left), "--right", str(right)], capsys)
    assert code == 0 and verify_certificate(json.loads(out.out))
    code, out = run(["certify", "--left", str(left), "--right", str(left)], capsys)
    assert code == 1 and json.loads(out.out)["verdict"] == "undistinguished"


def test_bad_input_files(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["invariant", "--in", str(bad)], capsys)[0] == 2
    bad.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [["0", "0"], ["0", "0"]]}))
    assert run(["invariant", "--in", str(bad)], capsys)[0] == 2
    assert run(["invariant", "--in", str(tmp_path / "missing.json")], capsys)[0] == 2
    assert run(["no-such-command"], capsys)[0] == 2


def test_certify_family_command(tmp_path, capsys):
    out = tmp_path / "fam.json"
    assert main(["certify-family", "--n", "1", "--labels", "1,2,3,4,5", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["certificates"]) == 10
    assert all(c["verdict"] == "inequivalent" for c in doc["certificates"])
    assert run(["certify-family", "--n", "1", "--labels", "1"], capsys)[0] == 2
    assert run(["certify-family", "--n", "1", "--labels", "1,x"], capsys)[0] == 2


def test_certify_family_function(tmp_path):
    doc = certify_family(2, 2, tmp_path / "f.json")
    assert len(doc["certificates"]) == 1
    assert json.loads((tmp_path / "f.json").read_text()) == doc
    with pytest.raises(ValueError):
        certify_family(1, 1)


def test_verify_report_is_deterministic(tmp_path, capsys):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--suite", "dimension-bounds,descent-taut,structure-roundtrip", "--n-range", "1..2", "--seed", "7"]
    assert main(args + ["--report", str(r1)]) == 0
    assert main(args + ["--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    doc = json.loads(r1.read_text())
    assert doc["seed"] == 7 and all(r["status"] == "pass" for r in doc["reports"])
    dims = [r["summary"] for r in doc["reports"] if r["check"] == "dim-bounds"]
    assert "[4, 5]" in dims[0] and "[6, 7, 8]" in dims[1]


def test_verify_usage_errors(capsys):
    assert run(["verify", "--suite", "bogus", "--n-range", "1..2"], capsys)[0] == 2
    assert run(["verify", "--suite", "dim-bounds", "--n-range", "3..1"], capsys)[0] == 2


def test_ht_remark_message(capsys):
    code, out = run(["verify", "--suite", "ht-remark", "--n-range", "3..3"], capsys)
    assert code == 0
    assert "no Heisenberg preimage possible" in json.loads(out.out)["reports"][0]["summary"]
