import json
from pathlib import Path

import pytest
import yaml

from lierigid.cli import main

INPUTS = Path(__file__).resolve().parents[1] / "inputs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out.strip() else None, err


def test_validate_ok(capsys):
    code, doc, _ = run_json(capsys, "validate", INPUTS / "sl2.json")
    assert code == 0 and doc["summary"]["fail"] == 0


def test_validate_reports_jacobi_witness(capsys):
    code, doc, _ = run_json(capsys, "validate", INPUTS / "sl2_perturbed.json")
    assert code == 1
    viol = doc["values"]["jacobi_violations"]
    assert viol == [{"triple": ["h", "e", "f"], "residual": "2*e"}]


def test_yaml_is_default(capsys):
    code, out, _ = run(capsys, "validate", INPUTS / "sl2.json")
    assert code == 0
    assert yaml.safe_load(out)["schema"] == "lierigid-report/1"


def test_rigidity_borel(capsys):
    code, doc, _ = run_json(capsys, "rigidity", INPUTS / "sl2_borel.json")
    v = doc["values"]
    assert code == 0 and (v["dim_Z1"], v["dim_B1"], v["rigid"]) == (1, 1, True)


def test_rigidity_override_subalgebra(capsys):
    code, doc, _ = run_json(capsys, "rigidity", INPUTS / "sl2.json", "--subalgebra", "1")
    assert code == 0 and doc["values"]["dim_g"] == 1


def test_cohomology_adjoint(capsys):
    code, doc, _ = run_json(capsys, "cohomology", INPUTS / "sl2.json", "--degree", "1", "--module", "adjoint")
    assert code == 0
    v = doc["values"]
    assert (v["dim_Z1"], v["dim_B1"], v["dim_H1"]) == (3, 3, 0)


def test_orbit_dim_deterministic(capsys):
    _, a, _ = run_json(capsys, "orbit-dim", INPUTS / "sl2_sym4.json", "--samples", "5", "--seed", "3")
    _, b, _ = run_json(capsys, "orbit-dim", INPUTS / "sl2_sym4.json", "--samples", "5", "--seed", "3")
    assert a == b and a["values"]["orbit_dim"] == 3


def test_maximality(capsys):
    code, doc, _ = run_json(capsys, "maximality", INPUTS / "sl2_sym4.json")
    assert code == 0 and doc["values"]["maximal"] is True


def test_family_check_table(capsys):
    code, doc, _ = run_json(capsys, "family-check", INPUTS / "familia1.json")
    assert code == 0
    assert doc["values"]["table"] == {"[X1,X2]": "X2", "[X1,X3]": "t*X2 + X3", "[X2,X3]": "0"}


def test_form_exceptional(capsys):
    code, doc, _ = run_json(capsys, "form", INPUTS / "exceptional_p3.json", "--frobenius",
                            "--kupka", "0:1:0:0,1:1:1:1")
    assert code == 0
    assert doc["values"]["degree"] == 3
    assert doc["summary"]["fail"] == 0


def test_form_needs_t(capsys):
    code, _, err = run(capsys, "form", INPUTS / "familia1.json")
    assert code == 2 and "--t" in err


def test_catalog_familia1(capsys):
    code, doc, _ = run_json(capsys, "catalog", "run", "familia1", "--n", "5", "--t", "1")
    assert code == 0
    assert doc["values"]["rigidity"]["dim_Z1"] == 32
    assert doc["values"]["rigidity"]["dim_B1"] == 28


def test_catalog_aff_so5(capsys):
    code, doc, _ = run_json(capsys, "catalog", "run", "aff-so5-quadric")
    assert code == 0 and doc["summary"]["literature_ok"]


def test_catalog_all_ordered(capsys):
    code, out, _ = run(capsys, "catalog", "run", "--all", "--jobs", "2", "--json", "--samples", "10")
    assert code == 0
    docs = json.loads(out)
    _, listing, _ = run_json(capsys, "catalog", "list")
    assert [d["subject"] for d in docs] == [e["name"] for e in listing["values"]["entries"]]


def test_json_byte_identical(capsys):
    _, a, _ = run(capsys, "catalog", "run", "sl2-sym4", "--json")
    _, b, _ = run(capsys, "catalog", "run", "sl2-sym4", "--json")
    assert a == b


def test_timing_flag(capsys):
    _, doc, _ = run_json(capsys, "catalog", "run", "exceptional-p3", "--timing")
    assert "timing" in doc


@pytest.mark.parametrize("argv", [
    ["validate", "missing.json"],
    ["catalog", "run", "nonexistent"],
    ["catalog", "run", "familia1", "--n", "4"],
    ["form", str(INPUTS / "exceptional_p3.json"), "--kupka", "0:1:0"],
    ["rigidity", str(INPUTS / "sl2.json"), "--subalgebra", "7"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_malformed_document(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "fields", "ambient": {"type": "projective", "n": 2}, '
                   '"fields": [{"components": ["x0", "x5", "0"]}]}')
    code, _, _ = run(capsys, "orbit-dim", bad)
    assert code == 2
    bad.write_text("{not json")
    code, _, _ = run(capsys, "validate", bad)
    assert code == 2


def test_non_closed_subalgebra_rejected(capsys, tmp_path):
    doc = json.loads((INPUTS / "sl2.json").read_text())
    doc["subalgebra"] = [[0, 1, 0], [0, 0, 1]]
    p = tmp_path / "g.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, "rigidity", p)
    assert code == 2 and "closed" in err
