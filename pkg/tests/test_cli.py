from __future__ import annotations

import copy
import json
import subprocess
import sys

import pytest

from qk.cli import VERBS, main
from qk.fixtures import DESK_PATH, desk_document
from qk.io import load_path
from qk.suites import SUITES

DESK = str(DESK_PATH)

CONSTRUCTIONS = [("idm", "omega3"), ("idm", "qnc"), ("centre", "omega3"), ("centre", "qnc"),
                 ("suspension", "bool4"), ("presheaf-category", "twochain"),
                 ("cauchy-completion", "idm_omega3_m"), ("cauchy-completion", "disc_two"),
                 ("module-of-category", "twochain"), ("category-of-module", "omega3_open"),
                 ("category-of-module", "qnc_rep")]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_fixture(capsys):
    code, out, err = run(capsys, "validate", DESK)
    assert code == 0
    assert json.loads(out)["passed"] is True
    assert err.startswith("PASS validate")


def test_validate_broken_composition(capsys, tmp_path):
    doc = copy.deepcopy(desk_document())
    comp = doc["quantaloids"]["qnc"]["composition"]
    row = next(r for r in comp if r[3] == "001" and r[4] == "001")
    row[5] = "001"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1
    failed = [c for c in json.loads(out)["checks"] if not c["passed"]]
    # the representable module over the broken base fails along with it
    assert [c["name"] for c in failed] == ["quantaloid qnc", "module qnc_rep"]
    assert failed[0]["witness"][:3] == ["*", "*", "*"]
    assert "FAIL quantaloid qnc" in err


def test_validate_malformed(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\"categories\": 3}", encoding="utf-8")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2 and "categories" in err


def test_unknown_reference_is_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"modules": {"m": {"base": "nope", "zero": True}}}), encoding="utf-8")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2 and "modules.m" in err


def test_usage_error(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


@pytest.mark.parametrize("verb, name", CONSTRUCTIONS)
def test_construct_round_trips(capsys, tmp_path, verb, name):
    out_path = tmp_path / "out.json"
    code, out, _ = run(capsys, "construct", verb, name, DESK, "--out", str(out_path))
    assert code == 0 and out == ""
    ws = load_path(out_path)
    code, _, _ = run(capsys, "validate", str(out_path))
    assert code == 0
    code, out2, _ = run(capsys, "construct", verb, name, DESK)
    assert out2 == out_path.read_text(encoding="utf-8")
    assert ws.kinds


def test_construct_examples(capsys):
    _, out, _ = run(capsys, "construct", "idm", "omega3", DESK)
    assert json.loads(out)["quantaloids"]["idm_omega3"]["objects"] == ["⊥", "m", "⊤"]
    _, out, _ = run(capsys, "construct", "centre", "omega3", DESK)
    q = json.loads(out)["quantaloids"]["Z_omega3"]
    assert len(q["homs"][0]["lattice"]["elements"]) == 3
    _, out, _ = run(capsys, "construct", "presheaf-category", "twochain", DESK)
    assert len(json.loads(out)["categories"]["P_twochain"]["objects"]) == 3


def test_construct_embedding_reloads(capsys, tmp_path):
    out_path = tmp_path / "cc.json"
    run(capsys, "construct", "cauchy-completion", "idm_omega3_m", DESK, "--out", str(out_path))
    ws = load_path(out_path)
    f = ws.functors["cauchy_idm_omega3_m_embedding"]
    assert len(f.target) == 2


def test_construct_missing_name(capsys):
    code, _, err = run(capsys, "construct", "idm", "nope", DESK)
    assert code == 3 and "nope" in err


def test_construct_precondition_failure(capsys):
    code, _, err = run(capsys, "construct", "module-of-category", "disc_two", DESK)
    assert code == 1 and "cocomplete" in err


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_check_suites_pass(capsys, suite):
    code, out, err = run(capsys, "check", suite, DESK)
    report = json.loads(out)
    assert code == 0, err
    assert report["passed"] and report["checks"]


def test_check_missing_fixture(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("{}", encoding="utf-8")
    for suite in SUITES:
        code, _, err = run(capsys, "check", suite, str(path))
        assert code == 3, suite
        assert "requires" in err


def test_check_kz_beyond_caps(capsys):
    code, out, err = run(capsys, "check", "kz", DESK, "--max-hom", "2")
    assert code == 1 and out == "" and "ResourceError" in err


def test_verbosity_levels(capsys, monkeypatch):
    monkeypatch.setenv("QK_VERBOSE", "0")
    _, out0, err0 = run(capsys, "check", "prop10", DESK)
    monkeypatch.setenv("QK_VERBOSE", "2")
    _, out2, err2 = run(capsys, "check", "prop10", DESK)
    assert out0 == out2
    assert len(err0.splitlines()) == 1 and len(err2.splitlines()) > 1


def test_verbs_are_documented():
    assert set(VERBS) == {"idm", "presheaf-category", "cauchy-completion", "category-of-module",
                          "module-of-category", "centre", "suspension"}


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qk", "validate", DESK],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
