import io
import json
import subprocess
import sys

import pytest

from flagchow.cli import main, validate_report


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    data = json.loads(text)
    assert validate_report(data) == []
    return code, data


def test_degree_example():
    code, data = run_json("degree", "--n", "3", "--exponents", "0,4,0")
    assert code == 0 and data["status"] == "ok"
    assert data["payload"]["degree"] == "1/2"


def test_schubert_example():
    code, data = run_json("schubert", "--perm", "3,2,1")
    assert code == 0 and data["payload"]["polynomial"] == "X1^2*X2"


def test_bott_chern_command():
    code, data = run_json("bott-chern", "--n", "3")
    assert code == 0
    assert data["payload"]["total"] == "- O12 - O13 - O23 - O12^O13 - O12^O23 + 3 * O13^O23"
    assert data["payload"]["components"]["2"] == "- O12 - O13 - O23"
    code, data = run_json("bott-chern", "--n", "3", "--flag", "1,3")
    assert code == 0 and data["payload"]["flag"] == "1,3"


def test_table_defaults_to_tsv():
    code, text = run("table", "--n", "2")
    assert code == 0
    assert text.splitlines() == ["exponents\tdegree", "2,0\t1/2", "1,1\t-1/2", "0,2\t1/2"]
    code, data = run_json("table", "--n", "2", "--format", "json", "--times4")
    assert data["payload"]["entries"][0] == {"exponents": "2,0", "degree": "1/2", "times4": "2"}


def test_height_command():
    code, data = run_json("height", "--flag", "1,2")
    assert code == 0 and data["payload"]["height"] == "1/2"
    code, data = run_json("height", "--flag", "1,3")
    assert data["payload"]["height"] == "5/4" and "multinomial" not in data["payload"]


def test_monk_command():
    code, data = run_json("monk", "--k", "1", "--perm", "2,1", "--n", "2")
    assert code == 0 and data["payload"]["agrees_with_formula"] is True
    assert data["payload"]["product"] == {"schubert": {}, "form": "+ O12", "flag": "1,2"}


@pytest.mark.parametrize(
    "argv",
    [
        ("degree", "--n", "3", "--exponents", "1,1"),
        ("degree", "--n", "3", "--exponents", "a,b,c"),
        ("degree", "--n", "3", "--exponents", "1,1,1"),
        ("schubert", "--perm", "1,1"),
        ("height", "--flag", "2,1"),
        ("monk", "--k", "3", "--perm", "2,1", "--n", "3"),
        ("table", "--n", "7"),
        ("verify", "--suite", "nope"),
        ("verify", "--n-max", "9"),
        ("frobnicate",),
        (),
    ],
)
def test_usage_errors_exit_2(argv):
    code, data = run_json(*argv)
    assert code == 2 and data["status"] == "usage-error" and data["payload"]["error"]


def test_cap_override(monkeypatch):
    monkeypatch.setenv("FLAGCHOW_NMAX", "2")
    code, data = run_json("degree", "--n", "3", "--exponents", "0,4,0")
    assert code == 2 and "cap" in data["payload"]["error"]
    monkeypatch.setenv("FLAGCHOW_NMAX", "junk")
    assert run_json("degree", "--n", "2", "--exponents", "2,0")[0] == 2


def test_determinism():
    a = run_json("table", "--n", "3", "--format", "json")[1]
    b = run_json("table", "--n", "3", "--format", "json")[1]
    assert json.dumps(a["payload"], sort_keys=True) == json.dumps(b["payload"], sort_keys=True)
    assert run("table", "--n", "3")[1] == run("table", "--n", "3")[1]


def test_rationals_are_strings():
    _, data = run_json("table", "--n", "3", "--format", "json")
    for entry in data["payload"]["entries"]:
        num, den = entry["degree"].split("/")
        assert int(den) > 0 and int(num) == int(num)
    assert validate_report({"status": "ok", "payload": {"x": 0.5}, "meta": {"command": "c", "seconds": 0}})


def test_verify_small_run_passes():
    code, data = run_json("verify", "--suite", "all", "--n-max", "2")
    assert code == 0 and all(c["passed"] for c in data["payload"]["checks"])


def test_verify_forms_calibration():
    code, data = run_json("verify", "--suite", "forms", "--n-max", "4")
    assert code == 0
    names = {c["name"] for c in data["payload"]["checks"]}
    assert "volume of the complete flag is prod 1/k!" in names


def test_verify_chow_reports_per_check():
    code, data = run_json("verify", "--suite", "chow", "--n-max", "3")
    checks = {c["name"]: c for c in data["payload"]["checks"]}
    for name in (
        "involution symmetry deg(x^^k) = (-1)^|k| deg(mirror)",
        "multiply agrees with the arithmetic Monk formula",
        "x^_1^{n+1} and x^_n^{n+1} vanish",
        "partial-flag products agree with the complete flag",
    ):
        assert checks[name]["passed"]
    failed = [c for c in checks.values() if not c["passed"]]
    assert code == (1 if failed else 0)
    assert all(c["counterexamples"] for c in failed)


def test_verify_tsv():
    code, text = run("verify", "--suite", "perm", "--n-max", "3", "--format", "tsv")
    assert code == 0
    assert text.splitlines()[0] == "suite\tcheck\tpassed\tcases"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "flagchow", "schubert", "--perm", "1,3,2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["payload"]["polynomial"] == "X1 + X2"
