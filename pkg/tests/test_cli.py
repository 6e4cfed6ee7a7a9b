import json
import subprocess
from pathlib import Path
import sys

import jsonschema
import pytest

from germcovers.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_report_envelope(capsys):
    code, rep = run_json(capsys, "verify-perm", "--max-param", "3")
    assert code == 0
    assert set(rep) >= {"command", "inputs", "items", "pass", "timing"}
    assert rep["command"] == "verify-perm"
    for it in rep["items"]:
        assert {"id", "pass"} <= set(it)


def test_verify_main_subset(capsys):
    code, rep = run_json(capsys, "verify-main", "--max-param", "1", "--rows", "F2_1,F4_6")
    assert code == 0
    ids = {it["id"]: it for it in rep["items"]}
    assert ids["F4_6:n=1,m=1@theorem"]["required"] is False
    assert ids["F2_1"]["groups"] == ["Kl4"]


def test_self_test_fails(capsys):
    code, rep = run_json(capsys, "verify-main", "--max-param", "1", "--rows", "F2_1", "--self-test")
    assert code == 1 and rep["pass"] is False


def test_parallel_jobs_agree(capsys):
    _, a = run_json(capsys, "verify-main", "--max-param", "1", "--rows", "F3_1,F4_3", "--variant", "proof")
    _, b = run_json(capsys, "verify-main", "--max-param", "1", "--rows", "F3_1,F4_3", "--variant", "proof", "--jobs", "2")
    strip = lambda r: [{k: v for k, v in it.items() if k != "timing"} for it in r["items"]]  # noqa: E731
    assert strip(a) == strip(b)


def test_classify_with_expectation(capsys):
    code, rep = run_json(capsys, "classify", "v*((v-u)^2 - u^5)", "--expect", "D_7")
    assert code == 0
    assert rep["items"][0]["computed"].startswith("D_7")
    code, _, _ = run(capsys, "classify", "v^2 - u^3", "--expect", "A_3")
    assert code == 1


def test_classify_reports_equation_parameters(capsys):
    _, rep = run_json(capsys, "classify", "v*((v-u^2)^2 - u^6)")
    it = rep["items"][0]
    assert it["equation_params"] == {"k": 2, "n": 1}
    assert it["alt_subscript"] == [9, 8]


def test_enumerate_with_hurwitz(capsys):
    code, rep = run_json(capsys, "enumerate", "T3[10,8]", "-d", "4", "--classes", "2|2|2", "--hurwitz")
    assert code == 0
    it = rep["items"][0]
    assert it["labels"] == ["S4"] and it["orbits"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "v^^2"],
        ["enumerate", "T4[2,2]", "--classes", "2|2"],
        ["enumerate", "A_3", "--classes", "2|2|2"],
        ["enumerate", "A_3", "-d", "7", "--classes", "2|2"],
        ["verify-perm", "--max-param", "9"],
        ["verify-main", "--rows", "F9_9"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_human_output(capsys):
    code, out, _ = run(capsys, "verify-braid")
    assert code == 0
    assert out.splitlines()[0].startswith("verify-braid: PASS")


def test_console_script_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "germcovers.cli", "verify-perm", "--max-param", "2", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"] is True


SCHEMA = json.loads((Path(__file__).parent.parent / "schema" / "report.schema.json").read_text())


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-main", "--max-param", "1"],
        ["verify-groups", "--max-param", "1"],
        ["verify-perm", "--max-param", "3"],
        ["verify-braid"],
        ["verify-klein"],
        ["classify", "v*((v-u^2)^2 - u^6)", "--expect", "T3[5,4]"],
        ["enumerate", "D_5", "--classes", "2,2|2|2", "--hurwitz"],
    ],
    ids=lambda a: a[0],
)
def test_reports_validate_against_schema(capsys, argv):
    code, rep = run_json(capsys, *argv)
    assert code == 0
    jsonschema.validate(rep, SCHEMA)
