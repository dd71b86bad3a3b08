import io
import json
import subprocess
import sys

import jsonschema

from hdeform import theorems
from hdeform.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


def test_nf():
    assert call("nf", "grh", "alpha*b") == (0, "b*alpha + h*b^2\n", "")
    assert call("nf", "GrH", "h*h*alpha")[1] == "0\n"
    assert call("nf", "GrQ", "alpha*b")[1] == "q^-1*b*alpha\n"


def test_nf_usage_errors():
    status, _, err = call("nf", "GrH", "alpha b")
    assert status == 2 and "cannot parse" in err
    assert call("nf", "Gr", "alpha")[0] == 2
    assert call("nf", "GrH", "zeta")[0] == 2
    assert call("frobnicate")[0] == 2


def test_step_limit_exit():
    # memoized words cost no steps, so use a word longer than any other test builds
    status, _, err = call("--step-limit", "1", "nf", "GrQ", "delta*c*b*alpha*c*b*delta*c*b*alpha")
    assert status == 3 and "step limit" in err


def test_matrix():
    status, out, _ = call("matrix", "R_h")
    assert status == 0
    assert out.splitlines()[3] == "[  0   h  -h   1 ]"
    status, out, _ = call("matrix", "R_q", "--at-q1", "--json")
    assert json.loads(out)[0] == ["2", "0", "0", "0"]
    assert call("matrix", "R_h", "--h0", "--json")[1].count('"-1"') == 2
    status, _, err = call("matrix", "g", "--at-q1")
    assert status == 3 and "pole" in err
    assert call("matrix", "R_z")[0] == 2


def test_contract():
    status, out, _ = call("contract", "plane")
    assert status == 0
    assert "x*xi -> xi*x + h*x^2" in out and "eta*y -> y*eta" in out
    assert call("contract", "rmatrix")[1] == call("matrix", "R_h")[1]
    rules = call("contract", "group", "--h0")[1].splitlines()[1:]
    assert len(rules) == 8 and not any("h" in r.replace("alpha", "").replace("delta", "") for r in rules)


def test_verify_single_and_list():
    status, out, _ = call("verify", "eq16.rtt.grq")
    assert status == 0 and out.splitlines()[0].startswith("PASS")
    names = call("verify", "--list", "--convention", "both")[1].split()
    assert names == theorems.check_names(("graded", "ungraded"))
    assert call("verify", "eq99")[0] == 2


def test_verify_all_json(tmp_path):
    path = tmp_path / "report.json"
    status, out, _ = call("verify", "all", "--convention", "both", "--json", str(path))
    assert status == 0
    lines = out.splitlines()
    assert len(lines) == len(theorems.check_names(("graded", "ungraded"))) + 1
    rep = json.loads(path.read_text())
    jsonschema.validate(rep, theorems.report_schema())
    assert rep["conventions"] == ["graded", "ungraded"]
    assert rep["summary"]["failed"] == []


def test_output_is_byte_stable():
    first = call("verify", "all", "--json", "-")
    assert call("verify", "all", "--json", "-") == first
    assert call("presets", "--show", "GrHLoc") == call("presets", "--show", "GrHLoc")


def test_presets(tmp_path):
    status, out, _ = call("presets")
    assert status == 0 and out.startswith("Aq")
    path = tmp_path / "p.json"
    assert call("presets", "--export", str(path))[0] == 0
    assert len(json.loads(path.read_text())["presets"]) == len(out.splitlines())
    assert call("presets", "--show", "nope")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hdeform", "nf", "GrH", "delta*delta"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "-h*b*delta\n"
