from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hassett.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def structured(capsys, *argv):
    status, out, _ = run(capsys, *argv)
    return status, json.loads(out)


def test_chambers_by_type(capsys):
    status, doc = structured(capsys, "chambers", "5", "--by-type")
    assert status == 0
    assert doc["results"] == {"total": 76, "by_type": {"A": 1, "B": 10, "C": 30, "D": 20, "E": 10, "F": 5}}
    assert doc["schema"] == "report/1" and doc["walls"]["order"][0] == "123"


def test_chambers_count_only(capsys):
    status, doc = structured(capsys, "chambers", "4", "--count-only")
    assert status == 0 and doc["results"] == {"total": 1}


def test_chambers_listing_and_cache(capsys, tmp_path):
    path = tmp_path / "c5.json"
    status, doc = structured(capsys, "chambers", "5", "--cache", str(path))
    assert status == 0 and len(doc["results"]["chambers"]) == 76 and path.exists()
    first = doc["results"]["chambers"][0]
    assert first["type"] == "A" and first["representative"] == ["1/2"] * 5
    again = structured(capsys, "chambers", "5", "--cache", str(path))[1]
    assert again == doc


def test_chambers_input_errors(capsys, tmp_path):
    assert run(capsys, "chambers", "8")[0] == 2
    assert run(capsys, "chambers", "6", "--by-type")[0] == 2
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert run(capsys, "chambers", "5", "--cache", str(blocker / "sub" / "c.json"))[0] == 2


def test_classify(capsys):
    _, doc = structured(capsys, "classify", "1,1,1,1,1")
    assert doc["results"]["chamber"]["type"] == "A" and doc["results"]["chamber"]["surface"]["degree"] == 5
    _, doc = structured(capsys, "classify", "1,1,3/10,3/10,3/10")
    c = doc["results"]["chamber"]
    assert (c["type"], c["surface"]["degree"], c["surface"]["minus_one_curves"]) == ("B", 6, 6)
    _, doc = structured(capsys, "classify", "1,1,1/3,1/3,1/3")
    assert doc["results"] == {"on_wall": [[3, 4, 5]]}


@pytest.mark.parametrize("weights", ["1,1,x,1,1", "1,1,1/0,1,1", "1,,1,1,1", "1,1,2,1,1", "1/2,1/2,1/2,1/4,1/4"])
def test_classify_errors(capsys, weights):
    status, out, err = run(capsys, "classify", weights)
    assert status == 2 and not out and err.startswith("error:")


def test_verify_suites(capsys):
    for suite in ("intersections", "eq1", "theorem", "table1", "section5"):
        status, doc = structured(capsys, "verify", suite)
        assert status == 0 and doc["results"]["passed"], suite
        assert all(c["claim"] for c in doc["results"]["checks"])


def test_verify_theorem_options(capsys):
    status, doc = structured(capsys, "verify", "theorem", "--beta", "3/4", "--alpha", "1")
    assert status == 0 and doc["inputs"] == {"suite": "theorem", "alpha": "1", "beta": "3/4"}
    assert structured(capsys, "verify", "theorem", "--beta", "1/3")[0] == 0


def test_verify_failure_exit_status(capsys):
    # alpha above the sampled interval makes some exceptional coefficient negative
    status, doc = structured(capsys, "verify", "section5", "--alpha", "1")
    assert status == 1 and not doc["results"]["passed"]


def test_verify_bad_input(capsys):
    assert run(capsys, "verify", "theorem", "--beta", "x")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2


def test_git(capsys):
    _, doc = structured(capsys, "git", "2/3,1/3,1/3,1/3,1/3", "--semistable")
    assert doc["results"]["semistable_count"] == 4 and len(doc["results"]["semistable"]) == 4
    _, doc = structured(capsys, "git", "1,1,1,1,1", "--match")
    assert doc["results"]["normalized"] == ["2/5"] * 5 and doc["results"]["chamber"]["type"] == "A"
    _, doc = structured(capsys, "git", "1/2,1/2,1/2,1/4,1/4")
    assert doc["results"]["typical"] is False
    assert run(capsys, "git", "1/2,1/2,1/2,1/4,1/4", "--match")[0] == 2
    assert run(capsys, "git", "1,0,1")[0] == 2


def test_dag(capsys, tmp_path):
    path = tmp_path / "dag.dot"
    status, doc = structured(capsys, "dag", "--dot", str(path))
    assert status == 0
    r = doc["results"]
    assert r["vertices"] == 76 and r["type_a_out_degree"] == 10 and r["sink_types"] == {"E": 10, "F": 5}
    assert path.read_text().startswith("digraph")
    assert run(capsys, "dag", "--dot", str(tmp_path / "missing" / "x.dot"))[0] == 2


def test_text_format(capsys):
    status, out, _ = run(capsys, "--format", "text", "chambers", "5", "--by-type")
    assert status == 0 and "total: 76" in out and "schema: report/1" in out


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "hassett", *argv], capture_output=True, check=True)
    return proc.stdout


@pytest.mark.parametrize("argv", [("chambers", "5", "--by-type"), ("verify", "intersections")])
def test_byte_identical_reports(argv):
    first = _cli(*argv)
    assert _cli(*argv) == first
    assert _cli("--threads", "4", *argv) == first
