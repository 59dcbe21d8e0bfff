import json
import random
import subprocess
import sys

import pytest

from kostka_duality.cli import jsonable, main, render, run
from kostka_duality.sheaf_models import dumps, ggm_to_json, random_amonodromic_ggm, random_product_ggm


def test_kostka_command():
    code, report = run(["kostka", "--lambda", "2,1", "--beta", "1,1,1"])
    assert code == 0
    assert report["result"] == {"kostka": 2}
    assert list(report) == ["command", "inputs", "passed", "result", "seconds"]


def test_small_kostka_command_reports_both_routes():
    code, report = run(["small-kostka", "--n", "5", "--lambda", "3,2,1", "--set", "2,4"])
    assert code == 0
    assert report["result"] == {"alternating_sum": 2, "descent_count": 2, "agree": True}


def test_empty_subset_is_allowed():
    code, report = run(["small-kostka", "--n", "2", "--lambda", "3", "--set", ""])
    assert code == 0 and report["result"]["descent_count"] == 1


@pytest.mark.parametrize("argv,token", [
    (["kostka", "--lambda", "2,x", "--beta", "1,1,1"], "'x'"),
    (["kostka", "--lambda", "1,2", "--beta", "1,1,1"], "'1,2'"),
    (["small-kostka", "--n", "3", "--lambda", "3,1", "--set", "7"], "'7'"),
    (["small-kostka", "--n", "3", "--lambda", "2,1", "--set", "1"], "'2,1'"),
    (["solomon", "--coxeter", "B3"], "'B3'"),
    (["master-complex", "--n", "9"], "9"),
    (["dl", "--n", "2", "--q", "4"], "4"),
    (["dl", "--n", "3", "--q", "3", "--max-flags", "100"], "--max-flags"),
    (["selftest", "--only", "11"], "11"),
    (["frobnicate"], "frobnicate"),
])
def test_usage_errors_exit_2_and_name_the_token(argv, token):
    code, report = run(argv)
    assert code == 2
    assert token in report["error"]


def test_syt_command():
    code, report = run(["syt", "--lambda", "3,2,1", "--set", "2,4"])
    assert code == 0 and report["result"]["count"] == 2
    assert all(t["descents"] == [2, 4] for t in report["result"]["tableaux"])


def test_solomon_command():
    code, report = run(["solomon", "--coxeter", "I2:7"])
    assert code == 0
    assert report["result"]["solomon"]["ribbon_dims"] == {"": 1, "1": 6, "2": 6, "1,2": 1}


def test_descent_basis_command():
    code, report = run(["descent-basis"])
    assert code == 0 and report["result"]["matches_reference_s3"]
    assert report["result"]["elements"]["s1"] == "-1 + s1 - s2 + s1s2"


def test_master_complex_command_with_global_flags_anywhere():
    code, report = run(["--threads", "2", "master-complex", "--n", "2", "--compare-vanishing"])
    assert code == 0
    assert report["result"]["master"]["term_dims"] == [6, 6, 1]
    code2, report2 = run(["master-complex", "--n", "2", "--compare-vanishing", "--threads", "1"])
    assert report2["result"] == report["result"]


def test_dl_command():
    code, report = run(["dl", "--n", "2", "--q", "2"])
    assert code == 0
    assert report["result"]["complete_flags"] == 21
    assert report["result"]["cohomology"] == [8, 0, 0]


def test_selftest_subset():
    code, report = run(["--quiet", "selftest", "--only", "1,10"])
    assert code == 0
    assert [c["criterion"] for c in report["result"]["criteria"]] == [1, 10]


@pytest.fixture
def sheaf_files(tmp_path):
    rng = random.Random(5)
    mono = random_product_ggm(rng, 2, 4)
    amono = random_amonodromic_ggm(rng, 2, 3)
    paths = {}
    for name, G in (("mono", mono), ("amono", amono)):
        p = tmp_path / f"{name}.json"
        p.write_text(dumps(ggm_to_json(G)))
        paths[name] = p
    return paths, tmp_path


def test_ggm_file_pipeline(sheaf_files):
    paths, tmp = sheaf_files
    assert run(["ggm", "check", "--in", str(paths["mono"])])[0] == 0
    hyp = tmp / "hyp.json"
    code, report = run(["ggm", "to-hyp", "--in", str(paths["mono"]), "--out", str(hyp)])
    assert code == 0 and report["result"]["takeuchi"]
    assert run(["hyp", "check", "--in", str(hyp)])[0] == 0
    code, report = run(["hyp", "vanishing", "--in", str(hyp)])
    assert code == 0 and report["result"]["acyclic_in_positive_degrees"]
    back = tmp / "back.json"
    assert run(["hyp", "to-ggm", "--in", str(hyp), "--out", str(back)])[0] == 0
    assert run(["ggm", "check", "--in", str(back)])[0] == 0
    # monodromic input is not amonodromic: a failed verdict, not a usage error
    assert run(["hyp", "amono", "--in", str(hyp)])[0] == 1


def test_ft_swaps_complementary_stalks(sheaf_files):
    paths, tmp = sheaf_files
    out = tmp / "ft.json"
    code, _ = run(["ggm", "ft", "--in", str(paths["amono"]), "--out", str(out)])
    assert code == 0
    before = json.loads(paths["amono"].read_text())["stalks"]
    after = json.loads(out.read_text())["stalks"]
    swap = {"": "1,2", "1": "2", "2": "1", "1,2": ""}
    assert all(after[k] == before[swap[k]] for k in before)
    twice = tmp / "ft2.json"
    run(["ggm", "ft", "--in", str(out), "--out", str(twice)])
    assert twice.read_text() == paths["amono"].read_text()


def test_amono_command_on_amonodromic_sheaf(sheaf_files):
    paths, tmp = sheaf_files
    hyp = tmp / "ahyp.json"
    run(["ggm", "to-hyp", "--in", str(paths["amono"]), "--out", str(hyp)])
    code, report = run(["hyp", "amono", "--in", str(hyp)])
    assert code == 0 and report["result"]["amonodromic"]


def test_check_rewrites_a_file_byte_identically(sheaf_files):
    paths, tmp = sheaf_files
    out = tmp / "copy.json"
    assert run(["ggm", "check", "--in", str(paths["mono"]), "--out", str(out)])[0] == 0
    assert out.read_text() == paths["mono"].read_text()


def test_invalid_sheaf_exits_1(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 1, "stalks": {"": 1, "1": 1}, "u": {"1>1": [["1"]]}, "v": {"1>1": [["-1"]]}}))
    code, report = run(["ggm", "check", "--in", str(p)])
    assert code == 1
    assert report["result"]["violation"]["axiom"] == "monodromy_invertible"
    assert run(["ggm", "ft", "--in", str(p)])[0] == 1


@pytest.mark.parametrize("content,token", [
    ("{not json", "not JSON"),
    ('{"n": 1, "stalks": {"9": 1}}', "'9'"),
    ('{"n": 1, "stalks": {"": 1, "1": 1}, "u": {"1>1": [["1", "1"]]}}', "u[1>1]"),
    ("[1, 2]", "JSON object"),
])
def test_malformed_files_exit_2(tmp_path, content, token):
    p = tmp_path / "f.json"
    p.write_text(content)
    code, report = run(["ggm", "check", "--in", str(p)])
    assert code == 2 and token in report["error"]


def test_missing_file_exit_2():
    code, report = run(["hyp", "check", "--in", "/nonexistent/x.json"])
    assert code == 2 and "/nonexistent/x.json" in report["error"]


def test_text_report_and_main(capsys):
    assert main(["kostka", "--lambda", "2,1", "--beta", "1,1,1", "--report", "text"]) == 0
    out = capsys.readouterr().out
    assert "result.kostka: 2" in out
    assert main(["kostka", "--lambda", "2,1", "--beta", "1,1,1"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["kostka"] == 2


def test_jsonable_handles_exact_types():
    from fractions import Fraction

    from kostka_duality.exact_linalg import ExactMatrix

    data = {(1, 2): Fraction(1, 3), "m": ExactMatrix.identity(1), "t": (1, 2)}
    assert jsonable(data) == {"1,2": "1/3", "m": [["1"]], "t": [1, 2]}
    assert json.loads(render(jsonable(data)))["1,2"] == "1/3"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kostka_duality", "kostka", "--lambda", "3", "--beta", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["kostka"] == 1


def test_environment_thread_budget(monkeypatch):
    monkeypatch.setenv("DD_THREADS", "2")
    code, report = run(["master-complex", "--n", "2"])
    assert code == 0 and report["result"]["master"]["cohomology"] == [1, 0, 0]
