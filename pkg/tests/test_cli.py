import json
import subprocess
import sys

import pytest

from normlab.cli import CACHE_ENV, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT, EXIT_OK, main
from normlab.corpus import builtin_group


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    return json.loads(out)


def test_group_info_examples(capsys):
    s4 = run_json(capsys, "group", "info", "--builtin", "S4")
    assert s4["order"] == 24 and s4["chief_factor_orders"] == [4, 3, 2]
    assert s4["fitting_subgroup"]["order"] == 4 and s4["fitting_length"] == 3
    c1 = run_json(capsys, "group", "info", "--builtin", "C1")
    assert c1["order"] == 1 and c1["subgroups"] == 1 and c1["chief_factor_orders"] == []
    assert run_json(capsys, "group", "info", "--builtin", "A5")["subgroups"] == 59


def test_compute_examples(capsys):
    r = run_json(capsys, "compute", "norm", "--builtin", "Q8", "--H", "1", "--F", "1")
    assert r["result"]["order"] == 8
    r = run_json(capsys, "compute", "hypercentre", "--builtin", "S3", "--pi", "{2}", "--F", "N")
    assert r["result"]["order"] == 6
    r = run_json(capsys, "compute", "residual", "--builtin", "S3", "--F", "A")
    assert r["result"]["order"] == 3 and "elements" not in r["result"]


@pytest.mark.parametrize("argv,order", [
    (["norm-series", "--builtin", "S4", "--F", "N"], None),
    (["radical", "--builtin", "S4", "--F", "N"], 4),
    (["int", "--builtin", "S4", "--F", "N"], 1),
    (["psi", "--builtin", "Q8", "--p", "2"], 8),
])
def test_other_quantities(capsys, argv, order):
    r = run_json(capsys, "compute", *argv)
    if order is not None:
        assert r["result"]["order"] == order


def test_emit_elements(capsys):
    r = run_json(capsys, "compute", "residual", "--builtin", "S3", "--F", "A", "--emit-elements")
    assert len(r["result"]["elements"]) == 3 and r["result"]["elements"][0] == "()"  # permutation groups print cycles


def test_formats(capsys):
    code, out, _ = run(capsys, "compute", "residual", "--builtin", "S3", "--F", "A", "--format", "csv")
    assert code == EXIT_OK and "result.order,3" in out
    code, out, _ = run(capsys, "compute", "residual", "--builtin", "S3", "--F", "A", "--format", "md")
    assert code == EXIT_OK and "| result.order | 3 |" in out
    code, out, _ = run(capsys, "verify", "--builtin", "S3", "--props", "ThmD", "--F", "A", "--format", "md")
    assert code == EXIT_OK and "| S3 |" in out
    code, out, _ = run(capsys, "verify", "--builtin", "S3", "--props", "ThmD", "--F", "A", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[0].startswith("prop,")


@pytest.mark.parametrize("argv", [
    ["compute", "residual", "--builtin", "S3", "--F", "N*("],
    ["compute", "hypercentre", "--builtin", "S3", "--pi", "{2,4}", "--F", "N"],
    ["group", "info", "--builtin", "M24"],
    ["verify", "--builtin", "S3", "--props", "ThmZ"],
    ["compute", "norm", "--builtin", "S3", "--H", "A", "--F", "N"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT and err


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "compute", "residual", "--builtin", "S3", "--F", "N*(")
    assert code == EXIT_INPUT and "position 3" in err


def test_limits_exit_3(capsys):
    assert run(capsys, "group", "info", "--builtin", "S5", "--cap", "100")[0] == EXIT_LIMIT
    assert run(capsys, "group", "info", "--builtin", "S4", "--budget", "5")[0] == EXIT_LIMIT


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "--props", "Rem1.4")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["summary"]["pass"] == 1
    assert rep["reports"][0]["detail"]["crit"] is True and rep["reports"][0]["detail"]["member"] is False
    code, out, _ = run(capsys, "verify", "--props", "")
    assert code == EXIT_OK and json.loads(out)["summary"]["total"] == 0


def test_theorem_d_cli_run(capsys):
    code, out, _ = run(capsys, "verify", "--props", "ThmD", "--F", "U", "--pi", "P", "--builtin-corpus")
    s = json.loads(out)["summary"]
    assert code == EXIT_OK and s["fail"] == 0 and s["pass"] >= 60
    skipped = [r["group"] for r in json.loads(out)["reports"] if r["outcome"] == "skip"]
    assert sorted(skipped) == ["A5", "S5"]  # not in S*U


def test_fail_exits_1(capsys, monkeypatch):
    from normlab import harness
    monkeypatch.setattr(harness, "hypercentre", lambda G, pi, F: G.trivial)
    code, out, _ = run(capsys, "verify", "--builtin", "S4", "--props", "ThmD", "--F", "U", "--pi", "P")
    assert code == EXIT_FAIL and json.loads(out)["summary"]["fail"] == 1


def test_props_listing(capsys):
    code, out, _ = run(capsys, "props", "--format", "json")
    ids = [p["id"] for p in json.loads(out)]
    assert code == EXIT_OK and "ThmD" in ids and "Rem1.5" in ids


def test_corpus_file_and_group(capsys, tmp_path):
    f = tmp_path / "m.jsonl"
    f.write_text('{"name":"S3","construction":{"perms":{"degree":3,"gens":["(1 2)","(1 2 3)"]}}}\n')
    r = run_json(capsys, "group", "info", "--corpus", str(f), "--group", "S3")
    assert r["order"] == 6
    f.write_text('{"name":"X","construction":{"perms":{"degree":3,"gens":["[1,1,2]"]}}}\n')
    assert run(capsys, "group", "info", "--corpus", str(f), "--group", "X")[0] == EXIT_INPUT


def test_cache_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    run_json(capsys, "group", "info", "--builtin", "D8")
    assert (tmp_path / builtin_group("D8").id / "lattice.v1").exists()
    other = tmp_path / "explicit"
    run_json(capsys, "group", "info", "--builtin", "D8", "--cache-dir", str(other))
    assert (other / builtin_group("D8").id / "lattice.v1").exists()


def test_entry_point_and_output_file(tmp_path):
    out = tmp_path / "r.json"
    p = subprocess.run([sys.executable, "-m", "normlab", "verify", "--builtin", "S3", "--props", "Rem1.5",
                        "--output", str(out)], capture_output=True, text=True)
    assert p.returncode == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "{" and lines[1].startswith('"header"')
