import io
import json
import subprocess
import sys

import pytest

from operad_gb.cli import EXIT_INCOMPLETE, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main, poly_from_json
from operad_gb.groebner import buchberger
from operad_gb.polynomials import GradedContext
from operad_gb.presets import named


def run(*argv):
    out = io.StringIO()
    status = main(list(argv), out=out)
    return status, out.getvalue()


def test_gb_even_text():
    status, text = run("gb", "--preset", "pa", "--parity", "even", "--arity-bound", "15")
    assert status == EXIT_OK
    lines = [x for x in text.splitlines() if x.startswith("[arity")]
    assert len(lines) == 5
    assert "complete up to arity 15" in text


def test_gb_odd_json():
    status, text = run("gb", "--preset", "pa", "--parity", "odd", "--format", "json")
    assert status == EXIT_OK
    data = json.loads(text)
    assert data["m"] == 3 and data["parity"] == "odd"
    assert data["complete_up_to_arity"] == 15
    assert len(data["generators"]) == 1
    assert all(term["coeff"] == "1/1" for term in data["generators"][0]["terms"])


def test_gb_monomial_relation():
    status, text = run("gb", "--relations", "(***)", "-m", "3", "--parity", "even", "--format", "json")
    assert status == EXIT_OK
    assert json.loads(text)["generators"] == [{"terms": [{"coeff": "1/1", "tree": "(***)"}]}]


def test_json_round_trip():
    status, text = run("gb", "--preset", "pa", "--format", "json")
    data = json.loads(text)
    ctx = GradedContext(data["m"], data["parity"])
    gens = [poly_from_json(g, ctx) for g in data["generators"]]
    assert gens == buchberger([named("alpha")], ctx, 15).gens


def test_dims_text_and_json():
    status, text = run("dims", "--preset", "pa", "--parity", "even", "--n-max", "13", "--format", "json")
    assert status == EXIT_OK
    data = json.loads(text)
    assert [r["dim"] for r in data["dims"]] == [1, 1, 2, 4, 5, 6, 7]
    assert [r["weight"] for r in data["dims"]] == list(range(7))
    assert [r["trees"] for r in data["dims"]][:4] == [1, 1, 3, 12]
    status, text = run("dims", "--parity", "odd", "--n-max", "13", "--format", "json")
    assert [r["dim"] for r in json.loads(text)["dims"]] == [1, 1, 2, 5, 14, 42, 132]
    status, text = run("dims", "--n-max", "9")
    assert status == EXIT_OK and text.splitlines()[-1].split() == ["9", "4", "55", "5"]


def test_dims_list():
    status, text = run("dims", "--n-max", "7", "--list", "--format", "json")
    row = json.loads(text)["dims"][3]
    assert row["monomials"] == ["(**(**(***)))", "(**(*(***)*))", "(*(***)(***))", "(*(*(***)*)*)"]
    status, text = run("dims", "--n-max", "7", "--list")
    assert "(*(***)(***))" in text


def test_reduce_rewrite_rules():
    assert run("reduce", "--preset", "pa", "((***)**)") == (EXIT_OK, "- (*(***)*) - (**(***))\n")
    assert run("reduce", "(*(**(***))*)") == (EXIT_OK, "- (**(*(***)*)) - (**(**(***)))\n")
    assert run("reduce", "(***)") == (EXIT_OK, "(***)\n")
    status, text = run("reduce", "--format", "json", "2*((***)**)")
    data = json.loads(text)
    assert data["normal_form"]["terms"][0] == {"coeff": "-2/1", "tree": "(*(***)*)"}


@pytest.mark.parametrize("parity", ["even", "odd"])
def test_verify_presets(parity):
    status, text = run("verify", "--parity", parity, "--n-max", "11")
    assert status == EXIT_OK
    assert text.splitlines()[-1] == "PASS"


@pytest.mark.parametrize("tampered,dims_change", [
    ("((***)**) + (*(***)*) - (**(***))", True),
    ("((***)**) - (*(***)*) + (**(***))", False),
])
def test_verify_tampered_file(tmp_path, tampered, dims_change):
    path = tmp_path / "rels.txt"
    path.write_text(f"# alpha with one sign flipped\n{tampered}\n", encoding="utf-8")
    status, text = run("verify", "--relations-file", str(path), "--reference", "pa", "--n-max", "11")
    assert status == EXIT_MISMATCH
    assert text.splitlines()[-1] == "FAIL"
    _, genuine = run("dims", "--n-max", "11", "--format", "json")
    _, other = run("dims", "--relations-file", str(path), "--n-max", "11", "--format", "json")
    differ = [r["dim"] for r in json.loads(genuine)["dims"]] != [r["dim"] for r in json.loads(other)["dims"]]
    assert differ == dims_change


def test_verify_genuine_file_against_reference(tmp_path):
    path = tmp_path / "rels.txt"
    path.write_text("((***)**) + (*(***)*) + (**(***))  # alpha\n\n", encoding="utf-8")
    status, text = run("verify", "--relations-file", str(path), "--reference", "pa", "--n-max", "11")
    assert status == EXIT_OK and text.splitlines()[-1] == "PASS"


def test_verify_reports_mismatch_for_wrong_basis(tmp_path, monkeypatch):
    # a completion capped too early leaves the oracle and normal-monomial counts disagreeing
    import operad_gb.cli as cli

    real = cli.buchberger

    def truncated(relations, ctx, bound, **kw):
        G = real(relations, ctx, 5, **kw)
        G.checked_bound = bound
        return G

    monkeypatch.setattr(cli, "buchberger", truncated)
    status, text = run("verify", "--n-max", "7")
    assert status == EXIT_MISMATCH
    assert "MISMATCH" in text and text.splitlines()[-1] == "FAIL"


def test_jobs_identical_output():
    a = run("verify", "--n-max", "9", "--format", "json")
    b = run("verify", "--n-max", "9", "--format", "json", "--jobs", "2")
    assert a == b
    assert run("gb", "--format", "json") == run("gb", "--format", "json")


def test_incomplete_status():
    status, text = run("gb", "--max-pairs", "1")
    assert status == EXIT_INCOMPLETE and "INCOMPLETE" in text
    status, text = run("gb", "--max-pairs", "1", "--format", "json")
    assert json.loads(text)["complete_up_to_arity"] is None
    assert run("dims", "--max-pairs", "1")[0] == EXIT_INCOMPLETE


@pytest.mark.parametrize("argv", [
    ["reduce", "(**"],
    ["gb", "--relations", "(**)"],
    ["gb", "--arity-bound", "19"],
    ["gb", "--arity-bound", "4"],
    ["gb", "--relations-file", "/nonexistent/file"],
    ["dims", "--n-max", "0"],
    ["verify", "--jobs", "0"],
    ["gb", "-m", "1"],
])
def test_input_errors(argv):
    assert run(*argv)[0] == EXIT_INPUT


def test_preset_and_file_are_exclusive(tmp_path):
    with pytest.raises(SystemExit):
        main(["gb", "--preset", "pa", "--relations-file", str(tmp_path / "x")])


def test_max_arity_guard_can_be_raised():
    status, text = run("dims", "--n-max", "19", "--max-arity", "19", "--format", "json")
    assert status == EXIT_OK and json.loads(text)["dims"][-1]["dim"] == 10


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "operad_gb", "reduce", "((***)**)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "- (*(***)*) - (**(***))\n"
    assert "finished in" in proc.stderr
