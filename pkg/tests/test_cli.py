import json
import subprocess
import sys
from pathlib import Path

import pytest

from moorecell.cli import main, render, run_command

GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(GOLDEN))
from regenerate import cases, output  # noqa: E402


@pytest.mark.parametrize("name, argv", list(cases()), ids=[n for n, _ in cases()])
def test_golden_output(name, argv):
    assert output(argv)[0] == (GOLDEN / f"{name}.out").read_text()


def test_output_is_deterministic():
    argv = ["cellular", "--moore", "Q", "--space", "S^2", "--format", "structured", "--full"]
    assert render(run_command(argv), "structured") == render(run_command(argv), "structured")


def test_analyze_prufer():
    r = run_command(["analyze", "Z(2^inf)"])
    c = r.payload["coefficients"]
    assert (c["J"], c["H"], c["R"]) == ("P\\{2}", "Z/2", "Z[1/2]")
    assert r.payload["moore"]["answer"] == "Yes"


def test_cw_example():
    r = run_command(["cw", "--moore", "Z[1/2]", "--space", "K(Z(2^inf),1)"])
    assert r.status == "ok" and r.payload["cw"] == "K(Qhat(2),1)"


def test_counterexample_cites_theorem():
    r = run_command(["cellular", "--moore", "Z[1/2] * Z/2", "--space", "K(Z,2)"])
    assert r.payload["answer"] == "No"
    assert any(e.citation == "Theorem 3.2" for e in r.trail)


@pytest.mark.parametrize("argv", [
    ["moore", "Z/2 + Z/2"], ["moore", "Q"], ["radical", "Z/2", "Z/8"],
    ["quasiradical", "type(1)", "Z"], ["cellular", "--moore", "Z/3", "--space", "S^2"],
    ["analyze", "Z + Z/3"],
])
def test_verdicts_carry_trails(argv):
    r = run_command(argv)
    assert r.status == "ok" and r.trail


@pytest.mark.parametrize("argv", [
    ["frobnicate"], ["analyze"], ["analyze", "Z/0"], ["hom", "Z", "Z[1/4]"],
    ["moore", "Z", "--prefix-length", "x"], ["oracle", "hom", "Z", "Z/2"],
    ["cellular", "--moore", "Z + Z", "--space", "pt"], ["cw", "--moore", "Z", "--space", "K(Z,0)"],
])
def test_input_errors_exit_2(argv, capsys):
    assert run_command(argv).status == "input-error"
    assert main(argv) == 2


def test_malformed_expression_reports_position():
    r = run_command(["hom", "Z/(3", "Z"])
    assert r.payload["position"] == 2


def test_strict_known_exit_codes():
    unknown = ["quasiradical", "Z(2^inf) + Z(3^inf)", "Z"]
    assert main(unknown) == 0
    assert main(unknown + ["--strict-known"]) == 3
    unsupported = ["ext", "Z[1/2]", "Z[1/3]"]
    assert run_command(unsupported).status == "unsupported"
    assert main(unsupported) == 0 and main(unsupported + ["--strict-known"]) == 3
    assert main(["hom", "Z", "Z", "--strict-known"]) == 0


def test_structured_output_is_json(capsys):
    main(["moore", "Z(5^inf)", "--format", "structured"])
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "ok" and doc["payload"]["answer"] == "Yes"
    assert doc["trail"][0]["citation"] == "Theorem 2.1"


def test_global_flags_before_command(capsys):
    main(["--format", "structured", "hom", "Z/4", "Z/6"])
    assert json.loads(capsys.readouterr().out)["payload"]["result"] == "Z/2"


def test_prefix_length_flag():
    r = run_command(["moore", "Q", "--prefix-length", "6"])
    assert r.payload["model"]["multipliers"] == [2, 3, 2, 5, 7, 2]


def test_oracle_commands():
    assert run_command(["oracle", "genby", "Z/9", "3:1"]).payload["generated"] is False
    r = run_command(["oracle", "radical", "Z/2", "Z/8"])
    assert r.payload["radical"] == "Z/8" and r.payload["stages"] == 3
    assert run_command(["oracle", "hom", "Z/16", "Z/16", "--oracle-bound", "64"]).status \
        == "input-error"
    sweep = run_command(["oracle", "--sweep", "8"])
    assert sweep.status == "ok" and sweep.payload["mismatches"] == []


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "moorecell.cli", "tensor", "Z/3", "Z[1/3]"],
                         capture_output=True, text=True, check=True).stdout
    assert "result: 0" in out
