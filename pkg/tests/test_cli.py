"""CLI behaviour: outputs, determinism, exit codes, file output."""

import json


from coulombext.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_1d_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--named", "dirichlet",
                       "--dim", "1", "--tau-max", "3.5", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,energy,multiplicity"
    assert lines[1] == "1,-0.5,2"
    assert lines[2] == "2,-0.125,2"
    assert lines[3].startswith("3,-0.0555555555")
    assert lines[3].endswith(",2")


def test_spectrum_3d_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--dim", "3", "--named",
                       "dirichlet", "--n-max", "2", "--format", "csv")
    assert code == 0
    assert out.strip().split("\n")[1:] == ["1,-0.5,1", "2,-0.125,4"]


def test_permeability_json(capsys):
    code, out, _ = run(capsys, "permeability", "--uparams",
                       "1.5707963,1,0,0,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "v1"
    assert doc["verdict"] == "Impermeable"
    assert doc["case"] == "Case1"


def test_deterministic_output(capsys):
    argv = ("spectrum", "--unitary", "[[[0,1],[0,0]],[[0,0],[0,1]]]",
            "--dim", "1", "--tau-max", "4.2")
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "levels.csv"
    code, out, _ = run(capsys, "spectrum", "--named", "dirichlet",
                       "--dim", "1", "--tau-max", "2.5", "--format", "csv",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("n,energy,multiplicity")


def test_validation_exit_code(capsys):
    code, _, err = run(capsys, "spectrum", "--dim", "1", "--tau-max", "2.0")
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "DomainError"
    code, _, err = run(capsys, "spectrum", "--dim", "2", "--named",
                       "dirichlet")
    assert code == 2


def test_numeric_exit_code(capsys):
    # E on the Dirichlet spectrum: Green's function pole
    code, _, err = run(capsys, "greens", "--energy", "-0.5",
                       "--x", "0.3", "--y", "0.4")
    assert code == 2  # EigenvalueHit is a DomainError: invalid input energy
    doc = json.loads(err)
    assert doc["error"] == "EigenvalueHit"


def test_greens_values(capsys):
    code, out, _ = run(capsys, "greens", "--energy", "-0.3",
                       "--x", "1.0,-1.0", "--y", "0.5,2.0")
    assert code == 0
    doc = json.loads(out)
    assert doc["values"][1]["value"] == 0.0
    assert doc["values"][0]["value"] != 0.0


def test_eval_and_report(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "digamma", "--z", "1.0")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["value"][0] + 0.5772156649) < 1e-9
    code, out, _ = run(capsys, "report")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["VC"]["deficiency_indices"]["R minus origin"] == 2


def test_laplace_spectrum(capsys):
    code, out, _ = run(capsys, "laplace-spectrum", "--n-max", "2",
                       "--compare-asymptotic", "20")
    assert code == 0
    doc = json.loads(out)
    assert doc["levels"][0]["parity"] == "even"
    comp = doc["asymptotic_comparison"]
    assert comp["even_class_index"]["rel_error"] < 0.01
    assert comp["overall_index"]["rel_error"] > 0.01
