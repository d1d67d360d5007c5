"""Golden tests for the reproduction scripts under repro/."""

import pathlib
import subprocess

import pytest

REPRO = pathlib.Path(__file__).resolve().parent.parent / "repro"
SCRIPTS = sorted(p.stem for p in REPRO.glob("*.sh"))


@pytest.mark.parametrize("name", SCRIPTS)
def test_repro_script_matches_golden(name):
    golden = (REPRO / "golden" / (name + ".txt")).read_text()
    proc = subprocess.run(["bash", str(REPRO / (name + ".sh"))],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout == golden


def test_all_scripts_have_goldens():
    assert len(SCRIPTS) == 8
    for name in SCRIPTS:
        assert (REPRO / "golden" / (name + ".txt")).exists()
