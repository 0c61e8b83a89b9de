import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=[p.stem for p in DEMOS])
def test_demo_runs(path, monkeypatch, capsys):
    monkeypatch.setenv("WIGNERBELL_DEMO_SAMPLES", "20000")
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out
