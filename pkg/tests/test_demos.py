"""Each demo script must run to completion and print its headline result."""

import pathlib
import subprocess
import sys

import pytest

DEMOS = pathlib.Path(__file__).resolve().parent.parent / "demos"

CASES = [
    ("reproduce_reference_table.py", "checked: p_1 + p_(n-1) = 1"),
    ("four_methods_one_cell.py", "all four pipelines agree: p = 7/17"),
    ("limits_and_rates.py", "holds exactly for every n up to 30"),
]


@pytest.mark.parametrize("script,marker", CASES, ids=[c[0] for c in CASES])
def test_demo_runs(script: str, marker: str) -> None:
    proc = subprocess.run(
        [sys.executable, str(DEMOS / script)],
        capture_output=True,
        text=True,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr
    assert marker in proc.stdout
