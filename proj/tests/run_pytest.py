"""Runs the Python smoke tests; exits 77 (skipped) when the module is not installed."""
import importlib.util
import pathlib
import sys

if importlib.util.find_spec("coloexp") is None or importlib.util.find_spec("pytest") is None:
    print("coloexp Python module not installed; skipping")
    sys.exit(77)

import pytest

root = pathlib.Path(__file__).resolve().parents[1]
sys.exit(pytest.main(["-q", str(root / "python" / "tests")]))
