"""
Batch verification from the command line
========================================

Generate a CSV with ``chshgeom sample``, verify it, then spike it with a PR
box and watch the exit code change.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def cli(*args):
    return subprocess.run([sys.executable, "-m", "chshgeom", *map(str, args)], capture_output=True, text=True)


with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "samples.csv"
    cli("sample", "--count", 200, "--seed", 4, "--source", "mixed-state", "--out", path)
    print(path.read_text().splitlines()[:3])

    proc = cli("verify", path, "--summary-only")
    print("exit", proc.returncode, json.loads(proc.stdout)["summary"])

    with path.open("a") as fh:
        fh.write("1,1,1,-1\n")
    proc = cli("verify", path, "--summary-only")
    summary = json.loads(proc.stdout)["summary"]
    print("exit", proc.returncode, "failed rows", summary["failed_rows"], summary["violations"])

# a single vector
print(cli("check", "0.5 0.5 0.5 -0.5").stdout)
