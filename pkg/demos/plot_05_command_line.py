"""
The sepface command line
========================

Every library capability is reachable from the shell through JSON files.
This script drives the CLI in a temporary directory and prints what a user
would see. Exit codes: 0 for a positive answer, 1 for a negative one, 2 for
bad input.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path


def sepface(*args):
    proc = subprocess.run([sys.executable, "-m", "sepface", *args], capture_output=True, text=True)
    print(f"$ sepface {' '.join(args)}   [exit {proc.returncode}]")
    print(proc.stdout.rstrip() or proc.stderr.rstrip())
    return proc


work = Path(tempfile.mkdtemp())
exam = str(work / "exam-a.json")
w123 = str(work / "w123.json")

sepface("example", "list")

# write the six exam-a vectors, and w1..w3 marked as a complement
sepface("example", "show", "exam-a", "--out", exam)
sepface("example", "show", "exam-a", "--aux", "--select", "0,1,2", "--complement", "--out", w123)

sepface("check", "gupb", exam)
sepface("check", "gp", exam)
sepface("check", "state-independence", exam)

# enumerate the complement of w1..w3; the JSON report is itself a vector file
found = str(work / "found.json")
sepface("enumerate", w123, "--out", found)
print("vectors in report:", len(json.loads(Path(found).read_text())["product_vectors"]))

sepface("face", found)

rho = str(work / "rho.json")
sepface("pptes", "build", exam, "--weights", "0.2,0.2,0.2,0.2,0.2", "--out", rho)
sepface("pptes", "verify", rho)
