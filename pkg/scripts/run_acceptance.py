#!/usr/bin/env python3
"""Run the acceptance suite and print one PASS/FAIL line per criterion.

Exit code 0 when every criterion passes.
"""

import pathlib
import subprocess
import sys


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    cmd = [
        sys.executable,
        "-m",
        "pytest",
        str(root / "tests" / "test_acceptance.py"),
        "-q",
        "-s",
        "--no-header",
    ]
    proc = subprocess.run(cmd, cwd=root)
    sys.exit(proc.returncode)


if __name__ == "__main__":
    main()
