#!/usr/bin/env python3
"""Run each secretary-lab subcommand with --format json and validate the output."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CASES = [
    ("thresholds.schema.json", ["thresholds", "--J", "4", "--K", "1"]),
    ("thresholds.schema.json", ["thresholds", "--J", "2", "--K", "2"]),
    ("dual_check.schema.json", ["dual-check", "--J", "2", "--K", "1"]),
    ("dual_check.schema.json", ["dual-check", "--J", "2", "--K", "2"]),
    ("dual_check.schema.json", ["dual-check", "--J", "2", "--K", "2", "--perturb", "0.01"]),
    ("finite_lp.schema.json", ["finite-lp", "--J", "1", "--K", "1", "--n", "3,10", "--exact"]),
    ("finite_lp.schema.json", ["finite-lp", "--J", "1", "--K", "2", "--n", "10,20"]),
    ("simulate.schema.json", ["simulate", "--J", "2", "--K", "2", "--n", "1000", "--trials", "2000"]),
]


def main() -> int:
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        cases = CASES + [("report.schema.json", ["report", "--out-dir", tmp])]
        for schema_name, args in cases:
            schema = json.loads((schema_dir / schema_name).read_text())
            proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True)
            label = " ".join(args[:1] + args[1:5])
            if proc.returncode not in (0, 4):
                print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            try:
                jsonschema.validate(json.loads(proc.stdout), schema)
                print(f"ok   {label}")
            except (json.JSONDecodeError, jsonschema.ValidationError) as exc:
                print(f"FAIL {label}: {exc}")
                failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
