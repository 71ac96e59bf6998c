#!/usr/bin/env python3
"""Validate CLI JSON output against the schemas in docs/ and check repeat runs agree."""
import json
import pathlib
import re
import subprocess
import sys

import jsonschema

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {name: json.loads((root / "docs" / f"{name}.schema.json").read_text())
           for name in ("run_result", "suite_report")}
for s in schemas.values():
    jsonschema.Draft202012Validator.check_schema(s)

DURATION = re.compile(rb'"duration": [0-9.eE+-]+')
failures = 0


def check(schema, args, codes):
    global failures
    outs = []
    for _ in range(2):
        p = subprocess.run([cli, *args, "--json"], capture_output=True)
        if p.returncode not in codes:
            print(f"FAIL {' '.join(args)}: exit {p.returncode}, expected {codes}\n{p.stderr.decode()}")
            failures += 1
            return
        outs.append(p.stdout)
    errors = sorted(jsonschema.Draft202012Validator(schemas[schema]).iter_errors(json.loads(outs[0])), key=str)
    for e in errors[:3]:
        print(f"FAIL {' '.join(args)}: {e.message} at {list(e.absolute_path)}")
    failures += bool(errors)
    if DURATION.sub(b"", outs[0]) != DURATION.sub(b"", outs[1]):
        print(f"FAIL {' '.join(args)}: repeated runs differ")
        failures += 1


for f in sorted((root / "corpus").iterdir()):
    check("run_result", ["run", str(f)], {0, 3})
check("run_result", ["run", str(root / "corpus" / "nsu.fg"), "--fuel", "5"], {0})
for suite in ("tini-fg", "tini-cg", "confinement-cg", "preservation-fg2cg", "preservation-cg2fg",
              "type-preservation", "bijection-laws", "find-bijection", "lift-recovery"):
    check("suite_report", ["prop", "--suite", suite, "--trials", "50", "--seed", "3"], {0})
for mutant in ("drop-nsu", "drop-write-pc"):
    check("suite_report", ["prop", "--mutant", mutant, "--trials", "50"], {1})
check("suite_report", ["prop", "--mutant", "drop-write-explicit", "--trials", "2000", "--no-seeded"], {1})
print("ok" if not failures else f"{failures} failure(s)")
sys.exit(1 if failures else 0)
