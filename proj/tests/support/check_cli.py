#!/usr/bin/env python3
"""Exit codes and plain-text output of the command-line tool."""
import pathlib
import subprocess
import sys
import tempfile

cli, root = sys.argv[1], pathlib.Path(sys.argv[2])
corpus = root / "corpus"
tmp = pathlib.Path(tempfile.mkdtemp())
failures = 0


def expect(args, code, needle=None):
    global failures
    p = subprocess.run([cli, *map(str, args)], capture_output=True, text=True)
    out = p.stdout + p.stderr
    if p.returncode != code or (needle and needle not in out):
        print(f"FAIL {' '.join(map(str, args))}: exit {p.returncode} (want {code})\n{out}")
        failures += 1
    return p.stdout


(tmp / "bad.fg").write_text("(main (pair unit")
(tmp / "ill.fg").write_text("(main (case unit x x x x))")
(tmp / "a.fg").write_text("(pc L)\n(input s bool true H)\n(main (if s unit unit))")
(tmp / "b.fg").write_text("(pc L)\n(input s bool false H)\n(main (if s unit unit))")

expect(["run", corpus / "var.fg"], 0, "()^H")
expect(["run", corpus / "fs_upgrade.fg"], 0, "false^H")
expect(["run", corpus / "fs_upgrade_fi.fg"], 3, "Write")
expect(["run", corpus / "nsu.fg"], 3, "Write-FS")
expect(["run", corpus / "nsu.fg", "--mutant", "drop-nsu"], 0, "true^H")
expect(["run", corpus / "var.fg", "--pc", "L"], 0, "()^L")
expect(["run", corpus / "var.fg", "--pc", "Q"], 2)
expect(["run", tmp / "bad.fg"], 2, "parse error")
expect(["run", tmp / "ill.fg"], 2)
expect(["run", tmp / "missing.fg"], 2)
expect(["run"], 2)
expect(["frobnicate"], 2)
expect(["translate", corpus / "taint.cg", "--dir", "cg2fg"], 0)
expect(["translate", corpus / "taint.cg", "--dir", "fg2cg"], 2)
expect(["translate", corpus / "pair.fg", "--dir", "sideways"], 2)
(tmp / "t.fg").write_text(expect(["translate", corpus / "taint.cg", "--dir", "cg2fg"], 0))
expect(["run", tmp / "t.fg"], 0, "(inl ()^L)^H")
(tmp / "p.cg").write_text(expect(["translate", corpus / "pair.fg", "--dir", "fg2cg"], 0))
expect(["run", tmp / "p.cg"], 0, "Labeled L (Labeled L (), Labeled L ())")
expect(["check-leq", tmp / "a.fg", tmp / "b.fg"], 0, "equivalent")
expect(["check-leq", tmp / "a.fg", tmp / "b.fg", "--attacker", "H"], 0, "equivalent")
(tmp / "c.fg").write_text("(pc L)\n(input s bool false L)\n(main (if s unit unit))")
(tmp / "d.fg").write_text("(pc L)\n(input s bool true H)\n(main s)")
(tmp / "e.fg").write_text("(pc L)\n(input s bool false L)\n(main s)")
expect(["check-leq", tmp / "d.fg", tmp / "e.fg"], 1, "not equivalent")
expect(["check-leq", tmp / "d.fg", tmp / "e.fg", "--attacker", "H"], 1, "not equivalent")
expect(["check-leq", tmp / "d.fg"], 2)
(tmp / "d.json").write_text(expect(["run", tmp / "d.fg", "--json"], 0))
(tmp / "e.json").write_text(expect(["run", tmp / "e.fg", "--json"], 0))
expect(["check-leq", tmp / "d.json", tmp / "d.json"], 0, "equivalent")
expect(["check-leq", tmp / "d.json", tmp / "e.json"], 1, "not equivalent")
expect(["prop", "--suite", "tini-fg", "--trials", "50"], 0)
expect(["prop", "--suite", "nope"], 2)
expect(["prop", "--mutant", "drop-nsu", "--trials", "20"], 1, "witness")
expect(["prop", "--mutant", "drop-everything"], 2)
expect(["prop", "--suite", "tini-cg", "--lattice", "powerset:2", "--attacker", "{p0}", "--trials", "50"], 0)
expect(["prop", "--suite", "tini-fg", "--attacker", "Z"], 2)
expect(["prop", "--suite", "confinement-fg", "--lattice", "powerset:2", "--attacker", "{p0,p1}"], 2, "attacker")
print("ok" if not failures else f"{failures} failure(s)")
sys.exit(1 if failures else 0)
