#!/usr/bin/env python3
"""Cross-checks the exported LP model against an independent MILP solver.

Exports the first-step model for a scenario, solves it with scipy's HiGHS
backend, and compares the optimum with the objective the built-in solver
reported for step 0 of the same run. Exits 77 (skip) when scipy is missing.
"""

import argparse
import json
import re
import subprocess
import sys
import tempfile
from pathlib import Path

try:
    import numpy as np
    from scipy import sparse
    from scipy.optimize import Bounds, LinearConstraint, milp
except ImportError:
    print("scipy not available; skipping the LP cross-check")
    sys.exit(77)

TERM_RE = re.compile(r"([+-])?\s*(\d+(?:\.\d+)?(?:e[+-]?\d+)?)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def parse_terms(expr):
    terms = []
    for sign, coeff, name in TERM_RE.findall(expr):
        value = float(coeff) if coeff else 1.0
        if sign == "-":
            value = -value
        terms.append((name, value))
    return terms


def parse_lp(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("\\")]
    section = None
    objective = []
    rows = []  # (terms, sense, rhs)
    bounds = []
    binaries = []
    buffer = ""

    def flush():
        nonlocal buffer
        if not buffer.strip():
            buffer = ""
            return
        body = buffer.split(":", 1)[1] if ":" in buffer else buffer
        if section == "objective":
            objective.extend(parse_terms(body))
        elif section == "rows":
            m = re.search(r"(<=|>=|=)\s*([-\d.e+]+)\s*$", body)
            sense, rhs = m.group(1), float(m.group(2))
            rows.append((parse_terms(body[: m.start()]), sense, rhs))
        buffer = ""

    for line in lines:
        stripped = line.strip()
        if stripped in ("Maximize", "Subject To", "Bounds", "Binaries", "End"):
            flush()
            section = {
                "Maximize": "objective",
                "Subject To": "rows",
                "Bounds": "bounds",
                "Binaries": "binaries",
                "End": None,
            }[stripped]
            continue
        if section in ("objective",):
            if ":" in line and buffer:
                flush()
            buffer += " " + stripped
        elif section == "rows":
            if ":" in line and buffer:
                flush()
            buffer += " " + stripped
        elif section == "bounds":
            bounds.append(stripped)
        elif section == "binaries":
            binaries.extend(stripped.split())
    flush()
    return objective, rows, bounds, binaries


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--scenario", required=True)
    parser.add_argument("--seed", default="5")
    args = parser.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        lp_path = Path(tmp) / "model.lp"
        trace_path = Path(tmp) / "trace.jsonl"
        subprocess.run(
            [args.cli, "export-lp", "--scenario", args.scenario, "--seed", args.seed,
             "--out", str(lp_path)],
            check=True,
        )
        subprocess.run(
            [args.cli, "run", "--scenario", args.scenario, "--seed", args.seed,
             "--out", str(trace_path)],
            check=True,
        )
        expected = None
        for line in trace_path.read_text().splitlines():
            event = json.loads(line)
            if event.get("kind") == "plan":
                expected = event["objective"]
                break
        assert expected is not None, "trace has no plan event"

        objective, rows, bound_lines, binaries = parse_lp(lp_path.read_text())

    names = {}

    def var(name):
        return names.setdefault(name, len(names))

    for name, _ in objective:
        var(name)
    for terms, _, _ in rows:
        for name, _ in terms:
            var(name)
    for name in binaries:
        var(name)

    n = len(names)
    c = np.zeros(n)
    for name, coeff in objective:
        c[var(name)] -= coeff  # HiGHS minimizes

    a = sparse.lil_matrix((len(rows), n))
    lo = np.zeros(len(rows))
    hi = np.zeros(len(rows))
    for i, (terms, sense, rhs) in enumerate(rows):
        for name, coeff in terms:
            a[i, var(name)] += coeff
        lo[i] = rhs if sense in ("=", ">=") else -np.inf
        hi[i] = rhs if sense in ("=", "<=") else np.inf

    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    for line in bound_lines:
        if line.endswith(" free"):
            idx = var(line.split()[0])
            lb[idx], ub[idx] = -np.inf, np.inf
        else:
            m = re.match(r"([-\d.]+)\s*<=\s*(\S+)\s*<=\s*([-\d.]+)", line)
            idx = var(m.group(2))
            lb[idx], ub[idx] = float(m.group(1)), float(m.group(3))
    integrality = np.zeros(n)
    for name in binaries:
        idx = var(name)
        integrality[idx] = 1
        lb[idx], ub[idx] = 0.0, 1.0

    result = milp(
        c=c,
        constraints=[LinearConstraint(a.tocsr(), lo, hi)],
        integrality=integrality,
        bounds=Bounds(lb, ub),
    )
    assert result.success, f"external solver failed: {result.message}"
    external = -result.fun
    print(f"external optimum {external:.9f}, built-in step-0 objective {expected:.9f}")
    assert abs(external - expected) <= 1e-6, "external solver disagrees with the built-in one"
    print("LP cross-check passed")


if __name__ == "__main__":
    main()
