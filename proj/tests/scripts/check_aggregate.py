#!/usr/bin/env python3
"""Recompute per-case medians from the run records and compare with summary.json."""

import argparse
import json
import math
import pathlib
import sys


def type7(values, p):
    v = sorted(values)
    pos = p * (len(v) - 1)
    lo = math.floor(pos)
    hi = min(lo + 1, len(v) - 1)
    return v[lo] + (pos - lo) * (v[hi] - v[lo])


def close(a, b):
    if a is None or b is None:
        return a is None and b is None
    return abs(a - b) <= 1e-12 * max(1.0, abs(a), abs(b))


def check(run_dir):
    root = pathlib.Path(run_dir)
    manifest = json.loads((root / "manifest.json").read_text())
    problems = []
    for case in manifest["cases"]:
        summary = json.loads((root / case / "summary.json").read_text())
        records = [json.loads(p.read_text()) for p in sorted((root / case / "runs").glob("rep_*.json"))]
        if len(records) != summary["replications"]:
            problems.append(f"{case}: {len(records)} run records, summary says {summary['replications']}")
        ok = [r for r in records if r["status"] == "ok"]
        if len(ok) != summary["succeeded"]:
            problems.append(f"{case}: {len(ok)} successful records, summary says {summary['succeeded']}")
        if not ok:
            continue
        for key, values in (
            ("pf", [r["result"]["pf"] for r in ok]),
            ("beta", [r["result"]["beta"] for r in ok]),
            ("evals", [float(r["evals"]) for r in ok]),
        ):
            if any(v is None for v in values):
                continue
            for stat, p in (("median", 0.5), ("q1", 0.25), ("q3", 0.75)):
                expected = type7(values, p)
                got = summary[key][stat]
                if not close(expected, got):
                    problems.append(f"{case}: {key}.{stat} = {got}, recomputed {expected}")
    return problems


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("run_dir")
    problems = check(ap.parse_args().run_dir)
    for p in problems:
        print(p)
    print("aggregate check:", "ok" if not problems else f"{len(problems)} mismatches")
    sys.exit(1 if problems else 0)


if __name__ == "__main__":
    main()
