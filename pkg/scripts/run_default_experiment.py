#!/usr/bin/env python3
"""Run the full default pipeline (cubic potential, states 0-3) end to end.

Produces one output tree with the eigensolve artifacts, the phase-space
heatmaps, the per-axis average-energy profiles, and the pole/negativity
co-location report:

    python scripts/run_default_experiment.py --out runs/default

This is the scripted equivalent of:

    wplab solve          --out runs/default/solve
    wplab wigner-grid    --out runs/default/wigner
    wplab energy-profile --out runs/default/energy
    wplab report         --out runs/default/report
    wplab verify         --out runs/default/verify --max-nk 8
"""

import sys
from argparse import ArgumentParser
from pathlib import Path

from wplab.cli import main as wplab_main


def main() -> int:
    ap = ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="runs/default", help="output tree root")
    ap.add_argument("--config", default=None, help="optional configuration file")
    ap.add_argument("--skip-verify", action="store_true",
                    help="skip the cross-check suites (they dominate runtime)")
    args = ap.parse_args()

    root = Path(args.out)
    base = ["--config", args.config] if args.config else []
    steps = [
        ("solve", []),
        ("wigner-grid", []),
        ("energy-profile", []),
        ("report", []),
    ]
    if not args.skip_verify:
        steps.append(("verify", ["--max-nk", "8"]))

    for command, extra in steps:
        out = root / command.replace("-", "_")
        print(f"== {command} -> {out}")
        rc = wplab_main([command, *base, "--out", str(out), *extra])
        if rc != 0:
            print(f"{command} exited with {rc}", file=sys.stderr)
            return rc
    print(f"done; artifacts under {root}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
