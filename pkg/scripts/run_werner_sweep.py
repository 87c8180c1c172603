#!/usr/bin/env python3
"""Normalized Werner measures over w in [1/sqrt 2, 1], written to out/.

Extra arguments are passed through to the CLI and override the defaults,
e.g. `python scripts/run_werner_sweep.py --n 501 --format json`.
"""

import pathlib
import sys

from nlgeo.cli import main

DEFAULTS = ["werner-sweep", "--n", "101", "--out", "out/werner_sweep.csv"]

if __name__ == "__main__":
    pathlib.Path("out").mkdir(exist_ok=True)
    sys.exit(main(DEFAULTS + sys.argv[1:]))
