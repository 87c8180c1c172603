#!/usr/bin/env python3
"""Normalized HS measure over the e4 = 0 facet of the Bell-diagonal tetrahedron.

Extra arguments are passed through to the CLI and override the defaults,
e.g. `python scripts/run_bd_grid.py --grid-n 50` for a finer grid or
`--kind tr` for the trace measure (slower: every nonlocal node is a solve).
"""

import pathlib
import sys

from nlgeo.cli import main

DEFAULTS = ["bd-grid", "--grid-n", "20", "--out", "out/bd_grid.csv"]

if __name__ == "__main__":
    pathlib.Path("out").mkdir(exist_ok=True)
    sys.exit(main(DEFAULTS + sys.argv[1:]))
