#!/usr/bin/env python3
"""Normalized measures of the two-Bell-state mixture for p in [1/2, 1].

Extra arguments are passed through to the CLI and override the defaults,
e.g. `python scripts/run_two_bell_sweep.py --kind hs --kind re --n 201`.
"""

import pathlib
import sys

from nlgeo.cli import main

DEFAULTS = [
    "bd-sweep",
    "--family",
    "two-bell-mix",
    "--n",
    "51",
    "--out",
    "out/two_bell_sweep.csv",
]

if __name__ == "__main__":
    pathlib.Path("out").mkdir(exist_ok=True)
    sys.exit(main(DEFAULTS + sys.argv[1:]))
