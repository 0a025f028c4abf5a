#!/usr/bin/env python3
"""Orbital-stability delta sweep: sup_t ||u|| / delta should plateau."""

import json
from pathlib import Path

from kinklab.expcli import sweep

TEMPLATE = {
    "scenario": "orbital",
    "L": 1200.0,
    "N": 16384,
    "T": 100.0,
    "sample_every": 2.0,
    "perturbation": {"shape": "gaussian_bump", "center": 3.0, "width": 5.0,
                     "u2": {"shape": "gaussian_bump", "center": -4.0, "width": 5.0}},
}


def main() -> None:
    out = Path("runs/orbital_sweep")
    index = sweep(TEMPLATE, {"delta": [0.02, 0.01, 0.005]}, out, workers=1)
    for cell in index:
        spectra = json.loads((Path(cell["out_dir"]) / "spectra.json").read_text())
        print(f"delta={cell['params']['delta']}: "
              f"sup||u||/delta = {spectra['sup_h1l2_over_delta']:.4f} "
              f"({cell['status']})")


if __name__ == "__main__":
    main()
