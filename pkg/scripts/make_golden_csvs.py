#!/usr/bin/env python3
"""Regenerate the golden CSV fixtures consumed by the frontend tests.

Small-scale scenario runs with fixed seeds; outputs land in
frontend/test/fixtures/ and are committed.
"""

import shutil
from pathlib import Path
import tempfile

from kinklab.expcli import ExperimentConfig, run

FIXTURES = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"

RUNS = {
    "spectrum": {"scenario": "spectrum", "L": 40.0, "N": 256},
    "coercivity": {"scenario": "coercivity", "L": 40.0, "N": 256},
    "vacuum": {"scenario": "vacuum",
               "extra": {"ks": [0.3, 0.5, 0.7, 0.9, 1.5], "T_growth": 20.0}},
    "trace": {"scenario": "virial-trace", "L": 100.0, "N": 1024, "T": 10.0,
              "delta": 0.01, "sample_every": 0.5, "boundary_threshold": 1e-4,
              "perturbation": {"shape": "gaussian_bump", "center": 2.0, "width": 3.0,
                               "u2": {"shape": "gaussian_bump", "center": -3.0,
                                      "width": 3.0}}},
}


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for name, raw in RUNS.items():
        with tempfile.TemporaryDirectory() as tmp:
            raw = dict(raw, out_dir=tmp, seed=0)
            manifest = run(ExperimentConfig.from_dict(raw))
            assert manifest.status == "completed", (name, manifest.status)
            shutil.copy(Path(tmp) / "diagnostics.csv", FIXTURES / f"{name}.csv")
            print(f"{name}.csv written")


if __name__ == "__main__":
    main()
