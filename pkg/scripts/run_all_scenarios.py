#!/usr/bin/env python3
"""Run every scenario once with desk-scale configs; outputs under runs/."""

from pathlib import Path

from kinklab.expcli import ExperimentConfig, run

CONFIGS = [
    {"scenario": "spectrum"},
    {"scenario": "coercivity"},
    {"scenario": "kernel4"},
    {"scenario": "vacuum", "extra": {"ks": [0.3, 0.5, 0.7, 0.9, 0.99, 1.5]}},
    {"scenario": "multipliers", "extra": {"gammas": [0.1, 0.01], "Ks": [0.5, 1.0]}},
    {"scenario": "identities", "N": 8192, "T": 2.0, "sample_every": 1.0,
     "boundary_threshold": 1e-6,
     "perturbation": {"shape": "gaussian_bump", "center": 1.5, "width": 2.0,
                      "u2": {"shape": "gaussian_bump", "center": -2.0, "width": 3.0}}},
    {"scenario": "picard-vs-strang", "delta": 0.005, "T": 1.0,
     "perturbation": {"shape": "gaussian_bump", "center": 1.5, "width": 2.0,
                      "u2": {"shape": "gaussian_bump", "center": -2.0, "width": 3.0}}},
    {"scenario": "orbital", "L": 1200.0, "N": 16384, "T": 100.0, "dt": None,
     "sample_every": 2.0,
     "perturbation": {"shape": "gaussian_bump", "center": 3.0, "width": 5.0,
                      "u2": {"shape": "gaussian_bump", "center": -4.0, "width": 5.0}}},
    {"scenario": "virial-trace", "L": 200.0, "N": 2048, "T": 25.0,
     "sample_every": 0.5, "boundary_threshold": 1e-6,
     "perturbation": {"shape": "gaussian_bump", "center": 3.0, "width": 4.0,
                      "u2": {"shape": "gaussian_bump", "center": -4.0, "width": 4.0}}},
    {"scenario": "decay", "L": 2400.0, "N": 32768, "T": 200.0,
     "sample_every": 2.0,
     "perturbation": {"shape": "gaussian_bump", "center": 3.0, "width": 5.0,
                      "u2": {"shape": "gaussian_bump", "center": -4.0, "width": 5.0}}},
]


def main() -> None:
    root = Path("runs")
    for raw in CONFIGS:
        raw = dict(raw)
        name = raw["scenario"]
        raw["out_dir"] = str(root / name)
        manifest = run(ExperimentConfig.from_dict(raw))
        print(f"{name:18s} {manifest.status:12s} {manifest.wall_time_s:7.1f}s "
              f"-> {raw['out_dir']}")


if __name__ == "__main__":
    main()
