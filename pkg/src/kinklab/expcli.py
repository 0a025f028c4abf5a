"""Configuration-driven experiment runner and persistence layer.

Scenarios: spectrum, coercivity, identities, kernel4, multipliers,
vacuum, orbital, decay, virial-trace, picard-vs-strang.  Each run reads
a JSON config, executes one scenario, and writes diagnostics.csv,
spectra.json (scenario scalars), and manifest.json into the output
directory.  `kinklab sweep` runs a cartesian parameter grid with one
manifest per cell and an index.json linking them.

Determinism: all randomness flows through a counter-based Philox
generator seeded from the config, and CSV numbers are printed with 17
significant digits, so identical config + seed reproduces output files
byte for byte.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from . import __version__
from .evolution import (
    BoundaryContamination,
    DiagnosticsRecord,
    NumericalBlowup,
    evolve,
    picard_solve,
    vacuum_growth,
)
from .grid import make_grid, norm
from .model import FieldPair, kink_background
from .operators import (
    coercivity_quotient,
    eigen_lowest,
    fourth_order_kernel,
    ibp_identity_residuals,
    multiplier_norm_suite,
    schrodinger_operator,
    weighted_coercivity_check,
)
from .virials import (
    FunctionalConstants,
    dI_dt_identity_check,
    dJ_dt_identity_check,
    dM_dt_identity_check,
    dN_dt_identity_check,
    identity_probe,
    make_diagnostics_sampler,
)
from .weights import build_weight_set, scales_from_delta, scales_override

__all__ = ["ExperimentConfig", "RunManifest", "ConfigError", "run", "sweep", "main"]

SCENARIOS = (
    "spectrum", "coercivity", "identities", "kernel4", "multipliers",
    "vacuum", "orbital", "decay", "virial-trace", "picard-vs-strang",
)


class ConfigError(ValueError):
    """Invalid experiment configuration; the message names the field."""


@dataclass
class ExperimentConfig:
    scenario: str
    L: float = 50.0
    N: int = 1024
    delta: float = 0.01
    T: float = 10.0
    dt: float | None = None
    sample_every: float = 0.5
    seed: int = 0
    W: float = 5.0
    boundary_threshold: float = 1e-8
    scales: dict | None = None
    perturbation: dict = dc_field(default_factory=dict)
    constants: dict = dc_field(default_factory=dict)
    extra: dict = dc_field(default_factory=dict)
    out_dir: str = "runs/out"

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config field(s): {sorted(unknown)}")
        cfg = cls(**raw)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario: unknown scenario {self.scenario!r}")
        if self.L <= 0:
            raise ConfigError(f"L: must be positive, got {self.L}")
        if self.N % 2 != 0 or self.N < 16:
            raise ConfigError(f"N: must be even and >= 16, got {self.N}")
        if not (0.0 < self.delta < 1.0):
            raise ConfigError(f"delta: must lie in (0, 1), got {self.delta}")
        if self.T <= 0:
            raise ConfigError(f"T: must be positive, got {self.T}")
        if self.dt is not None and self.dt <= 0:
            raise ConfigError(f"dt: must be positive, got {self.dt}")
        if not (0.0 < self.W < self.L / 4.0):
            raise ConfigError(f"W: must lie in (0, L/4), got {self.W}")
        amp = self.perturbation.get("amplitude")
        if amp is not None and abs(amp) > 0.25:
            raise ConfigError(f"perturbation.amplitude: {amp} exceeds the tube radius")
        evolving = self.scenario in (
            "orbital", "decay", "virial-trace", "identities", "picard-vs-strang")
        center = self.perturbation.get("center", 2.0)
        if evolving and abs(center) > self.L - 6.0 * self.W:
            raise ConfigError(
                f"perturbation.center: {center} too close to the periodization seam"
            )

    def build_scales(self):
        if self.scales is None:
            return scales_from_delta(self.delta)
        s = self.scales
        if s.get("coupled", True):
            return scales_from_delta(self.delta)
        return scales_override(s["A"], s["B"], s["gamma"], delta=self.delta)

    def effective_dt(self) -> float:
        return self.dt if self.dt is not None else 0.5 * (2.0 * self.L / self.N)


@dataclass
class RunManifest:
    config: dict
    version: str
    wall_time_s: float
    status: str
    checks: dict
    outputs: list


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"


def write_csv(path: Path, columns, rows) -> None:
    with open(path, "w") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")


# ---------------------------------------------------------------------------
# perturbation shapes
# ---------------------------------------------------------------------------

def _shape_values(grid, bg, spec: dict, rng) -> np.ndarray:
    shape = spec.get("shape", "gaussian_bump")
    center = spec.get("center", 2.0)
    width = spec.get("width", 3.0)
    x = grid.x
    if shape == "internal_mode":
        z = (x - center) / np.sqrt(2.0)
        return np.tanh(z) / np.cosh(z)
    if shape == "gaussian_bump":
        return np.exp(-((x - center) ** 2) / (2.0 * width**2))
    if shape == "shifted_kink":
        return bg.H_at(x - center) - bg.H_at(x)
    if shape == "random_bandlimited":
        xi_max = spec.get("xi_max", 2.0)
        coeffs = rng.standard_normal(grid.N // 2 + 1) + 1j * rng.standard_normal(grid.N // 2 + 1)
        coeffs[grid.xi > xi_max] = 0.0
        coeffs[0] = coeffs[0].real
        f = np.fft.irfft(coeffs, n=grid.N)
        f *= np.exp(-((x - center) ** 2) / (2.0 * width**2))
        return f
    raise ConfigError(f"perturbation.shape: unknown shape {shape!r}")


def build_perturbation(grid, bg, cfg: ExperimentConfig) -> FieldPair:
    """Initial (u1, u2), normalized to ||.||_{H1xL2} = delta unless an
    absolute amplitude is requested."""
    spec = dict(cfg.perturbation)
    rng = np.random.default_rng(np.random.Philox(cfg.seed + spec.get("seed", 0)))
    u1 = _shape_values(grid, bg, spec, rng)
    u2 = np.zeros(grid.N)
    if "u2" in spec:
        u2 = _shape_values(grid, bg, spec["u2"], rng)
    pair = FieldPair(grid.field(u1), grid.field(u2))
    target = spec.get("amplitude")
    current = norm(pair, "H1xL2")
    if current == 0.0:
        return pair
    scale = (target if target is not None else cfg.delta) / current
    return FieldPair(grid.field(u1 * scale), grid.field(u2 * scale))


# ---------------------------------------------------------------------------
# scenario implementations
# ---------------------------------------------------------------------------

def _run_spectrum(cfg: ExperimentConfig, out: Path) -> dict:
    grid = make_grid(cfg.L, cfg.N)
    bg = kink_background(grid, 0.0, cfg.W)
    res_L = eigen_lowest(schrodinger_operator("L", grid), k=8)
    res_s = eigen_lowest(schrodinger_operator("Lsharp", grid), k=2)
    res_ss = eigen_lowest(schrodinger_operator("LsharpSharp", grid), k=2)
    hp = bg.Hp.values / np.linalg.norm(bg.Hp.values)
    e0 = res_L.eigenvectors[0].values
    cos_sim = abs(float(np.dot(hp, e0 / np.linalg.norm(e0))))
    m = (np.sqrt(129.0) - 3.0) / 6.0
    ref = (1.0 / np.cosh(grid.x / np.sqrt(2.0))) ** m
    ref /= np.linalg.norm(ref)
    ess = res_ss.eigenvectors[0].values
    cos_ss = abs(float(np.dot(ref, ess / np.linalg.norm(ess))))
    rows = [
        (j, res_L.eigenvalues[j], res_L.spectral_eigenvalues[j], res_L.pair_residuals[j])
        for j in range(len(res_L.eigenvalues))
    ]
    write_csv(out / "diagnostics.csv",
              ("index", "lambda_richardson", "lambda_spectral", "pair_residual"), rows)
    payload = {
        "lambda0": res_L.eigenvalues[0],
        "lambda1": res_L.eigenvalues[1],
        "eigenvalues": list(res_L.eigenvalues),
        "count_below_1p95": int(np.sum(res_L.eigenvalues < 1.95)),
        "continuum_onset": res_L.eigenvalues[2],
        "cosine_similarity_Hp": cos_sim,
        "lsharp_min": res_s.eigenvalues[0],
        "lsharpsharp_min": res_ss.eigenvalues[0],
        "lsharpsharp_cosine": cos_ss,
    }
    write_json(out / "spectra.json", payload)
    return {
        "lambda0_small": abs(payload["lambda0"]) < 1e-6,
        "two_below_threshold": payload["count_below_1p95"] == 2,
    }


def _run_coercivity(cfg: ExperimentConfig, out: Path) -> dict:
    grid = make_grid(cfg.L, cfg.N)
    bg = kink_background(grid, 0.0, cfg.W)
    opL = schrodinger_operator("L", grid)
    opS = schrodinger_operator("Lsharp", grid)
    q_constrained = coercivity_quotient(opL, constraint=bg.Hp, norm_kind="H1")
    q_free_l2 = coercivity_quotient(opL, constraint=None, norm_kind="L2")
    q_sharp = coercivity_quotient(opS, constraint=None, norm_kind="H1")
    weighted = weighted_coercivity_check(bg, cfg.extra.get("ells", (0.0, 0.01, 0.25)))
    rows = [("L_H1_constrained", q_constrained), ("L_L2_free", q_free_l2),
            ("Lsharp_H1_free", q_sharp)]
    rows += [(f"weighted_l_{ell}", v) for ell, v in weighted.items()]
    write_csv(out / "diagnostics.csv", ("quotient", "minimum"), rows)
    payload = {name: v for name, v in rows}
    write_json(out / "spectra.json", payload)
    return {
        "constrained_ge_3_7": q_constrained >= 3.0 / 7.0 - 1e-4,
        "lsharp_ge_1_5": q_sharp >= 0.2 - 1e-4,
        "weighted_positive": all(v > 0 for v in weighted.values()),
    }


def _evolve_with_diagnostics(cfg: ExperimentConfig, *, T=None, threshold=None):
    grid = make_grid(cfg.L, cfg.N)
    bg = kink_background(grid, 0.0, cfg.W)
    scales = cfg.build_scales()
    init = build_perturbation(grid, bg, cfg)
    consts = FunctionalConstants(**cfg.constants) if cfg.constants else FunctionalConstants()
    sampler = make_diagnostics_sampler(bg, scales, consts)
    return evolve(
        init,
        T if T is not None else cfg.T,
        cfg.effective_dt(),
        bg,
        sample_every=cfg.sample_every,
        sampler=sampler,
        boundary_threshold=threshold if threshold is not None else cfg.boundary_threshold,
    )


def _write_trajectory(out: Path, traj) -> None:
    write_csv(out / "diagnostics.csv", DiagnosticsRecord.CSV_COLUMNS,
              [rec.row() for rec in traj.records])


def _run_orbital(cfg: ExperimentConfig, out: Path) -> dict:
    traj = _evolve_with_diagnostics(cfg)
    _write_trajectory(out, traj)
    h1l2 = np.array([rec.h1l2 for rec in traj.records])
    energies = np.array([rec.energy for rec in traj.records])
    momenta = np.array([rec.momentum for rec in traj.records])
    e_drift = float(np.max(np.abs(energies - energies[0])) / abs(energies[0]))
    p_scale = max(abs(momenta[0]), 1e-12)
    p_drift = float(np.max(np.abs(momenta - momenta[0])) / p_scale)
    payload = {
        "sup_h1l2": float(np.max(h1l2)),
        "sup_h1l2_over_delta": float(np.max(h1l2) / cfg.delta),
        "energy_drift_rel": e_drift,
        "momentum_drift_rel": p_drift,
        "boundary_fraction_max": traj.boundary_fraction_max,
    }
    write_json(out / "spectra.json", payload)
    return {"completed": True, "energy_drift_ok": e_drift < 1e-8}


def _run_decay(cfg: ExperimentConfig, out: Path) -> dict:
    traj = _evolve_with_diagnostics(cfg)
    _write_trajectory(out, traj)
    t = traj.times
    K = np.array([rec.K1 + rec.K2 for rec in traj.records])
    sech = np.array([rec.sech_integrand for rec in traj.records])
    early = K[t <= 20.0]
    cumulative = float(np.trapezoid(sech, t))
    payload = {
        "K_final": float(K[-1]),
        "K_early_max": float(np.max(early)),
        "K_final_over_early_max": float(K[-1] / np.max(early)),
        "sech_time_integral": cumulative,
        "boundary_fraction_max": traj.boundary_fraction_max,
    }
    write_json(out / "spectra.json", payload)
    return {"decayed": payload["K_final_over_early_max"] < 0.2}


def _run_virial_trace(cfg: ExperimentConfig, out: Path) -> dict:
    traj = _evolve_with_diagnostics(cfg)
    _write_trajectory(out, traj)
    t = traj.times
    Hs = np.array([rec.Hfunc for rec in traj.records])
    dH = np.gradient(Hs, t)
    write_csv(out / "hfunc_trace.csv", ("t", "Hfunc", "dHfunc_dt"),
              list(zip(t, Hs, dH)))
    write_json(out / "spectra.json", {"Hfunc_initial": float(Hs[0]),
                                      "Hfunc_final": float(Hs[-1])})
    return {"completed": True}


def _run_identities(cfg: ExperimentConfig, out: Path) -> dict:
    grid = make_grid(cfg.L, cfg.N)
    bg = kink_background(grid, 0.0, cfg.W)
    scales = cfg.build_scales()
    rng = np.random.default_rng(np.random.Philox(cfg.seed))
    rows = []
    worst_ibp = 0.0
    n_pairs = cfg.extra.get("ibp_pairs", 20)
    for i in range(n_pairs):
        width = rng.uniform(1.0, 4.0)
        center = rng.uniform(-5.0, 5.0)
        coeffs = rng.standard_normal(grid.N // 2 + 1) + 1j * rng.standard_normal(grid.N // 2 + 1)
        coeffs[grid.xi > 3.0] = 0.0
        f = np.fft.irfft(coeffs, n=grid.N)
        f *= np.exp(-((grid.x - center) ** 2) / (2.0 * width**2))
        f /= max(np.max(np.abs(f)), 1e-12)
        eta_scale = rng.uniform(3.0, 15.0)
        ws = build_weight_set(grid, scales_override(eta_scale, max(2.0, eta_scale / 3.0), 0.5))
        res = ibp_identity_residuals(ws.varphiA, grid.field(f), bg)
        rows.append((i, res["L"], res["PL"], res["LP"], res["PLP"]))
        worst_ibp = max(worst_ibp, res["L"], res["PL"], res["LP"], res["PLP"])
    write_csv(out / "diagnostics.csv", ("pair", "res_L", "res_PL", "res_LP", "res_PLP"), rows)

    init = build_perturbation(grid, bg, cfg)
    sampler = make_diagnostics_sampler(bg, scales)
    traj = evolve(init, cfg.T, cfg.effective_dt(), bg, sample_every=cfg.sample_every,
                  sampler=sampler, boundary_threshold=cfg.boundary_threshold,
                  store_states=True)
    virial_rows = []
    worst_virial = 0.0
    for t_snap, state in list(zip(traj.times, traj.states))[1:]:
        sl = identity_probe(state, float(t_snap), bg, scales,
                            rho_guess=0.0)
        ws = build_weight_set(grid, scales, sl.rho[1])
        reports = [
            dI_dt_identity_check(sl, ws),
            dJ_dt_identity_check(sl, ws),
            dM_dt_identity_check(sl, ws),
            dN_dt_identity_check(sl, ws),
        ]
        virial_rows.append((t_snap,) + tuple(r.residual for r in reports))
        worst_virial = max(worst_virial, *(r.residual for r in reports))
    write_csv(out / "virial_identities.csv",
              ("t", "res_dI", "res_dJ", "res_dM", "res_dN"), virial_rows)
    write_json(out / "spectra.json",
               {"worst_ibp_residual": worst_ibp, "worst_virial_residual": worst_virial})
    return {"ibp_ok": worst_ibp < 1e-7, "virial_ok": worst_virial < 1e-5}


def _run_kernel4(cfg: ExperimentConfig, out: Path) -> dict:
    grid = make_grid(cfg.L, cfg.N)
    kf = fourth_order_kernel(grid)
    sel = kf.window
    rows = list(zip(grid.x[sel], kf.u0.values[sel], kf.u1.values[sel],
                    kf.u2.values[sel], kf.u3.values[sel]))
    write_csv(out / "diagnostics.csv", ("x", "u0", "u1", "u2", "u3"), rows)
    payload = {"residual_u0": kf.residual_u0, **{f"{k}_at_probe": v for k, v in kf.limits.items()}}
    write_json(out / "spectra.json", payload)
    return {
        "u0_in_kernel": kf.residual_u0 < 1e-8,
        "u2_limit_one": abs(kf.limits["u2"] - 1.0) < 1e-3,
        "u1_diverges": abs(kf.limits["u1"]) > 1e3,
    }


def _run_multipliers(cfg: ExperimentConfig, out: Path) -> dict:
    gammas = cfg.extra.get("gammas", (0.1, 0.01))
    Ks = cfg.extra.get("Ks", (0.5, 1.0))
    reports = []
    for gamma in gammas:
        for K in Ks:
            reports.append(multiplier_norm_suite(gamma, K, seed=cfg.seed + 7))
    keys = [k for k in reports[0] if k != "grid"]
    write_csv(out / "diagnostics.csv", keys, [[r[k] for k in keys] for r in reports])
    write_json(out / "spectra.json", {"reports": reports})
    ok = all(
        r["resolvent_norm"] <= 1.0 + 1e-6
        and r["resolvent_dx_norm"] <= r["resolvent_dx_bound"] * (1 + 1e-6)
        for r in reports
    )
    return {"bounds_hold": ok}


def _run_vacuum(cfg: ExperimentConfig, out: Path) -> dict:
    ks = cfg.extra.get("ks", (0.3, 0.5, 0.7, 0.9, 1.5))
    rows = []
    for k in ks:
        res = vacuum_growth(k, T=cfg.extra.get("T_growth", 30.0))
        pred_rate = k * np.sqrt(max(0.0, 1.0 - k * k))
        pred_freq = k * np.sqrt(max(0.0, k * k - 1.0))
        rows.append((k, res.rate, pred_rate, res.frequency, pred_freq))
    write_csv(out / "diagnostics.csv",
              ("k", "measured_rate", "predicted_rate", "measured_frequency",
               "predicted_frequency"), rows)
    write_json(out / "spectra.json", {"rows": [list(r) for r in rows]})
    ok = all(
        abs(r[1] - r[2]) <= 0.01 * max(r[2], 0.1) for r in rows if r[0] < 1.0
    )
    return {"rates_match": ok}


def _run_picard_vs_strang(cfg: ExperimentConfig, out: Path) -> dict:
    grid = make_grid(cfg.L, cfg.N)
    bg = kink_background(grid, 0.0, cfg.W)
    init = build_perturbation(grid, bg, cfg)
    T = cfg.T
    pic = picard_solve(init, T, cfg.extra.get("iterations", 12), bg,
                       panels=cfg.extra.get("panels", 512))
    traj = evolve(init, T, cfg.extra.get("strang_dt", 1e-3), bg,
                  sample_every=T, boundary_threshold=1.0)
    diff = norm(
        FieldPair(
            grid.field(pic.u_final.first.values - traj.final_state.first.values),
            grid.field(pic.u_final.second.values - traj.final_state.second.values),
        ),
        "H1xL2",
    )
    ratios = [
        pic.differences[i + 1] / pic.differences[i]
        for i in range(len(pic.differences) - 1)
        if pic.differences[i] > 0
    ]
    write_csv(out / "diagnostics.csv", ("iteration", "difference"),
              list(enumerate(pic.differences)))
    payload = {"h1l2_difference": diff, "contraction_ratios": ratios,
               "converged": pic.converged}
    write_json(out / "spectra.json", payload)
    return {"solvers_agree": diff < 1e-6}


_SCENARIO_FNS = {
    "spectrum": _run_spectrum,
    "coercivity": _run_coercivity,
    "identities": _run_identities,
    "kernel4": _run_kernel4,
    "multipliers": _run_multipliers,
    "vacuum": _run_vacuum,
    "orbital": _run_orbital,
    "decay": _run_decay,
    "virial-trace": _run_virial_trace,
    "picard-vs-strang": _run_picard_vs_strang,
}


# ---------------------------------------------------------------------------
# runner, sweep, CLI
# ---------------------------------------------------------------------------

def run(cfg: ExperimentConfig, out_dir: str | Path | None = None) -> RunManifest:
    out = Path(out_dir if out_dir is not None else cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    status = "completed"
    checks: dict = {}
    try:
        checks = _SCENARIO_FNS[cfg.scenario](cfg, out)
    except (BoundaryContamination, NumericalBlowup) as exc:
        status = f"failed:{type(exc).__name__}"
        checks = {"error": str(exc)}
    manifest = RunManifest(
        config=cfg.__dict__.copy(),
        version=__version__,
        wall_time_s=time.perf_counter() - t0,
        status=status,
        checks=checks,
        outputs=sorted(p.name for p in out.iterdir() if p.is_file()),
    )
    write_json(out / "manifest.json", manifest.__dict__)
    return manifest


def _set_path(d: dict, dotted: str, value) -> None:
    parts = dotted.split(".")
    for p in parts[:-1]:
        d = d.setdefault(p, {})
    d[parts[-1]] = value


def _sweep_cell(args):
    raw, overrides, out_dir = args
    cell = json.loads(json.dumps(raw))
    for key, value in overrides.items():
        _set_path(cell, key, value)
    try:
        cfg = ExperimentConfig.from_dict(cell)
        manifest = run(cfg, out_dir)
        return {"params": overrides, "out_dir": str(out_dir), "status": manifest.status}
    except Exception as exc:  # cell failures must not sink the sweep
        return {"params": overrides, "out_dir": str(out_dir),
                "status": f"failed:{type(exc).__name__}:{exc}"}


def sweep(template: dict, grid_spec: dict, out_root: str | Path, workers: int | None = None) -> list:
    """Run every combination in grid_spec (mapping of dotted config paths
    to value lists); partial failures are recorded per cell."""
    out_root = Path(out_root)
    out_root.mkdir(parents=True, exist_ok=True)
    keys = sorted(grid_spec)
    # an empty grid means nothing to run (product of zero iterables is [()])
    combos = list(itertools.product(*(grid_spec[k] for k in keys))) if keys else []
    tasks = []
    for i, combo in enumerate(combos):
        overrides = dict(zip(keys, combo))
        tasks.append((template, overrides, out_root / f"cell_{i:03d}"))
    if not tasks:
        index: list = []
    elif workers == 1 or len(tasks) == 1:
        index = [_sweep_cell(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers or min(4, len(tasks))) as pool:
            index = list(pool.map(_sweep_cell, tasks))
    write_json(out_root / "index.json", {"cells": index})
    return index


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="kinklab",
        description="Numerical experiments around the fourth-order phi^4 kink",
    )
    parser.add_argument("scenario", help="scenario name or 'sweep'")
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--out", help="output directory override")
    parser.add_argument("--seed", type=int, help="seed override")
    parser.add_argument("--template", help="sweep: template config JSON")
    parser.add_argument("--grid", help="sweep: parameter grid JSON")
    parser.add_argument("--workers", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        if args.scenario == "sweep":
            if not (args.template and args.grid):
                raise ConfigError("sweep: requires --template and --grid")
            template = json.loads(Path(args.template).read_text())
            grid_spec = json.loads(Path(args.grid).read_text())
            index = sweep(template, grid_spec, args.out or "runs/sweep",
                          workers=args.workers)
            failed = [c for c in index if not str(c["status"]).startswith("completed")]
            print(f"sweep: {len(index) - len(failed)}/{len(index)} cells completed")
            return 0
        raw = json.loads(Path(args.config).read_text()) if args.config else {}
        raw.setdefault("scenario", args.scenario)
        if raw["scenario"] != args.scenario:
            raise ConfigError(
                f"scenario: config says {raw['scenario']!r}, CLI says {args.scenario!r}"
            )
        if args.seed is not None:
            raw["seed"] = args.seed
        if args.out is not None:
            raw["out_dir"] = args.out
        cfg = ExperimentConfig.from_dict(raw)
        manifest = run(cfg)
        print(f"{cfg.scenario}: {manifest.status} "
              f"({manifest.wall_time_s:.1f} s) -> {cfg.out_dir}")
        return 0 if manifest.status == "completed" else 1
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
