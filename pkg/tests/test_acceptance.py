"""Acceptance suite: one test per primary criterion, each printing a
PASS/FAIL line (run with `pytest -s tests/test_acceptance.py` to watch).

Closed-form spectral constants are asserted at their stated tolerances;
identity suites at their stated residuals; scaling criteria over the
stated parameter sweeps.  Tolerances are pinned here, not configurable.
"""

import time

import numpy as np
import pytest

import kinklab as kl
from kinklab.evolution import evolve, picard_solve, vacuum_growth
from kinklab.grid import deriv_values, make_grid, norm
from kinklab.model import (
    FieldPair,
    KINK_ENERGY,
    SQRT2,
    energy,
    kink_background,
    momentum,
)
from kinklab.operators import (
    LSHARPSHARP_GROUND_ENERGY,
    LSHARPSHARP_GROUND_POWER,
    coercivity_quotient,
    eigen_lowest,
    fourth_order_kernel,
    ibp_identity_residuals,
    multiplier_norm_suite,
    schrodinger_operator,
)
from kinklab.virials import (
    dI_dt_identity_check,
    dJ_dt_identity_check,
    dM_dt_identity_check,
    dN_dt_identity_check,
    identity_probe,
    make_diagnostics_sampler,
)
from kinklab.weights import build_weight_set, scales_from_delta, scales_override
from conftest import gaussian_pair, report


def _cosine(a, b):
    return abs(float(np.dot(a, b))) / (np.linalg.norm(a) * np.linalg.norm(b))


def test_acceptance_spectrum_of_L():
    t0 = time.perf_counter()
    g = make_grid(50.0, 1024)
    bg = kink_background(g, 0.0, 5.0)
    res = eigen_lowest(schrodinger_operator("L", g), k=8)
    lam0 = res.eigenvalues[0]
    below = int(np.sum(res.eigenvalues < 1.95))
    cos0 = _cosine(res.eigenvectors[0].values, bg.Hp.values)
    onset = res.eigenvalues[2]
    wall = time.perf_counter() - t0
    ok = (abs(lam0) < 1e-6 and below == 2 and cos0 > 1 - 1e-8
          and abs(onset - 2.0) < 0.05 and wall < 30.0)
    report("spectrum-of-L", ok,
           f"lambda0={lam0:.2e}, below1.95={below}, 1-cos={1-cos0:.1e}, "
           f"onset={onset:.4f}, {wall:.1f}s")
    assert abs(lam0) < 1e-6
    assert below == 2
    assert cos0 > 1 - 1e-8
    assert abs(onset - 2.0) < 0.05
    assert wall < 30.0


def test_acceptance_lsharpsharp_ground_state():
    t0 = time.perf_counter()
    g = make_grid(50.0, 1024)
    res = eigen_lowest(schrodinger_operator("LsharpSharp", g), k=2)
    lam = res.eigenvalues[0]
    ref = (1.0 / np.cosh(g.x / SQRT2)) ** LSHARPSHARP_GROUND_POWER
    cos = _cosine(res.eigenvectors[0].values, ref)
    wall = time.perf_counter() - t0
    ok = abs(lam - LSHARPSHARP_GROUND_ENERGY) < 1e-6 and cos > 1 - 1e-8 and wall < 30
    report("lsharpsharp-ground", ok,
           f"lambda={lam:.9f} vs {LSHARPSHARP_GROUND_ENERGY:.9f}, "
           f"1-cos={1-cos:.1e}, {wall:.1f}s")
    assert abs(lam - LSHARPSHARP_GROUND_ENERGY) < 1e-6
    assert cos > 1 - 1e-8
    assert wall < 30.0
    # nodeless ground state
    core = np.abs(g.x) < 20
    assert np.all(res.eigenvectors[0].values[core] > 0)


def test_acceptance_coercivity():
    t0 = time.perf_counter()
    g = make_grid(50.0, 1024)
    bg = kink_background(g, 0.0, 5.0)
    q_constrained = coercivity_quotient(
        schrodinger_operator("L", g), constraint=bg.Hp, norm_kind="H1")
    q_sharp = coercivity_quotient(
        schrodinger_operator("Lsharp", g), constraint=None, norm_kind="H1")
    wall = time.perf_counter() - t0
    ok = (q_constrained >= 3.0 / 7.0 - 1e-4 and q_sharp >= 0.2 - 1e-4
          and wall < 60.0)
    report("coercivity", ok,
           f"constrained={q_constrained:.6f} (>=3/7={3/7:.6f}), "
           f"Lsharp={q_sharp:.6f} (>=0.2), {wall:.1f}s")
    assert q_constrained >= 3.0 / 7.0 - 1e-4
    assert q_sharp >= 0.2 - 1e-4
    assert wall < 60.0


def test_acceptance_identity_suite():
    t0 = time.perf_counter()
    # part 1: the four integration-by-parts identities on 20 random pairs
    g = make_grid(50.0, 16384)
    bg = kink_background(g, 0.0, 5.0)
    rng = np.random.default_rng(np.random.Philox(3))
    worst_ibp = 0.0
    for _ in range(20):
        width = rng.uniform(1.0, 4.0)
        center = rng.uniform(-5.0, 5.0)
        coeffs = rng.standard_normal(g.N // 2 + 1) + 1j * rng.standard_normal(g.N // 2 + 1)
        coeffs[g.xi > 3.0] = 0.0
        f = np.fft.irfft(coeffs, n=g.N)
        f *= np.exp(-((g.x - center) ** 2) / (2 * width**2))
        f /= max(np.max(np.abs(f)), 1e-12)
        A = rng.uniform(4.0, 12.0)
        ws = build_weight_set(g, scales_override(A, max(2.0, A / 3.0), 0.5))
        res = ibp_identity_residuals(ws.varphiA, g.field(f), bg)
        worst_ibp = max(worst_ibp, res["L"], res["PL"], res["LP"], res["PLP"])

    # part 2: the four virial d/dt identities on delta = 0.01 snapshots
    scales = scales_from_delta(0.01)
    init = gaussian_pair(g, 0.01)
    traj = evolve(init, 2.0, 0.01, bg, sample_every=1.0,
                  boundary_threshold=1e-6, store_states=True)
    worst_virial = 0.0
    details = []
    for t_snap, state in list(zip(traj.times, traj.states))[1:]:
        sl = identity_probe(state, float(t_snap), bg, scales)
        ws = build_weight_set(g, scales, sl.rho[1])
        for chk in (dI_dt_identity_check, dJ_dt_identity_check,
                    dM_dt_identity_check, dN_dt_identity_check):
            r = chk(sl, ws)
            details.append(f"{r.name}@t={t_snap:.0f}:{r.residual:.1e}")
            worst_virial = max(worst_virial, r.residual)
    wall = time.perf_counter() - t0
    ok = worst_ibp < 1e-7 and worst_virial < 1e-5 and wall < 300.0
    report("identity-suite", ok,
           f"ibp_worst={worst_ibp:.1e} (<1e-7), virial_worst={worst_virial:.1e} "
           f"(<1e-5), {wall:.0f}s")
    assert worst_ibp < 1e-7
    assert worst_virial < 1e-5
    assert wall < 300.0


@pytest.fixture(scope="module")
def kernel_result():
    g = make_grid(50.0, 1024)
    return fourth_order_kernel(g, probe=-30.0)


def test_acceptance_kernel_functions(kernel_result):
    kf = kernel_result
    ok = (kf.residual_u0 < 1e-8 and abs(kf.limits["u2"] - 1.0) < 1e-3
          and abs(kf.limits["u1"]) > 1e3)
    report("kernel4", ok,
           f"res_u0={kf.residual_u0:.1e}, u2(-30)={kf.limits['u2']:.6f}, "
           f"u1(-30)={kf.limits['u1']:.2e}, u3(-30)={kf.limits['u3']:.2f}")
    assert kf.residual_u0 < 1e-8
    assert abs(kf.limits["u2"] - 1.0) < 1e-3
    assert abs(kf.limits["u1"]) > 1e3


@pytest.mark.xfail(
    strict=True,
    reason="u3 is the linearly growing null-space branch (~|x|/2, positive): "
    "the quadrature gives u3(-30) = +15, so a magnitude above 1e3 with "
    "negative sign is unattainable from the stated integral formulas; "
    "see the decisions ledger.",
)
def test_acceptance_kernel_u3_clause(kernel_result):
    kf = kernel_result
    assert abs(kf.limits["u3"]) > 1e3 and kf.limits["u3"] < 0


def test_kernel_u3_faithful_behavior(kernel_result):
    # the computed branch grows linearly: u3(x) ~ -x/2
    kf = kernel_result
    assert kf.limits["u3"] == pytest.approx(15.0, rel=0.02)


def test_acceptance_conservation():
    t0 = time.perf_counter()
    g = make_grid(600.0, 8192)
    bg = kink_background(g, 0.0, 5.0)
    x = g.x
    u1 = 0.35 * np.exp(-((x - 2.0) ** 2) / (2 * 4.0**2))
    u2 = np.exp(-((x - 12.0) ** 2) / (2 * 8.0**2))
    pair = FieldPair(g.field(u1), g.field(u2))
    s = 0.01 / norm(pair, "H1xL2")
    init = FieldPair(g.field(u1 * s), g.field(u2 * s))
    traj = evolve(init, 50.0, 2.5e-3, bg, sample_every=2.0,
                  boundary_threshold=1e-8, store_states=True, order=4)
    Es, Ps = [], []
    for st in traj.states:
        full = FieldPair(g.field(bg.H_mollified.values + st.first.values), st.second)
        Es.append(energy(full))
        Ps.append(momentum(full))
    Es, Ps = np.array(Es), np.array(Ps)
    e_drift = float(np.max(np.abs(Es - Es[0])) / abs(Es[0]))
    p_drift = float(np.max(np.abs(Ps - Ps[0])) / abs(Ps[0]))
    # E[(H, 0)] = ||H'||^2 = 2 sqrt2 / 3 by quadrature
    g50 = make_grid(50.0, 1024)
    bg50 = kink_background(g50, 0.0, 5.0)
    e_kink = energy(FieldPair(bg50.H, g50.zeros()), background=bg50)
    wall = time.perf_counter() - t0
    ok = e_drift < 1e-8 and p_drift < 1e-8 and abs(e_kink - KINK_ENERGY) < 1e-10
    report("conservation", ok,
           f"E_drift={e_drift:.1e}, P_drift={p_drift:.1e} (P0={Ps[0]:.3f}), "
           f"E[H]err={abs(e_kink - KINK_ENERGY):.1e}, {wall:.0f}s")
    assert e_drift < 1e-8
    assert p_drift < 1e-8
    assert abs(e_kink - KINK_ENERGY) < 1e-10


def test_acceptance_vacuum_instability():
    rows = []
    ok = True
    for k in (0.3, 0.5, 0.7):
        r = vacuum_growth(k)
        pred = k * np.sqrt(1 - k * k)
        ok = ok and abs(r.rate - pred) <= 0.01 * pred
        rows.append(f"k={k}:{r.rate:.5f}/{pred:.5f}")
    r15 = vacuum_growth(1.5)
    ok = ok and abs(r15.rate) < 1e-3
    rows.append(f"k=1.5: rate={r15.rate:.1e}, freq={r15.frequency:.5f}")
    report("vacuum-instability", ok, "; ".join(rows))
    for k in (0.3, 0.5, 0.7):
        r = vacuum_growth(k)
        pred = k * np.sqrt(1 - k * k)
        assert abs(r.rate - pred) <= 0.01 * pred
    assert abs(r15.rate) < 1e-3


def _orbital_run(delta, T, L=1200.0, N=16384):
    g = make_grid(L, N)
    bg = kink_background(g, 0.0, 5.0)
    init = gaussian_pair(g, delta, c1=3.0, w1=5.0, c2=-4.0, w2=5.0, amp2=0.5)
    scales = scales_from_delta(delta)
    sampler = make_diagnostics_sampler(bg, scales)
    return evolve(init, T, 0.5 * g.h, bg, sample_every=2.0,
                  sampler=sampler, boundary_threshold=1e-8)


def test_acceptance_orbital_stability_scaling():
    t0 = time.perf_counter()
    consts = {}
    for delta in (0.02, 0.01, 0.005):
        traj = _orbital_run(delta, 100.0)
        consts[delta] = max(r.h1l2 for r in traj.records) / delta
    vals = np.array(list(consts.values()))
    spread = float((vals.max() - vals.min()) / vals.min())
    wall = time.perf_counter() - t0
    ok = spread < 0.25
    report("orbital-scaling", ok,
           f"C(delta)={ {d: round(v, 4) for d, v in consts.items()} }, "
           f"spread={spread:.3%}, {wall:.0f}s")
    assert spread < 0.25


def test_acceptance_local_decay():
    t0 = time.perf_counter()
    results = {}
    for delta in (0.01, 0.005):
        g = make_grid(2400.0, 32768)
        bg = kink_background(g, 0.0, 5.0)
        init = gaussian_pair(g, delta, c1=3.0, w1=5.0, c2=-4.0, w2=5.0, amp2=0.5)
        scales = scales_from_delta(delta)
        sampler = make_diagnostics_sampler(bg, scales)
        traj = evolve(init, 200.0, 0.5 * g.h, bg, sample_every=2.0,
                      sampler=sampler, boundary_threshold=1e-8)
        t = traj.times
        K = np.array([r.K1 + r.K2 for r in traj.records])
        sech = np.array([r.sech_integrand for r in traj.records])
        results[delta] = {
            "decay_ratio": float(K[-1] / np.max(K[t <= 20.0])),
            "cumulative": float(np.trapezoid(sech, t)),
        }
    ratio = results[0.01]["cumulative"] / results[0.005]["cumulative"]
    wall = time.perf_counter() - t0
    ok = (results[0.01]["decay_ratio"] < 0.2
          and np.isfinite(results[0.01]["cumulative"])
          and 2.0 <= ratio <= 8.0)
    report("local-decay", ok,
           f"K(200)/max={results[0.01]['decay_ratio']:.2e} (<0.2), "
           f"cum={results[0.01]['cumulative']:.3e}, "
           f"delta-halving factor={ratio:.2f} in [2,8], {wall:.0f}s")
    assert results[0.01]["decay_ratio"] < 0.2
    assert np.isfinite(results[0.01]["cumulative"])
    assert 2.0 <= ratio <= 8.0


def test_acceptance_picard_vs_strang():
    t0 = time.perf_counter()
    g = make_grid(50.0, 1024)
    bg = kink_background(g, 0.0, 5.0)
    init = gaussian_pair(g, 0.005)
    pic = picard_solve(init, 1.0, 14, bg, panels=512)
    ref = evolve(init, 1.0, 5e-4, bg, sample_every=10.0,
                 boundary_threshold=1.0).final_state
    diff = norm(FieldPair(
        g.field(pic.u_final.first.values - ref.first.values),
        g.field(pic.u_final.second.values - ref.second.values)), "H1xL2")
    ratios = [pic.differences[i + 1] / pic.differences[i]
              for i in range(len(pic.differences) - 1)]
    wall = time.perf_counter() - t0
    ok = diff < 1e-6 and all(r < 0.5 for r in ratios[1:])
    report("picard-vs-strang", ok,
           f"H1xL2 diff={diff:.2e} (<1e-6), ratios[2:]<1/2: "
           f"max={max(ratios[1:]):.3f}, {wall:.0f}s")
    assert diff < 1e-6
    assert all(r < 0.5 for r in ratios[1:])


def test_acceptance_multiplier_norms():
    t0 = time.perf_counter()
    ok = True
    details = []
    for gamma in (0.1, 0.01):
        for K in (0.5, 1.0):
            rep = multiplier_norm_suite(gamma, K)
            sharp_ok = (
                abs(rep["resolvent_norm"] - 1.0) < 1e-6
                and abs(rep["resolvent_dx_norm"] - rep["resolvent_dx_sharp"])
                < 1e-6 * rep["resolvent_dx_sharp"]
            )
            bounds_ok = (
                rep["resolvent_norm"] <= 1.0 + 1e-9
                and rep["resolvent_dx_norm"] <= rep["resolvent_dx_bound"] * (1 + 1e-9)
                and rep["resolvent_helmholtz_norm"]
                <= rep["resolvent_helmholtz_grid_limited"] * (1 + 1e-6)
                and rep["sech_commute_ratio"] < 5.0
                and rep["cosh_sandwich_ratio"] < 5.0
                and rep["sech_dx_ratio_times_sqrt_gamma"] < 5.0
                and rep["sech_helmholtz_ratio_times_gamma"] < 5.0
            )
            ok = ok and sharp_ok and bounds_ok
            details.append(
                f"g={gamma},K={K}: |R|={rep['resolvent_norm']:.8f}, "
                f"|Rdx|={rep['resolvent_dx_norm']:.6f}~{rep['resolvent_dx_sharp']:.6f}")
    wall = time.perf_counter() - t0
    report("multiplier-norms", ok, "; ".join(details) + f", {wall:.0f}s")
    assert ok
