import numpy as np
import pytest

import kinklab as kl
from kinklab.evolution import (
    BoundaryContamination,
    NumericalBlowup,
    evolve,
    linear_step,
    make_propagator,
    picard_solve,
    strang_step,
    vacuum_growth,
)
from kinklab.grid import deriv_values
from kinklab.model import FieldPair, SQRT2
from conftest import gaussian_pair


def test_propagator_symplectic(grid50):
    table = make_propagator(grid50, 0.3)
    assert table.determinant_defect() < 1e-12
    # w -> 0 limit: sin(w t)/w -> t
    assert abs(table.s12[0]) == 0.0 and abs(table.c[0] - 1.0) < 1e-15


def test_linear_step_single_mode(grid50):
    g = grid50
    k = g.xi[40]
    w = abs(k) * np.sqrt(k * k + 2.0)
    dt = 0.37
    table = make_propagator(g, dt)
    u = FieldPair(g.field(np.cos(k * g.x)), g.zeros())
    out = linear_step(u, table)
    assert np.max(np.abs(out.first.values - np.cos(w * dt) * np.cos(k * g.x))) < 1e-12


def test_linear_step_zero_and_reversal(grid50):
    g = grid50
    z = FieldPair(g.zeros(), g.zeros())
    out = linear_step(z, make_propagator(g, 0.5))
    assert kl.norm(out.first) == 0.0
    rng = np.random.default_rng(4)
    u = FieldPair(g.field(rng.standard_normal(g.N)), g.field(rng.standard_normal(g.N)))
    fwd = linear_step(u, make_propagator(g, 0.4))
    back = linear_step(fwd, make_propagator(g, -0.4))
    assert np.max(np.abs(back.first.values - u.first.values)) < 1e-12
    assert np.max(np.abs(back.second.values - u.second.values)) < 1e-12


def test_linear_step_quadratic_energy(grid50):
    g = grid50
    rng = np.random.default_rng(6)
    u = gaussian_pair(g, 0.1)
    table = make_propagator(g, 0.23)
    def quad(p):
        return g.h * np.sum(p.second.values**2 + deriv_values(g, p.first.values) ** 2
                            + 2 * p.first.values**2)
    e0 = quad(u)
    out = linear_step(u, table)
    assert abs(quad(out) - e0) < 1e-12 * e0


def test_strang_reduces_to_linear_on_vacuum_background(grid50, bg50):
    # H_moll == 1 and nonlinearity off: the kick vanishes identically
    import dataclasses
    vac = dataclasses.replace(bg50, H_mollified=grid50.field(np.ones(grid50.N)))
    u = gaussian_pair(grid50, 0.05)
    table = make_propagator(grid50, 0.1)
    a = strang_step(u, table, vac, nonlinear=False)
    b = linear_step(u, table)
    assert np.max(np.abs(a.first.values - b.first.values)) < 1e-14
    assert np.max(np.abs(a.second.values - b.second.values)) < 1e-14


def test_strang_second_order_self_convergence(grid50, bg50):
    init = gaussian_pair(grid50, 0.05)
    ref = evolve(init, 1.0, 1.0 / 2048, bg50, sample_every=10,
                 boundary_threshold=1.0).final_state
    errs = []
    for dt in (0.04, 0.02, 0.01):
        fin = evolve(init, 1.0, dt, bg50, sample_every=10,
                     boundary_threshold=1.0).final_state
        errs.append(kl.norm(FieldPair(
            grid50.field(fin.first.values - ref.first.values),
            grid50.field(fin.second.values - ref.second.values)), "H1xL2"))
    for i in range(2):
        assert abs(errs[i] / errs[i + 1] - 4.0) < 0.3


def test_time_reversal(grid50, bg50):
    init = gaussian_pair(grid50, 0.02)
    fwd = evolve(init, 2.0, 0.01, bg50, sample_every=10, boundary_threshold=1.0).final_state
    flipped = FieldPair(fwd.first, grid50.field(-fwd.second.values))
    back = evolve(flipped, 2.0, 0.01, bg50, sample_every=10, boundary_threshold=1.0).final_state
    assert np.max(np.abs(back.first.values - init.first.values)) < 1e-6
    assert np.max(np.abs(back.second.values + init.second.values)) < 1e-6


def test_evolve_zero_initial_data(grid50, bg50):
    z = FieldPair(grid50.zeros(), grid50.zeros())
    traj = evolve(z, 1.0, 0.05, bg50, sample_every=0.5)
    for rec in traj.records:
        assert rec.boundary_energy == 0.0
    assert kl.norm(traj.final_state.first) == 0.0


def test_evolve_blowup_guard(grid50, bg50):
    big = FieldPair(grid50.field(50.0 * np.exp(-(grid50.x**2))), grid50.zeros())
    with pytest.raises(NumericalBlowup):
        evolve(big, 20.0, 0.5, bg50, sample_every=1.0, boundary_threshold=np.inf)


def test_boundary_monitor_trips(grid50, bg50):
    seam_bump = FieldPair(
        grid50.field(0.01 * np.exp(-((grid50.x + 42.0) ** 2))), grid50.zeros())
    with pytest.raises(BoundaryContamination):
        evolve(seam_bump, 1.0, 0.05, bg50, sample_every=0.5, boundary_threshold=1e-8)


def test_internal_mode_stability_constant():
    # (eps Y1, 0) data: sup_t ||u|| <= C eps with C stable under halving
    g = kl.make_grid(400.0, 4096)
    bg = kl.kink_background(g, 0.0, 5.0)
    Y1 = np.tanh(g.x / SQRT2) / np.cosh(g.x / SQRT2)
    consts = []
    for eps in (0.01, 0.005):
        init = FieldPair(g.field(eps * Y1), g.zeros())
        traj = evolve(init, 30.0, 0.5 * g.h, bg, sample_every=1.0,
                      boundary_threshold=1e-6, store_states=True)
        sup = max(
            kl.norm(FieldPair(st.first, st.second), "H1xL2") for st in traj.states
        )
        consts.append(sup / eps)
    assert abs(consts[0] - consts[1]) < 0.2 * consts[1]


def test_kink_linearized_quadratic_energy_conserved(bg50):
    # with the nonlinear terms off, (||u2||^2 + <L u1, u1>)/2 is conserved
    g = kl.make_grid(100.0, 1024)
    bg = kl.kink_background(g, 0.0, 5.0)
    init = gaussian_pair(g, 0.01)
    traj = evolve(init, 50.0, 5e-3, bg, sample_every=5.0, nonlinear=False,
                  boundary_threshold=1.0, store_states=True, order=4)
    V0m = -1.0 + 3.0 * bg.H_mollified.values**2
    vals = []
    for st in traj.states:
        du1 = deriv_values(g, st.first.values)
        vals.append(0.5 * g.h * np.sum(
            st.second.values**2 + du1**2 + V0m * st.first.values**2))
    vals = np.array(vals)
    assert np.max(np.abs(vals - vals[0])) < 1e-8 * abs(vals[0])


def test_picard_linear_matches_composed_propagator(grid50, bg50):
    init = gaussian_pair(grid50, 0.005)
    pic = picard_solve(init, 1.0, 3, bg50, panels=256, force_linear=True)
    assert pic.differences[0] < 1e-10  # one iteration is exact when F = 0
    state = init
    table = make_propagator(grid50, 1.0 / 256)
    for _ in range(256):
        state = linear_step(state, table)
    assert np.max(np.abs(pic.u_final.first.values - state.first.values)) < 1e-10
    assert np.max(np.abs(pic.u_final.second.values - state.second.values)) < 1e-10


def test_picard_contraction(grid50, bg50):
    init = gaussian_pair(grid50, 0.005)
    pic = picard_solve(init, 1.0, 10, bg50, panels=512)
    ratios = [pic.differences[i + 1] / pic.differences[i]
              for i in range(len(pic.differences) - 1)]
    assert all(r < 0.5 for r in ratios[1:])


def test_vacuum_growth_rates():
    r = vacuum_growth(0.5)
    assert abs(r.rate - np.sqrt(3) / 4) < 0.01 * np.sqrt(3) / 4
    r99 = vacuum_growth(0.99)
    assert r99.rate < 0.15
    r15 = vacuum_growth(1.5)
    assert abs(r15.rate) < 1e-3                       # no growth
    assert abs(r15.frequency - 1.5 * np.sqrt(1.25)) < 0.01 * 1.677


def test_vacuum_growth_rejects_bad_k():
    with pytest.raises(ValueError):
        vacuum_growth(-1.0)
    with pytest.raises(ValueError):
        vacuum_growth(0.0)
