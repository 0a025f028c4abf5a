import numpy as np
import pytest

import kinklab as kl
from kinklab.evolution import evolve
from kinklab.grid import deriv_values
from kinklab.model import FieldPair
from kinklab.modulation import extract_rho
from kinklab.operators import transform_to_dual
from kinklab.virials import (
    FunctionalConstants,
    combined_H,
    dI_dt_identity_check,
    dJ_dt_identity_check,
    dM_dt_identity_check,
    dN_dt_identity_check,
    decay_functionals,
    identity_probe,
    virial_sample,
)
from kinklab.weights import build_weight_set, scales_from_delta
from conftest import gaussian_pair

# 1 + 16*10^-0.2 - 32*0.1 + 80*10^-0.4, the combined functional at
# C_i = 1, delta = 0.01, I = J = M = N = 1
COMBINED_H_UNIT = 39.74389115596287


def _sample(u, scales, bg, rho=0.0):
    ws = build_weight_set(bg.grid, scales, rho)
    return virial_sample(u, scales.gamma, rho, ws, bg)


def test_functional_constants_coefficients():
    consts = FunctionalConstants(C1=1.3, C2=0.7, C4=2.0)
    cI, cN, cM = consts.coefficients(0.01)
    assert abs(cI - 16 * 0.7 * 0.01**0.1) < 1e-15
    assert abs(cN + 32 * 0.7 * 1.3 * 0.01**0.5) < 1e-15
    assert abs(cM - 80 * 1.3 * 0.7 * 2.0 * 0.01**0.2) < 1e-15


def test_combined_H_arithmetic():
    sample = type("S", (), {"I": 1.0, "J": 1.0, "M": 1.0, "N": 1.0})()
    val = combined_H(sample, FunctionalConstants(), 0.01)
    assert abs(val - COMBINED_H_UNIT) < 1e-12


def test_virial_sample_zero(grid50, bg50):
    u = FieldPair(grid50.zeros(), grid50.zeros())
    s = _sample(u, scales_from_delta(0.01), bg50)
    assert s.I == s.J == s.M == s.N == 0.0
    assert s.K1 == s.K2 == s.sech_integrand == 0.0


def test_virial_I_parity_vanishing(grid50, bg50):
    # even u1, even u2, rho = 0: varphi_A odd makes the I integrand odd
    g = grid50
    u = FieldPair(g.field(np.exp(-g.x**2 / 9)), g.field(np.exp(-g.x**2 / 16)))
    s = _sample(u, scales_from_delta(0.01), bg50)
    assert abs(s.I) < 1e-12


def test_virial_gamma_degeneracy(grid50, bg50):
    # u1 in ker L, u2 = 0: v = 0 so J = M = N = 0
    u = FieldPair(bg50.Hp, grid50.zeros())
    s = _sample(u, scales_from_delta(0.01), bg50)
    assert abs(s.J) < 1e-16 and abs(s.M) < 1e-16 and abs(s.N) < 1e-16


def test_virial_quadratic_scaling(grid50, bg50):
    sc = scales_from_delta(0.01)
    u = gaussian_pair(grid50, 0.02)
    lam = 1e-3
    small = FieldPair(grid50.field(lam * u.first.values),
                      grid50.field(lam * u.second.values))
    a = _sample(u, sc, bg50)
    b = _sample(small, sc, bg50)
    for name in ("I", "J", "M", "N"):
        big, tiny = getattr(a, name), getattr(b, name)
        assert abs(tiny - lam**2 * big) < 1e-10 * max(abs(big), 1e-12)


def test_decay_functionals_values(grid50, bg50):
    g = grid50
    z = FieldPair(g.zeros(), g.zeros())
    assert decay_functionals(z, 0.1, 0.0, bg50) == (0.0, 0.0, 0.0)
    sech = g.field(1.0 / np.cosh(g.x))
    u = FieldPair(sech, g.zeros())
    K1, K2, _ = decay_functionals(u, 0.3, 0.0, bg50)
    assert K2 == 0.0
    assert abs(K1 - np.pi / 2) < 1e-10  # int sech^3 = pi/2


@pytest.fixture(scope="module")
def identity_setup():
    g = kl.make_grid(50.0, 8192)
    bg = kl.kink_background(g, 0.0, 5.0)
    scales = scales_from_delta(0.01)
    init = gaussian_pair(g, 0.01)
    traj = evolve(init, 2.0, 0.01, bg, sample_every=1.0,
                  boundary_threshold=1e-6, store_states=True)
    return g, bg, scales, traj


def test_identity_checks_zero_state(grid50, bg50):
    sc = scales_from_delta(0.01)
    from kinklab.virials import IdentitySlice
    z = FieldPair(grid50.zeros(), grid50.zeros())
    sl = IdentitySlice(t=0.0, tau=1e-4, u=(z, z, z), rho=(0.0, 0.0, 0.0),
                       rho_dot=0.0, gamma=sc.gamma, bg=bg50, scales=sc)
    ws = build_weight_set(grid50, sc, 0.0)
    for chk in (dI_dt_identity_check, dJ_dt_identity_check,
                dM_dt_identity_check, dN_dt_identity_check):
        assert chk(sl, ws).residual == 0.0


def test_virial_identities_on_trajectory(identity_setup):
    g, bg, scales, traj = identity_setup
    state = traj.states[-1]
    sl = identity_probe(state, float(traj.times[-1]), bg, scales)
    ws = build_weight_set(g, scales, sl.rho[1])
    rI = dI_dt_identity_check(sl, ws)
    rJ = dJ_dt_identity_check(sl, ws)
    rM = dM_dt_identity_check(sl, ws)
    rN = dN_dt_identity_check(sl, ws)
    assert rI.residual < 1e-6
    assert rJ.residual < 1e-5
    assert rM.residual < 1e-5
    assert rN.residual < 1e-5
    # the moving-weight variant including the transport terms agrees too
    for r in (rI, rJ, rM, rN):
        assert r.residual_moving < 2e-5


def test_virial_identity_richardson_stability(identity_setup):
    # halving the differencing step leaves the residual small
    g, bg, scales, traj = identity_setup
    state = traj.states[1]
    for tau in (1e-4, 5e-5):
        sl = identity_probe(state, float(traj.times[1]), bg, scales, tau=tau)
        ws = build_weight_set(g, scales, sl.rho[1])
        assert dI_dt_identity_check(sl, ws).residual < 1e-6


def test_linear_flow_reduced_identity(identity_setup):
    # nonlinearity off: the cubic terms drop and the identity tightens
    g, bg, scales, _ = identity_setup
    init = gaussian_pair(g, 0.01)
    traj = evolve(init, 1.0, 0.01, bg, sample_every=1.0, nonlinear=False,
                  boundary_threshold=1e-6, store_states=True)
    sl = identity_probe(traj.states[-1], 1.0, bg, scales, nonlinear=False,
                        modulate=False)
    ws = build_weight_set(g, scales, sl.rho[1])
    assert dI_dt_identity_check(sl, ws).residual < 1e-8


def test_sech_integrand_scales_with_delta(bg50):
    # time integral of the sech-weighted local norm shrinks with delta;
    # quadratic scaling puts the homogeneized ratio in [0.15, 0.85]
    g = kl.make_grid(200.0, 2048)
    bg = kl.kink_background(g, 0.0, 5.0)
    out = {}
    for delta in (0.02, 0.01):
        init = gaussian_pair(g, delta, c1=3.0, w1=4.0, c2=-4.0, w2=4.0)
        sc = scales_from_delta(delta)
        from kinklab.virials import make_diagnostics_sampler
        traj = evolve(init, 25.0, 0.5 * g.h, bg, sample_every=1.0,
                      sampler=make_diagnostics_sampler(bg, sc),
                      boundary_threshold=1e-6)
        sech = np.array([r.sech_integrand for r in traj.records])
        out[delta] = float(np.trapezoid(sech, traj.times))
    ratio = out[0.01] / out[0.02]
    assert 0.15 <= ratio <= 0.85
