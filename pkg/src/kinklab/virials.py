"""Virial functionals, their exact time-derivative identities, and decay.

Functionals (y = x - rho, v the smoothed dual variables):

    I = int varphi_A(y) u1 u2          J = int psi_{A,B}(y) v1 v2
    M = int psi_{A,B}(y) v1' v2'       N = int rho_{A,B}(y) v1' v2

Each satisfies an exact d/dt identity along the flow; the checks below
evaluate both sides independently: the left side by centered time
differencing of the functional over micro-stepped states (weights frozen
at the middle sample's rho), the right side term by term by quadrature.
With frozen weights the lemma transport term -rho' int (weight)' (...)
drops out of the difference quotient and is reported separately; the
moving-weight variant including it is also evaluated as a cross-check.

The combined Lyapunov functional is

    Hfunc = J + 16 C2 d^(1/10) I - 32 C2 C1 d^(1/2) N + 80 C1 C2 C4 d^(1/5) M

with configurable constants (defaults 1); its monotonicity is emitted as
a monitored series, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .grid import GridSpec, deriv_values, norm
from .model import FieldPair, KinkBackground, energy, momentum
from .modulation import extract_rho, localized_fields, rho_dot
from .operators import smoothing_values, transform_to_dual
from .weights import ScaleParams, WeightSet, build_weight_set
from .evolution import DiagnosticsRecord, make_propagator, strang_step

__all__ = [
    "FunctionalConstants",
    "VirialSample",
    "virial_sample",
    "decay_functionals",
    "combined_H",
    "IdentitySlice",
    "identity_probe",
    "IdentityReport",
    "dI_dt_identity_check",
    "dJ_dt_identity_check",
    "dM_dt_identity_check",
    "dN_dt_identity_check",
    "make_diagnostics_sampler",
]


@dataclass(frozen=True)
class FunctionalConstants:
    """Free constants of the combined functional (defaults 1, configurable)."""

    C1: float = 1.0
    C2: float = 1.0
    C3: float = 1.0
    C4: float = 1.0

    def coefficients(self, delta: float) -> tuple[float, float, float]:
        """(coef_I, coef_N, coef_M) multiplying I, N, M next to J."""
        return (
            16.0 * self.C2 * delta**0.1,
            -32.0 * self.C2 * self.C1 * delta**0.5,
            80.0 * self.C1 * self.C2 * self.C4 * delta**0.2,
        )


@dataclass
class VirialSample:
    t: float
    I: float
    J: float
    M: float
    N: float
    Hfunc: float
    z_norms: dict
    w_norms: dict
    K1: float
    K2: float
    sech_integrand: float
    rho: float
    rho_dot: float


def decay_functionals(u: FieldPair, gamma: float, rho: float, bg: KinkBackground):
    """K1 = int sech(y) u1^2, K2 = int sech(y) ((1-g d2)^(-1) d_x u2)^2,
    and the sech-weighted local energy integrand."""
    g = u.grid
    ay = np.abs(g.x - rho)
    sech = 2.0 * np.exp(-ay) / (1.0 + np.exp(-2.0 * ay))  # overflow-safe
    u1 = u.first.values
    u2 = u.second.values
    du1 = deriv_values(g, u1)
    smooth_du2 = smoothing_values(g, u2, gamma, dx_order=1)
    K1 = g.h * np.sum(sech * u1**2)
    K2 = g.h * np.sum(sech * smooth_du2**2)
    sech_int = g.h * np.sum(sech * (u1**2 + du1**2 + u2**2))
    return float(K1), float(K2), float(sech_int)


def combined_H(sample: VirialSample, consts: FunctionalConstants, delta: float) -> float:
    cI, cN, cM = consts.coefficients(delta)
    return float(sample.J + cI * sample.I + cN * sample.N + cM * sample.M)


def virial_sample(
    u: FieldPair,
    gamma: float,
    rho: float,
    ws: WeightSet,
    bg: KinkBackground,
    *,
    t: float = 0.0,
    consts: FunctionalConstants | None = None,
    delta: float | None = None,
    rho_dot_value: float = np.nan,
) -> VirialSample:
    g = u.grid
    h = g.h
    v = transform_to_dual(u, gamma, bg, rho)
    w1, w2, z1, z2 = localized_fields(u, v, ws)
    dv1 = deriv_values(g, v.first.values)
    dv2 = deriv_values(g, v.second.values)

    I = h * np.sum(ws.varphiA[0] * u.first.values * u.second.values)
    J = h * np.sum(ws.psiAB[0] * v.first.values * v.second.values)
    M = h * np.sum(ws.psiAB[0] * dv1 * dv2)
    N = h * np.sum(ws.rhoAB[0] * dv1 * v.second.values)

    z_norms = {
        "z1": norm(z1), "z2": norm(z2),
        "dz1": norm(g.field(deriv_values(g, z1.values))),
        "dz2": norm(g.field(deriv_values(g, z2.values))),
        "d2z2": norm(g.field(deriv_values(g, z2.values, 2))),
    }
    w_norms = {
        "w1": norm(w1),
        "dw1": norm(g.field(deriv_values(g, w1.values))),
        "w2": norm(w2),
    }
    K1, K2, sech_int = decay_functionals(u, gamma, rho, bg)
    sample = VirialSample(
        t=t, I=float(I), J=float(J), M=float(M), N=float(N), Hfunc=np.nan,
        z_norms=z_norms, w_norms=w_norms, K1=K1, K2=K2,
        sech_integrand=sech_int, rho=rho, rho_dot=rho_dot_value,
    )
    if consts is not None and delta is not None:
        sample.Hfunc = combined_H(sample, consts, delta)
    return sample


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

@dataclass
class IdentitySlice:
    """Three modulated samples at t - tau, t, t + tau for differencing."""

    t: float
    tau: float
    u: tuple          # (u_minus, u_mid, u_plus) FieldPairs
    rho: tuple        # matching shifts
    rho_dot: float    # at the middle sample
    gamma: float
    bg: KinkBackground
    scales: ScaleParams
    nonlinear: bool = True


def identity_probe(
    state: FieldPair,
    t: float,
    bg: KinkBackground,
    scales: ScaleParams,
    tau: float = 1e-4,
    substeps: int = 4,
    nonlinear: bool = True,
    rho_guess: float = 0.0,
    modulate: bool = True,
) -> IdentitySlice:
    """Build the +-tau neighbors of a raw trajectory state and modulate all three.

    modulate=False keeps the frozen rho = 0 frame (u = raw deviation,
    rho' = 0); required when the flow itself is linearized around the
    unshifted kink (nonlinear=False), which is not recentering-covariant.
    """
    g = state.grid
    fwd = make_propagator(g, tau / substeps)
    bwd = make_propagator(g, -tau / substeps)
    plus = state
    minus = state
    for _ in range(substeps):
        plus = strang_step(plus, fwd, bg, nonlinear=nonlinear)
        minus = strang_step(minus, bwd, bg, nonlinear=nonlinear)

    if modulate:
        def decompose(raw: FieldPair):
            phi1 = g.field(bg.H_mollified.values + raw.first.values)
            dec = extract_rho(
                phi1, bg, initial_guess=rho_guess, periodized=True, phi2=raw.second
            )
            return dec.u, dec.rho
        u_m, r_m = decompose(minus)
        u_0, r_0 = decompose(state)
        u_p, r_p = decompose(plus)
        rd = rho_dot(u_0, bg, r_0)
    else:
        u_m, u_0, u_p = minus, state, plus
        r_m = r_0 = r_p = 0.0
        rd = 0.0
    return IdentitySlice(
        t=t, tau=tau, u=(u_m, u_0, u_p), rho=(r_m, r_0, r_p),
        rho_dot=rd, gamma=scales.gamma, bg=bg, scales=scales, nonlinear=nonlinear,
    )


@dataclass
class IdentityReport:
    name: str
    lhs: float
    rhs: float
    residual: float
    terms: dict
    transport: float
    lhs_moving: float
    residual_moving: float
    scale: float


def _report(name, lhs, terms, transport, lhs_moving, u_mid) -> IdentityReport:
    rhs = float(sum(terms.values()))
    scale = max(
        abs(lhs), abs(rhs), sum(abs(v) for v in terms.values()),
        norm(u_mid, "H1xL2") ** 2, 1e-300,
    )
    rhs_moving = rhs + transport
    scale_m = max(scale, abs(lhs_moving), abs(rhs_moving))
    return IdentityReport(
        name=name, lhs=lhs, rhs=rhs, residual=abs(lhs - rhs) / scale,
        terms=terms, transport=transport, lhs_moving=lhs_moving,
        residual_moving=abs(lhs_moving - rhs_moving) / scale_m, scale=scale,
    )


def _kink_fields_at(bg: KinkBackground, g: GridSpec, rho: float):
    y = g.x - rho
    H = bg.H_at(y)
    Hp = bg.Hp_at(y)
    V0 = -1.0 + 3.0 * H**2
    V0p = 6.0 * H * Hp
    V0pp = 6.0 * (Hp**2 + H * bg.Hpp_at(y))
    return H, Hp, V0, V0p, V0pp


def _nl_fields(u1: np.ndarray, H: np.ndarray, nonlinear: bool) -> np.ndarray:
    return u1**3 + 3.0 * H * u1**2 if nonlinear else np.zeros_like(u1)


def dI_dt_identity_check(sl: IdentitySlice, ws: WeightSet) -> IdentityReport:
    bg, g = sl.bg, sl.u[1].grid
    h = g.h
    phi = ws.varphiA  # derivative table at the frozen middle rho

    def I_of(u: FieldPair, table=phi):
        return h * np.sum(table[0] * u.first.values * u.second.values)

    lhs = (I_of(sl.u[2]) - I_of(sl.u[0])) / (2.0 * sl.tau)
    ws_m = build_weight_set(g, sl.scales, sl.rho[0])
    ws_p = build_weight_set(g, sl.scales, sl.rho[2])
    lhs_moving = (I_of(sl.u[2], ws_p.varphiA) - I_of(sl.u[0], ws_m.varphiA)) / (2.0 * sl.tau)

    u = sl.u[1]
    u1, u2 = u.first.values, u.second.values
    du1 = deriv_values(g, u1)
    H, Hp, V0, V0p, _ = _kink_fields_at(bg, g, sl.rho[1])
    terms = {
        "quadratic": -0.5 * h * np.sum(phi[1] * (u2**2 + 3.0 * du1**2 + V0 * u1**2)),
        "third_derivative": 0.5 * h * np.sum(phi[3] * u1**2),
        "potential_gradient": 0.5 * h * np.sum(phi[0] * V0p * u1**2),
        "shift_source": sl.rho_dot * h * np.sum(phi[0] * Hp * u2),
    }
    if sl.nonlinear:
        terms["quartic"] = -0.75 * h * np.sum(phi[1] * u1**4)
        terms["cubic_weighted"] = -2.0 * h * np.sum(phi[1] * H * u1**3)
        terms["cubic_kink"] = h * np.sum(phi[0] * Hp * u1**3)
    transport = -sl.rho_dot * h * np.sum(phi[1] * u1 * u2)
    return _report("dI_dt", lhs, terms, transport, lhs_moving, u)


def _dual_with_derivs(sl: IdentitySlice, idx: int):
    u = sl.u[idx]
    g = u.grid
    v = transform_to_dual(u, sl.gamma, sl.bg, sl.rho[idx])
    return v


def _forcing_fields(sl: IdentitySlice):
    """F and G of the transformed system at the middle sample."""
    u = sl.u[1]
    g = u.grid
    gamma = sl.gamma
    v = transform_to_dual(u, gamma, sl.bg, sl.rho[1])
    dv2 = deriv_values(g, v.second.values)
    d2v2 = deriv_values(g, v.second.values, 2)
    H, _, _, V0p, V0pp = _kink_fields_at(sl.bg, g, sl.rho[1])
    F = smoothing_values(g, deriv_values(g, _nl_fields(u.first.values, H, sl.nonlinear)), gamma)
    G = gamma * smoothing_values(g, V0pp * dv2 + 2.0 * V0p * d2v2, gamma) \
        - sl.rho_dot * smoothing_values(g, V0p * u.first.values, gamma)
    return v, F, G


def dJ_dt_identity_check(sl: IdentitySlice, ws: WeightSet) -> IdentityReport:
    g = sl.u[1].grid
    h = g.h
    psi = ws.psiAB

    def J_of(idx: int, table=psi):
        v = _dual_with_derivs(sl, idx)
        return h * np.sum(table[0] * v.first.values * v.second.values)

    lhs = (J_of(2) - J_of(0)) / (2.0 * sl.tau)
    ws_m = build_weight_set(g, sl.scales, sl.rho[0])
    ws_p = build_weight_set(g, sl.scales, sl.rho[2])
    lhs_moving = (J_of(2, ws_p.psiAB) - J_of(0, ws_m.psiAB)) / (2.0 * sl.tau)

    v, F, G = _forcing_fields(sl)
    v1, v2 = v.first.values, v.second.values
    dv2 = deriv_values(g, v2)
    _, _, V0, V0p, _ = _kink_fields_at(sl.bg, g, sl.rho[1])
    terms = {
        "J1_quadratic": -0.5 * h * np.sum(psi[1] * (v1**2 + V0 * v2**2 + 3.0 * dv2**2)),
        "J2_third_derivative": 0.5 * h * np.sum(psi[3] * v2**2),
        "J3_potential_gradient": -0.5 * h * np.sum(psi[0] * V0p * v2**2),
        "J4_forcing_G": h * np.sum(psi[0] * G * v2),
        "J5_forcing_F": h * np.sum(psi[0] * F * v1),
    }
    transport = -sl.rho_dot * h * np.sum(psi[1] * v1 * v2)
    return _report("dJ_dt", lhs, terms, transport, lhs_moving, sl.u[1])


def dM_dt_identity_check(sl: IdentitySlice, ws: WeightSet) -> IdentityReport:
    g = sl.u[1].grid
    h = g.h
    psi = ws.psiAB

    def M_of(idx: int, table=psi):
        v = _dual_with_derivs(sl, idx)
        return h * np.sum(
            table[0]
            * deriv_values(g, v.first.values)
            * deriv_values(g, v.second.values)
        )

    lhs = (M_of(2) - M_of(0)) / (2.0 * sl.tau)
    ws_m = build_weight_set(g, sl.scales, sl.rho[0])
    ws_p = build_weight_set(g, sl.scales, sl.rho[2])
    lhs_moving = (M_of(2, ws_p.psiAB) - M_of(0, ws_m.psiAB)) / (2.0 * sl.tau)

    v, F, G = _forcing_fields(sl)
    dv1 = deriv_values(g, v.first.values)
    dv2 = deriv_values(g, v.second.values)
    d2v2 = deriv_values(g, v.second.values, 2)
    dF = deriv_values(g, F)
    dG = deriv_values(g, G)
    _, _, V0, V0p, _ = _kink_fields_at(sl.bg, g, sl.rho[1])
    terms = {
        "M1_quadratic": -0.5 * h * np.sum(psi[1] * (dv1**2 + V0 * dv2**2 + 3.0 * d2v2**2)),
        "M2_third_derivative": 0.5 * h * np.sum(psi[3] * dv2**2),
        "M3_potential_gradient": 0.5 * h * np.sum(psi[0] * V0p * dv2**2),
        "M4_forcing": h * np.sum(psi[0] * (dG * dv2 + dF * dv1)),
    }
    transport = -sl.rho_dot * h * np.sum(psi[1] * dv1 * dv2)
    return _report("dM_dt", lhs, terms, transport, lhs_moving, sl.u[1])


def dN_dt_identity_check(sl: IdentitySlice, ws: WeightSet) -> IdentityReport:
    """d/dt of N = int rho_{A,B} v1' v2.

    The right side is assembled from the proof-level integration-by-parts
    identity for <eta d_x L d_x f, f> (the printed six-line lemma form
    differs from it by two coefficient misprints; the quadrature check
    singles out the exact version).
    """
    g = sl.u[1].grid
    h = g.h
    rho_w = ws.rhoAB

    def N_of(idx: int, table=rho_w):
        v = _dual_with_derivs(sl, idx)
        return h * np.sum(table[0] * deriv_values(g, v.first.values) * v.second.values)

    lhs = (N_of(2) - N_of(0)) / (2.0 * sl.tau)
    ws_m = build_weight_set(g, sl.scales, sl.rho[0])
    ws_p = build_weight_set(g, sl.scales, sl.rho[2])
    lhs_moving = (N_of(2, ws_p.rhoAB) - N_of(0, ws_m.rhoAB)) / (2.0 * sl.tau)

    v, F, G = _forcing_fields(sl)
    v1, v2 = v.first.values, v.second.values
    dv1 = deriv_values(g, v1)
    dv2 = deriv_values(g, v2)
    d2v2 = deriv_values(g, v2, 2)
    dG = deriv_values(g, G)
    _, _, V0, V0p, _ = _kink_fields_at(sl.bg, g, sl.rho[1])
    terms = {
        "N1_gradient": h * np.sum(rho_w[0] * dv1**2),
        "N2_quadratic": -h * np.sum(rho_w[0] * (d2v2**2 + V0 * dv2**2)),
        "N3_second_derivative": 2.0 * h * np.sum(rho_w[2] * dv2**2),
        "N4_potential": 0.5 * h * np.sum((rho_w[2] * V0 + rho_w[1] * V0p) * v2**2),
        "N5_fourth_derivative": -0.5 * h * np.sum(rho_w[4] * v2**2),
        "N6_forcing_G": h * np.sum(rho_w[0] * v2 * dG),
        "N7_forcing_F": h * np.sum(rho_w[0] * dv1 * F),
    }
    transport = -sl.rho_dot * h * np.sum(rho_w[1] * dv1 * v2)
    return _report("dN_dt", lhs, terms, transport, lhs_moving, sl.u[1])


# ---------------------------------------------------------------------------
# trajectory diagnostics
# ---------------------------------------------------------------------------

def make_diagnostics_sampler(
    bg: KinkBackground,
    scales: ScaleParams,
    consts: FunctionalConstants | None = None,
    tube_radius: float = 0.25,
):
    """Sampler for evolve(): modulates the state and fills a full record."""
    consts = consts or FunctionalConstants()
    g = bg.grid
    last_rho = {"value": 0.0}

    def sampler(t: float, state: FieldPair) -> DiagnosticsRecord:
        phi1 = g.field(bg.H_mollified.values + state.first.values)
        dec = extract_rho(
            phi1, bg,
            initial_guess=last_rho["value"],
            tube_radius=tube_radius,
            periodized=True,
            phi2=state.second,
        )
        last_rho["value"] = dec.rho
        rd = rho_dot(dec.u, bg, dec.rho)
        ws = build_weight_set(g, scales, dec.rho)
        vs = virial_sample(
            dec.u, scales.gamma, dec.rho, ws, bg,
            t=t, consts=consts, delta=scales.delta if scales.delta > 0 else None,
            rho_dot_value=rd,
        )
        full = FieldPair(phi1, state.second)
        return DiagnosticsRecord(
            t=t, rho=dec.rho, rho_dot=rd,
            h1l2=norm(dec.u, "H1xL2"),
            energy=energy(full), momentum=momentum(full),
            I=vs.I, J=vs.J, M=vs.M, N=vs.N, Hfunc=vs.Hfunc,
            K1=vs.K1, K2=vs.K2, sech_integrand=vs.sech_integrand,
        )

    return sampler
