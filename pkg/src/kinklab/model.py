"""Kink profiles, potential, nonlinearity, and conserved quantities.

The model is the fourth-order phi^4 (wave Cahn-Hilliard) system

    d_t phi1 = d_x phi2,
    d_t phi2 = -d_x(d_x^2 phi1 + phi1 - phi1^3),

whose static kink is H(x) = tanh(x/sqrt(2)). Perturbations of the kink
feel the potential V0 = -1 + 3 H^2 = 2 - 3 sech^2(x/sqrt(2)).

Periodization: H is not periodic (limits -+1), so time stepping uses a
boundary-periodized copy that returns to the value at -L through an
exact anti-kink centered on the domain seam.  The anti-kink solves the
same ODE, so the periodized profile has static residual at round-off
level and the seam stays dynamically inert as long as no perturbation
mass reaches it (the evolution module's boundary monitor enforces this).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, RealField, deriv_values, integrate, norm

__all__ = [
    "FieldPair",
    "KinkBackground",
    "kink_background",
    "nonlinearity_F",
    "energy",
    "momentum",
    "energy_expansion_residual",
    "vacuum_dispersion",
    "KINK_ENERGY",
]

SQRT2 = np.sqrt(2.0)

# E[(H, 0)] = ||H'||_L2^2 = 2 sqrt(2) / 3
KINK_ENERGY = 2.0 * SQRT2 / 3.0


@dataclass(frozen=True)
class FieldPair:
    """Two-component state (phi1, phi2) or perturbation (u1, u2)."""

    first: RealField
    second: RealField

    def __post_init__(self) -> None:
        ga, gb = self.first.grid, self.second.grid
        if (ga.L, ga.N) != (gb.L, gb.N):
            raise ValueError("field pair components live on different grids")

    @property
    def grid(self) -> GridSpec:
        return self.first.grid


@dataclass(frozen=True)
class KinkBackground:
    """Sampled kink H_c and derived coefficient fields on a grid.

    H, Hp, Hpp, V0 are exact analytic samples (used for all spectral and
    operator work on decaying inputs); H_mollified is the periodized copy
    used inside the time-evolution nonlinearity.
    """

    grid: GridSpec
    c: float
    sigma: float
    H: RealField
    Hp: RealField
    Hpp: RealField
    V0: RealField
    H_mollified: RealField
    Hp_mollified: RealField
    mollification_width: float

    # -- analytic evaluations at arbitrary (shifted) arguments ------------

    def H_at(self, y) -> np.ndarray:
        s = self.sigma
        return s * np.tanh(s * np.asarray(y) / SQRT2)

    def Hp_at(self, y) -> np.ndarray:
        s = self.sigma
        z = np.abs(s * np.asarray(y) / SQRT2)
        sech = 2.0 * np.exp(-z) / (1.0 + np.exp(-2.0 * z))  # overflow-safe
        return (s * s / SQRT2) * sech**2

    def Hpp_at(self, y) -> np.ndarray:
        # from the kink ODE: H'' = H^3 - (1 + c^2) H
        h = self.H_at(y)
        return h**3 - self.sigma**2 * h

    def V0_at(self, y) -> np.ndarray:
        return -1.0 + 3.0 * self.H_at(y) ** 2

    def periodized_at(self, y) -> np.ndarray:
        """Kink + seam anti-kink profile evaluated at arbitrary arguments."""
        y = np.asarray(y, dtype=float)
        L, s = self.grid.L, self.sigma
        right = self.H_at(y) - self.H_at(y - L) - s
        left = self.H_at(y) - self.H_at(y + L) + s
        return np.where(y >= 0, right, left)


def kink_background(grid: GridSpec, c: float = 0.0, W: float = 5.0) -> KinkBackground:
    """Sample the kink family H_c(x) = sigma H(sigma x), sigma = sqrt(1+c^2)."""
    if not np.isfinite(c):
        raise ValueError("kink speed c must be finite")
    if not (0.0 < W < grid.L / 4.0):
        raise ValueError(f"mollification width W={W} outside (0, L/4)")
    sigma = float(np.sqrt(1.0 + c * c))
    x = grid.x

    bg = KinkBackground.__new__(KinkBackground)
    object.__setattr__(bg, "grid", grid)
    object.__setattr__(bg, "c", float(c))
    object.__setattr__(bg, "sigma", sigma)

    H = bg.H_at(x)
    Hp = bg.Hp_at(x)
    Hpp = H**3 - sigma**2 * H
    V0 = -1.0 + 3.0 * H**2
    Hm = bg.periodized_at(x)
    L = grid.L
    Hpm = np.where(
        x >= 0, bg.Hp_at(x) - bg.Hp_at(x - L), bg.Hp_at(x) - bg.Hp_at(x + L)
    )

    object.__setattr__(bg, "H", grid.field(H))
    object.__setattr__(bg, "Hp", grid.field(Hp))
    object.__setattr__(bg, "Hpp", grid.field(Hpp))
    object.__setattr__(bg, "V0", grid.field(V0))
    object.__setattr__(bg, "H_mollified", grid.field(Hm))
    object.__setattr__(bg, "Hp_mollified", grid.field(Hpm))
    object.__setattr__(bg, "mollification_width", float(W))
    return bg


def nonlinearity_F(u1: RealField, bg: KinkBackground) -> RealField:
    """F(x, u1) = 3 u1 (H^2 - 1) + u1^2 (u1 + 3 H) with the periodized H."""
    Hm = bg.H_mollified.values
    u = u1.values
    return u1.grid.field(3.0 * u * (Hm**2 - 1.0) + u**2 * (u + 3.0 * Hm))


def _dphi1(state: FieldPair, background: KinkBackground | None) -> np.ndarray:
    """d_x phi1; uses the analytic kink derivative when a background is given.

    Plain spectral differentiation is only valid for periodic phi1 (e.g.
    periodized-trajectory states); exact-kink states must be split as
    H + decaying remainder.
    """
    if background is None:
        return deriv_values(state.grid, state.first.values)
    rem = state.first.values - background.H.values
    return background.Hp.values + deriv_values(state.grid, rem)


def energy(state: FieldPair, background: KinkBackground | None = None) -> float:
    """E = 1/2 int[(d_x phi1)^2 + phi2^2 + (phi1^2-1)^2 / 2]."""
    d1 = _dphi1(state, background)
    p1 = state.first.values
    p2 = state.second.values
    dens = 0.5 * (d1**2 + p2**2 + 0.5 * (p1**2 - 1.0) ** 2)
    return float(state.grid.h * np.sum(dens))


def momentum(state: FieldPair) -> float:
    """P = int phi1 phi2."""
    return float(state.grid.h * np.sum(state.first.values * state.second.values))


def energy_expansion_residual(u: FieldPair, bg: KinkBackground) -> float:
    """R = E[H+u] - E[H] - (||u2||^2 + <L u1, u1>) / 2.

    The caller asserts |R| <= C ||u1||_Linf ||u1||_L2^2; the exact value
    equals the quartic remainder int u1^3 (u1 + 4H) / 4.
    """
    if bg.c != 0.0:
        raise ValueError("energy expansion is defined around the static kink")
    g = u.grid
    full = FieldPair(g.field(bg.H.values + u.first.values), u.second)
    e_full = energy(full, background=bg)
    e_kink = energy(FieldPair(bg.H, g.zeros()), background=bg)
    du1 = deriv_values(g, u.first.values)
    quad_form = g.h * np.sum(du1**2 + bg.V0.values * u.first.values**2)
    u2_sq = g.h * np.sum(u.second.values**2)
    return float(e_full - e_kink - 0.5 * (u2_sq + quad_form))


def vacuum_dispersion(k: float) -> tuple[complex, complex]:
    """Frequencies w(k) = +-|k| sqrt(k^2 - 1) of the zero state.

    For |k| < 1 the pair is +-i |k| sqrt(1 - k^2): exponentially growing
    modes, the signature of vacuum ill-posedness.
    """
    w = abs(k) * np.sqrt(complex(k * k - 1.0))
    wp = complex(w)
    return (wp, -wp)
