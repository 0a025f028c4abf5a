"""Cutoff and exponential weight families with analytic derivative tables.

The family is built from one C-infinity cutoff chi (1 on [-1,1], 0 for
|x| >= 2, monotone in between), the exponential localizer

    zeta_K(x) = exp(-(1 - chi(x)) |x| / K),

its antiderivative-of-square varphi_K(x) = int_0^x zeta_K^2, and the
composites psi_{A,B} = chi_A^2 varphi_B and rho_{A,B} = chi_A^2 zeta_B^2
evaluated in the moving frame y = x - rho.  All derivatives up to order
four are analytic (Leibniz/Faa di Bruno on closed forms); only the
varphi_K values on the transition band |x| in [1, 2] come from adaptive
Gauss-Legendre quadrature, resolved to 1e-13 and cached per scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .grid import GridSpec

__all__ = [
    "ScaleParams",
    "WeightSet",
    "cutoff_chi",
    "chi_derivs",
    "zeta",
    "zeta_derivs",
    "varphi",
    "varphi_derivs",
    "scales_from_delta",
    "scales_override",
    "build_weight_set",
]

_GL_X, _GL_W = leggauss(10)
_BINOM = np.array(
    [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 2, 1, 0, 0], [1, 3, 3, 1, 0], [1, 4, 6, 4, 1]],
    dtype=float,
)


# ---------------------------------------------------------------------------
# smooth step and cutoff
# ---------------------------------------------------------------------------

def _bump_derivs(t: np.ndarray) -> np.ndarray:
    """f(t) = exp(-1/t) on t > 0 (else 0) and derivatives up to order 4."""
    t = np.asarray(t, dtype=float)
    out = np.zeros((5,) + t.shape)
    pos = t > 0.0
    if np.any(pos):
        tp = t[pos]
        u = 1.0 / tp
        f = np.exp(-u)
        out[0][pos] = f
        out[1][pos] = f * u**2
        out[2][pos] = f * (u**4 - 2 * u**3)
        out[3][pos] = f * (u**6 - 6 * u**5 + 6 * u**4)
        out[4][pos] = f * (u**8 - 12 * u**7 + 36 * u**6 - 24 * u**5)
    return out


def _step_derivs(t: np.ndarray) -> np.ndarray:
    """s(t) = f(t) / (f(t) + f(1-t)): smooth 0 -> 1 step on [0, 1]."""
    t = np.asarray(t, dtype=float)
    a = _bump_derivs(t)
    b_raw = _bump_derivs(1.0 - t)
    # chain rule for the reflected argument
    b = b_raw * np.array([1.0, -1.0, 1.0, -1.0, 1.0]).reshape((5,) + (1,) * t.ndim)
    S = a + b
    s = np.zeros_like(a)
    # solve a^(n) = sum_k C(n,k) s^(k) S^(n-k) for s^(n)
    for n in range(5):
        acc = a[n].copy()
        for k in range(n):
            acc -= _BINOM[n, k] * s[k] * S[n - k]
        s[n] = acc / S[0]
    return s


def chi_derivs(x) -> np.ndarray:
    """Cutoff chi and derivatives up to order 4, shape (5,) + x.shape.

    chi = 1 on [-1, 1], 0 for |x| >= 2, equals 1 - s(|x| - 1) on the
    transition band; even, C-infinity, chi' <= 0 on [0, inf).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros((5,) + x.shape)
    ax = np.abs(x)
    out[0] = np.where(ax <= 1.0, 1.0, 0.0)
    band = (ax > 1.0) & (ax < 2.0)
    if np.any(band):
        s = _step_derivs(ax[band] - 1.0)
        sgn = np.sign(x[band])
        out[0][band] = 1.0 - s[0]
        for n in range(1, 5):
            out[n][band] = -s[n] * sgn**n
    return out


def cutoff_chi(x):
    """chi(x); scalar in, scalar out."""
    val = chi_derivs(np.atleast_1d(x))[0]
    return float(val[0]) if np.isscalar(x) or np.ndim(x) == 0 else val


# ---------------------------------------------------------------------------
# zeta_K and varphi_K
# ---------------------------------------------------------------------------

def zeta_derivs(K: float, x) -> np.ndarray:
    """zeta_K = exp(-(1 - chi)|x| / K) and derivatives up to order 4."""
    if K <= 0:
        raise ValueError("scale K must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    ch = chi_derivs(x)
    ax = np.abs(x)
    sgn = np.sign(x)
    # E = (1 - chi)|x| / K; |x| is smooth wherever E is nonzero (chi = 1 near 0)
    E0 = (1.0 - ch[0]) * ax / K
    E1 = (-ch[1] * ax + (1.0 - ch[0]) * sgn) / K
    E2 = (-ch[2] * ax - 2.0 * ch[1] * sgn) / K
    E3 = (-ch[3] * ax - 3.0 * ch[2] * sgn) / K
    E4 = (-ch[4] * ax - 4.0 * ch[3] * sgn) / K
    z = np.exp(-E0)
    out = np.empty((5,) + x.shape)
    out[0] = z
    out[1] = -E1 * z
    out[2] = (E1**2 - E2) * z
    out[3] = (-E1**3 + 3.0 * E1 * E2 - E3) * z
    out[4] = (E1**4 - 6.0 * E1**2 * E2 + 3.0 * E2**2 + 4.0 * E1 * E3 - E4) * z
    return out


def zeta(K: float, x):
    val = zeta_derivs(K, np.atleast_1d(x))[0]
    return float(val[0]) if np.isscalar(x) or np.ndim(x) == 0 else val


class _TransitionIntegralTable:
    """Adaptive Gauss-Legendre table of int_1^t zeta_K^2 for t in [1, 2]."""

    def __init__(self, K: float, tol: float = 1e-12):
        self.K = K
        f = lambda y: zeta_derivs(K, y)[0] ** 2
        edges = [1.0, 2.0]
        # split panels until the two-half refinement is below tol
        i = 0
        while i < len(edges) - 1:
            a, b = edges[i], edges[i + 1]
            whole = self._gl(f, a, b)
            halves = self._gl(f, a, 0.5 * (a + b)) + self._gl(f, 0.5 * (a + b), b)
            if abs(whole - halves) > tol and (b - a) > 1e-6:
                edges.insert(i + 1, 0.5 * (a + b))
            else:
                i += 1
        self.edges = np.array(edges)
        vals = [self._gl(f, self.edges[j], self.edges[j + 1]) for j in range(len(edges) - 1)]
        self.cum = np.concatenate([[0.0], np.cumsum(vals)])
        self._f = f

    @staticmethod
    def _gl(f, a: float, b: float) -> float:
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        return float(half * np.sum(_GL_W * f(mid + half * _GL_X)))

    def eval(self, t: np.ndarray) -> np.ndarray:
        """int_1^t zeta_K^2 for arbitrary t in [1, 2], vectorized."""
        t = np.asarray(t, dtype=float)
        idx = np.clip(np.searchsorted(self.edges, t, side="right") - 1, 0, len(self.edges) - 2)
        out = self.cum[idx].copy()
        a = self.edges[idx]
        mid, half = 0.5 * (a + t), 0.5 * (t - a)
        # 10-point GL on each partial panel [a, t]
        nodes = mid[None, :] + half[None, :] * _GL_X[:, None]
        out += half * np.sum(_GL_W[:, None] * self._f(nodes), axis=0)
        return out


_TRANSITION_CACHE: dict[float, _TransitionIntegralTable] = {}


def _transition_table(K: float) -> _TransitionIntegralTable:
    tab = _TRANSITION_CACHE.get(K)
    if tab is None:
        tab = _TransitionIntegralTable(K)
        _TRANSITION_CACHE[K] = tab
    return tab


def varphi(K: float, x):
    """varphi_K(x) = int_0^x zeta_K^2; odd, equal to x on [-1, 1]."""
    if K <= 0:
        raise ValueError("scale K must be positive")
    scalar = np.isscalar(x) or np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    ax = np.abs(x)
    out = np.where(ax <= 1.0, ax, 0.0)
    tab = _transition_table(K)
    band = (ax > 1.0) & (ax < 2.0)
    if np.any(band):
        out[band] = 1.0 + tab.eval(ax[band])
    tail = ax >= 2.0
    if np.any(tail):
        # zeta_K = exp(-|x|/K) there, so the tail integral is elementary
        base = 1.0 + tab.eval(np.array([2.0]))[0]
        out[tail] = base + 0.5 * K * (np.exp(-4.0 / K) - np.exp(-2.0 * ax[tail] / K))
    out = out * np.sign(x)
    return float(out[0]) if scalar else out


def varphi_derivs(K: float, x) -> np.ndarray:
    """varphi_K and derivatives up to order 4 (varphi' = zeta^2)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    z = zeta_derivs(K, x)
    out = np.empty((5,) + x.shape)
    out[0] = varphi(K, x)
    out[1] = z[0] ** 2
    out[2] = 2.0 * z[0] * z[1]
    out[3] = 2.0 * (z[0] * z[2] + z[1] ** 2)
    out[4] = 2.0 * z[0] * z[3] + 6.0 * z[1] * z[2]
    return out


# ---------------------------------------------------------------------------
# scales
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScaleParams:
    """Localization scales (A, B) and smoothing parameter gamma.

    Coupled mode ties them to the perturbation size delta as A = 1/delta,
    B = A^(1/10), gamma = B^(-4).
    """

    delta: float
    A: float
    B: float
    gamma: float
    coupled: bool

    def __post_init__(self) -> None:
        if not (self.A > 0 and self.B > 1 and 0 < self.gamma < 1):
            raise ValueError(
                f"scales out of range: A={self.A}, B={self.B}, gamma={self.gamma}"
            )


def scales_from_delta(delta: float) -> ScaleParams:
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    A = 1.0 / delta
    B = A**0.1
    return ScaleParams(delta=delta, A=A, B=B, gamma=B**-4.0, coupled=True)


def scales_override(A: float, B: float, gamma: float, delta: float = 0.0) -> ScaleParams:
    return ScaleParams(delta=delta, A=A, B=B, gamma=gamma, coupled=False)


# ---------------------------------------------------------------------------
# weight set on a grid
# ---------------------------------------------------------------------------

def _scaled_chi_derivs(A: float, y: np.ndarray) -> np.ndarray:
    ch = chi_derivs(y / A)
    for n in range(1, 5):
        ch[n] /= A**n
    return ch


def _leibniz_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    for n in range(5):
        out[n] = sum(_BINOM[n, k] * a[k] * b[n - k] for k in range(n + 1))
    return out


@dataclass(frozen=True)
class WeightSet:
    """All weight fields and their first four derivatives at y = x - rho.

    Each table has shape (5, N); row n is the n-th derivative.
    """

    grid: GridSpec
    scales: ScaleParams
    rho_shift: float
    y: np.ndarray
    chiA: np.ndarray
    zetaA: np.ndarray
    zetaB: np.ndarray
    varphiA: np.ndarray
    varphiB: np.ndarray
    psiAB: np.ndarray
    rhoAB: np.ndarray


def build_weight_set(grid: GridSpec, scales: ScaleParams, rho_shift: float = 0.0) -> WeightSet:
    if abs(rho_shift) >= grid.L / 2.0:
        raise ValueError(
            f"shift {rho_shift} too large for L={grid.L}: weight support hits the seam"
        )
    y = grid.x - rho_shift
    chiA = _scaled_chi_derivs(scales.A, y)
    chiA_sq = _leibniz_product(chiA, chiA)
    zetaA = zeta_derivs(scales.A, y)
    zetaB = zeta_derivs(scales.B, y)
    varphiA = varphi_derivs(scales.A, y)
    varphiB = varphi_derivs(scales.B, y)
    psiAB = _leibniz_product(chiA_sq, varphiB)
    rhoAB = _leibniz_product(chiA_sq, _leibniz_product(zetaB, zetaB))
    return WeightSet(
        grid=grid,
        scales=scales,
        rho_shift=float(rho_shift),
        y=y,
        chiA=chiA,
        zetaA=zetaA,
        zetaB=zetaB,
        varphiA=varphiA,
        varphiB=varphiB,
        psiAB=psiAB,
        rhoAB=rhoAB,
    )
