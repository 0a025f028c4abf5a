"""Uniform periodic grid with Fourier-collocation calculus.

Everything downstream (operators, weights, time stepping, virial
functionals) works on samples over [-L, L) with spacing h = 2L/N.
Differentiation is spectral, quadrature is the rectangle rule, which is
spectrally accurate for smooth periodic integrands and exact under the
collocation inner product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GridSpec",
    "RealField",
    "make_grid",
    "spectral_derivative",
    "integrate",
    "inner",
    "norm",
]


@dataclass(frozen=True)
class GridSpec:
    """Periodic grid on [-L, L) with N evenly spaced nodes."""

    L: float
    N: int

    def __post_init__(self) -> None:
        if self.L <= 0:
            raise ValueError(f"half_length L must be positive, got {self.L}")
        if self.N % 2 != 0 or self.N < 4:
            raise ValueError(f"n_points N must be even and >= 4, got {self.N}")
        h = 2.0 * self.L / self.N
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "x", -self.L + h * np.arange(self.N))
        # full-spectrum wavenumbers xi_j = pi j / L, fft layout
        object.__setattr__(
            self, "wavenumbers", 2.0 * np.pi * np.fft.fftfreq(self.N, d=h)
        )
        # rfft wavenumbers, used by all real-field transforms
        object.__setattr__(
            self, "xi", 2.0 * np.pi * np.fft.rfftfreq(self.N, d=h)
        )

    def field(self, values: np.ndarray) -> "RealField":
        return RealField(self, np.asarray(values, dtype=float))

    def zeros(self) -> "RealField":
        return RealField(self, np.zeros(self.N))


@dataclass(frozen=True)
class RealField:
    """Real samples of a function on a GridSpec."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.N,):
            raise ValueError(
                f"values shape {v.shape} does not match grid N={self.grid.N}"
            )
        object.__setattr__(self, "values", v)


def make_grid(L: float, N: int) -> GridSpec:
    """Build the periodic grid; rejects odd N and non-positive L."""
    return GridSpec(float(L), int(N))


def _check_finite(v: np.ndarray) -> None:
    if not np.all(np.isfinite(v)):
        raise ValueError("field contains non-finite values")


def deriv_values(grid: GridSpec, values: np.ndarray, order: int = 1) -> np.ndarray:
    """Fourier-collocation derivative on raw samples (no validation).

    The Nyquist mode is zeroed for odd orders so real fields stay real.
    """
    fhat = np.fft.rfft(values)
    fhat = fhat * (1j * grid.xi) ** order
    if order % 2 == 1:
        fhat[-1] = 0.0
    return np.fft.irfft(fhat, n=grid.N)


def spectral_derivative(f: RealField, order: int = 1) -> RealField:
    if order < 1:
        raise ValueError("order must be a positive integer")
    _check_finite(f.values)
    return RealField(f.grid, deriv_values(f.grid, f.values, order))


def integrate(f: RealField) -> float:
    """Rectangle-rule integral h * sum(f), i.e. the periodic trapezoid rule."""
    return float(f.grid.h * np.sum(f.values))


def inner(f: RealField, g: RealField) -> float:
    """Discrete L2 inner product <f, g> = h * sum(f g)."""
    if f.grid is not g.grid and (f.grid.L, f.grid.N) != (g.grid.L, g.grid.N):
        raise ValueError("fields live on different grids")
    return float(f.grid.h * np.sum(f.values * g.values))


def norm(f, kind: str = "L2") -> float:
    """Norms of a RealField (L2, H1, Linf) or FieldPair (H1xL2)."""
    # FieldPair is duck-typed to avoid a circular import with kinklab.model
    if hasattr(f, "first") and hasattr(f, "second"):
        if kind != "H1xL2":
            raise ValueError(f"kind {kind!r} not defined for field pairs")
        n1 = norm(f.first, "H1")
        n2 = norm(f.second, "L2")
        return float(np.hypot(n1, n2))
    if kind == "L2":
        return float(np.sqrt(f.grid.h * np.sum(f.values**2)))
    if kind == "H1":
        df = deriv_values(f.grid, f.values)
        return float(np.sqrt(f.grid.h * np.sum(f.values**2 + df**2)))
    if kind == "Linf":
        return float(np.max(np.abs(f.values)))
    raise ValueError(f"unknown norm kind {kind!r}")
