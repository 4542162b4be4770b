"""Unit conventions, grids, tolerances, and the shared density contracts.

Everything in the package is dimensionless: hbar = m = 1 throughout, with the
square-well modules additionally fixing the well half-width a = 1 (so the
natural time unit m a^2 / hbar equals 1) and the oscillator modules fixing the
initial trap frequency omega_i = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import CutoffTooSmallError, InvalidGridError, InvalidParamsError
from .quadrature import PANEL_PHASE_BUDGET, integrate

HBAR = 1.0
MASS = 1.0


class UnitSystem(Enum):
    """Dimensionless conventions used by the physics modules.

    NATURAL_SQUARE_WELL fixes hbar = m = a = 1, making the natural time unit
    m a^2 / hbar equal to 1.  NATURAL_OSCILLATOR fixes hbar = m = omega_i = 1.
    """

    NATURAL_SQUARE_WELL = "natural-square-well"
    NATURAL_OSCILLATOR = "natural-oscillator"


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform position grid with n points on [x_min, x_max]."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidGridError(f"need at least 2 grid points, got n={self.n}")
        if not self.x_min < self.x_max:
            raise InvalidGridError(f"empty grid range [{self.x_min}, {self.x_max}]")

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.x_min + self.x_max) <= 1e-12 * (self.x_max - self.x_min)


@dataclass(frozen=True)
class MomentumGrid:
    """Uniform wavenumber grid with n points on [k_min, k_max]."""

    k_min: float
    k_max: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidGridError(f"need at least 2 grid points, got n={self.n}")
        if not self.k_min < self.k_max:
            raise InvalidGridError(f"empty grid range [{self.k_min}, {self.k_max}]")

    def points(self) -> np.ndarray:
        return np.linspace(self.k_min, self.k_max, self.n)

    @property
    def spacing(self) -> float:
        return (self.k_max - self.k_min) / (self.n - 1)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.k_min + self.k_max) <= 1e-12 * (self.k_max - self.k_min)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid with n points on [t_min, t_max]."""

    t_min: float
    t_max: float
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise InvalidGridError(f"need at least 2 grid points, got n={self.n}")
        if not self.t_min < self.t_max:
            raise InvalidGridError(f"empty grid range [{self.t_min}, {self.t_max}]")

    def points(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n)


@dataclass(frozen=True)
class Tolerances:
    """Quadrature tolerances and truncation controls.

    ``k_cutoff`` is the baseline truncation of infinite wavenumber integrals
    (extended automatically where a stationary phase point would otherwise sit
    beyond it).  ``singularity_window`` is the half-width, in wavenumber, of
    the series branch around removable singularities; ``None`` resolves to
    1e-6 times the natural wavenumber of the state being evaluated.
    """

    quad_abs: float = 1e-10
    quad_rel: float = 1e-8
    k_cutoff: float = 400.0
    singularity_window: float | None = None

    def __post_init__(self):
        for name in ("quad_abs", "quad_rel", "k_cutoff"):
            if getattr(self, name) <= 0:
                raise InvalidParamsError(f"{name} must be positive")
        if self.singularity_window is not None and self.singularity_window <= 0:
            raise InvalidParamsError("singularity_window must be positive")

    def window_for(self, k_scale: float) -> float:
        if self.singularity_window is not None:
            return self.singularity_window
        return 1e-6 * k_scale


class DensityMethod(Enum):
    ANALYTIC = "analytic"
    MOMENTUM_INTEGRAL = "momentum-integral"
    PROPAGATOR = "propagator"
    WIGNER_MARGINAL = "wigner-marginal"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class DensityProfile:
    """Probability density sampled on a uniform grid."""

    grid: SpatialGrid | MomentumGrid
    values: np.ndarray
    time: float
    method: DensityMethod

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n,):
            raise InvalidGridError(
                f"values shape {vals.shape} does not match grid n={self.grid.n}"
            )
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def normalization(self) -> float:
        return integrate_density(self)


def integrate_density(d: DensityProfile) -> float:
    """Trapezoid integral of the sampled density over its grid."""
    if d.grid.n < 2:
        raise InvalidGridError("density grid needs at least 2 points")
    return float(np.trapezoid(d.values, d.grid.points()))


def rescale_density(d: DensityProfile, length_ratio: float) -> DensityProfile:
    """Re-express a position density in a unit system whose length unit is
    ``length_ratio`` times the current one.  Positions shrink by the ratio,
    the density grows by it, and the total probability is unchanged."""
    if length_ratio <= 0:
        raise InvalidParamsError("length_ratio must be positive")
    grid = SpatialGrid(d.grid.x_min / length_ratio, d.grid.x_max / length_ratio, d.grid.n)
    return DensityProfile(grid, d.values * length_ratio, d.time, d.method)


def characteristic_to_density(
    chi: Callable[[np.ndarray], np.ndarray],
    grid: SpatialGrid,
    tol: Tolerances | None = None,
    *,
    time: float = 0.0,
    method: DensityMethod = DensityMethod.MOMENTUM_INTEGRAL,
) -> DensityProfile:
    """Invert a characteristic function chi(k) = <exp(i k x)> into a density.

    Uses rho(x) = (1/2 pi) Int exp(-i k x) chi(k) dk truncated at the cutoff;
    Hermitian symmetry chi(-k) = conj(chi(k)) folds the integral onto k >= 0,
    which also makes the result real by construction.
    """
    tol = tol or Tolerances()
    K = tol.k_cutoff
    # The truncated integral is only trustworthy if chi has decayed by the
    # cutoff; probe a few points so an oscillation zero cannot mask a fat tail.
    probe = np.linspace(0.97 * K, K, 7)
    tail = float(np.max(np.abs(np.asarray(chi(probe)))))
    if tail > tol.quad_rel:
        raise CutoffTooSmallError(
            f"|chi| = {tail:.3e} at the cutoff {K:g}, above quad_rel = {tol.quad_rel:g}"
        )

    xs = grid.points()
    vals = np.empty(xs.size)
    for i, x in enumerate(xs):
        freq = abs(x) + 1.0

        def _integrand(k, _x=x):
            return np.asarray(chi(k)) * np.exp(-1j * k * _x)

        val, _ = integrate(
            _integrand, 0.0, K,
            abs_tol=0.5 * np.pi * tol.quad_abs,
            rel_tol=tol.quad_rel,
            panel_width=lambda k, _f=freq: np.full_like(k, PANEL_PHASE_BUDGET / _f),
        )
        vals[i] = np.real(val) / np.pi
    return DensityProfile(grid, vals, time, method)
