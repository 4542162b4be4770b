"""Closed-form quench dynamics between harmonic traps (or onto a linear ramp).

At t = 0 the trap frequency jumps from omega_i to omega_f and an optional
uniform force F switches on, displacing the final trap minimum to
a_F = F / (m omega_f^2).  Working in the Heisenberg picture, the displaced
position operator stays a linear combination of the initial ladder operators,
x(t) - <x(t)> = alpha(t) adag + conj(alpha(t)) a, so every number state keeps
a Gaussian-times-polynomial density whose width follows |alpha(t)|^2.

omega_f = 0 selects the linear/free branch: the width grows as
<x^2> (1 + omega_i^2 t^2) independently of F, while the mean slides along the
classical parabola F t^2 / 2m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    HBAR,
    MASS,
    DensityMethod,
    DensityProfile,
    MomentumGrid,
    SpatialGrid,
    Tolerances,
    characteristic_to_density,
)
from .errors import InvalidParamsError, InvalidTimeError, UnsupportedLevelError


class InitialLevel(Enum):
    GROUND = 0
    FIRST = 1
    SECOND = 2


@dataclass(frozen=True)
class QuenchParams:
    """Initial/final trap frequencies and the post-quench uniform force."""

    omega_i: float
    omega_f: float
    force: float = 0.0

    def __post_init__(self):
        if self.omega_i <= 0:
            raise InvalidParamsError("omega_i must be positive")
        if self.omega_f < 0:
            raise InvalidParamsError("omega_f must be nonnegative")

    @property
    def shift(self) -> float:
        """Displaced minimum a_F = F / (m omega_f^2) of the final trap."""
        if self.omega_f == 0:
            raise InvalidParamsError("the trap minimum shift needs omega_f > 0")
        return self.force / (MASS * self.omega_f**2)


@dataclass(frozen=True)
class AlphaCoefficient:
    """Ladder-operator coefficient of the displaced position operator."""

    t: float
    value: complex


def alpha_coefficient(p: QuenchParams, t: float) -> AlphaCoefficient:
    _check_time(t)
    scale = math.sqrt(HBAR / (2.0 * MASS * p.omega_i))
    if p.omega_f == 0:
        value = scale * (1.0 + 1j * p.omega_i * t)
    else:
        value = scale * (
            math.cos(p.omega_f * t)
            + 1j * (p.omega_i / p.omega_f) * math.sin(p.omega_f * t)
        )
    return AlphaCoefficient(t, value)


def mean_position(p: QuenchParams, t: float) -> float:
    _check_time(t)
    if p.omega_f == 0:
        return p.force * t**2 / (2.0 * MASS)
    return p.shift * (1.0 - math.cos(p.omega_f * t))


def mean_momentum(p: QuenchParams, t: float) -> float:
    _check_time(t)
    if p.omega_f == 0:
        return p.force * t
    return MASS * p.shift * p.omega_f * math.sin(p.omega_f * t)


def variance_x(
    p: QuenchParams, t: float, level: InitialLevel = InitialLevel.GROUND
) -> float:
    """Position variance; number state n scales the ground result by 2n+1."""
    a = alpha_coefficient(p, t).value
    return (2 * level.value + 1) * abs(a) ** 2


def variance_p(p: QuenchParams, t: float) -> float:
    _check_time(t)
    base = MASS * HBAR * p.omega_i / 2.0
    if p.omega_f == 0:
        return base
    c, s = math.cos(p.omega_f * t), math.sin(p.omega_f * t)
    return base * (c**2 + (p.omega_f / p.omega_i) ** 2 * s**2)


def uncertainty_product(p: QuenchParams, t: float) -> float:
    return math.sqrt(variance_x(p, t) * variance_p(p, t))


def _characteristic(p: QuenchParams, t: float, level: InitialLevel):
    """chi(k) = <exp(i k x(t))> for the given initial number state."""
    a2 = abs(alpha_coefficient(p, t).value) ** 2
    mean = mean_position(p, t)

    def chi(k):
        u = np.asarray(k) ** 2 * a2
        if level is InitialLevel.GROUND:
            poly = 1.0
        elif level is InitialLevel.FIRST:
            poly = 1.0 - u
        else:
            poly = 1.0 - 2.0 * u + 0.5 * u**2
        return poly * np.exp(-0.5 * u + 1j * np.asarray(k) * mean)

    return chi


def density(
    p: QuenchParams,
    t: float,
    grid: SpatialGrid,
    level: InitialLevel = InitialLevel.GROUND,
    tol: Tolerances | None = None,
) -> DensityProfile:
    """Position density at time t after the quench.

    The ground state stays an exact Gaussian and is evaluated directly; the
    first and second excited states go through the characteristic-function
    inversion, whose integrand is the Gaussian times an explicit polynomial.
    """
    _check_time(t)
    if level is InitialLevel.GROUND:
        var = variance_x(p, t)
        mu = mean_position(p, t)
        xs = grid.points()
        vals = np.exp(-0.5 * (xs - mu) ** 2 / var) / math.sqrt(2.0 * math.pi * var)
        return DensityProfile(grid, vals, t, DensityMethod.ANALYTIC)
    return characteristic_to_density(
        _characteristic(p, t, level), grid, tol, time=t
    )


def momentum_density(
    p: QuenchParams,
    t: float,
    grid: MomentumGrid,
    level: InitialLevel = InitialLevel.GROUND,
    tol: Tolerances | None = None,
) -> DensityProfile:
    """Momentum density at time t (ground state only)."""
    _check_time(t)
    if level is not InitialLevel.GROUND:
        raise UnsupportedLevelError(
            f"momentum density implemented for the ground state only, got {level}"
        )
    var = variance_p(p, t)
    mu = mean_momentum(p, t)
    ks = grid.points()
    vals = np.exp(-0.5 * (ks - mu) ** 2 / var) / math.sqrt(2.0 * math.pi * var)
    return DensityProfile(grid, vals, t, DensityMethod.ANALYTIC)


def equivalence_shift_check(
    p: QuenchParams,
    t: float,
    grid: SpatialGrid,
    level: InitialLevel = InitialLevel.GROUND,
    tol: Tolerances | None = None,
) -> float:
    """Largest deviation between the forced density and the rigidly shifted
    free one, rho_F(x, t) vs rho_{F=0}(x - F t^2/2m, t).

    A uniform force displaces every density without deforming it, so this
    should vanish to quadrature accuracy for any initial level.
    """
    _check_time(t)
    if p.omega_f != 0:
        raise InvalidParamsError("the rigid-shift identity concerns omega_f = 0 only")
    shift = p.force * t**2 / (2.0 * MASS)
    forced = density(p, t, grid, level, tol)
    free_params = QuenchParams(p.omega_i, 0.0, 0.0)
    shifted_grid = SpatialGrid(grid.x_min - shift, grid.x_max - shift, grid.n)
    free = density(free_params, t, shifted_grid, level, tol)
    return float(np.max(np.abs(forced.values - free.values)))


def _check_time(t: float):
    if t < 0:
        raise InvalidTimeError(f"post-quench times must be nonnegative, got t={t}")
