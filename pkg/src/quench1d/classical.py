"""Classical statistical mechanics of the same quenches.

An ensemble is a factorized phase-space density rho_x(x0) rho_p(p0).  Free
streaming moves each trajectory as x0 + p0 t / m, so the position density at
time t is a convolution of the two factors; its variance grows exactly as
<x0^2> + t^2 <p0^2> / m^2, which matches the quantum width law whenever the
factors are built from |psi0|^2 and its momentum counterpart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import HBAR, MASS, Tolerances
from .errors import (
    InvalidParamsError,
    InvalidTimeError,
    UnsupportedEnsembleError,
)
from .harmonic_quench import QuenchParams, mean_position
from .quadrature import PANEL_PHASE_BUDGET, integrate
from .square_well import WellBranch, WellState, moments, psi0, psi0_momentum


@dataclass(frozen=True)
class ClassicalEnsemble:
    """Factorized phase-space density rho_x(x0) * rho_p(p0).

    Carries its own second moments and effective supports so consumers can
    budget quadrature windows; ``gaussian`` marks ensembles whose factors are
    Gaussians (required by the closed-form harmonic evolution).
    """

    rho_x: Callable[[np.ndarray], np.ndarray]
    rho_p: Callable[[np.ndarray], np.ndarray]
    x2: float
    p2: float
    x_support: float          # |x0| beyond which rho_x is negligible
    p_support: float          # |p0| beyond which rho_p tail mass < ~1e-10
    x_breaks: tuple[float, ...] = ()
    structure_scale: float = 1.0
    gaussian: bool = False
    factorized: bool = True


def from_well_state(w: WellState, tol: Tolerances | None = None) -> ClassicalEnsemble:
    """The product ensemble |psi0(x0)|^2 |psi0_momentum(p0)|^2."""
    tol = tol or Tolerances()
    x2, p2 = moments(w, tol)
    # rho_p envelope falls at least as 1/p^4; keep tail mass below ~1e-10.
    if w.branch is WellBranch.FINITE:
        p_support = 60.0 * w.wavenumber_scale + 60.0 / w.a
    else:
        amp2 = (2.0 * w.kappa**1.5 / math.sqrt(2 * math.pi)) ** 2 if (
            w.branch is WellBranch.DELTA
        ) else (2.0 * w.k0 / math.sqrt(2 * math.pi * w.a)) ** 2
        p_support = (amp2 / 3e-11) ** (1.0 / 3.0)
    breaks = (w.a,) if w.branch is not WellBranch.DELTA else (0.0,)
    return ClassicalEnsemble(
        rho_x=lambda x0: np.asarray(psi0(w, x0)) ** 2,
        rho_p=lambda p0: np.asarray(psi0_momentum(w, p0, tol)) ** 2,
        x2=x2,
        p2=p2,
        x_support=w.support_halfwidth,
        p_support=p_support,
        x_breaks=breaks,
        structure_scale=min(1.0 / w.wavenumber_scale, w.a),
    )


def gaussian_ensemble(x2: float, p2: float) -> ClassicalEnsemble:
    """Factorized Gaussian ensemble with the given second moments."""
    if x2 <= 0 or p2 <= 0:
        raise InvalidParamsError("Gaussian ensemble needs positive variances")

    def rho_x(x0):
        return np.exp(-0.5 * np.asarray(x0) ** 2 / x2) / math.sqrt(2 * math.pi * x2)

    def rho_p(p0):
        return np.exp(-0.5 * np.asarray(p0) ** 2 / p2) / math.sqrt(2 * math.pi * p2)

    return ClassicalEnsemble(
        rho_x, rho_p, x2, p2,
        x_support=8.5 * math.sqrt(x2),
        p_support=8.5 * math.sqrt(p2),
        structure_scale=math.sqrt(x2),
        gaussian=True,
    )


def thermal_oscillator_ensemble(omega_i: float, k_B_T: float) -> ClassicalEnsemble:
    """Canonical ensemble of the initial trap: <x0^2> = kT / (m omega_i^2),
    <p0^2> = m kT.  The choice kT = hbar omega_i / 2 reproduces the quantum
    ground-state moments, and with them the full quantum density."""
    if omega_i <= 0 or k_B_T <= 0:
        raise InvalidParamsError("thermal ensemble needs omega_i > 0 and k_B_T > 0")
    return gaussian_ensemble(k_B_T / (MASS * omega_i**2), MASS * k_B_T)


def classical_free_density(
    e: ClassicalEnsemble,
    x: float,
    t: float,
    tol: Tolerances | None = None,
    route: str = "momentum",
) -> float:
    """Freely streamed density Int rho_x(x - p0 t / m) rho_p(p0) dp0.

    ``route="momentum"`` integrates over the launch momentum; for t > 0
    ``route="position"`` integrates over the launch position instead,
    (m/t) Int rho_x(x0) rho_p(m (x - x0) / t) dx0.  Both must agree.
    """
    tol = tol or Tolerances()
    if t < 0:
        raise InvalidTimeError(f"free streaming needs t >= 0, got t={t}")
    if route not in ("momentum", "position"):
        raise InvalidParamsError(f"unknown route {route!r}")
    if t == 0:
        return float(np.asarray(e.rho_x(np.array([x])))[0])

    if route == "momentum":
        lo = max((x - e.x_support) * MASS / t, -e.p_support)
        hi = min((x + e.x_support) * MASS / t, e.p_support)
        if hi <= lo:
            return 0.0
        breaks = [MASS * (x - b) / t for b in (*e.x_breaks, *(-b for b in e.x_breaks), 0.0)]

        def integrand(p0):
            return np.asarray(e.rho_x(x - p0 * t / MASS)) * np.asarray(e.rho_p(p0))

        scale = min(e.structure_scale * MASS / t, math.sqrt(e.p2))
        val, _ = integrate(
            integrand, lo, hi,
            abs_tol=tol.quad_abs, rel_tol=tol.quad_rel,
            breakpoints=[b for b in breaks if lo < b < hi],
            panel_width=lambda p: np.full_like(p, 0.5 * scale),
            initial_panels=32,
        )
        return float(val)

    lo, hi = -e.x_support, e.x_support

    def integrand(x0):
        return np.asarray(e.rho_x(x0)) * np.asarray(e.rho_p(MASS * (x - x0) / t))

    scale = min(e.structure_scale, math.sqrt(e.p2) * t / MASS)
    breaks = [*(b for b in e.x_breaks), *(-b for b in e.x_breaks), x]
    val, _ = integrate(
        integrand, lo, hi,
        abs_tol=tol.quad_abs, rel_tol=tol.quad_rel,
        breakpoints=[b for b in breaks if lo < b < hi],
        panel_width=lambda x0: np.full_like(x0, 0.5 * scale),
        initial_panels=32,
    )
    return float(val) * MASS / t


def classical_width(e: ClassicalEnsemble, t: float) -> float:
    """Variance of the streamed density: <x0^2> + t^2 <p0^2> / m^2.

    Assumes even rho_x, so the position-momentum cross term vanishes."""
    if t < 0:
        raise InvalidTimeError(f"free streaming needs t >= 0, got t={t}")
    return e.x2 + t**2 * e.p2 / MASS**2


def classical_longtime(e: ClassicalEnsemble, u: float) -> float:
    """Limit of t * rho_cl(u t, t): the momentum factor read along rays,
    m rho_p(m u)."""
    return MASS * float(np.asarray(e.rho_p(np.array([MASS * u])))[0])


def classical_harmonic_density(
    e: ClassicalEnsemble,
    params: QuenchParams,
    x: float,
    t: float,
) -> float:
    """Closed-form streamed density in the final harmonic trap.

    Gaussian factors stay Gaussian under the linear flow; the variance
    rotates as <x0^2> cos^2 + <p0^2> sin^2 / (m omega_f)^2 while the mean
    follows the classical trajectory of the trap quench."""
    if not e.gaussian:
        raise UnsupportedEnsembleError(
            "closed-form harmonic streaming needs Gaussian ensemble factors"
        )
    if t < 0:
        raise InvalidTimeError(f"needs t >= 0, got t={t}")
    if params.omega_f == 0:
        var = e.x2 + t**2 * e.p2 / MASS**2
    else:
        c = math.cos(params.omega_f * t)
        s = math.sin(params.omega_f * t)
        var = e.x2 * c**2 + e.p2 * s**2 / (MASS * params.omega_f) ** 2
    mu = mean_position(params, t)
    return math.exp(-0.5 * (x - mu) ** 2 / var) / math.sqrt(2 * math.pi * var)
