"""Free time evolution of a well-bound state after the trap is switched off.

Two independent routes are provided and cross-checked:

* ``evolve_momentum`` synthesizes psi(x, t) from the analytic momentum
  amplitude, Int psi0_momentum(k) exp(i k x - i k^2 t / 2) dk / sqrt(2 pi).
* ``evolve_propagator`` convolves psi0 with the free kernel
  sqrt(m / (2 pi i t)) exp(i m (x - x')^2 / 2 t) over the state's support.

Both integrands oscillate; panels are sized to the local phase rate so the
fixed-order rule always resolves the oscillation.  The momentum cutoff is
extended beyond the baseline whenever the stationary-phase point k* = x/t
would otherwise fall outside the integration range.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    DensityMethod,
    DensityProfile,
    SpatialGrid,
    Tolerances,
)
from .errors import CutoffTooSmallError, InvalidParamsError, InvalidTimeError
from .quadrature import PANEL_PHASE_BUDGET, integrate
from .square_well import (
    WellState,
    momentum_tail_mass,
    momentum_tail_second_moment,
    moments,
    psi0,
    psi0_momentum,
)

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def _effective_cutoff(w: WellState, x: float, t: float, tol: Tolerances) -> float:
    """Truncation point for the wavenumber integral at time t > 0.

    The integrand's phase families are k x (+/- k a from the trigonometric
    amplitude) minus k^2 t / 2, stationary at k* <= (|x| + a)/t.  Pushing the
    cutoff 50% past k* (plus a margin) keeps the discarded tail suppressed by
    both the amplitude decay and the fast residual phase.
    """
    a_osc = w.a if w.has_oscillatory_amplitude else 0.0
    k_star = (abs(x) + a_osc) / t
    return max(tol.k_cutoff, 1.5 * k_star + 50.0 / w.a)


def _tail_bound(w: WellState, x: float, t: float, K: float, tol: Tolerances) -> float:
    """Certified bound on the discarded |k| > K amplitude contribution."""
    a_osc = w.a if w.has_oscillatory_amplitude else 0.0
    k_star = (abs(x) + a_osc) / t
    probes = K + np.linspace(0.0, np.pi / w.a, 9)
    envelope = 2.0 * float(np.max(np.abs(psi0_momentum(w, probes, tol))))
    phase_rate = max((K - k_star) * t, 1e-300)
    return _SQRT_2_OVER_PI * envelope * min(1.0 / phase_rate, K)


def evolve_momentum(w: WellState, x: float, t: float, tol: Tolerances | None = None) -> complex:
    """Amplitude <x|psi(t)> via the momentum-space phase integral.

    At t = 0 the integral is the plain inverse transform of the analytic
    momentum amplitude and returns the initial wave function exactly.
    """
    tol = tol or Tolerances()
    if t < 0:
        raise InvalidTimeError(f"free evolution needs t >= 0, got t={t}")
    if t == 0:
        return complex(psi0(w, x))

    K = _effective_cutoff(w, x, t, tol)
    bound = _tail_bound(w, x, t, K, tol)
    if bound > 1e3 * tol.quad_rel:
        raise CutoffTooSmallError(
            f"truncation bound {bound:.2e} at cutoff {K:g} exceeds "
            f"{1e3 * tol.quad_rel:.1e}; raise k_cutoff"
        )

    a_osc = w.a if w.has_oscillatory_amplitude else 0.0
    freq0 = abs(x) + a_osc + 2.0 / w.a + w.wavenumber_scale

    # Even amplitude folds the full-line transform onto k >= 0 with cos(k x).
    def integrand(k):
        return psi0_momentum(w, k, tol) * np.cos(k * x) * np.exp(-0.5j * k**2 * t)

    val, _ = integrate(
        integrand, 0.0, K,
        abs_tol=tol.quad_abs, rel_tol=tol.quad_rel,
        panel_width=lambda k: PANEL_PHASE_BUDGET / (freq0 + t * k),
    )
    return _SQRT_2_OVER_PI * complex(val)


def evolve_propagator(w: WellState, x: float, t: float, tol: Tolerances | None = None) -> complex:
    """Amplitude <x|psi(t)> by convolving psi0 with the free kernel (t > 0)."""
    tol = tol or Tolerances()
    if t <= 0:
        raise InvalidTimeError(f"the free kernel is singular at t <= 0, got t={t}")
    hw = w.support_halfwidth
    kernel_pref = math.sqrt(1.0 / (2.0 * math.pi * t)) * np.exp(-0.25j * np.pi)
    freq_base = w.wavenumber_scale + 1.0 / w.a

    def integrand(xp):
        return psi0(w, xp) * np.exp(0.5j * (x - xp) ** 2 / t)

    brk = [b for b in (-w.a, 0.0, w.a) if -hw < b < hw]
    val, _ = integrate(
        integrand, -hw, hw,
        abs_tol=tol.quad_abs, rel_tol=tol.quad_rel,
        breakpoints=brk,
        panel_width=lambda xp: PANEL_PHASE_BUDGET / (np.abs(x - xp) / t + freq_base),
    )
    return complex(kernel_pref * val)


def density_profile(
    w: WellState,
    t: float,
    grid: SpatialGrid,
    method: DensityMethod = DensityMethod.MOMENTUM_INTEGRAL,
    tol: Tolerances | None = None,
) -> DensityProfile:
    """|psi(x, t)|^2 sampled on the grid.

    Even initial states give even densities, so symmetric grids are filled on
    x >= 0 and mirrored.
    """
    tol = tol or Tolerances()
    if method is DensityMethod.MOMENTUM_INTEGRAL:
        amp = lambda x: evolve_momentum(w, x, t, tol)
    elif method is DensityMethod.PROPAGATOR:
        amp = lambda x: evolve_propagator(w, x, t, tol)
    else:
        raise InvalidParamsError(f"unsupported evolution method {method}")

    vals = _fill_even(grid, lambda x: abs(amp(x)) ** 2)
    return DensityProfile(grid, vals, t, method)


def width_qm(w: WellState, t: float, tol: Tolerances | None = None) -> float:
    """Position variance <x^2> + t^2 <p^2> / m^2 of the spreading packet.

    Valid for real even initial states, whose position-momentum correlation
    vanishes; the free-particle variance is then exactly quadratic in t.
    """
    if t < 0:
        raise InvalidTimeError(f"free evolution needs t >= 0, got t={t}")
    x2, p2 = moments(w, tol)
    return x2 + t**2 * p2


def longtime_scaled_profile(
    w: WellState,
    t: float,
    u_grid: SpatialGrid,
    tol: Tolerances | None = None,
) -> DensityProfile:
    """t * rho(u t, t) on a grid of the ballistic variable u = x / t.

    For large t this converges to m |psi0_momentum(m u)|^2: the packet turns
    into a snapshot of its momentum distribution read off along rays x = u t.
    """
    tol = tol or Tolerances()
    if t <= 0:
        raise InvalidTimeError(f"the scaled profile needs t > 0, got t={t}")
    vals = _fill_even(
        u_grid, lambda u: t * abs(evolve_momentum(w, u * t, t, tol)) ** 2
    )
    return DensityProfile(u_grid, vals, t, DensityMethod.MOMENTUM_INTEGRAL)


def ballistic_limit_profile(w: WellState, u_grid: SpatialGrid, tol: Tolerances | None = None) -> DensityProfile:
    """The t -> infinity limit m |psi0_momentum(m u)|^2 of the scaled profile."""
    us = u_grid.points()
    vals = np.asarray(psi0_momentum(w, us, tol)) ** 2
    return DensityProfile(u_grid, vals, math.inf, DensityMethod.ANALYTIC)


def norm_check(w: WellState, t: float, tol: Tolerances | None = None, x_max: float | None = None) -> float:
    """Int |psi(x, t)|^2 dx, combining direct quadrature on |x| <= x_max with
    the far-field tail, which streams ballistically and carries the momentum
    tail mass beyond x_max / t."""
    tol = tol or Tolerances()
    if t < 0:
        raise InvalidTimeError(f"free evolution needs t >= 0, got t={t}")
    if t == 0:
        x_max = w.support_halfwidth
    elif x_max is None:
        x_max = max(30.0 * w.a, 25.0 * t)

    def dens(x):
        return np.array([abs(evolve_momentum(w, xi, t, tol)) ** 2 for xi in np.atleast_1d(x)])

    body = _density_quad(w, t, dens, x_max)
    tail = momentum_tail_mass(w, x_max / t, tol) if t > 0 else 0.0
    return 2.0 * float(body) + tail


def variance_from_density(w: WellState, t: float, tol: Tolerances | None = None, x_max: float = 60.0) -> float:
    """Second moment of the evolved density, by direct quadrature plus the
    ballistic far-field tail t^2 Int_{|k| > x_max/t} k^2 |psi0_momentum|^2 dk.

    States with a derivative kink have spectral tails ~ 1/k^2, so x^2 rho
    decays only as 1/x^2 and no finite grid alone can pin the variance; the
    streaming tail supplies the remainder through the momentum distribution.
    """
    tol = tol or Tolerances()
    if t < 0:
        raise InvalidTimeError(f"free evolution needs t >= 0, got t={t}")

    def integrand(x):
        return np.array(
            [xi**2 * abs(evolve_momentum(w, xi, t, tol)) ** 2 for xi in np.atleast_1d(x)]
        )

    body = _density_quad(w, t, integrand, x_max)
    tail = t**2 * momentum_tail_second_moment(w, x_max / t, tol) if t > 0 else 0.0
    return 2.0 * float(body) + tail


def _density_structure_scale(w: WellState, t: float) -> float:
    """Shortest wavelength of |psi(x, t)|^2 along x.

    Short times keep the initial-state oscillation pi / (2 k0); later the
    spectral oscillation is imprinted ballistically with period ~ pi t / a.
    """
    initial = np.pi / (2.0 * w.wavenumber_scale)
    if t <= 0:
        return initial
    return max(initial, min(np.pi * t / w.a, 50.0 * w.a))


def _density_quad(w: WellState, t: float, f, x_max: float) -> float:
    width = 0.6 * _density_structure_scale(w, t)
    val, _ = integrate(
        f, 0.0, x_max,
        abs_tol=1e-9, rel_tol=1e-7,
        breakpoints=[b for b in (w.a,) if b < x_max],
        panel_width=lambda x: np.full_like(x, width),
    )
    return float(val)


def _fill_even(grid: SpatialGrid, f) -> np.ndarray:
    """Sample an even function on a grid, mirroring across 0 when symmetric."""
    xs = grid.points()
    n = xs.size
    vals = np.empty(n)
    if grid.is_symmetric:
        m = n // 2
        for i in range(m, n):
            vals[i] = f(xs[i])
        vals[:m] = vals[n - 1 : n - 1 - m : -1].copy()
    else:
        for i in range(n):
            vals[i] = f(xs[i])
    return vals
