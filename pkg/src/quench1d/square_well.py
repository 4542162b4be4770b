"""Initial states bound by an attractive square well, with its two limits.

The finite well of half-width a keeps the even ground state
    psi0(x) = c0 cos(k0 x)/cos(k0 a)   for |x| <= a,
    psi0(x) = c0 exp(-kappa (|x|-a))   for |x| >= a,
where matching the logarithmic derivative forces kappa = k0 tan(k0 a).
Letting a -> 0 at fixed kappa gives the delta-well state sqrt(kappa) e^{-kappa|x|};
letting k0 a -> pi/2 gives the infinitely deep well cos(k0 x)/sqrt(a).

The momentum amplitude has a closed form with a removable singularity at
|k| = k0, evaluated by a short series inside a small window around it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Tolerances
from .errors import InvalidParamsError
from .quadrature import PANEL_PHASE_BUDGET, integrate

_TWO_PI = 2.0 * np.pi


class WellBranch(Enum):
    FINITE = "finite"
    DELTA = "delta"
    INFINITE = "infinite"


@dataclass(frozen=True)
class WellState:
    """Ground state of a square well, a delta well, or an infinite well."""

    branch: WellBranch
    a: float
    k0: float          # interior wavenumber; for the delta well this is 0
    kappa: float       # exterior decay constant; inf for the infinite well
    c0: float          # amplitude entering psi0 (branch-specific meaning)

    @classmethod
    def finite(cls, k0a: float, a: float = 1.0) -> "WellState":
        if not 0.0 < k0a < 0.5 * math.pi:
            raise InvalidParamsError(
                f"finite well needs k0*a in (0, pi/2), got {k0a:g}"
            )
        if a <= 0:
            raise InvalidParamsError("well half-width a must be positive")
        k0 = k0a / a
        kappa = k0 * math.tan(k0a)
        c0 = (1.0 / kappa + a * (1.0 + (kappa / k0) ** 2) + kappa / k0**2) ** -0.5
        return cls(WellBranch.FINITE, a, k0, kappa, c0)

    @classmethod
    def delta(cls, kappa: float, a: float = 1.0) -> "WellState":
        if kappa <= 0:
            raise InvalidParamsError("delta well needs kappa > 0")
        return cls(WellBranch.DELTA, a, 0.0, kappa, math.sqrt(kappa))

    @classmethod
    def infinite(cls, a: float = 1.0) -> "WellState":
        if a <= 0:
            raise InvalidParamsError("well half-width a must be positive")
        return cls(WellBranch.INFINITE, a, 0.5 * math.pi / a, math.inf, a**-0.5)

    @property
    def wavenumber_scale(self) -> float:
        """Typical wavenumber content, used for windows and panel sizing."""
        if self.branch is WellBranch.DELTA:
            return self.kappa
        return self.k0

    @property
    def support_halfwidth(self) -> float:
        """Half-width beyond which psi0 is numerically zero (< 1e-17)."""
        if self.branch is WellBranch.INFINITE:
            return self.a
        base = self.a if self.branch is WellBranch.FINITE else 0.0
        return base + 40.0 / self.kappa

    @property
    def has_oscillatory_amplitude(self) -> bool:
        """Whether the momentum amplitude carries trigonometric factors."""
        return self.branch is not WellBranch.DELTA


def psi0(w: WellState, x) -> np.ndarray | float:
    """Ground-state wave function (real, even)."""
    xs = np.asarray(x, dtype=float)
    ax = np.abs(xs)
    if w.branch is WellBranch.DELTA:
        out = w.c0 * np.exp(-w.kappa * ax)
    elif w.branch is WellBranch.INFINITE:
        out = np.where(ax <= w.a, np.cos(w.k0 * xs) * w.c0, 0.0)
    else:
        inside = w.c0 * np.cos(w.k0 * xs) / math.cos(w.k0 * w.a)
        outside = w.c0 * np.exp(-w.kappa * (ax - w.a))
        out = np.where(ax <= w.a, inside, outside)
    return out if out.ndim else float(out)


def _psi0_prime(w: WellState, x) -> np.ndarray:
    """d psi0/dx, defined piecewise (used for the kinetic moment)."""
    xs = np.asarray(x, dtype=float)
    ax = np.abs(xs)
    sgn = np.sign(xs)
    if w.branch is WellBranch.DELTA:
        return -w.kappa * w.c0 * np.exp(-w.kappa * ax) * sgn
    if w.branch is WellBranch.INFINITE:
        return np.where(ax <= w.a, -w.k0 * w.c0 * np.sin(w.k0 * xs), 0.0)
    inside = -w.k0 * w.c0 * np.sin(w.k0 * xs) / math.cos(w.k0 * w.a)
    outside = -w.kappa * w.c0 * np.exp(-w.kappa * (ax - w.a)) * sgn
    return np.where(ax <= w.a, inside, outside)


def psi0_momentum(w: WellState, k, tol: Tolerances | None = None) -> np.ndarray | float:
    """Momentum amplitude of the ground state (real, even in k).

    The finite and infinite branches have a removable 0/0 point at |k| = k0;
    within a small window around it the numerator is replaced by its Taylor
    series, whose error there is far below the cancellation noise of the
    direct formula.
    """
    tol = tol or Tolerances()
    k_in = np.asarray(k, dtype=float)
    scalar = k_in.ndim == 0
    ks = np.abs(np.atleast_1d(k_in))
    a, k0, kap = w.a, w.k0, w.kappa

    if w.branch is WellBranch.DELTA:
        out = (2.0 * kap**1.5 / math.sqrt(_TWO_PI)) / (ks**2 + kap**2)
        return float(out[0]) if scalar else out.reshape(k_in.shape)

    window = tol.window_for(k0)
    delta = ks - k0
    near = np.abs(delta) < window
    far = np.where(near, k0 + 2.0 * window, ks)  # placeholder to avoid 0/0

    if w.branch is WellBranch.INFINITE:
        pref = 2.0 * k0 / math.sqrt(_TWO_PI * a)
        out = pref * np.cos(far * a) / (k0**2 - far**2)
        if near.any():
            d = delta[near]
            # cos(k a) = -sin(d a) near k0 a = pi/2; k0^2 - k^2 = -d (2 k0 + d)
            out[near] = pref * (a - a**3 * d**2 / 6.0) / (2.0 * k0 + d)
        return float(out[0]) if scalar else out.reshape(k_in.shape)

    pref = 2.0 * w.c0 / math.sqrt(_TWO_PI)
    f = kap * np.cos(ks * a) - ks * np.sin(ks * a)
    regular = f / (ks**2 + kap**2)
    singular = -f / (far**2 - k0**2)
    if near.any():
        s, c = math.sin(k0 * a), math.cos(k0 * a)
        f1 = -(kap * a + 1.0) * s - k0 * a * c
        f2 = -(kap * a + 2.0) * a * c + k0 * a**2 * s
        d = delta[near]
        singular[near] = -(f1 + 0.5 * f2 * d) / (2.0 * k0 + d)
    out = pref * (regular + singular)
    return float(out[0]) if scalar else out.reshape(k_in.shape)


def moments(w: WellState, tol: Tolerances | None = None) -> tuple[float, float]:
    """Second moments (<x^2>, <p^2>) of the ground state, by quadrature.

    <x^2> integrates x^2 psi0^2 over the support.  <p^2> integrates the
    squared derivative, which equals the momentum-space second moment by
    Parseval and, unlike a truncated wavenumber integral, converges fast for
    the states with a kink (whose spectral tails fall off only as 1/k^2).
    """
    tol = tol or Tolerances()
    hw = w.support_halfwidth
    brk = (w.a,) if w.branch is not WellBranch.DELTA and w.a < hw else ()
    width = PANEL_PHASE_BUDGET / (2.0 * w.wavenumber_scale + 2.0 / w.a)

    x2, _ = integrate(
        lambda x: x**2 * psi0(w, x) ** 2, 0.0, hw,
        abs_tol=0.25 * tol.quad_abs, rel_tol=0.25 * tol.quad_rel,
        breakpoints=brk,
        panel_width=lambda x: np.full_like(x, width),
    )
    p2, _ = integrate(
        lambda x: _psi0_prime(w, x) ** 2, 0.0, hw,
        abs_tol=0.25 * tol.quad_abs, rel_tol=0.25 * tol.quad_rel,
        breakpoints=brk,
        panel_width=lambda x: np.full_like(x, width),
    )
    return 2.0 * float(x2), 2.0 * float(p2)


def momentum_tail_mass(w: WellState, q0: float, tol: Tolerances | None = None) -> float:
    """Probability carried by |k| > q0 in the momentum distribution."""
    return _momentum_tail(w, q0, weight_power=0, tol=tol)


def momentum_tail_second_moment(
    w: WellState, q0: float, tol: Tolerances | None = None
) -> float:
    """Second moment Int_{|k|>q0} k^2 |psi0_momentum|^2 dk of the spectral tail."""
    return _momentum_tail(w, q0, weight_power=2, tol=tol)


def _momentum_tail(w: WellState, q0: float, weight_power: int, tol: Tolerances | None):
    """Tail integrals of the momentum density beyond q0.

    The integrand envelope falls off at least as 1/k^2 (times k^2 for the
    second moment), so truncating at 60*q0 leaves a relative remainder below
    2%, itself a tiny fraction of the tail; good enough for the far-field
    corrections these feed.
    """
    tol = tol or Tolerances()
    if q0 <= 0:
        raise InvalidParamsError("tail integrals need q0 > 0")
    q_max = max(60.0 * q0, 4000.0 / w.a)
    width = PANEL_PHASE_BUDGET / (2.0 * w.a)

    def _f(k):
        amp = psi0_momentum(w, k, tol)
        dens = np.asarray(amp) ** 2
        return dens if weight_power == 0 else k**weight_power * dens

    val, _ = integrate(
        _f, q0, q_max,
        abs_tol=tol.quad_abs, rel_tol=1e-6,
        panel_width=lambda k: np.full_like(k, width),
    )
    return 2.0 * float(val)
