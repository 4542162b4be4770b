"""Phase-space (Wigner) machinery for the post-quench free evolution.

The transform used throughout is the position-space form

    W(x, p) = (1/2 pi) Int exp(-i p y) psi*(x - y/2) psi(x + y/2) dy,

real by construction for any state.  For the infinitely deep well the
integral collapses to three sine terms with removable singularities at k = 0
and 2 a k = +/- pi.  Free evolution shears phase space, W(x, p, t) =
W(x - p t / m, p, 0), so marginals of the sheared field reproduce the
spreading position density while the momentum marginal stays frozen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .core import (
    MASS,
    DensityMethod,
    DensityProfile,
    MomentumGrid,
    SpatialGrid,
    Tolerances,
)
from .errors import InvalidParamsError
from .quadrature import PANEL_PHASE_BUDGET, integrate
from .square_well import WellBranch, WellState, psi0, psi0_momentum

_TWO_PI = 2.0 * math.pi


class PhaseSpaceSource(Enum):
    CLOSED_FORM_INFINITE_WELL = "closed-form-infinite-well"
    QUADRATURE_FROM_PSI = "quadrature-from-psi"
    FACTORIZED_APPROX = "factorized-approx"


@dataclass(frozen=True)
class PhaseSpaceField:
    """Phase-space distribution sampled on an (x, p) product grid.

    ``evaluator``, when present, re-evaluates the t = 0 field at arbitrary
    (x, p); shearing such a field is then exact instead of interpolated.
    """

    x_grid: SpatialGrid
    p_grid: MomentumGrid
    values: np.ndarray
    t: float
    source: PhaseSpaceSource
    evaluator: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.x_grid.n, self.p_grid.n):
            raise InvalidParamsError(
                f"field shape {vals.shape} does not match grids "
                f"({self.x_grid.n}, {self.p_grid.n})"
            )
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def position_marginal(self) -> DensityProfile:
        vals = np.trapezoid(self.values, self.p_grid.points(), axis=1)
        return DensityProfile(self.x_grid, vals, self.t, DensityMethod.WIGNER_MARGINAL)

    def momentum_marginal(self) -> DensityProfile:
        vals = np.trapezoid(self.values, self.x_grid.points(), axis=0)
        return DensityProfile(self.p_grid, vals, self.t, DensityMethod.WIGNER_MARGINAL)

    def total_mass(self) -> float:
        part = np.trapezoid(self.values, self.p_grid.points(), axis=1)
        return float(np.trapezoid(part, self.x_grid.points()))


def wigner_from_psi(
    psi: Callable[[np.ndarray], np.ndarray],
    x: float,
    p: float,
    tol: Tolerances | None = None,
    *,
    y_half_width: float | None = None,
    with_residual: bool = False,
):
    """Wigner transform of an arbitrary square-integrable wave function.

    ``y_half_width`` bounds the correlation integral; when omitted it is
    probed by expanding until psi has decayed below 1e-13.  Returns the real
    value, optionally together with the imaginary quadrature residue.
    """
    tol = tol or Tolerances()
    if y_half_width is None:
        y_half_width = _probe_support(psi, x)

    def integrand(y):
        left = np.conjugate(np.asarray(psi(x - 0.5 * y)))
        right = np.asarray(psi(x + 0.5 * y))
        return np.exp(-1j * p * y) * left * right

    freq = abs(p) + 2.0
    val, _ = integrate(
        integrand, -y_half_width, y_half_width,
        abs_tol=_TWO_PI * tol.quad_abs, rel_tol=tol.quad_rel,
        panel_width=lambda y: np.full_like(y, PANEL_PHASE_BUDGET / freq),
        initial_panels=64,
    )
    val = complex(val) / _TWO_PI
    if with_residual:
        return val.real, abs(val.imag)
    return val.real


def _probe_support(psi, x: float) -> float:
    y = 8.0
    for _ in range(40):
        edge = max(abs(np.asarray(psi(x - 0.5 * y))), abs(np.asarray(psi(x + 0.5 * y))))
        if edge < 1e-13:
            return y
        y *= 1.5
    raise InvalidParamsError("wave function does not decay; cannot bound the transform")


def wigner_infinite_well(x, k, a: float = 1.0, tol: Tolerances | None = None):
    """Closed-form Wigner function of the infinite-well ground state at t = 0.

    Vanishes outside |x| <= a.  The 0/0 points at k = 0 and 2 a k = +/- pi are
    filled by series; the three terms combine to a finite k -> 0 limit.
    """
    tol = tol or Tolerances()
    window = tol.window_for(0.5 * math.pi / a)
    xs, ks = np.broadcast_arrays(
        np.asarray(x, dtype=float), np.asarray(k, dtype=float)
    )
    shape = xs.shape
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs).astype(float).ravel()
    ks = np.atleast_1d(ks).astype(float).ravel()

    q = 1.0 - np.abs(xs) / a      # reduced distance to the wall

    # sin(2 k a q) / (a k), with its series around k = 0
    small = np.abs(ks) < window
    safe_k = np.where(small, 1.0, ks)
    t1 = np.where(
        small,
        2.0 * q * (1.0 - (2.0 * ks * a * q) ** 2 / 6.0),
        np.sin(2.0 * safe_k * a * q) / (a * safe_k),
    )

    # sin((2 a k +/- pi) q) / (2 a k +/- pi), each with its series
    t23 = np.zeros_like(t1)
    for sign in (+1.0, -1.0):
        arg = 2.0 * a * ks + sign * math.pi
        small = np.abs(arg) < 2.0 * a * window
        safe = np.where(small, 1.0, arg)
        t23 = t23 + np.where(
            small,
            q * (1.0 - (arg * q) ** 2 / 6.0),
            np.sin(safe * q) / safe,
        )

    vals = np.where(q > 0.0, (np.cos(math.pi * xs / a) * t1 + t23) / _TWO_PI, 0.0)
    return float(vals[0]) if scalar else vals.reshape(shape)


def infinite_well_field(
    x_grid: SpatialGrid, p_grid: MomentumGrid, a: float = 1.0,
    tol: Tolerances | None = None,
) -> PhaseSpaceField:
    """Closed-form infinite-well field at t = 0, carrying its evaluator."""
    ev = lambda xx, pp: wigner_infinite_well(xx, pp, a, tol)
    X = x_grid.points()[:, None]
    P = p_grid.points()[None, :]
    vals = ev(np.broadcast_to(X, (x_grid.n, p_grid.n)),
              np.broadcast_to(P, (x_grid.n, p_grid.n)))
    return PhaseSpaceField(
        x_grid, p_grid, vals, 0.0, PhaseSpaceSource.CLOSED_FORM_INFINITE_WELL, ev
    )


def factorized_field(
    w: WellState, x_grid: SpatialGrid, p_grid: MomentumGrid,
    tol: Tolerances | None = None,
) -> PhaseSpaceField:
    """The nonnegative product ansatz |psi0(x)|^2 |psi0_momentum(p)|^2."""
    ev = lambda xx, pp: factorized_approx(w, xx, pp, tol)
    X = x_grid.points()[:, None]
    P = p_grid.points()[None, :]
    vals = ev(np.broadcast_to(X, (x_grid.n, p_grid.n)),
              np.broadcast_to(P, (x_grid.n, p_grid.n)))
    return PhaseSpaceField(
        x_grid, p_grid, vals, 0.0, PhaseSpaceSource.FACTORIZED_APPROX, ev
    )


def field_from_psi(
    psi: Callable[[np.ndarray], np.ndarray],
    x_grid: SpatialGrid,
    p_grid: MomentumGrid,
    tol: Tolerances | None = None,
) -> PhaseSpaceField:
    """Quadrature-built field for an arbitrary state (no exact evaluator)."""
    vals = np.empty((x_grid.n, p_grid.n))
    for i, x in enumerate(x_grid.points()):
        for j, p in enumerate(p_grid.points()):
            vals[i, j] = wigner_from_psi(psi, float(x), float(p), tol)
    return PhaseSpaceField(
        x_grid, p_grid, vals, 0.0, PhaseSpaceSource.QUADRATURE_FROM_PSI, None
    )


def factorized_approx(w: WellState, x, p, tol: Tolerances | None = None):
    """|psi0(x)|^2 |psi0_momentum(p)|^2: classical-looking, nonnegative."""
    return np.asarray(psi0(w, x)) ** 2 * np.asarray(psi0_momentum(w, p, tol)) ** 2


def shear_evolve(W0: PhaseSpaceField, t: float) -> PhaseSpaceField:
    """Free streaming in phase space: values move along x at speed p/m.

    Fields carrying an evaluator are re-evaluated exactly at the sheared
    arguments; otherwise bilinear interpolation of the stored samples is used
    (zero outside the sampled rectangle).
    """
    t_new = W0.t + t
    X = W0.x_grid.points()[:, None]
    P = W0.p_grid.points()[None, :]
    Xs = np.broadcast_to(X, (W0.x_grid.n, W0.p_grid.n)) - t_new * np.broadcast_to(
        P, (W0.x_grid.n, W0.p_grid.n)
    ) / MASS
    Pb = np.broadcast_to(P, (W0.x_grid.n, W0.p_grid.n))
    if W0.evaluator is not None:
        vals = W0.evaluator(Xs, Pb)
    else:
        interp = RegularGridInterpolator(
            (W0.x_grid.points(), W0.p_grid.points()), W0.values,
            bounds_error=False, fill_value=0.0,
        )
        vals = interp(np.stack([Xs.ravel(), Pb.ravel()], axis=-1)).reshape(Xs.shape)
    return PhaseSpaceField(W0.x_grid, W0.p_grid, vals, t_new, W0.source, W0.evaluator)


def origin_density_integrand(t: float, k, a: float = 1.0, tol: Tolerances | None = None):
    """Integrand whose k-integral gives the origin density of the freely
    spreading infinite-well state: the t = 0 Wigner function read along the
    sheared ray, W(-k t / m, k, 0).  Even in k."""
    ks = np.asarray(k, dtype=float)
    return wigner_infinite_well(-ks * t / MASS, ks, a, tol)


def origin_density_from_shear(t: float, a: float = 1.0, tol: Tolerances | None = None) -> float:
    """rho(0, t) reconstructed by integrating the sheared Wigner function."""
    tol = tol or Tolerances()
    if t < 0:
        raise InvalidParamsError("free shear needs t >= 0")
    # The ray leaves the support |x| <= a once |k| t > a; beyond that the
    # integrand is exactly zero, so the k-range is finite for t > 0.
    k_max = (a / t + 1.0) if t > 0 else tol.k_cutoff
    freq = 4.0 * a + 6.0 * t * k_max
    val, _ = integrate(
        lambda k: origin_density_integrand(t, k, a, tol),
        0.0, k_max,
        abs_tol=tol.quad_abs, rel_tol=1e-7,
        panel_width=lambda k: np.full_like(k, PANEL_PHASE_BUDGET / freq),
    )
    return 2.0 * float(val)
