"""Machine-readable battery of the package's cross-route property checks.

Each check pits an analytic statement, a dual numerical route, or a
conservation law against the implementation and reports one pass/fail line.
The battery is the backing of the ``report`` CLI command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import classical as cl
from . import free_evolution as fe
from . import harmonic_quench as hq
from . import square_well as sw
from . import wigner as wg
from .core import (
    DensityMethod,
    MomentumGrid,
    SpatialGrid,
    Tolerances,
    integrate_density,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status},{self.name},{self.value:.6e},{self.threshold:.6e}"


def _bound(name: str, value: float, threshold: float) -> CheckResult:
    return CheckResult(name, value <= threshold, value, threshold)


def _wells(tol: Tolerances):
    return {
        "infinite": sw.WellState.infinite(),
        "finite": sw.WellState.finite(math.pi / 2.5),
        "delta": sw.WellState.delta(1.0),
    }


def run_checks(tol: Tolerances | None = None) -> list[CheckResult]:
    tol = tol or Tolerances()
    wells = _wells(tol)
    out: list[CheckResult] = []

    # Ground-state normalization and momentum-space normalization per branch.
    from .quadrature import PANEL_PHASE_BUDGET, integrate

    for name, w in wells.items():
        hw = w.support_halfwidth
        grid = SpatialGrid(-hw, hw, 4001)
        dens = np.asarray(sw.psi0(w, grid.points())) ** 2
        norm = np.trapezoid(dens, grid.points())
        out.append(_bound(f"psi0_normalization_{name}", abs(norm - 1.0), 1e-8))
        k_body = 50.0 * w.wavenumber_scale
        body, _ = integrate(
            lambda k, _w=w: np.asarray(sw.psi0_momentum(_w, k, tol)) ** 2,
            0.0, k_body,
            abs_tol=1e-12, rel_tol=1e-9,
            panel_width=lambda k, _w=w: np.full_like(
                k, PANEL_PHASE_BUDGET / (2.0 * _w.a + 2.0 * _w.wavenumber_scale)
            ),
        )
        mass = 2.0 * body + sw.momentum_tail_mass(w, k_body, tol)
        out.append(_bound(f"parseval_{name}", abs(mass - 1.0), 1e-6))

    # Removable-singularity continuity of the momentum amplitude.
    for name, w in (("infinite", wells["infinite"]), ("finite", wells["finite"])):
        k0 = w.k0
        win = tol.window_for(k0)
        inner = sw.psi0_momentum(w, k0 + 0.5 * win, tol)
        outer = sw.psi0_momentum(w, k0 + 2.0 * win, tol)
        out.append(_bound(f"momentum_amplitude_continuity_{name}", abs(inner - outer), 1e-8))

    # Harmonic quench: uncertainty floor and the classical Gaussian identity.
    p = hq.QuenchParams(1.0, 0.5, force=0.25)
    floor = min(
        hq.uncertainty_product(p, t) for t in np.linspace(0.0, 4 * math.pi / 0.5, 97)
    )
    out.append(_bound("uncertainty_floor", max(0.0, 0.5 - floor), 1e-12))

    ens = cl.thermal_oscillator_ensemble(1.0, 0.5)
    xgrid = SpatialGrid(-4.0, 6.0, 41)
    worst = 0.0
    for t in np.linspace(0.0, 12.0, 21):
        prof = hq.density(p, t, xgrid)
        for x, q in zip(xgrid.points(), prof.values):
            worst = max(worst, abs(q - cl.classical_harmonic_density(ens, p, x, t)))
    out.append(_bound("harmonic_classical_identity", worst, 1e-10))

    # Free evolution: unitarity, parity, and dual-route agreement.
    w = wells["infinite"]
    for t in (0.14, 1.0):
        out.append(_bound(f"unitarity_t{t:g}", abs(fe.norm_check(w, t, tol) - 1.0), 1e-6))
    worst = max(
        abs(fe.evolve_momentum(w, x, 0.14, tol) - fe.evolve_momentum(w, -x, 0.14, tol))
        for x in (0.3, 0.8, 1.7)
    )
    out.append(_bound("parity", worst, 1e-8))
    worst = max(
        abs(fe.evolve_momentum(w, x, t, tol) - fe.evolve_propagator(w, x, t, tol))
        for x in (0.0, 0.6, 2.4, 4.8)
        for t in (0.1, 1.0)
    )
    out.append(_bound("route_equivalence", worst, 1e-6))

    # Width law against the streamed-classical expression (same moments).
    e = cl.from_well_state(w, tol)
    worst = max(
        abs(fe.width_qm(w, t, tol) - cl.classical_width(e, t)) for t in (0.5, 1.0, 2.0)
    )
    out.append(_bound("width_identity", worst, 1e-12))

    # Ballistic long-time limit of the scaled profile.
    grid = SpatialGrid(-4.0, 4.0, 81)
    scaled = fe.longtime_scaled_profile(w, 10.0, grid, tol)
    limit = fe.ballistic_limit_profile(w, grid, tol)
    dev = np.max(np.abs(scaled.values - limit.values)) / np.max(limit.values)
    out.append(_bound("longtime_limit", float(dev), 0.02))

    # Wigner: reality residue, marginals, negativity, shear consistency.
    psi = lambda x: np.asarray(sw.psi0(w, x))
    _, residual = wg.wigner_from_psi(psi, 0.37, 1.3, tol, with_residual=True)
    out.append(_bound("wigner_reality_residual", residual, tol.quad_abs))

    worst = 0.0
    for x in (0.0, 0.25, 0.5):
        val, _ = integrate(
            lambda k, _x=x: wg.wigner_infinite_well(_x, k, 1.0, tol),
            0.0, 4000.0,
            abs_tol=1e-9, rel_tol=1e-7,
            panel_width=lambda k: np.full_like(k, PANEL_PHASE_BUDGET / 2.0),
        )
        worst = max(worst, abs(2.0 * val - sw.psi0(w, x) ** 2))
    out.append(_bound("wigner_momentum_marginal", worst, 1e-4))

    xs = SpatialGrid(-1.0, 1.0, 201).points()
    ks = np.linspace(0.0, 8.0, 200)
    out.append(
        CheckResult(
            "wigner_negativity",
            float(np.min(wg.wigner_infinite_well(0.0, ks))) < -1e-3,
            float(np.min(wg.wigner_infinite_well(0.0, ks))),
            -1e-3,
        )
    )
    worst = max(
        abs(wg.origin_density_from_shear(t, 1.0, tol) - abs(fe.evolve_momentum(w, 0.0, t, tol)) ** 2)
        for t in (0.07, 0.14)
    )
    out.append(_bound("shear_marginal_vs_direct", worst, 1e-3))

    # Classical origin density decays monotonically below its initial value.
    r0 = cl.classical_free_density(e, 0.0, 0.0, tol)
    worst = max(cl.classical_free_density(e, 0.0, t, tol) for t in np.linspace(0.02, 0.3, 15))
    out.append(CheckResult("classical_origin_decay", worst < r0, worst, r0))
    q_peak = abs(fe.evolve_momentum(w, 0.0, 0.1336, tol)) ** 2
    out.append(CheckResult("quantum_origin_revival", q_peak > 1.0, q_peak, 1.0))

    # Classical normalization after streaming.
    grid = SpatialGrid(-40.0, 40.0, 2001)
    dens = np.array([cl.classical_free_density(e, x, 0.25, tol) for x in grid.points()])
    mass = np.trapezoid(dens, grid.points()) + cl_tail_mass(e, 40.0, 0.25)
    out.append(_bound("classical_normalization", abs(mass - 1.0), 1e-5))

    return out


def cl_tail_mass(e: cl.ClassicalEnsemble, x_max: float, t: float) -> float:
    """Mass streamed beyond |x| = x_max: the momentum tail past x_max / t."""
    from .quadrature import integrate

    val, _ = integrate(
        lambda p: np.asarray(e.rho_p(p)), x_max / t, e.p_support,
        abs_tol=1e-12, rel_tol=1e-6, initial_panels=64,
    )
    return 2.0 * float(val)


def format_report(results: list[CheckResult]) -> str:
    lines = ["status,check,value,threshold"]
    lines += [r.line() for r in results]
    n_fail = sum(not r.passed for r in results)
    lines.append(f"# {len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines) + "\n"
