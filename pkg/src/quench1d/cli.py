"""Command-line front end: figure data as CSV plus rendered PNG companions.

Every figure command writes a deterministic CSV (12 significant digits,
header row naming each column in the figure's axes) and, unless ``--no-plot``
is given, a PNG rendering next to it.  ``report`` runs the cross-route
property battery and exits nonzero if any check fails.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import classical as cl
from . import defaults
from . import free_evolution as fe
from . import harmonic_quench as hq
from . import report as report_mod
from . import square_well as sw
from . import wigner as wg
from .core import DensityMethod, SpatialGrid, Tolerances
from .errors import QuenchToolkitError


def _write_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    rows = len(columns[0])
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(f"{col[i]:.12g}" for col in columns) + "\n")


def _render_lines(path: Path, header: list[str], columns: list[np.ndarray],
                  title: str, logy: bool = False) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    x = columns[0]
    for name, col in zip(header[1:], columns[1:]):
        ax.plot(x, col, label=name, lw=1.2)
    ax.set_xlabel(header[0])
    ax.set_title(title)
    if logy:
        ax.set_yscale("log")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _well_from_k0a(k0a: float) -> sw.WellState:
    if k0a >= 0.5 * math.pi - 1e-12:
        return sw.WellState.infinite()
    return sw.WellState.finite(k0a)


def _out_paths(args, default_stem: str) -> tuple[Path, Path]:
    out = Path(args.out) if args.out else Path(f"{default_stem}.csv")
    return out, out.with_suffix(".png")


def _emit(args, header, columns, title, default_stem, logy=False) -> None:
    csv_path, png_path = _out_paths(args, default_stem)
    _write_csv(csv_path, header, columns)
    print(f"wrote {csv_path}")
    if not args.no_plot:
        _render_lines(png_path, header, columns, title, logy)
        print(f"wrote {png_path}")


def cmd_fig1(args) -> int:
    ratio = args.omega_ratio
    p = hq.QuenchParams(1.0, ratio, force=ratio**2)  # force chosen so a_F = 1
    thetas = np.linspace(0.0, defaults.FIG1["theta_max"], defaults.FIG1["n_theta"])
    dx0 = math.sqrt(hq.variance_x(p, 0.0))
    dp0 = math.sqrt(hq.variance_p(p, 0.0))
    mean = np.empty_like(thetas)
    dx = np.empty_like(thetas)
    dp = np.empty_like(thetas)
    prod = np.empty_like(thetas)
    for i, th in enumerate(thetas):
        t = th / ratio
        mean[i] = hq.mean_position(p, t) / p.shift
        dx[i] = math.sqrt(hq.variance_x(p, t)) / dx0
        dp[i] = math.sqrt(hq.variance_p(p, t)) / dp0
        prod[i] = 2.0 * hq.uncertainty_product(p, t)
    _emit(
        args,
        ["omega_f_t", "mean_over_aF", "dx_over_dx0", "dp_over_dp0", "uncertainty_2dxdp"],
        [thetas, mean, dx, dp, prod],
        f"trap quench, omega_f/omega_i = {ratio:g}",
        "fig1",
    )
    return 0


def cmd_fig2(args) -> int:
    w = _well_from_k0a(args.k0a)
    tol = Tolerances()
    grid = SpatialGrid(-args.xmax, args.xmax, args.nx)
    header = ["x_over_a"]
    cols = [grid.points()]
    for t in defaults.FIG2["times"]:
        prof = fe.density_profile(w, t, grid, DensityMethod.MOMENTUM_INTEGRAL, tol)
        header.append(f"a_rho_t{t:g}")
        cols.append(prof.values)
    _emit(args, header, cols, f"free spreading, k0 a = {args.k0a:g}", "fig2")
    return 0


def cmd_fig3(args) -> int:
    tol = Tolerances()
    ts = np.linspace(0.0, defaults.FIG3["t_max"], defaults.FIG3["nt"])
    header = ["t_over_t0", "a_rho_pi2", "a_rho_pi2.5", "a_rho_pi3"]
    cols = [ts]
    for k0a in defaults.FIG3["k0a_values"]:
        w = _well_from_k0a(k0a)
        vals = np.array(
            [abs(fe.evolve_momentum(w, 0.0, t, tol)) ** 2 for t in ts]
        )
        cols.append(vals)
    _emit(args, header, cols, "origin density vs time", "fig3")
    return 0


def cmd_fig4(args) -> int:
    tol = Tolerances()
    w = _well_from_k0a(args.k0a)
    e = cl.from_well_state(w, tol)
    ts = np.linspace(0.0, defaults.FIG4["t_max"], defaults.FIG4["nt"])
    header = ["t_over_t0"]
    cols = [ts]
    for x in defaults.FIG4["x_values"]:
        qm = np.array([abs(fe.evolve_momentum(w, x, t, tol)) ** 2 for t in ts])
        clv = np.array([cl.classical_free_density(e, x, t, tol) for t in ts])
        header += [f"a_rho_qm_x{x:g}", f"a_rho_cl_x{x:g}"]
        cols += [qm, clv]
    _emit(args, header, cols, f"quantum vs classical, k0 a = {args.k0a:g}", "fig4")
    return 0


def cmd_fig5(args) -> int:
    tol = Tolerances()
    w = _well_from_k0a(args.k0a)
    grid = SpatialGrid(-args.xmax, args.xmax, args.nx)
    header = ["u"]
    cols = [grid.points()]
    for t in defaults.FIG5["times"]:
        prof = fe.longtime_scaled_profile(w, t, grid, tol)
        header.append(f"t_rho_t{t:g}")
        cols.append(prof.values)
    header.append("ballistic_limit")
    cols.append(fe.ballistic_limit_profile(w, grid, tol).values)
    _emit(args, header, cols, "ballistic rescaling of the spreading packet", "fig5")
    return 0


def cmd_fig6(args) -> int:
    tol = Tolerances()
    w = sw.WellState.infinite()
    ks = np.linspace(0.0, defaults.FIG6["akmax"], defaults.FIG6["nk"])
    header = ["ak"]
    cols = [ks]
    for x in defaults.FIG6["x_values"]:
        header.append(f"hbar_W_x{x:g}")
        cols.append(wg.wigner_infinite_well(x, ks, 1.0, tol))
    header.append("hbar_factorized_x0")
    cols.append(np.asarray(wg.factorized_approx(w, 0.0, ks, tol)))
    _emit(args, header, cols, "infinite-well Wigner slices", "fig6")
    return 0


def cmd_fig7(args) -> int:
    tol = Tolerances()
    ks = np.linspace(0.0, defaults.FIG7["akmax"], defaults.FIG7["nk"])
    header = ["ak"]
    cols = [ks]
    for t in defaults.FIG7["times"]:
        header.append(f"integrand_t{t:g}")
        cols.append(np.asarray(wg.origin_density_integrand(t, ks, 1.0, tol)))
    _emit(args, header, cols, "sheared Wigner integrand for rho(0, t)", "fig7")
    return 0


def cmd_density(args) -> int:
    tol = Tolerances()
    w = _well_from_k0a(args.k0a)
    grid = SpatialGrid(-args.xmax, args.xmax, args.nx)
    prof = fe.density_profile(w, args.t, grid, DensityMethod.MOMENTUM_INTEGRAL, tol)
    _emit(
        args, ["x_over_a", "a_rho"], [grid.points(), prof.values],
        f"free density at t = {args.t:g}", "density",
    )
    return 0


def cmd_classical(args) -> int:
    tol = Tolerances()
    w = _well_from_k0a(args.k0a)
    e = cl.from_well_state(w, tol)
    grid = SpatialGrid(-args.xmax, args.xmax, args.nx)
    vals = np.array(
        [cl.classical_free_density(e, x, args.t, tol) for x in grid.points()]
    )
    _emit(
        args, ["x_over_a", "a_rho_cl"], [grid.points(), vals],
        f"streamed classical density at t = {args.t:g}", "classical",
    )
    return 0


def cmd_wigner(args) -> int:
    tol = Tolerances()
    xs = np.linspace(-defaults.WIGNER["xmax"], defaults.WIGNER["xmax"], defaults.WIGNER["nx"])
    ks = np.linspace(-args.akmax, args.akmax, defaults.WIGNER["nk"])
    X, K = np.meshgrid(xs, ks, indexing="ij")
    W = wg.wigner_infinite_well(X - K * args.t, K, 1.0, tol)
    header = ["x_over_a", "ak", "hbar_W"]
    cols = [X.ravel(), K.ravel(), W.ravel()]
    csv_path, png_path = _out_paths(args, "wigner")
    _write_csv(csv_path, header, cols)
    print(f"wrote {csv_path}")
    if not args.no_plot:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6.0, 4.5))
        lim = float(np.max(np.abs(W)))
        pcm = ax.pcolormesh(xs, ks, W.T, cmap="RdBu_r", vmin=-lim, vmax=lim)
        fig.colorbar(pcm, ax=ax, label="hbar W")
        ax.set_xlabel("x / a")
        ax.set_ylabel("a k")
        ax.set_title(f"infinite-well Wigner function, t = {args.t:g}")
        fig.tight_layout()
        fig.savefig(png_path, dpi=150)
        plt.close(fig)
        print(f"wrote {png_path}")
    return 0


def cmd_moments(args) -> int:
    tol = Tolerances()
    states = [
        ("infinite", sw.WellState.infinite()),
        (f"finite_k0a_{args.k0a:g}", _well_from_k0a(min(args.k0a, math.pi / 2.5))),
        ("delta_kappa_1", sw.WellState.delta(1.0)),
    ]
    names, x2s, p2s = [], [], []
    for name, w in states:
        x2, p2 = sw.moments(w, tol)
        names.append(name)
        x2s.append(x2)
        p2s.append(p2)
    csv_path, _ = _out_paths(args, "moments")
    with open(csv_path, "w", newline="") as fh:
        fh.write("state,x2,p2\n")
        for name, x2, p2 in zip(names, x2s, p2s):
            fh.write(f"{name},{x2:.12g},{p2:.12g}\n")
    print(f"wrote {csv_path}")
    return 0


def cmd_report(args) -> int:
    results = report_mod.run_checks(Tolerances())
    text = report_mod.format_report(results)
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quench1d",
        description="Quench dynamics of 1D wave packets: figure data (CSV + PNG) "
        "and a cross-route property report.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, k0a=True, t=False, grid=False, akmax=False):
        sp.add_argument("--out", type=str, default=None, help="output CSV path")
        sp.add_argument("--no-plot", action="store_true", help="skip the PNG rendering")
        if k0a:
            sp.add_argument("--k0a", type=float, default=0.5 * math.pi,
                            help="well depth parameter k0*a in (0, pi/2]; pi/2 is the infinite well")
        if t:
            sp.add_argument("--t", type=float, default=defaults.DENSITY["t"],
                            help="time in units of m a^2 / hbar")
        if grid:
            sp.add_argument("--xmax", type=float, default=defaults.DENSITY["xmax"],
                            help="half-extent of the position grid")
            sp.add_argument("--nx", type=int, default=defaults.DENSITY["nx"],
                            help="number of grid points")
        if akmax:
            sp.add_argument("--akmax", type=float, default=defaults.WIGNER["akmax"],
                            help="half-extent of the wavenumber grid")

    sp = sub.add_parser("fig1", help="trap-quench means, widths, uncertainty product")
    sp.add_argument("--omega-ratio", type=float, default=defaults.FIG1["omega_ratio"],
                    help="frequency ratio omega_f/omega_i")
    add_common(sp, k0a=False)
    sp.set_defaults(fn=cmd_fig1)

    sp = sub.add_parser("fig2", help="free-spreading density profiles at four times")
    add_common(sp, grid=True)
    sp.set_defaults(fn=cmd_fig2, xmax=defaults.FIG2["xmax"], nx=defaults.FIG2["nx"])

    sp = sub.add_parser("fig3", help="origin density vs time for three well depths")
    add_common(sp, k0a=False)
    sp.set_defaults(fn=cmd_fig3)

    sp = sub.add_parser("fig4", help="quantum vs streamed-classical densities vs time")
    add_common(sp)
    sp.set_defaults(fn=cmd_fig4)

    sp = sub.add_parser("fig5", help="ballistic rescaling t*rho(u t, t) and its limit")
    add_common(sp, grid=True)
    sp.set_defaults(fn=cmd_fig5, xmax=defaults.FIG5["umax"], nx=defaults.FIG5["nu"])

    sp = sub.add_parser("fig6", help="infinite-well Wigner slices vs the factorized form")
    add_common(sp, k0a=False)
    sp.set_defaults(fn=cmd_fig6)

    sp = sub.add_parser("fig7", help="sheared Wigner integrand for the origin density")
    add_common(sp, k0a=False)
    sp.set_defaults(fn=cmd_fig7)

    sp = sub.add_parser("density", help="free density profile at one time")
    add_common(sp, t=True, grid=True)
    sp.set_defaults(fn=cmd_density)

    sp = sub.add_parser("classical", help="streamed classical density at one time")
    add_common(sp, t=True, grid=True)
    sp.set_defaults(fn=cmd_classical)

    sp = sub.add_parser("wigner", help="infinite-well Wigner field (sheared if t > 0)")
    add_common(sp, k0a=False, t=True, akmax=True)
    sp.set_defaults(fn=cmd_wigner, t=0.0)

    sp = sub.add_parser("moments", help="second moments of the three well branches")
    add_common(sp)
    sp.set_defaults(fn=cmd_moments)

    sp = sub.add_parser("report", help="run the cross-route property battery")
    sp.add_argument("--out", type=str, default=None, help="optional report CSV path")
    sp.set_defaults(fn=cmd_report)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except QuenchToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
