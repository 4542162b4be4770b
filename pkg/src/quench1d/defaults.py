"""Frozen default parameters of the bundled figure commands.

Tests and documentation both read these, so the figure CSVs have a single
source of truth.  Times are in units of m a^2 / hbar for the well figures and
in units of 1/omega_f for the trap-quench figure.
"""

import math

# Trap quench: time axis omega_f * t over two periods.  The point count keeps
# omega_f t = pi/4 (where the uncertainty product peaks) exactly on the grid.
FIG1 = {
    "omega_ratio": 0.5,        # omega_f / omega_i
    "theta_max": 4.0 * math.pi,
    "n_theta": 1025,
}

# Spreading density profiles at four snapshots.
FIG2 = {
    "k0a": 0.5 * math.pi,
    "xmax": 6.0,
    "nx": 1201,
    "times": (0.0, 0.07, 0.14, 0.28),
}

# Origin density against time for three well depths.
FIG3 = {
    "k0a_values": (0.5 * math.pi, math.pi / 2.5, math.pi / 3.0),
    "t_max": 0.3,
    "nt": 151,
}

# Quantum vs streamed-classical origin/offset densities against time.
FIG4 = {
    "k0a": 0.5 * math.pi,
    "x_values": (0.0, 1.0, 2.0),
    "t_max": 3.0,
    "nt": 121,
}

# Ballistic rescaling t * rho(u t, t) and its momentum-distribution limit.
FIG5 = {
    "k0a": 0.5 * math.pi,
    "umax": 6.0,
    "nu": 1201,
    "times": (1.0, 4.0, 10.0),
}

# Infinite-well Wigner slices and the factorized (nonnegative) stand-in.
FIG6 = {
    "x_values": (0.0, 0.5),
    "akmax": 8.0,
    "nk": 401,
}

# Sheared-Wigner integrand for the origin density at two times.
FIG7 = {
    "times": (0.14, 0.07),
    "akmax": 16.0,
    "nk": 401,
}

DENSITY = {"k0a": 0.5 * math.pi, "t": 0.14, "xmax": 6.0, "nx": 1201}
WIGNER = {"xmax": 1.0, "nx": 81, "akmax": 8.0, "nk": 161}
CLASSICAL = {"k0a": 0.5 * math.pi, "t": 0.14, "xmax": 6.0, "nx": 1201}
