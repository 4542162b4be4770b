"""quench1d: sudden-quench dynamics of one-dimensional wave packets.

Closed-form trap quenches, numerically exact free spreading of well-bound
states, Wigner phase-space descriptions, and the matching classical
statistical mechanics, all in natural units (hbar = m = 1).
"""

from .classical import (
    ClassicalEnsemble,
    classical_free_density,
    classical_harmonic_density,
    classical_longtime,
    classical_width,
    from_well_state,
    gaussian_ensemble,
    thermal_oscillator_ensemble,
)
from .core import (
    HBAR,
    MASS,
    DensityMethod,
    DensityProfile,
    MomentumGrid,
    SpatialGrid,
    TimeGrid,
    Tolerances,
    UnitSystem,
    characteristic_to_density,
    integrate_density,
    rescale_density,
)
from .errors import (
    CutoffTooSmallError,
    InvalidGridError,
    InvalidParamsError,
    InvalidTimeError,
    QuadratureError,
    QuenchToolkitError,
    UnsupportedEnsembleError,
    UnsupportedLevelError,
)
from .free_evolution import (
    ballistic_limit_profile,
    density_profile,
    evolve_momentum,
    evolve_propagator,
    longtime_scaled_profile,
    norm_check,
    variance_from_density,
    width_qm,
)
from .harmonic_quench import (
    AlphaCoefficient,
    InitialLevel,
    QuenchParams,
    alpha_coefficient,
    density,
    equivalence_shift_check,
    mean_momentum,
    mean_position,
    momentum_density,
    uncertainty_product,
    variance_p,
    variance_x,
)
from .square_well import (
    WellBranch,
    WellState,
    moments,
    momentum_tail_mass,
    momentum_tail_second_moment,
    psi0,
    psi0_momentum,
)
from .wigner import (
    PhaseSpaceField,
    PhaseSpaceSource,
    factorized_approx,
    factorized_field,
    field_from_psi,
    infinite_well_field,
    origin_density_from_shear,
    origin_density_integrand,
    shear_evolve,
    wigner_from_psi,
    wigner_infinite_well,
)

__version__ = "0.1.0"
