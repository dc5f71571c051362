"""Radial Ornstein-Uhlenbeck diffusions and level-spacing statistics.

A family of diffusions on the half line, indexed by a real n > 1, ties
together the classical level-spacing distributions (its invariant laws),
an exact transition kernel, path simulation, a Fokker-Planck solver and
a spectral cross-check through an associated radial oscillator. See the
README for the map of the package.
"""

from .backend import backend_name
from .calogero import (
    CalogeroProblem,
    calogero_potential,
    eigen_solve,
    exact_eigenvalue,
    ground_state_identity_residual,
    potential_from_drift,
)
from .errors import (
    DomainError,
    NumericalError,
    RadialOUError,
    StabilityError,
    ValidationError,
)
from .families import (
    RepulsionFamily,
    SurmiseClass,
    drift_from_density,
    forward_drift,
    invariant_cdf,
    invariant_density,
    invariant_second_moment,
    mean_of_invariant,
    sample_invariant,
    surmise_density,
    unit_mean_cdf,
    unit_mean_density,
)
from .fokker_planck import (
    DensityGrid,
    evolve_density,
    gaussian_bump,
    grid_from_callable,
    invariant_restriction,
    kernel_propagated_density,
    l1_distance,
    stable_step,
    stationary_flux_norm,
)
from .kernel import (
    chapman_kolmogorov_residual,
    long_time_limit_distance,
    sample_transition,
    transition_density,
    transition_log_density,
    transition_mean,
    transition_second_moment,
)
from .sde import (
    PathConfig,
    SamplePath,
    Scheme,
    WeakErrorPoint,
    simulate_ensemble,
    simulate_path,
    weak_error_curve,
)
from .special import ln_gamma, log_bessel_i, regularized_lower_gamma
from .stats import (
    ErgodicityReport,
    FitResult,
    KSResult,
    LevelLadder,
    SpacingSample,
    ergodicity_check,
    goe_2x2_spacing_oracle,
    ks_critical_value,
    ks_statistic,
    ladder_from_spacings,
    mle_fit_family,
    read_levels,
    sample_stationary_chain,
    spacings_from_levels,
    write_levels,
)
from .verify import run_verification

__version__ = "0.1.0"
