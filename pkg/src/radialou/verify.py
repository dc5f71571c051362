"""Fast self-checks wired to the ``verify`` CLI subcommand.

Each check exercises one mathematical identity the library is built
around, at a grid or sample size small enough that the whole table
finishes in a few seconds. These are smoke tests for an installed
package, not the full test suite.
"""

import math
import sys

import numpy as np
from scipy.integrate import quad

from .calogero import (
    CalogeroProblem,
    eigen_solve,
    exact_eigenvalue,
    ground_state_identity_residual,
)
from .families import (
    RepulsionFamily,
    SurmiseClass,
    invariant_density,
    invariant_second_moment,
    sample_invariant,
    surmise_density,
    unit_mean_density,
)
from .fokker_planck import (
    evolve_density,
    invariant_restriction,
    l1_distance,
    stationary_flux_norm,
)
from .kernel import (
    chapman_kolmogorov_residual,
    long_time_limit_distance,
    sample_transition,
    transition_density,
    transition_second_moment,
)
from .sde import PathConfig, Scheme, simulate_ensemble
from .stats import mle_fit_family


def _checks(family, seed):
    """Yield (name, value, bound) rows; a row passes when value < bound."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))

    val, _ = quad(lambda x: invariant_density(family, x), 0.0, 12.0, limit=200)
    yield "invariant density normalization", abs(val - 1.0), 1e-10

    s = np.linspace(1e-3, 5.0, 801)
    worst = 0.0
    for cls in SurmiseClass:
        gap = np.max(np.abs(surmise_density(cls, s) - unit_mean_density(cls.family, s)))
        worst = max(worst, float(gap))
    yield "surmise vs rescaled invariant", worst, 1e-10

    val, _ = quad(
        lambda x: transition_density(family, 0.7, 1.2, x),
        0.0,
        12.0,
        limit=200,
        points=[1.2 * math.exp(-0.7)],
    )
    yield "transition density normalization", abs(val - 1.0), 1e-9

    yield (
        "long-time limit (t=20)",
        long_time_limit_distance(family, 20.0, 1.0),
        1e-6,
    )

    yield (
        "Chapman-Kolmogorov residual",
        chapman_kolmogorov_residual(family, 0.5, 0.5, 1.0, 1.0),
        1e-8,
    )

    draws = sample_transition(family, 1.0, 1.0, rng, size=20000)
    m2 = transition_second_moment(family, 1.0, 1.0)
    sigma = np.std(draws**2, ddof=1) / math.sqrt(draws.size)
    yield "sampler second moment (4 sigma)", abs(np.mean(draws**2) - m2), 4.0 * sigma

    grid = invariant_restriction(family, x_max=6.0, cells=600)
    moved = evolve_density(family, grid, 0.05, scheme="explicit")
    yield "invariant is a discrete fixed point", l1_distance(grid, moved), 1e-10
    yield "stationary flux norm", stationary_flux_norm(family, grid), 1e-6

    problem = CalogeroProblem(beta=family.beta, x_max=10.0, h=2e-3)
    numeric = eigen_solve(problem, 3)
    err = max(abs(numeric[k] - exact_eigenvalue(family.beta, k)) for k in range(3))
    yield "eigenvalues vs closed form (k<3)", err, 1e-3

    res_eig, res_drift = ground_state_identity_residual(family, h=1e-4)
    yield "ground-state eigen residual", res_eig, 1e-5
    yield "drift/potential loop residual", res_drift, 1e-5

    config = PathConfig(x0=1.0, t_final=1.0, dt=1e-3, scheme=Scheme.SEMI_IMPLICIT)
    ends, minima = simulate_ensemble(family, config, 2000, seed=seed + 1)
    yield "scheme positivity (violations)", float(np.count_nonzero(minima <= 0.0)), 0.5
    m2 = transition_second_moment(family, 1.0, 1.0)
    sigma = np.std(ends**2, ddof=1) / math.sqrt(ends.size)
    # weak bias at dt=1e-3 is far below the 4-sigma Monte Carlo band
    yield "scheme second moment (4 sigma)", abs(np.mean(ends**2) - m2), 4.0 * sigma

    fit = mle_fit_family(sample_invariant(family, rng, size=4000))
    yield "maximum-likelihood recovery of n", abs(fit.n_hat - family.n), 0.5


def run_verification(n=3.0, seed=0, out=sys.stdout):
    """Run the table for family index ``n``; return True when all pass."""
    family = RepulsionFamily(n=n)
    out.write(f"family n = {n:g}   seed = {seed}\n")
    all_ok = True
    for name, value, bound in _checks(family, seed):
        ok = value < bound
        all_ok = all_ok and ok
        out.write(
            f"  {'PASS' if ok else 'FAIL'}  {name:<40s} {value:11.3e} < {bound:.1e}\n"
        )
    out.write("verification " + ("passed" if all_ok else "FAILED") + "\n")
    return all_ok
