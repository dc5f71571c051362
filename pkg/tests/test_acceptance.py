"""Release acceptance gate: ten end-to-end criteria at pinned tolerances.

Each test checks one shipping criterion with fixed seeds, prints a
single verdict line (visible under ``pytest -s``), and enforces the
runtime budget it was sized for. Tolerances here are contractual; they
must not be loosened to make a regression pass.
"""

import time

import numpy as np
from scipy.integrate import cumulative_trapezoid

from radialou.calogero import (
    CalogeroProblem,
    eigen_solve,
    exact_eigenvalue,
    ground_state_identity_residual,
)
from radialou.families import (
    RepulsionFamily,
    SurmiseClass,
    mean_of_invariant,
    surmise_density,
    unit_mean_cdf,
    unit_mean_density,
)
from radialou.fokker_planck import (
    evolve_density,
    gaussian_bump,
    invariant_restriction,
    l1_distance,
)
from radialou.kernel import (
    chapman_kolmogorov_residual,
    long_time_limit_distance,
    sample_transition,
    transition_density,
    transition_mean,
    transition_second_moment,
)
from radialou.sde import PathConfig, Scheme, simulate_ensemble
from radialou.stats import (
    ergodicity_check,
    goe_2x2_spacing_oracle,
    ks_statistic,
    mle_fit_family,
    sample_stationary_chain,
)


def _verdict(num, budget, elapsed, ok, detail):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} [{elapsed:5.1f}s] {detail}"
    print(line)
    assert ok, line
    assert elapsed < budget, f"criterion {num}: {elapsed:.1f}s over the {budget}s budget"


# ══════════════════════════════════════════════════════════════════════
#   closed-form criteria (deterministic)
# ══════════════════════════════════════════════════════════════════════


def test_criterion_01_surmise_equivalence():
    # unit-mean rescaled invariant vs the four closed-form surmises on a
    # dense grid; the quadratic GUE exponent is the -4 s^2 / pi one fixed
    # by unit mass + unit mean
    t0 = time.perf_counter()
    s = np.arange(0.0, 5.0 + 1e-9, 1e-3)
    worst = 0.0
    for sc in SurmiseClass:
        gap = float(np.max(np.abs(unit_mean_density(sc.family, s) - surmise_density(sc, s))))
        worst = max(worst, gap)
    _verdict(
        1,
        1.0,
        time.perf_counter() - t0,
        worst < 1e-10,
        f"surmise equivalence: max pointwise gap {worst:.2e} < 1e-10 "
        "(n = 2, 3, 4, 5 vs GOE/GUE/Ginibre/GSE, s in [0, 5])",
    )


def test_criterion_02_kernel_long_time_limit():
    t0 = time.perf_counter()
    worst = 0.0
    for n in (2.0, 3.0, 4.0, 5.0):
        fam = RepulsionFamily(n=n)
        for y in (0.0, 0.5, 1.0, 3.0):
            worst = max(worst, long_time_limit_distance(fam, 20.0, y))
    _verdict(
        2,
        5.0,
        time.perf_counter() - t0,
        worst < 1e-6,
        f"long-time limit: sup distance to invariant at t = 20 is {worst:.2e} < 1e-6 "
        "over n in {2..5} x y in {0, 0.5, 1, 3}",
    )


def test_criterion_03_chapman_kolmogorov():
    # the kernel module's n set crossed with its two (s, t, y, x) queries
    t0 = time.perf_counter()
    worst = 0.0
    for n in (2.0, 3.0, 4.0, 5.0, 7.0):
        fam = RepulsionFamily(n=n)
        for s, t, y, x in ((0.5, 0.5, 1.0, 1.0), (0.3, 1.1, 0.5, 2.0)):
            worst = max(worst, chapman_kolmogorov_residual(fam, s, t, y, x))
    _verdict(
        3,
        30.0,
        time.perf_counter() - t0,
        worst < 1e-8,
        f"semigroup property: max residual {worst:.2e} < 1e-8 on the 5 x 2 query matrix",
    )


# ══════════════════════════════════════════════════════════════════════
#   sampling criteria (fixed seeds)
# ══════════════════════════════════════════════════════════════════════


def test_criterion_04_exact_sampler():
    # KS against the trapezoid-integrated density CDF plus the closed-form
    # second moment, four representative (n, t, y) queries
    t0 = time.perf_counter()
    queries = [(2.0, 0.5, 1.0), (3.0, 1.0, 0.0), (4.0, 0.2, 2.0), (5.0, 2.0, 0.5)]
    root = np.random.SeedSequence(12)
    all_pass = True
    worst_stat = 0.0
    worst_z = 0.0
    for child, (n, t, y) in zip(root.spawn(len(queries)), queries):
        fam = RepulsionFamily(n=n)
        draws = sample_transition(fam, t, y, np.random.default_rng(child), size=100_000)
        hi = max(8.0, float(draws.max()) * 1.05)
        xs = np.linspace(0.0, hi, 4001)
        cum = cumulative_trapezoid(transition_density(fam, t, y, xs), xs, initial=0.0)
        cum /= cum[-1]
        ks = ks_statistic(draws, lambda v: np.interp(v, xs, cum))
        all_pass = all_pass and ks.pass_at_1pct is True
        worst_stat = max(worst_stat, ks.statistic)
        sq = draws**2
        se = float(sq.std(ddof=1)) / np.sqrt(sq.size)
        worst_z = max(worst_z, abs(float(sq.mean()) - transition_second_moment(fam, t, y)) / se)
    _verdict(
        4,
        30.0,
        time.perf_counter() - t0,
        all_pass and worst_z < 3.0,
        f"exact sampler: KS at 1% passes all 4 queries (max stat {worst_stat:.4f}, "
        f"n = 1e5) and second moments within {worst_z:.2f} sigma < 3",
    )


def test_criterion_05_sde_weak_accuracy():
    t0 = time.perf_counter()
    fam = RepulsionFamily(n=3.0)
    config = PathConfig(x0=1.0, t_final=1.0, dt=1e-3, scheme=Scheme.SEMI_IMPLICIT)
    endpoints, minima = simulate_ensemble(fam, config, 10_000, seed=22)
    z_mean = abs(float(endpoints.mean()) - transition_mean(fam, 1.0, 1.0)) / (
        float(endpoints.std(ddof=1)) / np.sqrt(endpoints.size)
    )
    sq = endpoints**2
    z_m2 = abs(float(sq.mean()) - transition_second_moment(fam, 1.0, 1.0)) / (
        float(sq.std(ddof=1)) / np.sqrt(sq.size)
    )
    positive = float(minima.min()) > 0.0
    _verdict(
        5,
        60.0,
        time.perf_counter() - t0,
        z_mean < 3.0 and z_m2 < 3.0 and positive,
        f"semi-implicit weak accuracy: endpoint mean {z_mean:.2f} sigma, second moment "
        f"{z_m2:.2f} sigma (both < 3, n = 3, dt = 1e-3, 1e4 paths); "
        f"path minimum {float(minima.min()):.4f} > 0 on every step",
    )


# ══════════════════════════════════════════════════════════════════════
#   PDE and spectral criteria (deterministic)
# ══════════════════════════════════════════════════════════════════════


def test_criterion_06_fokker_planck_relaxation():
    # h = 2e-3 (3000 cells on [0, 6]); backward Euler to t = 10, and the
    # invariant restriction held fixed by both schemes
    t0 = time.perf_counter()
    worst_l1 = 0.0
    worst_fp = 0.0
    for n in (2.0, 3.0, 5.0):
        fam = RepulsionFamily(n=n)
        ref = invariant_restriction(fam)
        final = evolve_density(fam, gaussian_bump(1.0, 0.05), 10.0, scheme="implicit")
        worst_l1 = max(worst_l1, l1_distance(final, ref))
        held_e = evolve_density(fam, ref, 1e-3, scheme="explicit")
        held_i = evolve_density(fam, ref, 0.05, dt=1e-3, scheme="implicit")
        worst_fp = max(
            worst_fp,
            float(np.max(np.abs(held_e.values - ref.values))),
            float(np.max(np.abs(held_i.values - ref.values))),
        )
    _verdict(
        6,
        60.0,
        time.perf_counter() - t0,
        worst_l1 < 1e-3 and worst_fp < 1e-8,
        f"relaxation from a bump at x = 1: L1 distance {worst_l1:.2e} < 1e-3 at t = 10; "
        f"invariant restriction is a fixed point to {worst_fp:.2e} < 1e-8 (n in {{2, 3, 5}})",
    )


def test_criterion_07_calogero_spectrum():
    t0 = time.perf_counter()
    worst = 0.0
    worst_ground = 0.0
    for beta in (1.0, 2.0, 3.0, 4.0):
        levels = eigen_solve(CalogeroProblem(beta=beta), 6)
        exact = np.array([exact_eigenvalue(beta, k) for k in range(6)])
        worst = max(worst, float(np.max(np.abs(levels - exact))))
        worst_ground = max(worst_ground, abs(float(levels[0]) - (beta + 1.0) / 2.0))
    _verdict(
        7,
        30.0,
        time.perf_counter() - t0,
        worst < 1e-3,
        f"oscillator spectrum: max eigenvalue error {worst:.2e} < 1e-3 for n <= 5, "
        f"beta in {{1..4}}; ground state hits (beta + 1)/2 within {worst_ground:.2e}",
    )


def test_criterion_08_ground_state_closure():
    t0 = time.perf_counter()
    worst_h = 0.0
    worst_d = 0.0
    for n in (2.0, 3.0, 4.0, 5.0):
        res_h, res_d = ground_state_identity_residual(RepulsionFamily(n=n))
        worst_h = max(worst_h, res_h)
        worst_d = max(worst_d, res_d)
    _verdict(
        8,
        10.0,
        time.perf_counter() - t0,
        worst_h < 1e-5 and worst_d < 1e-5,
        f"ground-state closure: (H - E_0) sqrt(rho) residual {worst_h:.2e} and "
        f"density/drift loop {worst_d:.2e}, both < 1e-5 for n in {{2..5}}",
    )


# ══════════════════════════════════════════════════════════════════════
#   ergodicity and the brute-force ensemble oracle (fixed seeds)
# ══════════════════════════════════════════════════════════════════════


def test_criterion_09_single_chain_ergodicity():
    # one stationary chain per family; time averages of x and x^2 against
    # the invariant-law values, batch-means adjusted errors
    t0 = time.perf_counter()
    root = np.random.SeedSequence(31)
    worst_sigma = 0.0
    worst_ref = 0.0
    for child, n in zip(root.spawn(3), (2.0, 3.0, 5.0)):
        fam = RepulsionFamily(n=n)
        chain = sample_stationary_chain(fam, 100_000, 0.5, np.random.default_rng(child))
        rep_x = ergodicity_check(fam, chain, lambda v: v)
        rep_x2 = ergodicity_check(fam, chain, np.square)
        worst_sigma = max(worst_sigma, rep_x.sigmas, rep_x2.sigmas)
        worst_ref = max(
            worst_ref,
            abs(rep_x.ensemble_average - mean_of_invariant(fam)),
            abs(rep_x2.ensemble_average - n / 2.0),
        )
    _verdict(
        9,
        60.0,
        time.perf_counter() - t0,
        worst_sigma < 3.0 and worst_ref < 1e-9,
        f"single-chain ergodicity: x and x^2 time averages within {worst_sigma:.2f} "
        f"adjusted sigma < 3 of the closed-form ensemble values (1e5 steps, lag 0.5, "
        f"n in {{2, 3, 5}}; reference quadrature off by {worst_ref:.1e})",
    )


def test_criterion_10_goe_ensemble_oracle():
    t0 = time.perf_counter()
    fam = RepulsionFamily(n=2.0)
    sample = goe_2x2_spacing_oracle(100_000, np.random.default_rng(41))
    ks = ks_statistic(sample.values, lambda s: unit_mean_cdf(fam, s))
    fit = mle_fit_family(sample.values)
    _verdict(
        10,
        30.0,
        time.perf_counter() - t0,
        ks.pass_at_1pct is True and abs(fit.n_hat - 2.0) <= 0.1,
        f"2x2 ensemble oracle: 1e5 spacings pass KS at 1% vs the unit-mean n = 2 law "
        f"(stat {ks.statistic:.4f}) and the fitter returns n_hat = {fit.n_hat:.3f} in 2 +- 0.1",
    )
