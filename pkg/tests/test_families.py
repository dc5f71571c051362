"""Static probability layer: invariant densities, surmises, drifts.

Frozen constants below were computed once with mpmath at 30 digits.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from radialou.errors import DomainError, NumericalError, ValidationError
from radialou.families import (
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
from radialou.stats import ks_critical_value, ks_statistic

FAMILIES = [2.0, 2.5, 3.0, 4.0, 5.0, 7.0]

# mean_of_invariant = Gamma((n+1)/2)/Gamma(n/2), mpmath
FROZEN_MEANS = {
    2.0: 0.8862269254527580,   # sqrt(pi)/2
    3.0: 1.1283791670955126,   # 2/sqrt(pi)
    4.0: 1.3293403881791370,   # 3 sqrt(pi)/4
    5.0: 1.5045055561273501,   # 8/(3 sqrt(pi))
}

# surmise densities at s = 1, mpmath
FROZEN_SURMISE_AT_1 = {
    "GOE": 0.7161859363405692,      # (pi/2) e^{-pi/4}
    "GUE": 0.9075892109166814,      # (32/pi^2) e^{-4/pi}
    "Ginibre": 1.0668739120449532,  # (3^4 pi^2 / 2^7) e^{-9 pi/16}
    "GSE": 1.2059273935074125,      # (2^18/(3^6 pi^3)) e^{-64/(9 pi)}
}


# ── construction and validation ───────────────────────────────────────


def test_family_fields():
    fam = RepulsionFamily(n=3.0)
    assert fam.beta == 2.0
    assert fam.diffusion == 0.5
    assert RepulsionFamily.from_beta(2.0).n == 3.0


def test_family_admits_ou_reduction_but_not_less():
    assert RepulsionFamily(n=1.0).beta == 0.0
    with pytest.raises(DomainError):
        RepulsionFamily(n=0.5)
    with pytest.raises(DomainError):
        RepulsionFamily(n=2.0, diffusion=0.0)


def test_density_ops_require_n_above_one():
    fam = RepulsionFamily(n=1.0)
    with pytest.raises(DomainError):
        invariant_density(fam, 1.0)
    with pytest.raises(DomainError):
        mean_of_invariant(fam)


def test_surmise_tag_mapping():
    assert SurmiseClass.GOE.family.n == 2.0
    assert SurmiseClass.GUE.family.n == 3.0
    assert SurmiseClass.GINIBRE.family.n == 4.0
    assert SurmiseClass.GSE.family.n == 5.0
    for cls in SurmiseClass:
        assert SurmiseClass.from_tag(cls.tag) is cls
    assert SurmiseClass.from_tag("Ginibre") is SurmiseClass.GINIBRE
    with pytest.raises(DomainError):
        SurmiseClass.from_tag("GINIBRE")  # tags are case-exact


# ── invariant density, cdf, moments ───────────────────────────────────


@pytest.mark.parametrize("n", FAMILIES)
def test_invariant_density_normalization(n):
    fam = RepulsionFamily(n=n)
    val, err = quad(lambda x: invariant_density(fam, x), 0.0, np.inf, limit=200)
    assert abs(val - 1.0) < 1e-10


def test_invariant_density_frozen_points():
    assert invariant_density(RepulsionFamily(n=2.0), 1.0) == pytest.approx(
        2.0 * math.exp(-1.0), abs=1e-15
    )
    assert invariant_density(RepulsionFamily(n=4.0), 1.0) == pytest.approx(
        2.0 * math.exp(-1.0), abs=1e-15
    )
    assert invariant_density(RepulsionFamily(n=5.0), 1.0) == pytest.approx(
        0.5534766632274596, abs=1e-15
    )
    for n in FAMILIES:
        assert invariant_density(RepulsionFamily(n=n), 0.0) == 0.0


def test_invariant_density_domain():
    with pytest.raises(DomainError):
        invariant_density(RepulsionFamily(n=3.0), -0.1)


@pytest.mark.parametrize("n", FAMILIES)
def test_invariant_cdf_against_quadrature(n):
    fam = RepulsionFamily(n=n)
    for x in (0.3, 0.8, 1.5, 3.0):
        ref, _ = quad(lambda u: invariant_density(fam, u), 0.0, x, limit=200)
        # tolerance is what quad can deliver near the x^{n-1} cusp at 0
        assert invariant_cdf(fam, x) == pytest.approx(ref, abs=1e-9)
    assert invariant_cdf(fam, 0.0) == 0.0
    assert invariant_cdf(fam, 40.0) == 1.0


def test_invariant_cdf_density_consistency():
    # numerical derivative of the CDF reproduces the density
    fam = RepulsionFamily(n=3.5)
    h = 1e-6
    for x in (0.4, 1.0, 2.2):
        deriv = (invariant_cdf(fam, x + h) - invariant_cdf(fam, x - h)) / (2.0 * h)
        assert deriv == pytest.approx(invariant_density(fam, x), abs=1e-6)


@pytest.mark.parametrize("n, expected", sorted(FROZEN_MEANS.items()))
def test_mean_of_invariant_frozen(n, expected):
    assert mean_of_invariant(RepulsionFamily(n=n)) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("n", FAMILIES)
def test_moments_against_quadrature(n):
    fam = RepulsionFamily(n=n)
    m1, _ = quad(lambda x: x * invariant_density(fam, x), 0.0, np.inf, limit=200)
    m2, _ = quad(lambda x: x * x * invariant_density(fam, x), 0.0, np.inf, limit=200)
    assert mean_of_invariant(fam) == pytest.approx(m1, abs=1e-11)
    assert invariant_second_moment(fam) == pytest.approx(m2, abs=1e-11)
    assert invariant_second_moment(fam) == pytest.approx(n / 2.0, rel=1e-15)


# ── unit-mean rescaling and the surmises ──────────────────────────────


def test_unit_mean_density_has_unit_mean():
    for n in FAMILIES:
        fam = RepulsionFamily(n=n)
        m, _ = quad(lambda s: s * unit_mean_density(fam, s), 0.0, np.inf, limit=200)
        assert m == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("tag, expected", sorted(FROZEN_SURMISE_AT_1.items()))
def test_surmise_frozen_values(tag, expected):
    cls = SurmiseClass.from_tag(tag)
    assert surmise_density(cls, 1.0) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("cls", list(SurmiseClass))
def test_surmise_equals_rescaled_invariant(cls):
    # the central identification: closed-form surmise == unit-mean rescale,
    # via two independent code paths
    s = np.arange(0.0, 5.0 + 5e-4, 1e-3)
    gap = np.abs(surmise_density(cls, s) - unit_mean_density(cls.family, s))
    assert np.max(gap) < 1e-10


def test_surmise_zero_and_domain():
    for cls in SurmiseClass:
        assert surmise_density(cls, 0.0) == 0.0
    with pytest.raises(DomainError):
        surmise_density(SurmiseClass.GOE, -0.2)


def test_unit_mean_cdf_matches_rescaled_cdf():
    fam = RepulsionFamily(n=3.0)
    m = mean_of_invariant(fam)
    for s in (0.3, 1.0, 2.5):
        assert unit_mean_cdf(fam, s) == pytest.approx(invariant_cdf(fam, m * s), rel=1e-13)


# ── exact stationary sampling ─────────────────────────────────────────


def test_sample_invariant_ks():
    fam = RepulsionFamily(n=3.0)
    rng = np.random.default_rng(2024)
    draws = sample_invariant(fam, rng, size=100_000)
    stat = ks_statistic(draws, lambda x: invariant_cdf(fam, x)).statistic
    assert stat < ks_critical_value(draws.size)


def test_sample_invariant_moments():
    rng = np.random.default_rng(7)
    for n in (2.0, 3.0, 5.0):
        fam = RepulsionFamily(n=n)
        draws = sample_invariant(fam, rng, size=200_000)
        se1 = draws.std(ddof=1) / math.sqrt(draws.size)
        se2 = (draws**2).std(ddof=1) / math.sqrt(draws.size)
        assert abs(draws.mean() - mean_of_invariant(fam)) < 3.0 * se1
        assert abs((draws**2).mean() - n / 2.0) < 3.0 * se2


def test_sample_invariant_scalar_mode():
    rng = np.random.default_rng(0)
    val = sample_invariant(RepulsionFamily(n=2.0), rng)
    assert isinstance(val, float) and val > 0.0


# ── drift family ──────────────────────────────────────────────────────


def test_forward_drift_values():
    assert forward_drift(RepulsionFamily(n=3.0), 1.0) == 0.0
    assert forward_drift(RepulsionFamily(n=2.0), 2.0) == pytest.approx(-1.75)
    assert forward_drift(RepulsionFamily(n=5.0), 1.0) == pytest.approx(1.0)
    # beta = 0: plain linear pull, no singular term
    assert forward_drift(RepulsionFamily(n=1.0), 0.7) == pytest.approx(-0.7)


def test_forward_drift_domain():
    with pytest.raises(DomainError):
        forward_drift(RepulsionFamily(n=3.0), 0.0)


@pytest.mark.parametrize("n", [2.0, 3.0, 4.0, 5.0])
def test_drift_from_density_closes_loop(n):
    fam = RepulsionFamily(n=n)
    dens = lambda u: invariant_density(fam, u)
    for x in np.linspace(0.2, 4.0, 39):
        got = drift_from_density(dens, float(x))
        assert abs(got - forward_drift(fam, float(x))) < 1e-6


def test_drift_from_density_gaussian_gives_linear_pull():
    # e^{-x^2} is the stationary law of the linear pull -x at D = 1/2
    # (stationary variance 1/2); normalization is irrelevant to the map
    dens = lambda u: math.exp(-u * u)
    for x in (0.5, 1.0, 2.0):
        assert drift_from_density(dens, x) == pytest.approx(-x, abs=1e-7)


def test_drift_from_density_errors():
    with pytest.raises(DomainError):
        drift_from_density(lambda u: 1.0, 5e-6)  # stencil would cross zero
    with pytest.raises(NumericalError):
        drift_from_density(lambda u: -1.0, 1.0)


def test_stationary_flux_vanishes():
    # (1/2) rho' - b rho == 0 for the invariant pair, via finite differences;
    # h balances O(h^2) truncation against eps/h cancellation under 1e-10
    h = 3e-6
    for n in (2.0, 3.0, 5.0):
        fam = RepulsionFamily(n=n)
        for x in np.linspace(0.3, 4.0, 23):
            dr = (invariant_density(fam, x + h) - invariant_density(fam, x - h)) / (2 * h)
            flux = 0.5 * dr - forward_drift(fam, float(x)) * invariant_density(fam, x)
            assert abs(flux) < 1e-10
