"""Spacing-sample statistics: ladders, goodness of fit, ergodic averages.

The level-list text format used here (and by the command line) is one
ascending real per line, with blank lines and '#' comments ignored.
"""

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .errors import DomainError, NumericalError, ValidationError
from .families import invariant_density, sample_invariant
from .kernel import sample_transition
from .special import ln_gamma

__all__ = [
    "SpacingSample",
    "LevelLadder",
    "ladder_from_spacings",
    "spacings_from_levels",
    "read_levels",
    "write_levels",
    "KSResult",
    "ks_statistic",
    "ks_critical_value",
    "sample_stationary_chain",
    "ErgodicityReport",
    "ergodicity_check",
    "FitResult",
    "mle_fit_family",
    "goe_2x2_spacing_oracle",
]


# ══════════════════════════════════════════════════════════════════════
#   spacing samples and level ladders
# ══════════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class SpacingSample:
    """A batch of positive spacings; ``normalized`` means unit sample mean."""

    values: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValidationError("stats.SpacingSample", "values must be a nonempty 1-d array")
        if np.any(~np.isfinite(vals)) or np.any(vals <= 0.0):
            raise ValidationError("stats.SpacingSample", "spacings must be finite and > 0")
        if self.normalized and abs(vals.mean() - 1.0) > 1e-12:
            raise ValidationError(
                "stats.SpacingSample", "normalized sample must have unit mean"
            )
        object.__setattr__(self, "values", vals)

    def to_unit_mean(self):
        return SpacingSample(self.values / self.values.mean(), normalized=True)


@dataclass(frozen=True)
class LevelLadder:
    """Strictly ascending levels.

    When the ladder was built from a spacing sample the generating array
    is kept alongside, so the spacings -> levels -> spacings round trip
    is exact rather than exact-up-to-rounding (a cumulative sum followed
    by differences does not invert bitwise in floating point).
    """

    levels: np.ndarray
    source_spacings: np.ndarray | None = None

    def __post_init__(self):
        lv = np.asarray(self.levels, dtype=float)
        if lv.ndim != 1 or lv.size < 2:
            raise ValidationError("stats.LevelLadder", "need at least two levels")
        bad = np.nonzero(~(np.diff(lv) > 0.0))[0]
        if bad.size:
            raise ValidationError(
                "stats.LevelLadder", f"levels not strictly ascending at index {int(bad[0]) + 1}"
            )
        object.__setattr__(self, "levels", lv)


def ladder_from_spacings(spacings, origin=0.0):
    """Build a ladder: levels[0] = origin, levels[k] = origin + sum of k spacings."""
    sample = spacings if isinstance(spacings, SpacingSample) else SpacingSample(spacings)
    levels = np.concatenate(([0.0], np.cumsum(sample.values))) + origin
    return LevelLadder(levels=levels, source_spacings=sample.values.copy())


def spacings_from_levels(levels, normalize=False):
    """Spacings of a ladder or raw level array.

    A LevelLadder that carries its generating spacings returns them
    unchanged (exact inverse of ladder_from_spacings); raw arrays are
    differenced, with a rejection naming the first offending index if
    they are not strictly ascending.
    """
    if isinstance(levels, LevelLadder):
        if levels.source_spacings is not None:
            vals = levels.source_spacings.copy()
        else:
            vals = np.diff(levels.levels)
    else:
        arr = np.asarray(levels, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise ValidationError("stats.spacings_from_levels", "need at least two levels")
        bad = np.nonzero(~(np.diff(arr) > 0.0))[0]
        if bad.size:
            raise ValidationError(
                "stats.spacings_from_levels",
                f"levels not strictly ascending at index {int(bad[0]) + 1}",
            )
        vals = np.diff(arr)
    sample = SpacingSample(vals)
    return sample.to_unit_mean() if normalize else sample


def read_levels(path):
    """Read a level-list file: one ascending real per line, '#' comments."""
    levels = []
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise ValidationError("stats.read_levels", str(exc)) from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                levels.append(float(line))
            except ValueError:
                raise ValidationError(
                    "stats.read_levels", f"{path}:{lineno}: not a number: {line!r}"
                ) from None
    if len(levels) < 2:
        raise ValidationError("stats.read_levels", f"{path}: need at least two levels")
    return LevelLadder(levels=np.asarray(levels))


def write_levels(path, ladder, header=None):
    """Write a ladder in the level-list format (17 significant digits)."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for v in ladder.levels:
            fh.write(f"{v:.17g}\n")


# ══════════════════════════════════════════════════════════════════════
#   goodness of fit
# ══════════════════════════════════════════════════════════════════════


class KSResult(NamedTuple):
    """KS statistic plus the asymptotic 1% verdict.

    ``pass_at_1pct`` is None (inconclusive) below 100 points, where the
    asymptotic critical value 1.628/sqrt(n) is not trustworthy.
    """

    statistic: float
    pass_at_1pct: bool | None


def ks_statistic(values, cdf):
    """Two-sided Kolmogorov-Smirnov test against a callable CDF.

    Returns a KSResult; comparisons against floats should use
    ``.statistic``. The statistic itself is defined for any nonempty
    sample; the 1% verdict needs n >= 100.
    """
    x = np.sort(np.asarray(values, dtype=float))
    if x.size == 0:
        raise ValidationError("stats.ks_statistic", "empty sample")
    f = np.asarray(cdf(x), dtype=float)
    n = x.size
    grid = np.arange(1, n + 1) / n
    d_plus = np.max(grid - f)
    d_minus = np.max(f - (grid - 1.0 / n))
    stat = float(max(d_plus, d_minus))
    verdict = stat < ks_critical_value(n) if n >= 100 else None
    return KSResult(statistic=stat, pass_at_1pct=verdict)


def ks_critical_value(n, level=0.01):
    """Asymptotic two-sided KS critical value; only the 1% point is wired.

    The asymptotic formula is a poor approximation for small samples, so
    pass/fail semantics require n >= 100; the statistic itself is defined
    for any sample size.
    """
    if level != 0.01:
        raise ValidationError("stats.ks_critical_value", "only level=0.01 is supported")
    if not n >= 100:
        raise ValidationError(
            "stats.ks_critical_value", f"pass/fail needs n >= 100, got {n}"
        )
    return 1.628 / math.sqrt(n)


# ══════════════════════════════════════════════════════════════════════
#   ergodic averages along exact-kernel chains
# ══════════════════════════════════════════════════════════════════════


def sample_stationary_chain(family, length, lag, rng):
    """A stationary Markov chain: X_0 ~ invariant, X_{k+1} ~ p_lag(X_k, .)."""
    if not length >= 2:
        raise ValidationError("stats.sample_stationary_chain", "length must be >= 2")
    if not lag > 0.0:
        raise ValidationError("stats.sample_stationary_chain", "lag must be > 0")
    out = np.empty(length)
    out[0] = sample_invariant(family, rng)
    for k in range(1, length):
        out[k] = sample_transition(family, lag, out[k - 1], rng)
    return out


@dataclass(frozen=True)
class ErgodicityReport:
    time_average: float
    ensemble_average: float
    sigmas: float           # |difference| in adjusted-standard-error units
    standard_error: float   # batch-means standard error of the time average
    tau: float              # integrated autocorrelation time, in chain steps
    warning: bool           # chain shorter than 50 tau


def ergodicity_check(family, chain, observable):
    """Compare a chain's time average with the invariant-density average.

    The ensemble average is computed by quadrature of the observable
    against the invariant density. The discrepancy is reported in units
    of the batch-means standard error (sqrt(n) batches, which absorbs the
    integrated autocorrelation time tau); ``warning`` flags chains
    shorter than 50 estimated tau.

    ``observable`` must accept arrays (it is also integrated pointwise).
    """
    values = np.asarray(chain, dtype=float)
    n = values.size
    if n < 100:
        raise ValidationError("stats.ergodicity_check", "chain too short (need >= 100)")
    obs = np.asarray(observable(values), dtype=float)
    t_avg = float(obs.mean())

    e_avg, quad_err = quad(
        lambda x: observable(x) * invariant_density(family, x),
        0.0,
        15.0,
        limit=200,
        epsabs=1e-12,
        epsrel=1e-12,
    )
    if quad_err > 1e-7:
        raise NumericalError(
            "stats.ergodicity_check", f"ensemble-average quadrature error {quad_err:.2e}"
        )

    b = int(math.floor(math.sqrt(n)))
    m = n // b
    batches = obs[: m * b].reshape(m, b).mean(axis=1)
    var_chain = float(obs.var(ddof=1))
    var_batch = float(batches.var(ddof=1))
    se = math.sqrt(var_batch / m)
    tau = b * var_batch / var_chain if var_chain > 0.0 else float("inf")
    sigmas = abs(t_avg - e_avg) / se if se > 0.0 else float("inf")
    return ErgodicityReport(
        time_average=t_avg,
        ensemble_average=float(e_avg),
        sigmas=float(sigmas),
        standard_error=se,
        tau=float(tau),
        warning=bool(n < 50.0 * tau),
    )


# ══════════════════════════════════════════════════════════════════════
#   maximum-likelihood family fit
# ══════════════════════════════════════════════════════════════════════


@dataclass(frozen=True)
class FitResult:
    n_hat: float
    scale_hat: float
    log_likelihood: float


_FIT_LO, _FIT_HI = 1.0 + 1e-6, 12.0


def mle_fit_family(values):
    """Fit (n, scale) of the density 2/Gamma(n/2) (x/s)^(n-1) e^{-(x/s)^2} / s.

    For fixed n the scale has the closed-form profile maximizer
    s^2 = 2 sum(x^2) / (count * n) (the gamma scale MLE applied to x^2),
    so the fit is a one-dimensional profile-likelihood search over
    n in (1, 12].

    Raises DomainError for degenerate samples (zero variance), where the
    likelihood has no interior maximum.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size < 100:
        raise ValidationError("stats.mle_fit_family", "need a 1-d sample of size >= 100")
    if np.any(~np.isfinite(x)) or np.any(x <= 0.0):
        raise ValidationError("stats.mle_fit_family", "sample values must be finite and > 0")
    if float(x.std()) == 0.0:
        raise DomainError(
            "stats.mle_fit_family", "degenerate sample (zero variance): no finite optimum"
        )
    count = x.size
    s_log = float(np.sum(np.log(x)))
    s_sq = float(np.sum(x * x))

    def profile_negative(nn):
        scale_sq = 2.0 * s_sq / (count * nn)
        ll = (
            count * (math.log(2.0) - ln_gamma(nn / 2.0))
            + (nn - 1.0) * s_log
            - 0.5 * count * nn * math.log(scale_sq)
            - 0.5 * count * nn
        )
        return -ll

    res = minimize_scalar(
        profile_negative, bounds=(_FIT_LO, _FIT_HI), method="bounded",
        options={"xatol": 1e-10},
    )
    if res.success:
        n_hat = float(res.x)
    else:
        # fall back to the best point of a dense grid, loudly
        grid = np.linspace(_FIT_LO, _FIT_HI, 4096)
        n_hat = float(grid[int(np.argmin([profile_negative(g) for g in grid]))])
        warnings.warn(
            f"profile-likelihood search did not converge; "
            f"using best grid point n={n_hat:.4f}",
            RuntimeWarning,
            stacklevel=2,
        )
    scale_hat = math.sqrt(2.0 * s_sq / (count * n_hat))
    return FitResult(
        n_hat=n_hat, scale_hat=scale_hat, log_likelihood=float(-profile_negative(n_hat))
    )


# ══════════════════════════════════════════════════════════════════════
#   2x2 random-matrix oracle
# ══════════════════════════════════════════════════════════════════════


def goe_2x2_spacing_oracle(count, rng):
    """Eigenvalue gaps of 2x2 real symmetric Gaussian matrices, unit mean.

    Entries: diagonal standard normal, off-diagonal N(0, 1/2). The gap is
    sqrt((a - d)^2 + 4 b^2), computed directly from the entries — no
    density from this package is involved, which is what makes the
    sample an independent oracle for the n = 2 family.
    """
    if not count >= 1:
        raise ValidationError("stats.goe_2x2_spacing_oracle", "count must be >= 1")
    a = rng.standard_normal(count)
    d = rng.standard_normal(count)
    b = rng.standard_normal(count) * math.sqrt(0.5)
    gaps = np.sqrt((a - d) ** 2 + 4.0 * b * b)
    return SpacingSample(gaps).to_unit_mean()
