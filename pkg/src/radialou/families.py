"""Level-spacing distribution families and their drift fields.

The family indexed by a real ``n > 1`` has invariant density

    rho_n(x) = 2 / Gamma(n/2) * x^(n-1) * exp(-x^2),   x >= 0,

whose unit-mean rescaling reproduces the classical spacing surmises for
n = 2, 3, 4, 5. The associated diffusion has forward drift
b(x) = (n-1)/(2x) - x, and conversely the drift is recovered from any
positive density through b = 2 D (sqrt(rho))' / sqrt(rho).
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .special import ln_gamma, regularized_lower_gamma

__all__ = [
    "RepulsionFamily",
    "SurmiseClass",
    "invariant_density",
    "invariant_cdf",
    "mean_of_invariant",
    "invariant_second_moment",
    "unit_mean_density",
    "unit_mean_cdf",
    "surmise_density",
    "sample_invariant",
    "forward_drift",
    "drift_from_density",
]


@dataclass(frozen=True)
class RepulsionFamily:
    """Family parameters: index ``n`` and diffusion constant.

    ``beta = n - 1`` is the level-repulsion exponent of the density near
    the origin. ``n = 1`` (beta = 0) is admitted only as the linear
    Ornstein-Uhlenbeck reduction used by the path simulator; the density,
    CDF and transition-kernel operations require n > 1.
    """

    n: float
    diffusion: float = 0.5

    def __post_init__(self):
        if not self.n >= 1.0:
            raise DomainError("families.RepulsionFamily", f"n must be >= 1, got {self.n}")
        if not self.diffusion > 0.0:
            raise DomainError("families.RepulsionFamily", "diffusion must be > 0")

    @property
    def beta(self):
        return self.n - 1.0

    @classmethod
    def from_beta(cls, beta, diffusion=0.5):
        return cls(n=beta + 1.0, diffusion=diffusion)


class SurmiseClass(enum.Enum):
    """Classical surmise tags and the family index each corresponds to."""

    GOE = 2.0
    GUE = 3.0
    GINIBRE = 4.0
    GSE = 5.0

    @property
    def family(self):
        return RepulsionFamily(n=self.value)

    @classmethod
    def from_tag(cls, tag):
        try:
            return {"GOE": cls.GOE, "GUE": cls.GUE, "Ginibre": cls.GINIBRE, "GSE": cls.GSE}[tag]
        except KeyError:
            raise DomainError(
                "families.SurmiseClass", f"unknown tag {tag!r}; expected GOE, GUE, Ginibre or GSE"
            ) from None

    @property
    def tag(self):
        return {"GINIBRE": "Ginibre"}.get(self.name, self.name)


def _require_density_index(family, op):
    if not family.n > 1.0:
        raise DomainError(op, f"family index n must be > 1, got {family.n}")


def invariant_density(family, x):
    """Stationary density rho_n(x) = 2/Gamma(n/2) x^(n-1) exp(-x^2), x >= 0."""
    _require_density_index(family, "families.invariant_density")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("families.invariant_density", "x must be >= 0")
    log_norm = math.log(2.0) - ln_gamma(family.n / 2.0)
    with np.errstate(divide="ignore"):
        logp = log_norm + (family.n - 1.0) * np.log(arr) - arr * arr
    out = np.where(arr == 0.0, 0.0, np.exp(logp))
    return float(out) if np.ndim(x) == 0 else out


def invariant_cdf(family, x):
    """CDF of the invariant density: P(n/2, x^2) (regularized lower gamma)."""
    _require_density_index(family, "families.invariant_cdf")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("families.invariant_cdf", "x must be >= 0")
    return regularized_lower_gamma(family.n / 2.0, arr * arr if np.ndim(x) else float(arr) ** 2)


def mean_of_invariant(family):
    """First moment Gamma((n+1)/2) / Gamma(n/2)."""
    _require_density_index(family, "families.mean_of_invariant")
    return math.exp(ln_gamma((family.n + 1.0) / 2.0) - ln_gamma(family.n / 2.0))


def invariant_second_moment(family):
    """Second moment of the invariant density, identically n/2."""
    _require_density_index(family, "families.invariant_second_moment")
    return family.n / 2.0


def unit_mean_density(family, s):
    """Invariant density rescaled to unit mean: m * rho_n(m * s)."""
    m = mean_of_invariant(family)
    return m * invariant_density(family, m * np.asarray(s, dtype=float) if np.ndim(s) else m * s)


def unit_mean_cdf(family, s):
    """CDF of the unit-mean rescaled invariant density."""
    m = mean_of_invariant(family)
    return invariant_cdf(family, m * np.asarray(s, dtype=float) if np.ndim(s) else m * s)


# Closed-form surmise densities, kept as an independent route from
# unit_mean_density on purpose: their pointwise agreement is a test
# target, so the two must never share code. Note the GUE exponent is
# -4 s^2 / pi, the only value consistent with its 32/pi^2 prefactor
# (unit mean and unit mass pin it down).
_SURMISE_FORMS = {
    SurmiseClass.GOE: lambda s: (math.pi / 2.0) * s * np.exp(-math.pi * s * s / 4.0),
    SurmiseClass.GUE: lambda s: (32.0 / math.pi**2) * s**2 * np.exp(-4.0 * s * s / math.pi),
    SurmiseClass.GINIBRE: lambda s: (3.0**4 * math.pi**2 / 2.0**7)
    * s**3
    * np.exp(-(3.0**2) * math.pi * s * s / 2.0**4),
    SurmiseClass.GSE: lambda s: (2.0**18 / (3.0**6 * math.pi**3))
    * s**4
    * np.exp(-64.0 * s * s / (9.0 * math.pi)),
}


def surmise_density(surmise, s):
    """Closed-form spacing surmise density for a SurmiseClass member.

    Parameters
    ----------
    surmise : SurmiseClass or str
        Class member or one of the tags "GOE", "GUE", "Ginibre", "GSE".
    s : float or ndarray
        Spacing value(s), s >= 0.
    """
    if isinstance(surmise, str):
        surmise = SurmiseClass.from_tag(surmise)
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("families.surmise_density", "s must be >= 0")
    out = _SURMISE_FORMS[surmise](arr)
    return float(out) if np.ndim(s) == 0 else out


def sample_invariant(family, rng, size=None):
    """Draw exact samples from the invariant density.

    X^2 is Gamma(n/2, 1), so X = sqrt(G) with G a standard gamma draw.
    """
    _require_density_index(family, "families.sample_invariant")
    return np.sqrt(rng.standard_gamma(family.n / 2.0, size=size))


def forward_drift(family, x):
    """Forward drift b(x) = beta/(2x) - x with beta = n - 1.

    For n = 1 the singular term vanishes and the drift is the linear
    Ornstein-Uhlenbeck field -x, defined for all real x; for n > 1 the
    field lives on x > 0.
    """
    arr = np.asarray(x, dtype=float)
    beta = family.beta
    if beta == 0.0:
        out = -arr
    else:
        if np.any(arr <= 0.0):
            raise DomainError("families.forward_drift", "x must be > 0 when n > 1")
        out = beta / (2.0 * arr) - arr
    return float(out) if np.ndim(x) == 0 else out


def drift_from_density(density, x, diffusion=0.5):
    """Recover the drift from a stationary density: b = 2 D (sqrt rho)'/sqrt rho.

    The derivative is a central difference with step max(1e-5, 5e-5 * x):
    large enough that cancellation noise stays below 1e-10, small enough
    that the O(h^2) truncation stays below 1e-6 out to x = 4 for the
    densities this package works with.

    Parameters
    ----------
    density : callable
        Maps x > 0 to a positive density value.
    x : float
        Evaluation point, x > 0 (the stencil must stay positive).
    diffusion : float
        Diffusion constant D, default 1/2.
    """
    if not x > 0.0:
        raise DomainError("families.drift_from_density", "x must be > 0")
    h = max(1e-5, 5e-5 * x)
    if x - h <= 0.0:
        raise DomainError("families.drift_from_density", f"stencil crosses 0 at x={x}")
    lo, mid, hi = density(x - h), density(x), density(x + h)
    if not (lo > 0.0 and mid > 0.0 and hi > 0.0):
        raise NumericalError(
            "families.drift_from_density", f"density not positive on stencil at x={x}"
        )
    return 2.0 * diffusion * (math.sqrt(hi) - math.sqrt(lo)) / (2.0 * h * math.sqrt(mid))
