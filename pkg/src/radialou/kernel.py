"""Exact transition kernel of the radial Ornstein-Uhlenbeck diffusion.

For the family with index ``n`` (drift (n-1)/(2x) - x, diffusion 1/2) the
transition density from ``y`` after time ``t`` is known in closed form:

    p_t(y, x) = 2 x^(n-1) e^{-x^2} / (1 - e^{-2t})
                * exp(-(x^2 + y^2) e^{-2t} / (1 - e^{-2t}))
                * (x y e^{-t})^{-a} I_a(2 x y e^{-t} / (1 - e^{-2t}))

with a = (n-2)/2. Everything is assembled in the log domain; the
Bessel-factor limit at x y = 0 is the leading series term, which keeps the
kernel finite on the boundary and at arbitrarily large times.

The same law has a second, independent route: X^2 is a scaled noncentral
chi-square variate. ``sample_transition`` draws from that representation,
and the test suite holds the two routes to agree pointwise.
"""

import math

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, NumericalError, ValidationError
from .families import invariant_density
from .special import ln_gamma, log_bessel_i

__all__ = [
    "transition_log_density",
    "transition_density",
    "sample_transition",
    "transition_second_moment",
    "transition_mean",
    "chapman_kolmogorov_residual",
    "long_time_limit_distance",
]


def _check_query(family, t, y, op):
    if not family.n > 1.0:
        raise DomainError(op, f"family index n must be > 1, got {family.n}")
    if not t > 0.0:
        raise DomainError(op, f"t must be > 0, got {t}")
    if not y >= 0.0:
        raise DomainError(op, f"y must be >= 0, got {y}")


def transition_log_density(family, t, y, x):
    """log p_t(y, x); ``x`` may be a scalar or an array.

    Returns -inf where the density vanishes (x = 0 with n > 1).
    """
    _check_query(family, t, y, "kernel.transition_log_density")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("kernel.transition_log_density", "x must be >= 0")
    n = family.n
    a = (n - 2.0) / 2.0
    q = math.exp(-t)
    den = -math.expm1(-2.0 * t)  # 1 - e^{-2t}, accurate for small t
    u = arr * (y * q)
    out = np.empty(arr.shape)

    pos = u > 0.0
    if np.any(pos):
        z = 2.0 * u[pos] / den
        out[pos] = -a * np.log(u[pos]) + log_bessel_i(a, z)
    # x y e^{-t} = 0: the k = 0 series term of I_a gives the finite limit
    # (x y e^{-t})^{-a} I_a -> den^{-a} / Gamma(a + 1).
    lim = ~pos
    if np.any(lim):
        out[lim] = -a * math.log(den) - ln_gamma(a + 1.0)

    with np.errstate(divide="ignore"):
        logx = np.log(arr)
    out += (
        math.log(2.0)
        + (n - 1.0) * logx
        - arr * arr
        - math.log(den)
        - (arr * arr + y * y) * (q * q / den)
    )
    return float(out) if np.ndim(x) == 0 else out


def transition_density(family, t, y, x):
    """Transition density p_t(y, x) (see module docstring); finite, >= 0."""
    return np.exp(transition_log_density(family, t, y, x))


def sample_transition(family, t, y, rng, size=None):
    """Exact draws of X_t given X_0 = y.

    X_t^2 = c Z with c = (1 - e^{-2t})/2 and Z noncentral chi-square with
    ``n`` degrees of freedom and noncentrality 2 y^2 e^{-2t}/(1 - e^{-2t}).
    This is a sampling route entirely independent of the closed-form
    density above.
    """
    _check_query(family, t, y, "kernel.sample_transition")
    den = -math.expm1(-2.0 * t)
    c = den / 2.0
    if y == 0.0:
        z = rng.chisquare(family.n, size=size)
    else:
        lam = 2.0 * y * y * math.exp(-2.0 * t) / den
        z = rng.noncentral_chisquare(family.n, lam, size=size)
    return np.sqrt(c * z)


def transition_second_moment(family, t, y):
    """E[X_t^2 | X_0 = y] = n (1 - e^{-2t})/2 + y^2 e^{-2t} (closed form)."""
    _check_query(family, t, y, "kernel.transition_second_moment")
    return family.n * -math.expm1(-2.0 * t) / 2.0 + y * y * math.exp(-2.0 * t)


def transition_mean(family, t, y):
    """E[X_t | X_0 = y] by adaptive quadrature of x p_t(y, x)."""
    _check_query(family, t, y, "kernel.transition_mean")
    hi = max(6.0, y + 6.0)
    val, err = quad(
        lambda x: x * transition_density(family, t, y, x),
        0.0,
        hi,
        limit=200,
        epsabs=1e-12,
        epsrel=1e-12,
        points=[y * math.exp(-t)],
    )
    if err > 1e-8:
        raise NumericalError(
            "kernel.transition_mean", f"quadrature error estimate {err:.2e} too large"
        )
    return val


def chapman_kolmogorov_residual(family, s, t, y, x, quadrature_points=200):
    """|int p_s(y, z) p_t(z, x) dz  -  p_{s+t}(y, x)|.

    The intermediate integral runs over [0, max(6, y + 6)]; beyond that the
    p_s factor has Gaussian-tail mass below 1e-12 for every admissible s.
    ``quadrature_points`` caps the adaptive subdivision count.
    """
    _check_query(family, s, y, "kernel.chapman_kolmogorov_residual")
    if not t > 0.0:
        raise DomainError("kernel.chapman_kolmogorov_residual", f"t must be > 0, got {t}")
    if not x >= 0.0:
        raise DomainError("kernel.chapman_kolmogorov_residual", f"x must be >= 0, got {x}")
    if not quadrature_points >= 10:
        raise ValidationError(
            "kernel.chapman_kolmogorov_residual",
            f"quadrature_points must be >= 10, got {quadrature_points}",
        )
    hi = max(6.0, y + 6.0)

    def integrand(z):
        return transition_density(family, s, y, z) * transition_density(family, t, z, x)

    val, err, info, *tail = quad(
        integrand,
        0.0,
        hi,
        limit=int(quadrature_points),
        epsabs=1e-13,
        epsrel=1e-12,
        points=[y * math.exp(-s), x],
        full_output=True,
    )
    if tail:  # quad appends an explanation message on trouble
        raise NumericalError(
            "kernel.chapman_kolmogorov_residual", f"quadrature failed: {tail[-1]}"
        )
    if err > 1e-9:
        raise NumericalError(
            "kernel.chapman_kolmogorov_residual",
            f"quadrature error estimate {err:.2e} too large",
        )
    return abs(val - transition_density(family, s + t, y, x))


def long_time_limit_distance(family, t, y, x_max=6.0, step=2e-3):
    """sup over an x-grid of |p_t(y, x) - rho_n(x)|.

    Measures relaxation toward the invariant density; decays like e^{-2t}.
    """
    xs = np.arange(0.0, x_max + step / 2.0, step)
    p = transition_density(family, t, y, xs)
    return float(np.max(np.abs(p - invariant_density(family, xs))))
