"""Spectral cross-checks: drift -> potential map and the radial oscillator.

The drift field b of the diffusion defines a Schroedinger potential

    V(x) = (1/2)(b(x)^2 + b'(x)),

which for b = beta/(2x) - x is x^2/2 + beta(beta-2)/(8 x^2) shifted down
by the ground energy E_0 = (beta+1)/2. The Hamiltonian

    H = -(1/2) d^2/dx^2 + x^2/2 + beta(beta-2)/(8 x^2)

on the half line with vanishing boundary values has the explicit spectrum

    E_n(beta) = 2 n + 1 + (1/2) sqrt(1 + beta (beta - 2)),   n >= 0,

and the square root of the invariant density is its lowest eigenfunction.
``eigen_solve`` reproduces the spectrum numerically as an independent
check of the whole drift/density/kernel chain.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .errors import DomainError, NumericalError, ValidationError
from .families import drift_from_density, forward_drift, invariant_density
from .special import ln_gamma

__all__ = [
    "CalogeroProblem",
    "potential_from_drift",
    "calogero_potential",
    "exact_eigenvalue",
    "eigen_solve",
    "ground_state_identity_residual",
]


@dataclass(frozen=True)
class CalogeroProblem:
    """Discretization window for the radial oscillator eigenproblem."""

    beta: float
    x_max: float = 10.0
    h: float = 1e-3

    def __post_init__(self):
        if not self.beta > -1.0:
            raise DomainError("calogero.CalogeroProblem", f"beta must be > -1, got {self.beta}")
        if not self.x_max >= 8.0:
            raise ValidationError("calogero.CalogeroProblem", "x_max must be >= 8")
        if not self.h > 0.0:
            raise ValidationError("calogero.CalogeroProblem", "h must be > 0")


def potential_from_drift(b, x, step=None):
    """(1/2)(b(x)^2 + b'(x)) with a central-difference derivative.

    ``b`` is any callable drift; ``step`` overrides the default
    derivative stencil max(1e-6, 1e-5 x).
    """
    if not x > 0.0:
        raise DomainError("calogero.potential_from_drift", "x must be > 0")
    h = step if step is not None else max(1e-6, 1e-5 * x)
    if x - h <= 0.0:
        raise DomainError(
            "calogero.potential_from_drift", f"derivative stencil crosses 0 at x={x}"
        )
    db = (b(x + h) - b(x - h)) / (2.0 * h)
    return 0.5 * (b(x) ** 2 + db)


def calogero_potential(beta, x):
    """x^2/2 + beta(beta-2)/(8x^2); equals the drift potential plus E_0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("calogero.calogero_potential", "x must be > 0")
    out = 0.5 * arr * arr + beta * (beta - 2.0) / (8.0 * arr * arr)
    return float(out) if np.ndim(x) == 0 else out


def exact_eigenvalue(beta, n):
    """E_n(beta) = 2n + 1 + (1/2) sqrt(1 + beta(beta-2)).

    The radicand is (beta - 1)^2, so the formula reads 2n + 1 + |beta-1|/2;
    in particular E_0 = (beta+1)/2 for beta >= 1.
    """
    if not beta > -1.0:
        raise DomainError("calogero.exact_eigenvalue", f"beta must be > -1, got {beta}")
    if not (isinstance(n, (int, np.integer)) and n >= 0):
        raise DomainError("calogero.exact_eigenvalue", f"n must be an integer >= 0, got {n}")
    rad = 1.0 + beta * (beta - 2.0)
    if rad < 0.0:  # unreachable for real beta; kept as an honest guard
        raise DomainError("calogero.exact_eigenvalue", "negative radicand")
    return 2.0 * n + 1.0 + 0.5 * math.sqrt(rad)


def eigen_solve(problem, k):
    """Lowest ``k`` eigenvalues of H by a symmetric tridiagonal solve.

    Eigenfunctions behave like x^s at the origin with
    s = max(beta/2, 1 - beta/2) (the branch consistent with the explicit
    spectrum). Naive collocation of the inverse-square term converges
    only logarithmically at beta = 1, where the coupling is critical, so
    the solver factors the indicial power out: psi = x^s phi turns H into

        -(1/2) x^{-2s} (x^{2s} phi')' + (x^2/2) phi,

    with the singular term cancelled exactly. A finite-volume
    discretization with exact integrals of the weight x^{2s} gives a
    symmetric tridiagonal pencil, O(h^2) for every beta > -1, with
    vanishing boundary values built in at 0 (through the weight) and
    imposed at x_max.
    """
    if not k >= 1:
        raise ValidationError("calogero.eigen_solve", "k must be >= 1")
    beta, h, x_max = problem.beta, problem.h, problem.x_max
    m = int(round(x_max / h))
    if k > m - 1:
        raise ValidationError("calogero.eigen_solve", f"k={k} too large for {m} cells")
    s = max(beta / 2.0, 1.0 - beta / 2.0)
    faces = h * np.arange(m + 1)
    centers = (faces[:-1] + faces[1:]) / 2.0
    wf = faces ** (2.0 * s)
    mass = np.diff(faces ** (2.0 * s + 1.0)) / (2.0 * s + 1.0)
    diag = (wf[:-1] + wf[1:]) / (2.0 * h) + mass * (0.5 * centers**2)
    diag[-1] += wf[-1] / h  # ghost value -phi_M: Dirichlet at x_max
    off = -wf[1:-1] / (2.0 * h)
    inv_sqrt_mass = 1.0 / np.sqrt(mass)
    cd = diag * inv_sqrt_mass * inv_sqrt_mass
    ce = off * inv_sqrt_mass[:-1] * inv_sqrt_mass[1:]
    try:
        ev = eigvalsh_tridiagonal(cd, ce, select="i", select_range=(0, k - 1))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError("calogero.eigen_solve", f"tridiagonal eigensolver: {exc}")
    return np.sort(ev)


def ground_state_identity_residual(family, h=1e-4, x_lo=0.1, x_hi=5.0):
    """Closure residuals for the ground-state-process identity.

    Returns a pair of sup norms over the grid [x_lo, x_hi]:

    (a) |(H - E_0) sqrt(rho_n)| with a second-order Laplacian, where
        E_0 = (beta+1)/2 is the energy of the invariant square root
        (equal to exact_eigenvalue(beta, 0) for beta >= 1);
    (b) |drift_from_density(rho_n) - forward_drift|, closing the loop
        density -> drift -> density.
    """
    if not 1.0 < family.n <= 7.0:
        raise DomainError(
            "calogero.ground_state_identity_residual", f"n must be in (1, 7], got {family.n}"
        )
    beta = family.beta
    n = family.n
    xs = np.arange(x_lo, x_hi + h / 2.0, h)

    # sqrt of the invariant density, evaluated in log form
    half_log_norm = 0.5 * (math.log(2.0) - ln_gamma(n / 2.0))
    psi = np.exp(half_log_norm + 0.5 * (n - 1.0) * np.log(xs) - 0.5 * xs * xs)
    lap = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / (h * h)
    e0 = (beta + 1.0) / 2.0
    res_h = -0.5 * lap + (calogero_potential(beta, xs[1:-1]) - e0) * psi[1:-1]
    resid_a = float(np.max(np.abs(res_h)))

    grid = np.linspace(max(x_lo, 0.2), min(x_hi, 4.0), 153)
    dens = lambda u: invariant_density(family, u)
    resid_b = max(
        abs(drift_from_density(dens, float(x)) - forward_drift(family, float(x)))
        for x in grid
    )
    return resid_a, float(resid_b)
