"""Pure-numpy implementations of the hot stepping loops.

Semantics (and floating-point operation order, where practical) match the
compiled twin in ``_accel.pyx``; ``radialou.backend`` picks whichever is
importable. Keep the two files in lockstep when editing.
"""

import numpy as np

NAME = "numpy"

# tiniest positive normal double; reflection lands here if a path hits 0.0
_TINY = 2.2250738585072014e-308


def fp_explicit_steps(rho, lo, di, up, n_steps):
    """Repeated tridiagonal update rho <- T rho.

    lo[0] and up[-1] are ignored (no cells beyond the boundaries).
    Returns a fresh array; ``rho`` is not modified.
    """
    r = np.array(rho, dtype=float)
    out = np.empty_like(r)
    s1 = np.empty(r.size - 2)
    s2 = np.empty(r.size - 2)
    for _ in range(n_steps):
        np.multiply(di[1:-1], r[1:-1], out=out[1:-1])
        np.multiply(lo[1:-1], r[:-2], out=s1)
        np.multiply(up[1:-1], r[2:], out=s2)
        out[1:-1] += s1
        out[1:-1] += s2
        out[0] = di[0] * r[0] + up[0] * r[1]
        out[-1] = lo[-1] * r[-2] + di[-1] * r[-1]
        r, out = out, r
    return r.copy() if n_steps == 0 else r


def _step_explicit_reflect(x, dw, dt, beta):
    if beta == 0.0:
        return x + (-x) * dt + dw
    xn = x + (beta / (2.0 * x) - x) * dt + dw
    xn = np.abs(xn)
    return np.where(xn == 0.0, _TINY, xn)


def _step_semi_implicit(x, dw, dt, beta):
    s = x + dw
    if beta == 0.0:
        return s / (1.0 + dt)
    disc = np.sqrt(s * s + 2.0 * beta * dt * (1.0 + dt))
    return (s + disc) / (2.0 * (1.0 + dt))


def sde_evolve(x0, noise, sqrt_dt, dt, beta, scheme):
    """March an ensemble of paths; return (endpoints, per-path minima).

    x0: (P,) initial states; noise: (P, S) standard normal increments;
    scheme: 0 = explicit Euler with reflection, 1 = semi-implicit.
    """
    x = np.array(x0, dtype=float)
    xmin = x.copy()
    step = _step_explicit_reflect if scheme == 0 else _step_semi_implicit
    for k in range(noise.shape[1]):
        x = step(x, sqrt_dt * noise[:, k], dt, beta)
        np.minimum(xmin, x, out=xmin)
    return x, xmin


def sde_path(x0, noise, sqrt_dt, dt, beta, scheme):
    """Single path with full recording; returns array of length S + 1."""
    out = np.empty(noise.size + 1)
    out[0] = x0
    x = np.array([x0], dtype=float)
    step = _step_explicit_reflect if scheme == 0 else _step_semi_implicit
    for k in range(noise.size):
        x = step(x, sqrt_dt * noise[k], dt, beta)
        out[k + 1] = x[0]
    return out
