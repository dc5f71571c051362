# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot stepping loops.

Semantics and floating-point operation order match ``_pure.py``; the
module ``radialou.backend`` picks whichever twin is importable. Keep the
two files in lockstep when editing. The build disables floating-point
contraction so results agree with numpy bit for bit.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

NAME = "cython"

# tiniest positive normal double; reflection lands here if a path hits 0.0
cdef double _TINY = 2.2250738585072014e-308


def fp_explicit_steps(rho, lo, di, up, n_steps):
    """Repeated tridiagonal update rho <- T rho.

    lo[0] and up[-1] are ignored (no cells beyond the boundaries).
    Returns a fresh array; ``rho`` is not modified.
    """
    r_arr = np.array(rho, dtype=float)
    out_arr = np.empty_like(r_arr)
    cdef double[:] r = r_arr
    cdef double[:] out = out_arr
    cdef double[:] clo = np.ascontiguousarray(lo, dtype=float)
    cdef double[:] cdi = np.ascontiguousarray(di, dtype=float)
    cdef double[:] cup = np.ascontiguousarray(up, dtype=float)
    cdef Py_ssize_t m = r.shape[0]
    cdef Py_ssize_t i, step
    cdef long long steps = n_steps
    cdef double[:] tmp
    for step in range(steps):
        for i in range(1, m - 1):
            out[i] = (cdi[i] * r[i] + clo[i] * r[i - 1]) + cup[i] * r[i + 1]
        out[0] = cdi[0] * r[0] + cup[0] * r[1]
        out[m - 1] = clo[m - 1] * r[m - 2] + cdi[m - 1] * r[m - 1]
        tmp = r
        r = out
        out = tmp
    return np.asarray(r).copy() if steps == 0 else np.asarray(r)


cdef inline double _step_explicit_reflect(double x, double dw, double dt,
                                          double beta) nogil:
    cdef double xn
    if beta == 0.0:
        return x + (-x) * dt + dw
    xn = x + (beta / (2.0 * x) - x) * dt + dw
    xn = fabs(xn)
    return _TINY if xn == 0.0 else xn


cdef inline double _step_semi_implicit(double x, double dw, double dt,
                                       double beta) nogil:
    cdef double s = x + dw
    cdef double disc
    if beta == 0.0:
        return s / (1.0 + dt)
    disc = sqrt(s * s + 2.0 * beta * dt * (1.0 + dt))
    return (s + disc) / (2.0 * (1.0 + dt))


def sde_evolve(x0, noise, double sqrt_dt, double dt, double beta, int scheme):
    """March an ensemble of paths; return (endpoints, per-path minima).

    x0: (P,) initial states; noise: (P, S) standard normal increments;
    scheme: 0 = explicit Euler with reflection, 1 = semi-implicit.
    """
    x_arr = np.array(x0, dtype=float)
    xmin_arr = x_arr.copy()
    cdef double[:] x = x_arr
    cdef double[:] xmin = xmin_arr
    cdef double[:, :] w = np.ascontiguousarray(noise, dtype=float)
    cdef Py_ssize_t n_paths = x.shape[0]
    cdef Py_ssize_t n_steps = w.shape[1]
    cdef Py_ssize_t i, k
    cdef double xi
    with nogil:
        if scheme == 0:
            for i in range(n_paths):
                xi = x[i]
                for k in range(n_steps):
                    xi = _step_explicit_reflect(xi, sqrt_dt * w[i, k], dt, beta)
                    if xi < xmin[i]:
                        xmin[i] = xi
                x[i] = xi
        else:
            for i in range(n_paths):
                xi = x[i]
                for k in range(n_steps):
                    xi = _step_semi_implicit(xi, sqrt_dt * w[i, k], dt, beta)
                    if xi < xmin[i]:
                        xmin[i] = xi
                x[i] = xi
    return x_arr, xmin_arr


def sde_path(double x0, noise, double sqrt_dt, double dt, double beta,
             int scheme):
    """Single path with full recording; returns array of length S + 1."""
    cdef double[:] w = np.ascontiguousarray(noise, dtype=float)
    cdef Py_ssize_t n_steps = w.shape[0]
    out_arr = np.empty(n_steps + 1)
    cdef double[:] out = out_arr
    cdef Py_ssize_t k
    cdef double xi = x0
    out[0] = xi
    with nogil:
        if scheme == 0:
            for k in range(n_steps):
                xi = _step_explicit_reflect(xi, sqrt_dt * w[k], dt, beta)
                out[k + 1] = xi
        else:
            for k in range(n_steps):
                xi = _step_semi_implicit(xi, sqrt_dt * w[k], dt, beta)
                out[k + 1] = xi
    return out_arr
