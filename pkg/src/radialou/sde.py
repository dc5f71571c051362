"""Path simulation for dX = (beta/(2X) - X) dt + dW on the half line.

Two schemes handle the singular drift:

* ``ExplicitReflect``: Euler-Maruyama followed by reflection at the
  origin (a nonpositive proposal is replaced by its absolute value).
* ``SemiImplicit``: the drift is evaluated at the new point, which turns
  each step into the positive root of a quadratic,

      (1 + dt) x'^2 - (x + dW) x' - beta dt / 2 = 0,

  so positivity holds by construction for beta > 0.

With beta = 0 both schemes reduce to the linear Ornstein-Uhlenbeck
update (drift -x); the state space is then the whole real line and no
reflection or root-taking is applied.

Paths are embarrassingly parallel: each path draws its Brownian
increments from its own substream spawned from one ``SeedSequence``, so
results cannot depend on chunking or parallel scheduling.
"""

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import backend
from .errors import ValidationError
from .kernel import transition_mean, transition_second_moment

__all__ = [
    "Scheme",
    "PathConfig",
    "SamplePath",
    "simulate_path",
    "simulate_ensemble",
    "weak_error_curve",
    "WeakErrorPoint",
]

_MAX_DT = 0.1  # coarser steps are meaningless against an O(1) relaxation time


class Scheme(enum.Enum):
    EXPLICIT_REFLECT = 0
    SEMI_IMPLICIT = 1

    @classmethod
    def parse(cls, name):
        table = {
            "explicit-reflect": cls.EXPLICIT_REFLECT,
            "semi-implicit": cls.SEMI_IMPLICIT,
        }
        try:
            return table[name]
        except KeyError:
            raise ValidationError(
                "sde.Scheme", f"unknown scheme {name!r}; expected one of {sorted(table)}"
            ) from None


@dataclass(frozen=True)
class PathConfig:
    """Simulation window: start point, horizon, step and scheme."""

    x0: float
    t_final: float
    dt: float
    scheme: Scheme = Scheme.SEMI_IMPLICIT

    def __post_init__(self):
        if not self.x0 > 0.0:
            raise ValidationError("sde.PathConfig", f"x0 must be > 0, got {self.x0}")
        if not self.t_final > 0.0:
            raise ValidationError("sde.PathConfig", "t_final must be > 0")
        if not 0.0 < self.dt <= _MAX_DT:
            raise ValidationError(
                "sde.PathConfig", f"dt must lie in (0, {_MAX_DT}], got {self.dt}"
            )
        if abs(round(self.t_final / self.dt) * self.dt - self.t_final) > 1e-9 * self.t_final:
            raise ValidationError(
                "sde.PathConfig", "t_final must be an integer number of dt steps"
            )

    @property
    def n_steps(self):
        return int(round(self.t_final / self.dt))


@dataclass(frozen=True)
class SamplePath:
    """One realized trajectory on the uniform time grid."""

    times: np.ndarray
    values: np.ndarray


def simulate_path(family, config, rng):
    """Simulate a single path, recording every step.

    Parameters
    ----------
    family : RepulsionFamily
        Drift parameters; family.beta = 0 gives the linear OU reduction.
    config : PathConfig
    rng : numpy.random.Generator

    Returns
    -------
    SamplePath
        times[k] = k dt, values[0] = x0; for beta > 0 all values are > 0.
    """
    steps = config.n_steps
    noise = rng.standard_normal(steps)
    values = backend.sde_path(
        config.x0, noise, math.sqrt(config.dt), config.dt, family.beta, config.scheme.value
    )
    times = config.dt * np.arange(steps + 1)
    return SamplePath(times=times, values=values)


def simulate_ensemble(family, config, n_paths, seed, chunk=512, x0=None):
    """March ``n_paths`` independent paths; return (endpoints, minima).

    ``seed`` may be an int or a numpy SeedSequence; one substream is
    spawned per path, so the output is invariant under the chunk size
    (and under any parallel split along path index). ``x0`` optionally
    supplies one positive start value per path, overriding config.x0
    (random stationary starts, for instance).

    Returns
    -------
    (ndarray, ndarray)
        Endpoint values X_{t_final} and the per-path minimum over all
        recorded states (x0 included), each of shape (n_paths,).
    """
    if not n_paths >= 1:
        raise ValidationError("sde.simulate_ensemble", "n_paths must be >= 1")
    if x0 is None:
        starts = np.full(n_paths, config.x0)
    else:
        starts = np.asarray(x0, dtype=float)
        if starts.shape != (n_paths,):
            raise ValidationError(
                "sde.simulate_ensemble", f"x0 must have shape ({n_paths},)"
            )
        if not np.all(starts > 0.0):
            raise ValidationError("sde.simulate_ensemble", "x0 values must be > 0")
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = ss.spawn(n_paths)
    steps = config.n_steps
    sqrt_dt = math.sqrt(config.dt)
    endpoints = np.empty(n_paths)
    minima = np.empty(n_paths)
    for start in range(0, n_paths, chunk):
        stop = min(start + chunk, n_paths)
        block = np.empty((stop - start, steps))
        for i, child in enumerate(children[start:stop]):
            block[i] = np.random.Generator(np.random.PCG64(child)).standard_normal(steps)
        end, mn = backend.sde_evolve(
            starts[start:stop], block, sqrt_dt, config.dt, family.beta, config.scheme.value
        )
        endpoints[start:stop] = end
        minima[start:stop] = mn
    return endpoints, minima


class WeakErrorPoint(NamedTuple):
    dt: float
    mean_error: float
    second_moment_error: float


def weak_error_curve(family, x0, t, dt_list, n_paths, seed, scheme=Scheme.SEMI_IMPLICIT):
    """Endpoint-moment errors versus the exact kernel, per step size.

    All step sizes share one Brownian path per sample path (common random
    numbers): the increments are generated at the finest dt and summed
    into coarser ones, so differences between rows are discretization
    bias, not Monte Carlo noise. Every dt must therefore be an integer
    multiple of min(dt_list), and t an integer number of steps of each.

    Returns a list of WeakErrorPoint, ordered as dt_list.
    """
    dts = list(dt_list)
    if not dts:
        raise ValidationError("sde.weak_error_curve", "dt_list must be nonempty")
    dt_fine = min(dts)
    cfg_fine = PathConfig(x0=x0, t_final=t, dt=dt_fine, scheme=scheme)  # validates dt range
    factors = {}
    for dt in dts:
        m = dt / dt_fine
        if abs(m - round(m)) > 1e-9:
            raise ValidationError(
                "sde.weak_error_curve", f"dt={dt} is not a multiple of the finest dt={dt_fine}"
            )
        k = t / dt
        if abs(k - round(k)) > 1e-9:
            raise ValidationError(
                "sde.weak_error_curve", f"t={t} is not an integer number of dt={dt} steps"
            )
        factors[dt] = int(round(m))

    n_fine = cfg_fine.n_steps
    ss = np.random.SeedSequence(seed) if not isinstance(seed, np.random.SeedSequence) else seed
    children = ss.spawn(n_paths)

    sums = {dt: np.zeros(2) for dt in dts}
    chunk = max(1, int(2**22 // max(n_fine, 1)))
    for start in range(0, n_paths, chunk):
        stop = min(start + chunk, n_paths)
        fine = np.empty((stop - start, n_fine))
        for i, child in enumerate(children[start:stop]):
            fine[i] = np.random.Generator(np.random.PCG64(child)).standard_normal(n_fine)
        for dt in dts:
            m = factors[dt]
            # sum of m standard normals, rescaled back to unit variance
            coarse = fine.reshape(stop - start, -1, m).sum(axis=2) / math.sqrt(m)
            end, _ = backend.sde_evolve(
                np.full(stop - start, float(x0)),
                coarse,
                math.sqrt(dt),
                dt,
                family.beta,
                scheme.value,
            )
            sums[dt] += (end.sum(), (end * end).sum())

    m1 = transition_mean(family, t, x0)
    m2 = transition_second_moment(family, t, x0)
    out = []
    for dt in dts:
        mean_hat = sums[dt][0] / n_paths
        second_hat = sums[dt][1] / n_paths
        out.append(WeakErrorPoint(dt, abs(mean_hat - m1), abs(second_hat - m2)))
    return out
