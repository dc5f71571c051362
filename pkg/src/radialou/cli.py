"""Command-line interface.

Every stochastic subcommand takes ``--seed`` and derives all randomness
from it through per-path substreams, so identical invocations produce
byte-identical output files. Numbers are written with 17 significant
digits (full double round trip).

Exit codes: 0 success, 1 invalid input, 2 numerical failure; failures
name the library operation that raised them.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import backend
from .calogero import CalogeroProblem, eigen_solve, exact_eigenvalue
from .errors import NumericalError, RadialOUError
from .families import RepulsionFamily, invariant_cdf, sample_invariant
from .fokker_planck import evolve_density, gaussian_bump, invariant_restriction
from .kernel import transition_density
from .sde import PathConfig, Scheme, simulate_path
from .stats import (
    goe_2x2_spacing_oracle,
    ks_statistic,
    ladder_from_spacings,
    mle_fit_family,
    read_levels,
    spacings_from_levels,
    write_levels,
)
from .verify import run_verification


def _fmt(v):
    return f"{float(v):.17g}"


def _open_out(path):
    return sys.stdout if path in (None, "-") else open(path, "w", encoding="utf-8")


def _write_csv(out, header, rows):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) for v in row) + "\n")


def _family(args):
    return RepulsionFamily(n=args.family)


# ── subcommand implementations ────────────────────────────────────────


def _cmd_simulate(args):
    family = _family(args)
    config = PathConfig(
        x0=args.x0, t_final=args.t, dt=args.dt, scheme=Scheme.parse(args.scheme)
    )
    children = np.random.SeedSequence(args.seed).spawn(args.paths)
    out = _open_out(args.out)
    try:
        out.write("path,time,value\n")
        for p, child in enumerate(children):
            rng = np.random.Generator(np.random.PCG64(child))
            path = simulate_path(family, config, rng)
            for t, v in zip(path.times, path.values):
                out.write(f"{p},{_fmt(t)},{_fmt(v)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_kernel(args):
    family = _family(args)
    xs = np.arange(0.0, args.x_max + args.step / 2.0, args.step)
    out = _open_out(args.out)
    try:
        out.write("t,y,x,density\n")
        for t in args.t:
            for y in args.y:
                dens = transition_density(family, t, y, xs)
                for x, d in zip(xs, dens):
                    out.write(f"{_fmt(t)},{_fmt(y)},{_fmt(x)},{_fmt(d)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_fp_evolve(args):
    family = _family(args)
    if args.init == "invariant":
        grid = invariant_restriction(family, x_max=args.x_max, cells=args.cells)
    else:
        grid = gaussian_bump(args.center, args.width, x_max=args.x_max, cells=args.cells)
    times = sorted(args.t)
    out = _open_out(args.out)
    try:
        out.write("t,x,rho\n")
        prev = 0.0
        for t in times:
            if t > prev:
                grid = evolve_density(family, grid, t - prev, dt=args.dt, scheme=args.scheme)
                prev = t
            for x, r in zip(grid.centers, grid.values):
                out.write(f"{_fmt(t)},{_fmt(x)},{_fmt(r)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_spectrum(args):
    problem = CalogeroProblem(beta=args.beta, x_max=args.x_max, h=args.h)
    numeric = eigen_solve(problem, args.levels)
    rows = []
    for n, val in enumerate(numeric):
        exact = exact_eigenvalue(args.beta, n)
        rows.append((n, val, exact, abs(val - exact)))
    out = _open_out(args.out)
    try:
        out.write("n,numeric,exact,abs_error\n")
        for n, val, exact, err in rows:
            out.write(f"{n},{_fmt(val)},{_fmt(exact)},{_fmt(err)}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_fit(args):
    ladder = read_levels(args.input)
    sample = spacings_from_levels(ladder, normalize=False)
    fit = mle_fit_family(sample.values)
    fitted = RepulsionFamily(n=fit.n_hat)
    ks = ks_statistic(sample.values, lambda x: invariant_cdf(fitted, x / fit.scale_hat))
    report = {
        "n_hat": fit.n_hat,
        "scale_hat": fit.scale_hat,
        "log_likelihood": fit.log_likelihood,
        "ks_statistic": ks.statistic,
        "ks_pass": ks.pass_at_1pct,  # null when the sample is too small to judge
        "sample_size": int(sample.values.size),
    }
    out = _open_out(args.out)
    try:
        json.dump(report, out, indent=2)
        out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_ladder(args):
    family = _family(args)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
    spacings = sample_invariant(family, rng, size=args.count)
    ladder = ladder_from_spacings(spacings, origin=args.origin)
    if args.out in (None, "-"):
        for v in ladder.levels:
            sys.stdout.write(f"{v:.17g}\n")
    else:
        write_levels(
            args.out,
            ladder,
            header=f"synthetic ladder: family n={_fmt(args.family)}, "
            f"count={args.count}, seed={args.seed}",
        )
    return 0


def _cmd_oracle(args):
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(args.seed)))
    sample = goe_2x2_spacing_oracle(args.count, rng)
    if args.spacings_csv:
        out = _open_out(args.out)
        try:
            _write_csv(out, ["spacing"], [(v,) for v in sample.values])
        finally:
            if out is not sys.stdout:
                out.close()
    else:
        ladder = ladder_from_spacings(sample)
        if args.out in (None, "-"):
            for v in ladder.levels:
                sys.stdout.write(f"{v:.17g}\n")
        else:
            write_levels(
                args.out,
                ladder,
                header=f"2x2 symmetric-ensemble gaps (unit mean), count={args.count}, "
                f"seed={args.seed}",
            )
    return 0


def _cmd_verify(args):
    ok = run_verification(n=args.family, seed=args.seed, out=sys.stdout)
    return 0 if ok else 1


# ── parser ────────────────────────────────────────────────────────────


def build_parser():
    parser = argparse.ArgumentParser(
        prog="radialou",
        description="Radial Ornstein-Uhlenbeck diffusions and level-spacing statistics "
        f"(stepping backend: {backend.backend_name()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, family=True, seed=True):
        if family:
            p.add_argument("--family", type=float, default=3.0, metavar="N",
                           help="family index n > 1 (default 3)")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("simulate", help="simulate diffusion paths (CSV: path,time,value)")
    add_common(p)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0, help="horizon")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--paths", type=int, default=1)
    p.add_argument("--scheme", default="semi-implicit",
                   choices=["explicit-reflect", "semi-implicit"])
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("kernel", help="tabulate the transition density (CSV: t,y,x,density)")
    add_common(p, seed=False)
    p.add_argument("--t", type=float, nargs="+", default=[1.0])
    p.add_argument("--y", type=float, nargs="+", default=[1.0])
    p.add_argument("--x-max", type=float, default=6.0)
    p.add_argument("--step", type=float, default=1e-2)
    p.set_defaults(fn=_cmd_kernel)

    p = sub.add_parser("fp-evolve", help="evolve a density by Fokker-Planck (CSV: t,x,rho)")
    add_common(p, seed=False)
    p.add_argument("--t", type=float, nargs="+", default=[1.0], help="snapshot times")
    p.add_argument("--x-max", type=float, default=6.0)
    p.add_argument("--cells", type=int, default=1000)
    p.add_argument("--dt", type=float, default=None,
                   help="time step (default: automatic stable step)")
    p.add_argument("--scheme", default="explicit", choices=["explicit", "implicit"])
    p.add_argument("--init", default="invariant", choices=["invariant", "bump"])
    p.add_argument("--center", type=float, default=1.0, help="bump center")
    p.add_argument("--width", type=float, default=0.1, help="bump width")
    p.set_defaults(fn=_cmd_fp_evolve)

    p = sub.add_parser("spectrum", help="radial-oscillator eigenvalues vs the closed form")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--levels", type=int, default=6, metavar="K")
    p.add_argument("--x-max", type=float, default=10.0)
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--out", default="-")
    p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("fit", help="fit the family to a level file (JSON report)")
    p.add_argument("--input", required=True, help="level-list file")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=_cmd_fit)

    p = sub.add_parser("ladder", help="synthesize a level ladder from a family")
    add_common(p)
    p.add_argument("--count", type=int, default=1000, help="number of spacings")
    p.add_argument("--origin", type=float, default=0.0)
    p.set_defaults(fn=_cmd_ladder)

    p = sub.add_parser("oracle-2x2", help="2x2 symmetric-ensemble spacing sample")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--out", default="-")
    p.add_argument("--spacings-csv", action="store_true",
                   help="emit raw spacings as CSV instead of a level file")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("verify", help="run the fast invariant checks (pass/fail table)")
    p.add_argument("--family", type=float, default=3.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses exit code 2 for usage errors
        return 0 if exc.code in (0, None) else 1
    try:
        return args.fn(args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except RadialOUError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
