"""Command-line driver.

Subcommands: ``forward``, ``reconstruct``, ``noise-sweep``, ``verify`` (alias
``verify-asymptotics``) and ``list-problems``.  Every output is a CSV with a
one-line header and 17 significant digits, or a plain-text report.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 no plateau,
4 quadrature failure, 5 degree cap, 6 I/O error.
"""

import argparse
import csv
import os
import sys
from pathlib import Path

import numpy as np

from . import data, pipeline, verify
from .errors import (CutplaneError, DegreeCapError, DomainError, NoPlateauError,
                     QuadratureError)
from .reconstruct import DEFAULT_GRID
from .spectral import DEFAULT_M_MAX, compute_spectral, envelope
from .specfun import DEGREE_CAP
from .truncation import PlateauParams

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NO_PLATEAU = 3
EXIT_QUADRATURE = 4
EXIT_DEGREE_CAP = 5
EXIT_IO = 6

OUTDIR_ENV = "CUTPLANE_OUTDIR"

PRESETS = {
    "fig1": {"problem": "F1", "forced_k0": 75},
    "fig2": {"problem": "F2", "cauchy": True},
    "fig3": {"problem": "F3", "cauchy": True, "norm_compare": True},
}
FIG4_EPS = [10.0 ** -k for k in range(2, 11)]


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def read_config(path):
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    cfg = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


def _add_run_options(p):
    p.add_argument("--problem", default="F2", help="catalog id (see list-problems)")
    p.add_argument("--custom", metavar="PATH", help="CSV with columns x,F")
    p.add_argument("--tail", default="zero", help="custom tail: zero | power:p | exp:s")
    p.add_argument("--N", type=int, default=30, dest="N", help="highest Taylor index")
    p.add_argument("--eps", type=float, default=0.0, help="uniform noise bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m-max", type=int, default=DEFAULT_M_MAX)
    p.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance for a_n")
    p.add_argument("--out", default=None, help=f"output directory (default ${OUTDIR_ENV} or .)")


def _add_truncation_options(p):
    p.add_argument("--delta", type=float, default=PlateauParams.delta)
    p.add_argument("--l-min", type=int, default=PlateauParams.L_min)
    p.add_argument("--tau", type=float, default=PlateauParams.tau)
    p.add_argument("--x-min", type=float, default=DEFAULT_GRID[0])
    p.add_argument("--x-max", type=float, default=DEFAULT_GRID[1])
    p.add_argument("--points", type=int, default=DEFAULT_GRID[2])


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cutplane",
        description="Jump-function reconstruction from noisy Taylor coefficients.")
    parser.add_argument("--config", help="key=value file; flags override it")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list-problems", help="show the test-function catalog")

    p = sub.add_parser("forward", help="write the Taylor coefficients")
    _add_run_options(p)

    p = sub.add_parser("reconstruct", help="full pipeline for one data set")
    _add_run_options(p)
    _add_truncation_options(p)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--k0", type=int, help="force the truncation index")
    p.add_argument("--k0-mode", choices=["plateau", "norm"], default="plateau")
    p.add_argument("--cauchy", action="store_true",
                   help="also write the Taylor-vs-Cauchy comparison on [-1/2, 1/2]")

    p = sub.add_parser("noise-sweep", help="repeat the pipeline over noise levels")
    _add_run_options(p)
    _add_truncation_options(p)
    p.add_argument("--preset", choices=["fig4"])
    p.add_argument("--eps-list", default=",".join(format(e, "g") for e in FIG4_EPS))
    p.add_argument("--realizations", type=int, default=30)
    p.add_argument("--full-realizations", action="store_true",
                   help="use 300 realizations per noise level")
    p.add_argument("--workers", type=int, default=1)

    for name, aliases in (("verify", ["verify-asymptotics"]),):
        p = sub.add_parser(name, aliases=aliases, help="run the self-check suites")
        p.add_argument("--m-max", type=int, default=max(verify.ASYMPTOTIC_DEGREES),
                       help="largest degree of the asymptotic table")
        p.add_argument("--degree-cap", type=int, default=max(verify.ASYMPTOTIC_DEGREES))
        p.add_argument("--out", default=None)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    cfg = read_config(known.config)
    subs = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in subs.choices.values():
        dests = {a.dest: a for a in sp._actions}
        sp.set_defaults(**{k: (dests[k].type(v) if dests[k].type else v)
                           for k, v in cfg.items() if k in dests})


def _outdir(args):
    out = Path(args.out or os.environ.get(OUTDIR_ENV) or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _problem(args):
    if args.custom:
        return data.load_custom(args.custom, tail=args.tail)
    return data.get_problem(args.problem)


def _params(args):
    return PlateauParams(delta=args.delta, L_min=args.l_min, tau=args.tau)


def _grid(args):
    return np.linspace(args.x_min, args.x_max, args.points)


def cmd_list_problems(args):
    for pid, p in data.CATALOG.items():
        norm = "quadrature" if p.norm_sq is None else format(p.norm_sq, ".10g")
        print(f"{pid}\t{p.description}\t||F||^2 = {norm}")
    return EXIT_OK


def cmd_forward(args):
    problem = _problem(args)
    clean = data.forward_taylor(problem, args.N, tol=args.tol)
    noisy = data.add_noise(clean, data.NoiseSpec(eps=args.eps, seed=args.seed))
    out = _outdir(args)
    write_csv(out / "coefficients.csv", ["n", "a_n", "a_n_noisy"],
              zip(range(clean.N + 1), clean.a, noisy.a))
    return EXIT_OK


def _write_spectral(out, taylor, series):
    env = envelope(taylor, trim=True)
    k = np.arange(series.m_max + 1)
    write_csv(out / "spectral.csv", ["m", "r_m", "M_k", "E_k"],
              zip(k, series.r, series.M, env(k)))


def _write_reconstruction(path, problem, samples):
    ft = problem.F(samples.xs)
    write_csv(path, ["x", "F_true", "F_rec"], zip(samples.xs, ft, samples.values))


def cmd_reconstruct(args):
    preset = PRESETS.get(args.preset, {})
    if preset:
        args.problem = preset["problem"]
        args.custom = None
    problem = _problem(args)
    out = _outdir(args)
    clean = data.forward_taylor(problem, args.N, tol=args.tol)
    noisy = data.add_noise(clean, data.NoiseSpec(eps=args.eps, seed=args.seed))
    write_csv(out / "coefficients.csv", ["n", "a_n", "a_n_noisy"],
              zip(range(clean.N + 1), clean.a, noisy.a))
    _write_spectral(out, noisy, compute_spectral(noisy, args.m_max))

    header = [f"problem = {problem.id}", f"N = {args.N}", f"eps = {args.eps!r}",
              f"seed = {args.seed}", f"m_max = {args.m_max}"]
    try:
        res = pipeline.run_pipeline(
            problem, N=args.N, eps=args.eps, seed=args.seed, m_max=args.m_max,
            params=_params(args), grid=_grid(args), k0=args.k0,
            k0_mode=args.k0_mode, clean=clean)
    except NoPlateauError as exc:
        (out / "report.txt").write_text(
            "\n".join(header + ["status = no-plateau", f"k_a = {exc.k_a}",
                                f"message = {exc}"]) + "\n")
        raise

    lines = header + [f"k0_mode = {res.k0_mode}", f"k0 = {res.k0}",
                      f"M_k0 = {res.plateau_height!r}",
                      f"k0_norm = {_fmt(res.k0_norm)}", f"norm_sq = {_fmt(res.norm_sq)}",
                      f"mse_1_20 = {_fmt(res.mse)}", f"snr_db = {_fmt(res.snr_db)}"]
    if res.report is not None:
        lines.append(res.report.to_text().rstrip())
        write_csv(out / "plateau.csv", res.report.csv_header(), [res.report.csv_row()])
    _write_reconstruction(out / "reconstruction.csv", problem, res.samples)

    if preset.get("forced_k0") is not None:
        k = preset["forced_k0"]
        alt = pipeline.run_pipeline(problem, N=args.N, eps=args.eps, seed=args.seed,
                                    m_max=args.m_max, grid=_grid(args), k0=k, clean=clean)
        _write_reconstruction(out / f"reconstruction_k{k}.csv", problem, alt.samples)
        lines.append(f"mse_1_20_at_k{k} = {_fmt(alt.mse)}")
    if preset.get("norm_compare") and res.k0_norm is not None:
        alt = pipeline.run_pipeline(problem, N=args.N, eps=args.eps, seed=args.seed,
                                    m_max=args.m_max, grid=_grid(args), k0=res.k0_norm,
                                    clean=clean)
        _write_reconstruction(out / "reconstruction_norm.csv", problem, alt.samples)
        lines.append(f"mse_1_20_at_k0_norm = {_fmt(alt.mse)}")
    if args.cauchy or preset.get("cauchy"):
        zs, ft, fr = pipeline.cauchy_comparison(res)
        write_csv(out / "cauchy.csv", ["re_z", "f_taylor", "f_cauchy_rec"], zip(zs, ft, fr))
    (out / "report.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return EXIT_OK


def cmd_noise_sweep(args):
    if args.preset == "fig4":
        args.problem, args.custom = "F2", None
    problem = _problem(args)
    eps_list = [float(e) for e in args.eps_list.split(",") if e.strip()]
    n_real = 300 if args.full_realizations else args.realizations
    rows = pipeline.noise_sweep(problem, eps_list, realizations=n_real, N=args.N,
                                base_seed=args.seed, m_max=args.m_max, params=_params(args),
                                grid=_grid(args), workers=args.workers)
    out = _outdir(args)
    fields = ["eps", "realization", "seed", "k0_plateau", "k0_norm",
              "mse_plateau", "mse_norm", "snr_db"]
    write_csv(out / "noise_sweep.csv", fields,
              ([getattr(r, f) for f in fields] for r in rows))
    avg = pipeline.sweep_averages(rows)
    afields = ["eps", "snr_db", "k0_plateau", "k0_norm", "mse_plateau", "mse_norm",
               "no_plateau", "realizations"]
    write_csv(out / "noise_sweep_summary.csv", afields,
              ([a[f] for f in afields] for a in avg))
    lines = [f"problem = {problem.id}", f"realizations = {n_real}"]
    fit_rows = [a for a in avg if a["eps"] > 0 and a["k0_norm"] is not None]
    if len(fit_rows) >= 2:
        a0, b, r2 = pipeline.log_fit([a["eps"] for a in fit_rows],
                                     [a["k0_norm"] for a in fit_rows])
        lines += [f"fit k0_norm = {a0:.6g} + {b:.6g} * log10(1/eps)", f"fit R2 = {r2:.6g}"]
    (out / "noise_sweep_report.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(args):
    if args.m_max > args.degree_cap:
        raise DegreeCapError(
            f"degree {args.m_max} exceeds the configured cap {args.degree_cap}",
            degree=args.m_max)
    ms = tuple(m for m in verify.ASYMPTOTIC_DEGREES if m < args.m_max) + (args.m_max,)
    checks = [verify.oracle_check(), verify.asymptotic_check(ms=ms, cap=args.degree_cap),
              verify.basis_check(), verify.pollaczek_check(), verify.parseval_check()]
    out = _outdir(args)
    write_csv(out / "asymptotics.csv", ["n", "m", "q_m", "model", "rel_error"],
              verify.asymptotic_table(ms=ms, cap=args.degree_cap))
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  measured={c.measured:.3e}  "
             f"threshold={c.threshold:.3e}  {c.detail}" for c in checks]
    (out / "verification.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


COMMANDS = {
    "list-problems": cmd_list_problems,
    "forward": cmd_forward,
    "reconstruct": cmd_reconstruct,
    "noise-sweep": cmd_noise_sweep,
    "verify": cmd_verify,
    "verify-asymptotics": cmd_verify,
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, DomainError, ValueError) as exc:
        print(f"cutplane: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except NoPlateauError as exc:
        print(f"cutplane: {exc}", file=sys.stderr)
        return EXIT_NO_PLATEAU
    except QuadratureError as exc:
        print(f"cutplane: quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except DegreeCapError as exc:
        print(f"cutplane: {exc}", file=sys.stderr)
        return EXIT_DEGREE_CAP
    except DomainError as exc:
        print(f"cutplane: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cutplane: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CutplaneError as exc:
        print(f"cutplane: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
