"""End-to-end experiments: forward data, spectral series, truncation, reconstruction.

Noise realizations are independent; realization ``i`` of a sweep uses seed
``base_seed + i``, so results do not depend on how they are scheduled.
"""

from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .data import (NoiseSpec, add_noise, forward_taylor, mse, norm_squared,
                   realization_seed, relative_l2_error, snr_db)
from .errors import BelowFirstTermError, DomainError, NoPlateauError
from .reconstruct import cauchy_eval, default_grid, jump_function, reconstruct, taylor_partial
from .spectral import DEFAULT_M_MAX, compute_spectral, envelope
from .truncation import detect_k0, k0_from_norm

ERROR_INTERVAL = (1.0, 20.0)


@dataclass
class PipelineResult:
    problem: object
    clean: object
    taylor: object
    series: object
    envelope: object
    report: Optional[object]
    k0: int
    k0_mode: str
    k0_norm: Optional[int]
    samples: object
    norm_sq: Optional[float]
    mse: Optional[float]
    snr_db: float

    @property
    def plateau_height(self):
        return float(self.series.M[self.k0])


def _safe_norm(problem):
    try:
        return norm_squared(problem)
    except Exception:  # custom data may not be square integrable to tolerance
        return None


def run_pipeline(problem, N=30, eps=0.0, seed=0, m_max=DEFAULT_M_MAX, params=None,
                 grid=None, k0=None, k0_mode="plateau", clean=None, norm_sq=None):
    """Forward data, noise, spectral series, truncation index and reconstruction.

    Parameters
    ----------
    problem : TestProblem
    N : int
        Highest Taylor index used.
    eps : float
        Uniform noise bound; 0 for noiseless data.
    seed : int
        Noise seed.
    k0 : int, optional
        Forced truncation index; overrides ``k0_mode``.
    k0_mode : {"plateau", "norm"}
        Automatic selector: plateau detection or the known-norm definition.
    clean : TaylorData, optional
        Precomputed noiseless data (saves repeated forward solves in sweeps).

    Raises
    ------
    NoPlateauError
        In plateau mode when no plateau is found.
    """
    if clean is None:
        clean = forward_taylor(problem, N)
    taylor = add_noise(clean, NoiseSpec(eps=eps, seed=seed))
    series = compute_spectral(taylor, m_max)
    env = envelope(taylor, trim=True)
    if norm_sq is None:
        norm_sq = _safe_norm(problem)

    k0_norm = None
    if norm_sq is not None:
        try:
            k0_norm = k0_from_norm(series.M, norm_sq)
        except BelowFirstTermError:
            k0_norm = None

    report = None
    if k0 is not None:
        mode = "forced"
        try:
            report = detect_k0(series.M, env, params)
        except NoPlateauError:
            pass
    elif k0_mode == "plateau":
        mode = "plateau"
        report = detect_k0(series.M, env, params)
        k0 = report.k0
    elif k0_mode == "norm":
        mode = "norm"
        if k0_norm is None:
            raise DomainError("norm mode needs a known squared norm with M_0 <= C")
        k0 = k0_norm
    else:
        raise DomainError(f"unknown k0 mode {k0_mode!r}")

    samples = reconstruct(series, k0, default_grid() if grid is None else grid)
    xs = samples.xs
    err = None
    if xs[0] <= ERROR_INTERVAL[0] and xs[-1] >= ERROR_INTERVAL[1]:
        err = mse(samples, problem, ERROR_INTERVAL)
    return PipelineResult(
        problem=problem, clean=clean, taylor=taylor, series=series, envelope=env,
        report=report, k0=k0, k0_mode=mode, k0_norm=k0_norm, samples=samples,
        norm_sq=norm_sq, mse=err, snr_db=snr_db(clean, eps))


def relative_error(result, interval=ERROR_INTERVAL):
    return relative_l2_error(result.samples, result.problem, interval)


def cauchy_comparison(result, zs=None, tol=1e-10):
    """Truncated Taylor sum versus the Cauchy transform of the reconstruction.

    Returns ``(zs, f_taylor, f_cauchy_rec)`` for real points ``zs``
    (default: 101 points on ``[-1/2, 1/2]``).
    """
    zs = np.linspace(-0.5, 0.5, 101) if zs is None else np.asarray(zs, dtype=float)
    F = jump_function(result.series, result.k0)
    f_taylor = taylor_partial(result.taylor, zs)
    f_rec = np.array([cauchy_eval(F, z, tol=tol).real for z in zs])
    return zs, f_taylor, f_rec


@dataclass(frozen=True)
class SweepRow:
    eps: float
    realization: int
    seed: int
    k0_plateau: Optional[int]
    k0_norm: Optional[int]
    mse_plateau: Optional[float]
    mse_norm: Optional[float]
    snr_db: float


def _one_realization(args):
    problem, clean, norm_sq, eps, i, base_seed, m_max, params, grid = args
    seed = realization_seed(base_seed, i)
    taylor = add_noise(clean, NoiseSpec(eps=eps, seed=seed))
    series = compute_spectral(taylor, m_max)
    env = envelope(taylor, trim=True)
    k0p = mp = None
    try:
        k0p = detect_k0(series.M, env, params).k0
        mp = mse(reconstruct(series, k0p, grid), problem, ERROR_INTERVAL)
    except NoPlateauError:
        pass
    k0n = mn = None
    if norm_sq is not None:
        try:
            k0n = k0_from_norm(series.M, norm_sq)
            mn = mse(reconstruct(series, k0n, grid), problem, ERROR_INTERVAL)
        except BelowFirstTermError:
            pass
    return SweepRow(eps=eps, realization=i, seed=seed, k0_plateau=k0p, k0_norm=k0n,
                    mse_plateau=mp, mse_norm=mn, snr_db=snr_db(clean, eps))


def noise_sweep(problem, eps_list, realizations=30, N=30, base_seed=0,
                m_max=DEFAULT_M_MAX, params=None, grid=None, workers=1):
    """Repeat the pipeline over noise levels and seeded realizations.

    Returns the list of :class:`SweepRow` in ``(eps, realization)`` order.
    ``workers > 1`` fans the realizations out to processes (threads for
    custom problems, whose closures cannot be pickled); the rows are
    identical to a sequential run.
    """
    eps_list = list(eps_list)
    if not eps_list:
        raise DomainError("eps_list must not be empty")
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    clean = forward_taylor(problem, N)
    norm_sq = _safe_norm(problem)
    jobs = [(problem, clean, norm_sq, eps, i, base_seed, m_max, params, grid)
            for eps in eps_list for i in range(realizations)]
    if workers > 1:
        executor = ThreadPoolExecutor if problem.id == "custom" else ProcessPoolExecutor
        with executor(max_workers=workers) as pool:
            return list(pool.map(_one_realization, jobs, chunksize=8))
    return [_one_realization(j) for j in jobs]


def _mean(values):
    values = [v for v in values if v is not None]
    return float(np.mean(values)) if values else None


def sweep_averages(rows):
    """Per-eps averages of a sweep, in the order the noise levels appear."""
    out = []
    for eps in dict.fromkeys(r.eps for r in rows):
        sel = [r for r in rows if r.eps == eps]
        out.append({
            "eps": eps,
            "snr_db": sel[0].snr_db,
            "k0_plateau": _mean([r.k0_plateau for r in sel]),
            "k0_norm": _mean([r.k0_norm for r in sel]),
            "mse_plateau": _mean([r.mse_plateau for r in sel]),
            "mse_norm": _mean([r.mse_norm for r in sel]),
            "no_plateau": sum(r.k0_plateau is None for r in sel),
            "realizations": len(sel),
        })
    return out


def log_fit(eps, k0):
    """Least-squares line ``k0 = a + b log10(1/eps)``; returns ``(a, b, R^2)``."""
    x = np.log10(1.0 / np.asarray(eps, dtype=float))
    y = np.asarray(k0, dtype=float)
    b, a = np.polyfit(x, y, 1)
    resid = y - (a + b * x)
    ss_tot = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid ** 2) / ss_tot if ss_tot > 0 else 1.0
    return float(a), float(b), float(r2)


def find_knee(snr, err):
    """Knee of a decreasing error-vs-SNR curve.

    Both axes are rescaled to ``[0, 1]``; the knee is the point lying
    farthest below the chord joining the end points, i.e. where a steep
    decrease turns into a flat floor.  Returns ``(index, gap)`` with the gap
    in rescaled units (0 for a straight line).
    """
    snr = np.asarray(snr, dtype=float)
    err = np.asarray(err, dtype=float)
    order = np.argsort(snr)
    x, y = snr[order], err[order]
    x = (x - x[0]) / (x[-1] - x[0])
    span = y.max() - y.min()
    y = (y - y.min()) / span if span > 0 else np.zeros_like(y)
    chord = y[0] + (y[-1] - y[0]) * x
    gap = chord - y
    i = int(np.argmax(gap))
    return int(order[i]), float(gap[i])
