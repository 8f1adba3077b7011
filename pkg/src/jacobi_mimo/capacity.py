"""Ergodic capacity of the Jacobi MIMO channel: bounds, approximations, exact values.

All quantities are in nats per channel use. Capacity here is
``E[ln det(I + rho * H^H H)]`` where ``H`` is the ``m_r x m_t`` corner of an
``m x m`` Haar unitary, i.e. ``sum_i ln(1 + rho * lam_i)`` over the
eigenvalues ``lam_i`` of ``H^H H``. This is the normalization under which
the Jensen upper bound ``m_t ln(1 + rho m_r/m)``, the determinant lower bound
and the ``(m_t + m_r - m) ln(1 + rho)`` offset for excess channels all hold.

Every public function accepts any valid configuration and routes it
through :func:`~jacobi_mimo.model.canonicalize`; the closed forms are
evaluated on the reduced configuration and the offset is added back.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .density import marginal_density
from .linalg import cholesky_logdet
from .model import ChannelConfig, as_rho, canonicalize, jacobi_params, snr_from_db
from .randmat import RngStream, sample_gram
from .specfun import digamma_int, gauss_legendre, jacobi_ratio_b_over_a, ln_F

__all__ = [
    "CapacityEstimate",
    "SweepRow",
    "upper_bound",
    "lower_bound",
    "low_snr_approx",
    "high_snr_approx",
    "mean_eigenvalue",
    "mean_eigenvalue_series",
    "expected_logdet",
    "default_quad_order",
    "min_quad_order",
    "capacity_quadrature",
    "gram_draws",
    "capacity_monte_carlo",
    "monte_carlo_many",
    "db_grid",
    "sweep",
]

DEFAULT_TRIALS = 10_000
DEFAULT_SEED = 42


@dataclass(frozen=True)
class CapacityEstimate:
    """Monte Carlo mean and its standard error (sample std / sqrt(trials))."""

    mean: float
    std_error: float
    trials: int


@dataclass(frozen=True)
class SweepRow:
    snr_db: float
    lower: float
    upper: float
    low_snr: float
    high_snr: float
    exact: float
    mc_mean: float
    mc_stderr: float
    trials: int


def _offset(coeff, rho):
    return coeff * math.log1p(rho)


def upper_bound(cfg: ChannelConfig, snr) -> float:
    """Jensen bound ``m_t ln(1 + rho m_r / m)`` on the canonical part, plus offset."""
    rho = as_rho(snr)
    cf = canonicalize(cfg)
    out = _offset(cf.coeff, rho)
    if cf.reduced is not None:
        r = cf.reduced
        out += r.m_t * math.log1p(rho * r.m_r / r.m)
    return out


def lower_bound(cfg: ChannelConfig, snr) -> float:
    """``m_t ln(1 + rho exp(-ln F / m_t))`` on the canonical part, plus offset."""
    rho = as_rho(snr)
    cf = canonicalize(cfg)
    out = _offset(cf.coeff, rho)
    if cf.reduced is not None:
        r = cf.reduced
        out += r.m_t * math.log1p(rho * math.exp(-ln_F(r) / r.m_t))
    return out


def low_snr_approx(cfg: ChannelConfig, snr) -> float:
    rho = as_rho(snr)
    cf = canonicalize(cfg)
    out = _offset(cf.coeff, rho)
    if cf.reduced is not None:
        r = cf.reduced
        out += r.m_t * r.m_r * rho / r.m
    return out


def high_snr_approx(cfg: ChannelConfig, snr) -> float:
    """``m_t ln(rho) - ln F`` on the canonical part, plus offset. Not clamped at zero."""
    rho = as_rho(snr)
    if rho == 0:
        raise ValueError("high-SNR approximation is undefined at rho = 0")
    cf = canonicalize(cfg)
    out = _offset(cf.coeff, rho)
    if cf.reduced is not None:
        r = cf.reduced
        out += r.m_t * math.log(rho) - ln_F(r)
    return out


def mean_eigenvalue(cfg: ChannelConfig) -> float:
    """Mean eigenvalue of ``H^H H``: ``m_r / m``."""
    if not cfg.is_canonical:
        raise ValueError(f"{cfg} is not canonical; call canonicalize() first")
    return cfg.m_r / cfg.m


def mean_eigenvalue_series(cfg: ChannelConfig) -> float:
    """Mean eigenvalue as ``(1/2n) sum_k (1 + B_k/A_k)`` from the Jacobi recurrence."""
    p = jacobi_params(cfg)
    return math.fsum(1.0 + jacobi_ratio_b_over_a(k, p.a, p.b) for k in range(p.n)) / (2 * p.n)


def expected_logdet(cfg: ChannelConfig) -> float:
    """``E[ln det(H^H H)] = sum_{j<m_t} psi(m_r - j) - psi(m - j)``; needs ``m_t <= m_r``."""
    if not cfg.is_ordered:
        raise ValueError(f"need m_t <= m_r, got {cfg}")
    return math.fsum(
        digamma_int(cfg.m_r - j) - digamma_int(cfg.m - j) for j in range(cfg.m_t)
    )


def min_quad_order(cfg: ChannelConfig) -> int:
    r = canonicalize(cfg).reduced
    if r is None:
        return 1
    p = jacobi_params(r)
    return math.ceil((p.a + p.b + 2 * p.n) / 2) + 16


def default_quad_order(cfg: ChannelConfig) -> int:
    r = canonicalize(cfg).reduced
    if r is None:
        return 64
    p = jacobi_params(r)
    return max(64, p.a + p.b + 2 * p.n + 32)


def _panels(rho):
    # geometric grading toward 0 keeps the log singularity at -1/rho
    # at least one panel width away from every panel
    pts = [0.0]
    if rho > 1:
        x = 1.0 / rho
        while x < 1.0:
            pts.append(x)
            x *= 4.0
    pts.append(1.0)
    return pts


def capacity_quadrature(cfg: ChannelConfig, snr, order: int | None = None) -> float:
    """Exact ergodic capacity ``m_t int_0^1 ln(1 + rho lam) f(lam) dlam`` plus offset.

    ``f`` is the one-point eigenvalue density. The integral is done with
    composite Gauss-Legendre, ``order`` nodes per panel, with panels graded
    geometrically toward ``lam = 0`` when ``rho > 1``.
    """
    rho = as_rho(snr)
    cf = canonicalize(cfg)
    out = _offset(cf.coeff, rho)
    if cf.reduced is None or rho == 0:
        return out
    if order is None:
        order = default_quad_order(cfg)
    if order < min_quad_order(cfg):
        raise ValueError(f"quadrature order {order} below minimum {min_quad_order(cfg)} for {cfg}")
    p = jacobi_params(cf.reduced)
    rule = gauss_legendre(order)
    pts = _panels(rho)
    nodes, weights = zip(*(rule.mapped(lo, hi) for lo, hi in zip(pts[:-1], pts[1:])))
    lam = np.concatenate(nodes)
    w = np.concatenate(weights)
    integrand = np.log1p(rho * lam) * marginal_density(lam, p)
    return out + p.n * math.fsum(w * integrand)


def _chunks(trials, pieces):
    bounds = np.linspace(0, trials, pieces + 1).astype(int)
    return [range(lo, hi) for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]


def gram_draws(cfg: ChannelConfig, trials: int, seed: int = DEFAULT_SEED, workers: int = 1) -> np.ndarray:
    """Stack of ``trials`` Gram matrices ``H^H H``; trial ``t`` uses ``RngStream(seed, t)``.

    ``cfg`` is sampled as given (no swap or reduction). The output is
    identical for any ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")

    def run(idx):
        return np.stack([sample_gram(cfg, RngStream(seed, t)) for t in idx])

    if workers <= 1:
        return run(range(trials))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, _chunks(trials, 4 * workers)))
    return np.concatenate(parts)


def _estimate(values):
    values = np.asarray(values, dtype=float)
    n = values.size
    sd = float(np.std(values, ddof=1)) if n > 1 else 0.0
    return CapacityEstimate(float(np.mean(values)), sd / math.sqrt(n), n)


def monte_carlo_many(
    cfg: ChannelConfig, rhos, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, workers: int = 1
) -> list[CapacityEstimate]:
    """Monte Carlo capacity at several SNRs from one shared set of channel draws."""
    rhos = [as_rho(r) for r in rhos]
    if trials < 1:
        raise ValueError("trials must be >= 1")
    c = cfg if cfg.is_ordered else cfg.swapped()
    if c.m_r == c.m:
        # H has orthonormal columns, so H^H H = I on every draw
        return [CapacityEstimate(c.m_t * math.log1p(r), 0.0, trials) for r in rhos]
    grams = gram_draws(c, trials, seed, workers)
    eye = np.eye(c.m_t)
    out = []
    for r in rhos:
        if r == 0:
            out.append(CapacityEstimate(0.0, 0.0, trials))
            continue
        out.append(_estimate(cholesky_logdet(eye + r * grams)))
    return out


def capacity_monte_carlo(
    cfg: ChannelConfig, snr, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, workers: int = 1
) -> CapacityEstimate:
    """Sample mean of ``ln det(I + rho H^H H)`` over Haar channel draws.

    ``m_r < m_t`` is handled by swapping before sampling; configurations with
    ``m_t + m_r > m`` are sampled directly, not reduced.
    """
    if trials < 100:
        raise ValueError("Monte Carlo needs trials >= 100")
    return monte_carlo_many(cfg, [snr], trials, seed, workers)[0]


def db_grid(db_start: float, db_stop: float, db_step: float) -> list[float]:
    """Inclusive grid ``start, start+step, ..., <= stop``."""
    if not db_step > 0:
        raise ValueError("db_step must be > 0")
    if db_start > db_stop:
        raise ValueError("empty SNR grid: db_start > db_stop")
    count = int(math.floor((db_stop - db_start) / db_step + 1e-9)) + 1
    return [round(db_start + i * db_step, 10) for i in range(count)]


def sweep(
    cfg: ChannelConfig,
    db_start: float,
    db_stop: float,
    db_step: float,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    order: int | None = None,
    workers: int = 1,
) -> list[SweepRow]:
    grid = db_grid(db_start, db_stop, db_step)
    rhos = [snr_from_db(d).rho for d in grid]
    mc = monte_carlo_many(cfg, rhos, trials, seed, workers)
    rows = []
    for d, r, est in zip(grid, rhos, mc):
        rows.append(
            SweepRow(
                snr_db=d,
                lower=lower_bound(cfg, r),
                upper=upper_bound(cfg, r),
                low_snr=low_snr_approx(cfg, r),
                high_snr=high_snr_approx(cfg, r),
                exact=capacity_quadrature(cfg, r, order),
                mc_mean=est.mean,
                mc_stderr=est.std_error,
                trials=est.trials,
            )
        )
    return rows
