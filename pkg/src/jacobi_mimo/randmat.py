"""Random matrices and variates for the Jacobi channel.

Every sampler takes ``rng`` as either an :class:`RngStream` (a fresh
counter-based generator keyed by ``(seed, stream_id)``) or an already
constructed :class:`numpy.random.Generator`, which is consumed in place.
Monte Carlo trial ``t`` uses ``RngStream(seed, t)`` so results do not depend
on how trials are scheduled.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import RankDeficientError, hermitize, qr_unitary
from .model import ChannelConfig

__all__ = [
    "RngStream",
    "as_generator",
    "sample_ginibre",
    "sample_haar_unitary",
    "sample_channel",
    "sample_gram",
    "sample_jacobi_matrix",
    "sample_beta",
    "sample_logdet_beta_product",
]

_U64 = 1 << 64
MAX_DIM = 256


@dataclass(frozen=True)
class RngStream:
    """Substream ``stream_id`` of the Philox family keyed by ``seed``."""

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def generator(self) -> np.random.Generator:
        # 128-bit Philox key: seed in the low word, stream id in the high word
        key = (int(self.stream_id) << 64) | int(self.seed)
        return np.random.Generator(np.random.Philox(key=key))


def as_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"rng must be an RngStream or numpy Generator, got {type(rng).__name__}")


def _check_dim(dim):
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dimension must be in [1, {MAX_DIM}], got {dim}")


def _complex_normal(gen, shape):
    z = gen.standard_normal(shape + (2,))
    return (z[..., 0] + 1j * z[..., 1]) * np.sqrt(0.5)


def sample_ginibre(dim: int, rng, cols: int | None = None) -> np.ndarray:
    """``dim x cols`` matrix of i.i.d. unit-variance circular complex Gaussians."""
    _check_dim(dim)
    return _complex_normal(as_generator(rng), (dim, dim if cols is None else cols))


def _phase_fix(q, r):
    d = np.diagonal(r).copy()
    return q * (d / np.abs(d))


def sample_haar_unitary(dim: int, rng) -> np.ndarray:
    """Haar-distributed ``dim x dim`` unitary from Ginibre QR with the phase fix ``diag(R_jj/|R_jj|)``."""
    _check_dim(dim)
    gen = as_generator(rng)
    while True:
        try:
            q, r = qr_unitary(_complex_normal(gen, (dim, dim)))
        except RankDeficientError:
            continue
        return _phase_fix(q, r)


def sample_channel(cfg: ChannelConfig, rng) -> np.ndarray:
    """Upper-left ``m_r x m_t`` block of a Haar unitary of dimension ``m``.

    Only the first ``m_t`` columns of the unitary are built: they come from
    the thin QR of an ``m x m_t`` Ginibre matrix with the same phase fix,
    which has the same law as those columns of a full Haar draw.
    """
    _check_dim(cfg.m)
    gen = as_generator(rng)
    while True:
        g = _complex_normal(gen, (cfg.m, cfg.m_t))
        q, r = np.linalg.qr(g, mode="reduced")
        d = np.abs(np.diagonal(r))
        if np.min(d) > cfg.m * np.finfo(float).eps * np.max(np.abs(g)):
            break
    return _phase_fix(q, r)[: cfg.m_r, :]


def sample_gram(cfg: ChannelConfig, rng) -> np.ndarray:
    """``H^H H`` for one channel draw; eigenvalues lie in ``[0, 1]``."""
    h = sample_channel(cfg, rng)
    return hermitize(h.conj().T @ h)


def sample_jacobi_matrix(cfg: ChannelConfig, rng) -> np.ndarray:
    """``J = H^H H / m_t``."""
    return sample_gram(cfg, rng) / cfg.m_t


def sample_beta(alpha: float, beta: float, rng, size=None):
    """Beta(alpha, beta) variates as ``X / (X + Y)`` of independent gamma variates."""
    if not (alpha > 0 and beta > 0):
        raise ValueError(f"beta shape parameters must be > 0, got ({alpha}, {beta})")
    gen = as_generator(rng)
    x = gen.standard_gamma(alpha, size)
    y = gen.standard_gamma(beta, size)
    return x / (x + y)


def sample_logdet_beta_product(cfg: ChannelConfig, rng, size=None):
    """``sum_{j=1}^{m_t} ln T_j`` with independent ``T_j ~ Beta(m_r - j + 1, m - m_r)``.

    Same law as ``ln det(H^H H)``. Exactly 0 when ``m_r == m``.
    """
    if not cfg.is_ordered:
        raise ValueError(f"need m_t <= m_r, got {cfg}")
    gen = as_generator(rng)
    if cfg.m == cfg.m_r:
        return 0.0 if size is None else np.zeros(size)
    total = 0.0 if size is None else np.zeros(size)
    for j in range(1, cfg.m_t + 1):
        total = total + np.log(sample_beta(cfg.m_r - j + 1, cfg.m - cfg.m_r, gen, size))
    return float(total) if size is None else total
