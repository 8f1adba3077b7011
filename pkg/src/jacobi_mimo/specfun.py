"""Special functions for the capacity closed forms.

Log-gamma, digamma at the positive integers, Jacobi polynomials by upward
recurrence together with their norm constants, the harmonic double sum
``ln F`` of the lower bound, and Gauss-Legendre rules.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .model import ChannelConfig

__all__ = [
    "EULER_GAMMA",
    "QuadratureRule",
    "ln_gamma",
    "digamma_int",
    "jacobi_recurrence_coeffs",
    "jacobi_poly",
    "jacobi_poly_table",
    "jacobi_norm_e",
    "ln_jacobi_norm_e",
    "jacobi_ratio_b_over_a",
    "ln_F",
    "gauss_legendre",
]

EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992

MAX_QUAD_ORDER = 2048


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"ln_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


@lru_cache(maxsize=None)
def _harmonic(n: int) -> float:
    # fsum keeps the running sum exact to the last ulp
    return math.fsum(1.0 / k for k in range(1, n + 1))


def digamma_int(n: int) -> float:
    """psi(n) = -gamma + H_{n-1} for positive integer ``n``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"digamma_int needs an integer n >= 1, got {n!r}")
    n = int(n)
    if n == 1:
        return -EULER_GAMMA
    return _harmonic(n - 1) - EULER_GAMMA


def jacobi_recurrence_coeffs(k: int, a: int, b: int) -> tuple[float, float, float]:
    """``(A_k, B_k, C_k)`` with ``P_{k+1} = (A_k x + B_k) P_k - C_k P_{k-1}``, ``k >= 1``."""
    if k < 1:
        raise ValueError("recurrence coefficients are defined for k >= 1")
    s = 2 * k + a + b
    den = (k + 1) * (k + a + b + 1)
    A = (s + 1) * (s + 2) / (2 * den)
    B = (a * a - b * b) * (s + 1) / (2 * den * s)
    C = (k + a) * (k + b) * (s + 2) / (den * s)
    return A, B, C


def jacobi_poly_table(kmax: int, a: int, b: int, x):
    """Stack ``[P_0(x), ..., P_kmax(x)]`` of Jacobi polynomials, shape ``(kmax + 1,) + x.shape``."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 0.5 * ((a + b + 2) * x + (a - b))
    for k in range(1, kmax):
        A, B, C = jacobi_recurrence_coeffs(k, a, b)
        out[k + 1] = (A * x + B) * out[k] - C * out[k - 1]
    return out


def jacobi_poly(k: int, a: int, b: int, x):
    """Jacobi polynomial ``P_k^{(a,b)}(x)``; scalar in, scalar out."""
    if k < 0:
        raise ValueError("degree k must be >= 0")
    val = jacobi_poly_table(k, a, b, x)[k]
    return float(val) if np.ndim(val) == 0 else val


def ln_jacobi_norm_e(k: int, a: int, b: int) -> float:
    return (
        math.lgamma(k + a + 1)
        + math.lgamma(k + b + 1)
        - math.lgamma(k + 1)
        - math.log(2 * k + a + b + 1)
        - math.lgamma(k + a + b + 1)
    )


def jacobi_norm_e(k: int, a: int, b: int) -> float:
    """``e_{k,a,b} = G(k+a+1) G(k+b+1) / (k! (2k+a+b+1) G(k+a+b+1))``.

    The squared norm of ``P_k^{(a,b)}`` under the weight ``(1-x)^a (1+x)^b``
    on ``[-1, 1]`` is ``2**(a+b+1) * e_{k,a,b}``.
    """
    if k < 0 or a < 0 or b < 0:
        raise ValueError("k, a, b must be >= 0")
    return math.exp(ln_jacobi_norm_e(k, a, b))


def jacobi_ratio_b_over_a(k: int, a: int, b: int) -> float:
    """``B_k / A_k`` in the cancelled form, defined as 0 whenever ``a == b``."""
    if a == b:
        return 0.0
    s = 2 * k + a + b
    return (a * a - b * b) / (s * (s + 2))


def ln_F(cfg: ChannelConfig) -> float:
    """``sum_{j<m_t} sum_{k<m-m_r} 1/(m_r + k - j)``; zero when ``m_r == m``.

    Requires ``m_t <= m_r`` so every denominator is at least 1.
    """
    if not cfg.is_ordered:
        raise ValueError(f"ln_F needs m_t <= m_r, got {cfg}")
    terms = (
        1.0 / (cfg.m_r + k - j)
        for j in range(cfg.m_t)
        for k in range(cfg.m - cfg.m_r)
    )
    return math.fsum(terms)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on ``[-1, 1]``."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f, lo: float = -1.0, hi: float = 1.0) -> float:
        """Apply the rule to ``f`` on ``[lo, hi]``; ``f`` must accept an array."""
        half = 0.5 * (hi - lo)
        x = lo + half * (self.nodes + 1.0)
        return half * float(np.dot(self.weights, f(x)))

    def mapped(self, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
        half = 0.5 * (hi - lo)
        return lo + half * (self.nodes + 1.0), half * self.weights


def _legendre_and_derivative(n, x):
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(1, n):
        p0, p1 = p1, ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=64)
def _gauss_legendre_cached(order):
    n = order
    if n == 1:
        return np.array([0.0]), np.array([2.0])
    half = (n + 1) // 2
    i = np.arange(1, half + 1)
    # Tricomi initial guess, largest root first
    theta = np.pi * (4 * i - 1) / (4 * n + 2)
    x = np.cos(theta) * (1 - (n - 1) / (8.0 * n**3))
    for _ in range(30):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    p, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if n % 2:
        x[-1] = 0.0
    nodes = np.concatenate([-x, x[: n // 2][::-1]]) + 0.0
    weights = np.concatenate([w, w[: n // 2][::-1]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule exact for polynomials of degree ``2*order - 1``.

    Nodes are found by Newton iteration on the three-term Legendre recurrence.
    """
    if isinstance(order, bool) or int(order) != order or not 1 <= order <= MAX_QUAD_ORDER:
        raise ValueError(f"order must be an integer in [1, {MAX_QUAD_ORDER}], got {order!r}")
    nodes, weights = _gauss_legendre_cached(int(order))
    return QuadratureRule(nodes, weights, int(order))
