"""Eigenvalue densities of the Jacobi unitary ensemble.

Eigenvalues are those of the Gram matrix ``H^H H`` and live on ``[0, 1]``.
The joint density carries the weight ``lam**a * (1 - lam)**b`` and a squared
Vandermonde; the one-point marginal is a finite sum of squared Jacobi
polynomials in ``1 - 2*lam``.
"""
from __future__ import annotations

import math

import numpy as np

from .model import JacobiParams
from .specfun import jacobi_poly_table, ln_jacobi_norm_e

__all__ = [
    "selberg_constant",
    "selberg_constant_shifted",
    "joint_density",
    "marginal_density",
]


def selberg_constant(p: JacobiParams) -> float:
    """Log of the Selberg integral ``int_{[0,1]^n} prod lam^a (1-lam)^b V(lam)^2``.

    ``sum_{j=0}^{n-1} [lnG(a+1+j) + lnG(b+1+j) + lnG(2+j) - lnG(a+b+n+j+1)]``.
    This is the integral over the whole cube; restricted to ordered
    eigenvalues the integral is smaller by ``n!``.
    """
    a, b, n = p.a, p.b, p.n
    return math.fsum(
        math.lgamma(a + 1 + j)
        + math.lgamma(b + 1 + j)
        + math.lgamma(2 + j)
        - math.lgamma(a + b + n + j + 1)
        for j in range(n)
    )


def selberg_constant_shifted(p: JacobiParams) -> float:
    """Same product with the index shifted to ``j = 1..n``. It does not normalize;
    kept to measure the discrepancy."""
    a, b, n = p.a, p.b, p.n
    return math.fsum(
        math.lgamma(a + 1 + j)
        + math.lgamma(b + 1 + j)
        + math.lgamma(2 + j)
        - math.lgamma(a + b + n + j + 1)
        - math.lgamma(2)
        for j in range(1, n + 1)
    )


def _log_weight(lam, a, b):
    # 0**0 == 1: zero exponents contribute nothing even at the endpoints
    with np.errstate(divide="ignore"):
        out = np.zeros_like(lam, dtype=float)
        if a:
            out = out + a * np.log(lam)
        if b:
            out = out + b * np.log1p(-lam)
    return out


def joint_density(lams, p: JacobiParams) -> float:
    """Density of the ordered eigenvalues ``lam_1 >= ... >= lam_n``.

    Normalized on the ordered simplex, so it equals ``n!`` times the
    Selberg-normalized symmetric density.
    """
    lam = np.asarray(lams, dtype=float)
    if lam.shape != (p.n,):
        raise ValueError(f"expected {p.n} eigenvalues, got shape {lam.shape}")
    if np.any((lam < 0) | (lam > 1)):
        raise ValueError("eigenvalues must lie in [0, 1]")
    if np.any(np.diff(lam) > 0):
        raise ValueError("eigenvalues must be ordered descending")
    logw = float(np.sum(_log_weight(lam, p.a, p.b)))
    diffs = (lam[:, None] - lam[None, :])[np.triu_indices(p.n, 1)]
    if logw == -math.inf or np.any(diffs == 0):
        return 0.0
    log_v2 = 2.0 * float(np.sum(np.log(np.abs(diffs))))
    return math.exp(math.lgamma(p.n + 1) - selberg_constant(p) + logw + log_v2)


def marginal_density(lam, p: JacobiParams):
    """One-point density of a uniformly chosen eigenvalue.

    ``(1/n) sum_{k<n} e_{k,a,b}^{-1} lam^a (1-lam)^b P_k^{(a,b)}(1 - 2 lam)^2``.
    Accepts scalars or arrays; zero outside ``[0, 1]``.
    """
    lam = np.asarray(lam, dtype=float)
    inside = (lam >= 0) & (lam <= 1)
    x = np.where(inside, lam, 0.5)
    polys = jacobi_poly_table(p.n - 1, p.a, p.b, 1.0 - 2.0 * x)
    inv_e = np.exp([-ln_jacobi_norm_e(k, p.a, p.b) for k in range(p.n)])
    s = np.tensordot(inv_e, polys * polys, axes=1)
    out = np.where(inside, np.exp(_log_weight(x, p.a, p.b)) * s / p.n, 0.0)
    return float(out) if out.ndim == 0 else out
