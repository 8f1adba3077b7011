"""Dense complex linear algebra used by the samplers and the Monte Carlo estimator.

Matrices are plain ``numpy`` arrays. The factorizations are LAPACK's
(Householder QR, Cholesky, Hermitian tridiagonal eigensolver) behind the
small checks this package relies on.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "LinAlgError",
    "RankDeficientError",
    "NotPositiveDefiniteError",
    "NotHermitianError",
    "as_complex_matrix",
    "hermitize",
    "qr_unitary",
    "cholesky_logdet",
    "hermitian_eigenvalues",
]

HERMITIAN_TOL = 1e-10
_CHUNK = 256


class LinAlgError(ValueError):
    pass


class RankDeficientError(LinAlgError):
    pass


class NotPositiveDefiniteError(LinAlgError):
    pass


class NotHermitianError(LinAlgError):
    pass


def as_complex_matrix(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim < 2:
        raise ValueError(f"expected a matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def hermitize(h, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(h + h^H) / 2``; raise if ``h`` is further than ``tol`` from Hermitian.

    Works on stacks of matrices along the leading axes. ``tol`` is relative
    to the largest entry magnitude (or absolute when that is below 1).
    """
    h = as_complex_matrix(h)
    if h.shape[-1] != h.shape[-2]:
        raise NotHermitianError(f"matrix is not square: {h.shape}")
    hh = np.conj(np.swapaxes(h, -1, -2))
    scale = max(1.0, float(np.max(np.abs(h), initial=0.0)))
    if np.max(np.abs(h - hh), initial=0.0) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return 0.5 * (h + hh)


def qr_unitary(a) -> tuple[np.ndarray, np.ndarray]:
    """Householder QR ``a = Q R`` of a square matrix with ``Q`` unitary.

    Raises
    ------
    RankDeficientError
        If a diagonal entry of ``R`` vanishes relative to ``a``'s scale.
    """
    a = as_complex_matrix(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"qr_unitary needs a square matrix, got {a.shape}")
    q, r = np.linalg.qr(a, mode="complete")
    scale = max(float(np.max(np.abs(a), initial=0.0)), np.finfo(float).tiny)
    if np.min(np.abs(np.diag(r))) <= a.shape[0] * np.finfo(float).eps * scale:
        raise RankDeficientError("zero pivot in QR; matrix is rank deficient")
    return q, r


def cholesky_logdet(h):
    """``ln det h`` of a Hermitian positive definite matrix, via ``2 sum ln diag(L)``.

    Accepts a single matrix or a stack of shape ``(..., n, n)``; returns a
    float or an array over the leading axes.
    """
    h = np.asarray(h)
    if h.ndim > 2 and h.shape[0] > _CHUNK:
        return np.concatenate(
            [cholesky_logdet(h[i : i + _CHUNK]) for i in range(0, h.shape[0], _CHUNK)]
        )
    h = hermitize(h)
    try:
        low = np.linalg.cholesky(h)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError("matrix is not positive definite") from exc
    diag = np.real(np.diagonal(low, axis1=-2, axis2=-1))
    if np.any(diag <= 0):
        raise NotPositiveDefiniteError("matrix is not positive definite")
    out = 2.0 * np.sum(np.log(diag), axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def hermitian_eigenvalues(h) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix (or stack), ascending."""
    return np.linalg.eigvalsh(hermitize(h))
