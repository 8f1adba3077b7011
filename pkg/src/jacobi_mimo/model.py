"""Channel configurations, SNR handling and the canonical reduction.

A configuration ``(m, m_t, m_r)`` describes an ``m``-channel lossless fiber
with ``m_t`` excited inputs and ``m_r`` excited outputs. Every capacity
computation first maps the configuration to a canonical one with
``m_t <= m_r`` and ``m_t + m_r <= m``; channels in excess of ``m`` are fully
transmitted and contribute ``ln(1 + rho)`` each.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ChannelConfig",
    "JacobiParams",
    "Snr",
    "CanonicalForm",
    "snr_from_db",
    "canonicalize",
    "jacobi_params",
    "nats_to_bits",
]


def _check_int(name, value, lo=1):
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    if value < lo:
        raise ValueError(f"{name} must be >= {lo}, got {value}")


@dataclass(frozen=True)
class ChannelConfig:
    """Total modes ``m``, excited transmit channels ``m_t``, receive channels ``m_r``."""

    m: int
    m_t: int
    m_r: int

    def __post_init__(self):
        _check_int("m", self.m)
        _check_int("m_t", self.m_t)
        _check_int("m_r", self.m_r)
        if self.m_t > self.m or self.m_r > self.m:
            raise ValueError(f"need m_t <= m and m_r <= m, got {self}")

    @property
    def is_ordered(self) -> bool:
        return self.m_t <= self.m_r

    @property
    def is_canonical(self) -> bool:
        return self.m_t <= self.m_r and self.m_t + self.m_r <= self.m

    def swapped(self) -> ChannelConfig:
        return ChannelConfig(self.m, self.m_r, self.m_t)

    def label(self) -> str:
        return f"m{self.m}_mt{self.m_t}_mr{self.m_r}"

    def __str__(self):
        return f"(m={self.m}, m_t={self.m_t}, m_r={self.m_r})"


@dataclass(frozen=True)
class JacobiParams:
    """Exponents of the Jacobi weight ``lam**a * (1 - lam)**b`` and eigenvalue count ``n``."""

    a: int
    b: int
    n: int

    def __post_init__(self):
        _check_int("a", self.a, lo=0)
        _check_int("b", self.b, lo=0)
        _check_int("n", self.n)


@dataclass(frozen=True)
class Snr:
    """Linear signal-to-noise ratio ``rho = P / sigma**2``."""

    rho: float

    def __post_init__(self):
        rho = float(self.rho)
        if not math.isfinite(rho) or rho < 0:
            raise ValueError(f"rho must be finite and >= 0, got {self.rho!r}")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_db(cls, db: float) -> Snr:
        return snr_from_db(db)

    @property
    def db(self) -> float:
        return 10.0 * math.log10(self.rho) if self.rho > 0 else -math.inf

    def __float__(self):
        return self.rho


def as_rho(snr) -> float:
    """Accept an :class:`Snr` or a bare number and return the validated linear ratio."""
    return Snr(float(snr)).rho


@dataclass(frozen=True)
class CanonicalForm:
    """``C(original) = coeff * ln(1 + rho) + C(reduced)``; ``reduced`` is None when empty."""

    coeff: int
    reduced: ChannelConfig | None

    @property
    def is_empty(self) -> bool:
        return self.reduced is None


def snr_from_db(db: float) -> Snr:
    db = float(db)
    if not math.isfinite(db):
        raise ValueError(f"SNR in dB must be finite, got {db!r}")
    return Snr(10.0 ** (db / 10.0))


def canonicalize(cfg: ChannelConfig) -> CanonicalForm:
    """Reduce ``cfg`` to ``m_t <= m_r``, ``m_t + m_r <= m``.

    Order: swap, then strip the ``m_t + m_r - m`` fully transmitted channels,
    then swap again if needed. The result is a fixed point.

    Examples
    --------
    >>> canonicalize(ChannelConfig(4, 3, 3))
    CanonicalForm(coeff=2, reduced=ChannelConfig(m=4, m_t=1, m_r=1))
    """
    m, mt, mr = cfg.m, cfg.m_t, cfg.m_r
    if mr < mt:
        mt, mr = mr, mt
    coeff = 0
    if mt + mr > m:
        coeff = mt + mr - m
        mt, mr = m - mr, m - mt
        if mr < mt:
            mt, mr = mr, mt
    if mt == 0:
        return CanonicalForm(coeff, None)
    return CanonicalForm(coeff, ChannelConfig(m, mt, mr))


def jacobi_params(cfg: ChannelConfig) -> JacobiParams:
    if not cfg.is_canonical:
        raise ValueError(
            f"{cfg} is not canonical (need m_t <= m_r and m_t + m_r <= m); "
            "call canonicalize() first"
        )
    return JacobiParams(a=cfg.m_r - cfg.m_t, b=cfg.m - cfg.m_r - cfg.m_t, n=cfg.m_t)


def nats_to_bits(c: float) -> float:
    return c / math.log(2.0)
