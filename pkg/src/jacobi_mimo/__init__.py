"""Ergodic capacity of uncorrelated MIMO Jacobi-fading channels.

The channel is the ``m_r x m_t`` corner of an ``m x m`` Haar unitary, the
model for strongly coupled multi-core / multi-mode fiber. The package gives
the Jensen upper bound, the determinant lower bound, low- and high-SNR
approximations, the exact capacity by quadrature over the eigenvalue
density, and a Monte Carlo estimator with reproducible per-trial streams.
"""
from .capacity import (
    CapacityEstimate,
    SweepRow,
    capacity_monte_carlo,
    capacity_quadrature,
    expected_logdet,
    high_snr_approx,
    low_snr_approx,
    lower_bound,
    mean_eigenvalue,
    sweep,
    upper_bound,
)
from .density import joint_density, marginal_density, selberg_constant
from .model import (
    CanonicalForm,
    ChannelConfig,
    JacobiParams,
    Snr,
    canonicalize,
    jacobi_params,
    nats_to_bits,
    snr_from_db,
)
from .randmat import RngStream

__version__ = "0.1.0"
