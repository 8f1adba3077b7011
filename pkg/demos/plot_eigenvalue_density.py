"""
Eigenvalue density of the Jacobi ensemble
=========================================

The squared singular values of a corner of a Haar unitary follow a Jacobi
ensemble on ``[0, 1]``. Here the one-point density is compared against a
histogram of sampled eigenvalues.
"""

# %%
import numpy as np

from jacobi_mimo import ChannelConfig, canonicalize, jacobi_params, marginal_density
from jacobi_mimo.linalg import hermitian_eigenvalues
from jacobi_mimo.randmat import RngStream, sample_gram

cfg = ChannelConfig(8, 2, 3)
p = jacobi_params(canonicalize(cfg).reduced)
print(cfg, "->", p)

# %%
# Draw channels and collect every eigenvalue of ``H^H H``.
lams = np.concatenate([hermitian_eigenvalues(sample_gram(cfg, RngStream(3, t))) for t in range(5000)])

# %%
# Histogram versus density, bin by bin.
edges = np.linspace(0, 1, 11)
counts, _ = np.histogram(lams, bins=edges)
emp = counts / (lams.size * np.diff(edges))
mid = 0.5 * (edges[:-1] + edges[1:])
for x, e, f in zip(mid, emp, marginal_density(mid, p)):
    print(f"lambda={x:.2f}  empirical={e:6.3f}  density={f:6.3f}")

# %%
# The mean eigenvalue is ``m_r / m``.
print("sample mean", lams.mean(), "expected", cfg.m_r / cfg.m)
