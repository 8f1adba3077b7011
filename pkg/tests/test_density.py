import math

import numpy as np
import pytest
from scipy import integrate, stats
from scipy.special import betaln

from jacobi_mimo.density import joint_density, marginal_density, selberg_constant, selberg_constant_shifted
from jacobi_mimo.linalg import hermitian_eigenvalues
from jacobi_mimo.model import ChannelConfig, JacobiParams, jacobi_params
from jacobi_mimo.randmat import RngStream, sample_gram
from jacobi_mimo.specfun import gauss_legendre


def test_selberg_examples():
    assert selberg_constant(JacobiParams(0, 0, 1)) == 0.0
    assert math.exp(selberg_constant(JacobiParams(1, 0, 1))) == pytest.approx(0.5, rel=1e-14)


@pytest.mark.parametrize("a, b", [(0, 0), (1, 0), (2, 3), (6, 2)])
def test_selberg_n2_against_scipy_dblquad(a, b):
    # cube integral of lam^a (1-lam)^b products times (l1 - l2)^2
    f = lambda y, x: x**a * (1 - x) ** b * y**a * (1 - y) ** b * (x - y) ** 2
    val, _ = integrate.dblquad(f, 0, 1, 0, 1, epsabs=1e-13, epsrel=1e-12)
    assert math.exp(selberg_constant(JacobiParams(a, b, 2))) == pytest.approx(val, rel=1e-9)


def test_joint_density_examples():
    assert joint_density([0.3], JacobiParams(0, 0, 1)) == pytest.approx(1.0, rel=1e-14)
    lam = 0.75
    ref = lam**6 * (1 - lam) ** 2 / math.exp(betaln(7, 3))
    assert joint_density([lam], JacobiParams(6, 2, 1)) == pytest.approx(ref, rel=1e-12)
    assert joint_density([0.4, 0.4], JacobiParams(0, 0, 2)) == 0.0


def test_joint_density_edges_and_errors():
    assert joint_density([0.0], JacobiParams(2, 0, 1)) == 0.0
    assert joint_density([1.0], JacobiParams(0, 0, 1)) == 1.0  # 0**0 = 1
    with pytest.raises(ValueError):
        joint_density([0.2, 0.6], JacobiParams(0, 0, 2))
    with pytest.raises(ValueError):
        joint_density([0.2], JacobiParams(0, 0, 2))


@pytest.mark.parametrize("a, b", [(0, 0), (1, 0), (0, 2), (3, 1)])
def test_joint_density_n2_normalized_on_ordered_simplex(a, b):
    p = JacobiParams(a, b, 2)
    val, _ = integrate.dblquad(lambda y, x: joint_density([x, y], p), 0, 1, 0, lambda x: x, epsabs=1e-12)
    assert val == pytest.approx(1.0, abs=1e-6)


def test_joint_density_n3_normalized():
    # Monte Carlo-free check: 3-D Gauss-Legendre on the ordered simplex via lam2 = t lam1, lam3 = s lam2
    p = JacobiParams(1, 2, 3)
    u, w = gauss_legendre(12).mapped(0, 1)
    total = 0.0
    for l1, w1 in zip(u, w):
        for t, w2 in zip(u, w):
            for s, w3 in zip(u, w):
                total += w1 * w2 * w3 * l1 * (t * l1) * joint_density([l1, t * l1, s * t * l1], p)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_shifted_constant_misnormalizes():
    p = JacobiParams(1, 0, 1)
    val, _ = integrate.quad(lambda x: x / math.exp(selberg_constant_shifted(p)), 0, 1)
    assert val == pytest.approx(0.75, rel=1e-12)
    assert abs(val - 1) > 0.1


def test_marginal_examples():
    p = JacobiParams(0, 0, 1)
    assert np.allclose(marginal_density(np.linspace(0, 1, 11), p), 1.0)
    assert marginal_density(1.5, p) == 0.0


@pytest.mark.parametrize("a", [0, 1, 5, 12])
@pytest.mark.parametrize("b", [0, 3, 12])
@pytest.mark.parametrize("n", [1, 2, 4, 8])
def test_marginal_normalization(a, b, n):
    p = JacobiParams(a, b, n)
    val, _ = integrate.quad(lambda x: marginal_density(x, p), 0, 1, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert val == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("cfg", [(6, 2, 2), (16, 4, 10), (8, 3, 3), (2, 1, 1), (64, 24, 24), (128, 32, 64)])
def test_marginal_mean(cfg):
    c = ChannelConfig(*cfg)
    p = jacobi_params(c)
    x, w = gauss_legendre(p.a + p.b + 2 * p.n + 4).mapped(0, 1)
    assert float(np.dot(w, x * marginal_density(x, p))) == pytest.approx(c.m_r / c.m, abs=1e-10)


def test_marginal_matches_joint_for_n2():
    # integrate the joint density over the other eigenvalue; the marginal is the average of the two ordered marginals
    p = JacobiParams(2, 1, 2)
    for lam in (0.1, 0.45, 0.8):
        upper, _ = integrate.quad(lambda y: joint_density([lam, y], p), 0, lam)
        lower, _ = integrate.quad(lambda y: joint_density([y, lam], p), lam, 1)
        assert marginal_density(lam, p) == pytest.approx(0.5 * (upper + lower), rel=1e-9)


def test_eigenvalue_histogram_chi_square():
    cfg = ChannelConfig(6, 2, 2)
    p = jacobi_params(cfg)
    samples = []
    for t in range(10_000):
        stream = RngStream(77, t)
        lam = hermitian_eigenvalues(sample_gram(cfg, stream))
        # one uniformly chosen eigenvalue per draw keeps samples independent
        pick = RngStream(78, t).generator().integers(p.n)
        samples.append(lam[pick])
    edges = np.linspace(0, 1, 21)
    counts, _ = np.histogram(samples, edges)
    probs = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(16).mapped(lo, hi)
        probs.append(float(np.dot(w, marginal_density(x, p))))
    probs = np.array(probs)
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)
    expected = probs * len(samples)
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    assert chi2 < stats.chi2.ppf(0.999, df=len(probs) - 1)
