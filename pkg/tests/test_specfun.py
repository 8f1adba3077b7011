import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from scipy import special

from jacobi_mimo.model import ChannelConfig
from jacobi_mimo.specfun import (
    EULER_GAMMA,
    digamma_int,
    gauss_legendre,
    jacobi_norm_e,
    jacobi_poly,
    jacobi_poly_table,
    jacobi_ratio_b_over_a,
    jacobi_recurrence_coeffs,
    ln_F,
    ln_gamma,
)

mpmath.mp.dps = 40


def test_euler_gamma_constant():
    assert EULER_GAMMA == float(mpmath.euler)


@pytest.mark.parametrize("x", [1.0, 5.0, 0.5, 0.1, 2.5, 17.3, 100.0, 299.9])
def test_ln_gamma_against_mpmath(x):
    ref = float(mpmath.loggamma(x))
    assert ln_gamma(x) == pytest.approx(ref, rel=1e-12, abs=1e-15)


def test_ln_gamma_examples():
    assert ln_gamma(1) == 0.0
    assert ln_gamma(5) == pytest.approx(3.178053830, abs=1e-9)
    assert ln_gamma(0.5) == pytest.approx(0.5723649429, abs=1e-10)


@pytest.mark.parametrize("x", [0.5, 1, 2.5, 10, 100])
def test_ln_gamma_functional_equation(x):
    assert ln_gamma(x + 1) - ln_gamma(x) == pytest.approx(math.log(x), abs=1e-12)


@pytest.mark.parametrize("x", [0, -1.5])
def test_ln_gamma_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        ln_gamma(x)


def test_digamma_examples():
    assert digamma_int(1) == -EULER_GAMMA
    assert digamma_int(2) == pytest.approx(1 - EULER_GAMMA, abs=1e-15)
    assert digamma_int(4) == pytest.approx(11 / 6 - EULER_GAMMA, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 40, 128, 1000])
def test_digamma_against_mpmath(n):
    assert digamma_int(n) == pytest.approx(float(mpmath.digamma(n)), abs=1e-14)


@pytest.mark.parametrize("n", [0, -3, 2.5])
def test_digamma_rejects(n):
    with pytest.raises(ValueError):
        digamma_int(n)


def test_jacobi_examples():
    assert jacobi_poly(0, 3, 1, 0.2) == 1.0
    assert jacobi_poly(1, 0, 0, 0.5) == 0.5
    assert jacobi_poly(2, 0, 0, 1.0) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("a, b", [(0, 0), (0, 2), (6, 2), (3, 1), (12, 0), (0, 16), (32, 32)])
def test_jacobi_against_scipy(a, b):
    x = np.linspace(-1, 1, 41)
    table = jacobi_poly_table(30, a, b, x)
    for k in range(31):
        ref = special.eval_jacobi(k, a, b, x)
        scale = np.max(np.abs(ref))
        assert np.max(np.abs(table[k] - ref)) <= 1e-12 * scale


@pytest.mark.parametrize("a, b", [(0, 0), (0, 2), (6, 2), (3, 1)])
def test_recurrence_consistency(a, b):
    # x P_k = (P_{k+1} - B_k P_k + C_k P_{k-1}) / A_k, each P from scipy
    x = np.linspace(-0.95, 0.95, 17)
    for k in range(1, 21):
        A, B, C = jacobi_recurrence_coeffs(k, a, b)
        lhs = x * special.eval_jacobi(k, a, b, x)
        rhs = (special.eval_jacobi(k + 1, a, b, x) - B * special.eval_jacobi(k, a, b, x)
               + C * special.eval_jacobi(k - 1, a, b, x)) / A
        scale = np.max(np.abs(special.eval_jacobi(k + 1, a, b, x))) / A
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


def test_ratio_b_over_a_matches_unsimplified():
    for a, b in [(0, 2), (6, 2), (3, 1)]:
        for k in range(1, 10):
            A, B, _ = jacobi_recurrence_coeffs(k, a, b)
            assert jacobi_ratio_b_over_a(k, a, b) == pytest.approx(B / A, rel=1e-14)
    assert jacobi_ratio_b_over_a(0, 0, 0) == 0.0


def _e_exact(k, a, b):
    return Fraction(
        math.factorial(k + a) * math.factorial(k + b),
        math.factorial(k) * (2 * k + a + b + 1) * math.factorial(k + a + b),
    )


@pytest.mark.parametrize("k, a, b, val", [(0, 0, 0, 1.0), (1, 0, 0, 1 / 3), (0, 1, 0, 0.5)])
def test_norm_e_examples(k, a, b, val):
    assert jacobi_norm_e(k, a, b) == pytest.approx(val, rel=1e-14)


def test_norm_e_against_factorials():
    for k in range(12):
        for a, b in [(0, 0), (0, 2), (6, 2), (3, 1), (12, 12)]:
            assert jacobi_norm_e(k, a, b) == pytest.approx(float(_e_exact(k, a, b)), rel=1e-12)


def _ln_F_exact(m, mt, mr):
    return sum(Fraction(1, mr + k - j) for j in range(mt) for k in range(m - mr))


@pytest.mark.parametrize("cfg", [(2, 1, 1), (6, 2, 2), (16, 4, 10), (8, 3, 3), (64, 24, 24), (5, 2, 5)])
def test_ln_F_exact_rational(cfg):
    assert ln_F(ChannelConfig(*cfg)) == pytest.approx(float(_ln_F_exact(*cfg)), rel=1e-15)


def test_ln_F_examples():
    assert ln_F(ChannelConfig(2, 1, 1)) == 1.0
    assert ln_F(ChannelConfig(6, 2, 2)) == pytest.approx(3.366667, abs=1e-6)
    assert ln_F(ChannelConfig(3, 2, 3)) == 0.0


@pytest.mark.parametrize("cfg", [(2, 1, 1), (6, 2, 2), (16, 4, 10), (8, 3, 3), (64, 24, 24), (128, 32, 64)])
def test_digamma_harmonic_identity(cfg):
    c = ChannelConfig(*cfg)
    lhs = sum(digamma_int(c.m - j) - digamma_int(c.m_r - j) for j in range(c.m_t)) / c.m_t
    assert lhs == pytest.approx(ln_F(c) / c.m_t, abs=1e-12)


def test_gauss_legendre_examples():
    r1 = gauss_legendre(1)
    assert list(r1.nodes) == [0.0] and list(r1.weights) == [2.0]
    r2 = gauss_legendre(2)
    assert np.allclose(r2.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15)
    assert np.allclose(r2.weights, [1, 1], atol=1e-15)
    assert abs(gauss_legendre(3).integrate(lambda x: x**4) - 0.4) <= 1e-14


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 16, 33, 64, 100, 257])
def test_gauss_legendre_against_numpy(n):
    r = gauss_legendre(n)
    x, w = np.polynomial.legendre.leggauss(n)
    assert np.max(np.abs(r.nodes - x)) <= 1e-14
    assert np.max(np.abs(r.weights - w)) <= 1e-13


@pytest.mark.parametrize("n", [5, 64, 512, 2048])
def test_gauss_legendre_invariants(n):
    r = gauss_legendre(n)
    assert abs(r.weights.sum() - 2) <= 1e-12
    assert np.all(np.diff(r.nodes) > 0)
    assert np.all(r.weights > 0)
    assert np.max(np.abs(r.nodes + r.nodes[::-1])) <= 1e-12
    assert np.all(np.abs(r.nodes) < 1)


def test_gauss_legendre_exactness():
    r = gauss_legendre(6)
    for d in range(12):
        exact = 0.0 if d % 2 else 2.0 / (d + 1)
        assert abs(r.integrate(lambda x: x**d) - exact) <= 1e-14


@pytest.mark.parametrize("order", [0, 2049, 3.5])
def test_gauss_legendre_range(order):
    with pytest.raises(ValueError):
        gauss_legendre(order)
