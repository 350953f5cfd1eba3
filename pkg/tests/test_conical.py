import math

import mpmath as mp
import numpy as np
import pytest

from conprod.conical import (conical_closed_g1, conical_f_batch, conical_f_gamma, conical_f_hyp, conical_f_series,
                             f0_batch, f0_kernel, log_gamma_euler, log_hat_w0, mu0_fn, nonrel_weights)
from conprod.errors import DomainViolation, PoleProximity, SeriesDivergence


def hyp_oracle(g, r, k):
    """F(g; r, 2k) from the hypergeometric representation, evaluated by mpmath."""
    with mp.workdps(40):
        g, r, k = mp.mpf(g), mp.mpf(r), mp.mpf(k)
        pref = mp.gamma(g + 1j * k) * mp.gamma(g - 1j * k) / (2 * mp.gamma(2 * g))
        return float(mp.re(pref * mp.hyp2f1(g + 1j * k, g - 1j * k, g + 0.5, -mp.sinh(r / 2) ** 2)))


def half_closed_form(r, k):
    """F(1/2; r, 2k) = (pi/2) 2F1(1/4 + ik/2, 1/4 - ik/2; 1; -sinh^2 r) / cosh(pi k)."""
    with mp.workdps(30):
        v = mp.hyp2f1(0.25 + 0.5j * k, 0.25 - 0.5j * k, 1, -mp.sinh(r) ** 2)
        return float(mp.re(v)) * math.pi / (2 * math.cosh(math.pi * k))


POINTS = [(0.7, 0.5, 0.4), (1.6, 1.2, 2.0), (0.3, 0.1, 0.1), (2.5, 1.5, 3.0), (1.0, 0.8, 1.3)]


@pytest.mark.parametrize("g,r,k", POINTS)
def test_representations_match_mpmath(g, r, k):
    ref = hyp_oracle(g, r, k)
    for fn in (conical_f_hyp, conical_f_gamma, conical_f_series):
        assert abs(fn(g, r, k).value - ref) < 1e-10 * max(1.0, abs(ref)), fn.__name__


def test_series_refuses_outside_disc():
    with pytest.raises(SeriesDivergence):
        conical_f_series(1.0, 2.0, 0.5)


def test_g1_closed_form():
    r, k = np.array([0.3, 1.1, 2.5]), np.array([0.4, 1.7, 0.9])
    vals = np.array([conical_f_hyp(1.0, a, b).value.real for a, b in zip(r, k)])
    assert np.max(np.abs(vals - conical_closed_g1(r, k))) < 1e-12


@pytest.mark.parametrize("r,k", [(0.6, 0.8), (1.3, 0.2), (0.2, 2.1)])
def test_g_half_closed_form(r, k):
    assert abs(conical_f_hyp(0.5, r, k).value - half_closed_form(r, k)) < 1e-10


def test_value_at_r_zero_is_gamma_quotient():
    for g, k in ((0.7, 0.4), (1.5, 1.2), (3.0, 0.05)):
        ref = 0.5 * math.exp(2 * log_gamma_euler(g + 1j * k).real - math.lgamma(2 * g))
        assert abs(conical_f_hyp(g, 0.0, k).value - ref) < 1e-12 * ref


def test_batch_at_large_k_against_mpmath():
    for g, r, k in ((1.7, 0.8, 8.0), (0.6, 1.4, 15.0), (2.3, 0.3, 25.0)):
        ref = hyp_oracle(g, r, k)
        v, _ = conical_f_batch(g, np.array([r]), np.array([k]))
        assert abs(v[0] - ref) <= 5e-13 * abs(ref) + 1e-300


def test_batch_matches_scalar_grid():
    r = np.linspace(0.1, 3.0, 7)
    k = np.linspace(0.05, 4.0, 7)
    R, K = np.meshgrid(r, k)
    v, e = conical_f_batch(1.3, R, K)
    ref = np.array([[conical_f_hyp(1.3, a, b).value.real for a, b in zip(ra, ka)] for ra, ka in zip(R, K)])
    assert np.max(np.abs(v - ref)) < 1e-12
    assert np.all(e >= 0)


def test_f0_paths_agree():
    r, k = np.array([0.4, 1.5]), np.array([0.7, 2.2])
    v, _ = f0_batch(1.4, r, k)
    ref = [f0_kernel(1.4, a, b).value.real for a, b in zip(r, k)]
    assert np.max(np.abs(v - ref)) < 1e-11


def test_weights():
    assert nonrel_weights(1.5, 0.7, "w0") == pytest.approx((2 * math.sinh(0.7)) ** 3)
    # hat w0 is even in k and finite away from 0
    assert np.exp(log_hat_w0(1.2, 0.8)).real == pytest.approx(np.exp(log_hat_w0(1.2, -0.8)).real)
    with pytest.raises(PoleProximity):
        log_hat_w0(1.2, 0.0)
    # mu0 at g = 1: prod Gamma((1 +- ik)/2) = pi / cosh(pi k / 2)
    k1, k2 = 0.6, 1.1
    ref = (math.pi / math.cosh(math.pi * k1 / 2)) * (math.pi / math.cosh(math.pi * k2 / 2)) / 4
    assert mu0_fn(1.0, k1, k2) == pytest.approx(ref, rel=1e-13)


def test_domain_checks():
    with pytest.raises(DomainViolation):
        conical_f_hyp(-0.5, 0.3, 0.2)
    with pytest.raises(DomainViolation):
        conical_f_hyp(1.0, 0.3, 1.5j)
