import math

import numpy as np
import pytest

from conprod.errors import EnvelopeViolation, NonConvergence
from conprod.quadrature import (Envelope, QuadratureSpec, integrate_batch, integrate_half_line,
                                integrate_interval, integrate_real_line)


def test_gaussian():
    r = integrate_real_line(lambda t: np.exp(-t * t), Envelope(1.0, t0=2.0))
    assert abs(r.value - math.sqrt(math.pi)) < 1e-12


def test_quarter_sech_squared_has_unit_mass():
    f = lambda t: 1 / (2 * np.cosh(t / 2)) ** 2  # noqa: E731
    assert abs(integrate_real_line(f, Envelope(1.0)).value - 1) < 1e-12
    assert abs(integrate_half_line(f, Envelope(1.0)).value - 0.5) < 1e-12


def test_even_integrand_real_line_is_twice_half_line():
    f = lambda t: np.cos(3 * t) / np.cosh(t)  # noqa: E731
    spec = QuadratureSpec(oscillation_hint=3.0)
    full = integrate_real_line(f, Envelope(1.0), spec).value
    half = integrate_half_line(f, Envelope(1.0), spec).value
    assert abs(full - 2 * half) < 1e-11
    # closed form: pi / cosh(3 pi / 2)
    assert abs(full - math.pi / math.cosh(1.5 * math.pi)) < 1e-11


def test_oscillatory_complex_integrand():
    # int_0^inf exp(-t) exp(i w t) dt = 1 / (1 - i w)
    w = 25.0
    r = integrate_half_line(lambda t: np.exp((-1 + 1j * w) * t), Envelope(1.0), QuadratureSpec(oscillation_hint=w))
    assert abs(r.value - 1 / (1 - 1j * w)) < 1e-12


def test_interval_rule_polynomial_exact():
    r = integrate_interval(lambda t: t ** 5 - 2 * t ** 2, 0.0, 2.0)
    assert abs(r.value - (64 / 6 - 16 / 3)) < 1e-13


def test_envelope_violation_detected():
    with pytest.raises(EnvelopeViolation):
        integrate_half_line(lambda t: 1 / (1 + t * t), Envelope(5.0))


def test_subdivision_budget():
    spec = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=3)
    with pytest.raises(NonConvergence):
        integrate_interval(lambda t: np.sin(200 * t) * np.exp(t), 0.0, 10.0, spec)


def test_batch_rule_rows():
    ks = np.array([0.5, 1.0, 2.0])

    def f(t):
        return np.exp(-ks[:, None] * t[None, :])

    v, e = integrate_batch(f, 0.0, 60.0, 0.5, abs_tol=1e-14, rel_tol=1e-12)
    assert np.max(np.abs(v - 1 / ks)) < 1e-11
    assert np.all(e >= 0)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0.0)
