import math

import numpy as np
import pytest

from conprod import HyperbolicParams, c_fn, gamma_h, w_fn
from conprod.errors import DomainViolation
from conprod.relativistic import (ade_residual, e_fn, f_batch, f_kernel, f_matrix, j_asymptotic, j_batch,
                                  j_eval_at_ib, j_continued_at_ib, j_fn, kernel_identity_residual, mu_batch,
                                  mu_fn, ratio_R, weight)

P11 = HyperbolicParams(1.0, 1.0)


def free_j(p, x, y):
    """Elementary J at b = a+."""
    am, ap = p.a_minus, p.a_plus
    return am / 2 * math.sin(p.alpha * x * y / 2) / (math.sinh(math.pi * x / am) * math.sinh(math.pi * y / ap))


@pytest.mark.parametrize("ap,am", [(1.0, 1.0), (math.pi, 1.0), (0.8, 2.0)])
@pytest.mark.parametrize("x,y", [(0.5, 0.7), (1.4, 0.3)])
def test_free_case_closed_form(ap, am, x, y):
    p = HyperbolicParams(ap, am)
    assert abs(j_fn(p, ap, x, y).value / free_j(p, x, y) - 1) < 1e-10


def test_coupling_function_reduces_to_sinh():
    z = np.array([0.3, 0.9 + 0.2j, 1.7])
    assert np.max(np.abs(c_fn(P11, 1.0, z) * 2j * np.sinh(np.pi * z) - 1)) < 1e-12
    assert np.max(np.abs(w_fn(P11, 1.0, z) / (4 * np.sinh(np.pi * z) ** 2) - 1)) < 1e-12


def test_even_and_real():
    v = j_fn(P11, 0.8, 0.4, 0.7).value
    assert abs(v.imag) < 1e-14
    for sx, sy in ((-1, 1), (1, -1), (-1, -1)):
        assert abs(j_fn(P11, 0.8, sx * 0.4, sy * 0.7).value - v) < 1e-12


def test_routes_agree():
    a = j_fn(P11, 0.8, 0.4, 0.7, route="direct").value
    b = j_fn(P11, 0.8, 0.4, 0.7, route="dual").value
    assert abs(a / b - 1) < 1e-10


def test_batch_matches_scalar():
    xs = np.array([0.4, 3.0, 8.0])
    v, e = j_batch(P11, 0.8, xs, 0.7)
    ref = np.array([j_fn(P11, 0.8, x, 0.7).value.real for x in xs])
    assert np.max(np.abs(v - ref) / np.abs(ref)) < 1e-9


def test_value_at_ib_two_ways():
    a = j_eval_at_ib(P11, 0.4, 1.2).value
    b = j_continued_at_ib(P11, 0.4, 1.2).value
    assert abs(a / b - 1) < 1e-10


@pytest.mark.parametrize("delta", [1, -1])
@pytest.mark.parametrize("side", ["x", "y"])
def test_difference_equations(delta, side):
    assert ade_residual(P11, 0.5, 0.3, 0.9, delta, side) < 1e-6


def test_kernel_identities_real_and_complex_coupling():
    assert kernel_identity_residual(P11, 0.6, 0.4, 0.9, 1.3, 1) < 1e-8
    assert kernel_identity_residual(P11, 0.5 + 0.2j, 0.4, 0.9, 1.3, -1) < 1e-8


def test_transform_kernel_symmetry():
    a = f_kernel(P11, 0.7, 0.4, 1.1).value
    b = f_kernel(P11, 1.3, 1.1, 0.4).value
    assert abs(a - b) < 1e-10 * abs(a)
    assert abs(a.imag) < 1e-14


def test_e_function_symmetric_in_couplings():
    a = e_fn(P11, 0.7, 0.4, 1.1).value
    b = e_fn(P11, 1.3, 1.1, 0.4).value
    assert abs(a - b) < 1e-9 * abs(a)


def test_matrix_kernel_switches_smoothly():
    p = HyperbolicParams(2.0, 3.0)
    xs = 30 / (p.alpha * p.a_s)
    x = np.array([xs + 1e-9, xs + 2.0])
    near, _ = f_batch(p, 1.6, x, 0.7)
    far, _ = f_matrix(p, 1.6, x, 0.7)
    assert np.max(np.abs(near - far) / np.abs(near)) < 1e-11
    # the larger argument may sit in either slot
    swapped, _ = f_matrix(p, 2 * p.a - 1.6, 0.7, x)
    assert np.max(np.abs(swapped - far) / np.abs(far)) < 1e-11


def test_asymptotic_form_at_large_x():
    x = 12.0
    j = j_fn(P11, 0.9, x, 0.6).value
    assert abs(j - j_asymptotic(P11, 0.9, x, 0.6)) < 1e-12 * math.exp(-P11.alpha * 0.9 * x / 2) * 1e3


def test_ratio_table_matches_direct_gamma():
    s = np.linspace(-4, 4, 9)
    direct = gamma_h(P11, s - 0.35j) / gamma_h(P11, s + 0.35j)
    assert np.max(np.abs(ratio_R(P11, 0.7, s) - direct)) < 1e-13


def test_weight_table_matches_direct():
    z = np.linspace(0.1, 12, 9)
    assert np.max(np.abs(weight(P11, 0.7, z) / w_fn(P11, 0.7, z).real - 1)) < 1e-12


def test_mu_batch_matches_mu_fn():
    v1, v2 = np.array([0.3, 1.1]), np.array([-0.4, 0.2])
    ref = np.array([mu_fn(P11, 0.8, (a, b)) for a, b in zip(v1, v2)])
    assert np.max(np.abs(mu_batch(P11, 0.8, v1, v2) - ref) / np.abs(ref)) < 1e-12


def test_coupling_outside_range_rejected():
    with pytest.raises(DomainViolation):
        j_fn(P11, 2.5, 0.4, 0.7)
