import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import loggamma

from conprod import HyperbolicParams, w_fn
from conprod.errors import DomainViolation, StripViolation
from conprod.limits import (BOUND_AUDITS, SWEEP_POINTS, SweepSpec, audit_bound, cg_fn, g_ratio, h_fn, jbk_slope,
                            k_fn, limit_sweep, p_fn, ratio_limit, sweep_monotone, w_beta, w_nev)


def test_sinh_product_weight_matches_gamma_weight():
    for beta, n in ((0.5, 2), (0.3, 3), (0.2, 1)):
        direct = w_fn(HyperbolicParams(math.pi, beta), n * beta, 0.7).real
        assert abs(w_nev(beta, n, 0.7).real / direct - 1) < 1e-12


def test_symmetric_ratio_is_exact():
    # G(z + i beta (v - 1/2)) / G(z + i beta (v + 1/2)) = 1 / (2 cosh(z + i beta v))
    beta, v, z = 0.3, 0.4, 0.5 + 0.2j
    lhs = g_ratio(beta, z, v - 0.5, v + 0.5)
    assert abs(lhs - 1 / (2 * np.cosh(z + 1j * beta * v))) < 1e-13


def test_ratio_limit_strip():
    with pytest.raises(StripViolation):
        ratio_limit(1.6j, 1.0, 0.0)


@pytest.mark.parametrize("s", [0.3, 0.7, 1.0])
@pytest.mark.parametrize("z", [1 + 0.3j, -2 + 0.5j, 0.2 - 0.6j, 5 + 0.2j])
def test_p_matches_gamma_oracle(s, z):
    oracle = h_fn(s, z) * np.exp(loggamma(1j * z + 0.5))
    assert abs(p_fn(s, z) / oracle - 1) < 1e-12
    assert abs(k_fn(s, z) - math.log(abs(p_fn(s, z)))) < 1e-13


def test_p_strip_guard():
    with pytest.raises(StripViolation):
        p_fn(1.0, 1.6j)


def test_cg_approaches_reciprocal_gamma():
    ref = np.exp(-loggamma(0.9j))
    errs = [abs(cg_fn(b, 0.9) - ref) for b in (0.2, 0.1, 0.05, 0.025)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-3
    # Gamma(ik) cG(beta; k) -> 1
    assert abs(cg_fn(0.01, 0.9) * np.exp(loggamma(0.9j)) - 1) < 1e-3


def test_p_tends_to_one():
    errs = [abs(p_fn(s, 1 + 0.3j) - 1) for s in (0.2, 0.1, 0.05)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_weight_limit_at_integer_coupling():
    beta = 0.01
    assert w_beta(beta, 2, 0.7) == pytest.approx((2 * math.sinh(0.7)) ** 4, rel=1e-3)


def test_sweep_spec_validation():
    with pytest.raises(DomainViolation):
        SweepSpec("nope", {})
    with pytest.raises(DomainViolation):
        SweepSpec("wlim", {"g": 2.0, "z": 0.7}, (0.1, 0.2))
    with pytest.raises(DomainViolation):
        SweepSpec("JF", {"g": 1.7, "r": 0.5, "k": 0.7}, (1.0, 0.5))


@pytest.mark.parametrize("target", ["GGlim", "wlim", "cGlim", "Plim"])
def test_cheap_sweeps_monotone(target):
    for pt in SWEEP_POINTS[target]:
        assert sweep_monotone(limit_sweep(SweepSpec(target, pt)))


def test_exact_sweep_counts_as_converged():
    rows = limit_sweep(SweepSpec("JF", {"g": 1.0, "r": 0.5, "k": 0.7}))
    assert max(r["error"] for r in rows) < 1e-12
    assert sweep_monotone(rows)
    assert not sweep_monotone([{"error": 1e-3}, {"error": 2e-3}])


@settings(max_examples=40, deadline=None)
@given(z=st.floats(1e-3, 30.0), a=st.floats(1.0, 8.0))
def test_sinh_power_inequality(z, a):
    assert math.sinh(z) ** a <= math.sinh(a * z) * (1 + 1e-12) or math.isinf(math.sinh(a * z))


def test_audit_report_fields():
    rep = audit_bound("shest")
    assert rep.verdict == "Pass"
    assert rep.sup <= 1 + 1e-12
    d = rep.as_dict()
    assert set(d) >= {"bound_id", "sup", "sup_doubled", "stability", "verdict"}


@pytest.mark.parametrize("bid", ["B1", "B2", "C1", "C2", "C3", "C3sp"])
def test_cheap_audits_pass(bid):
    rep = audit_bound(bid)
    assert rep.verdict == "Pass", rep.as_dict()


def test_unknown_bound():
    with pytest.raises(DomainViolation):
        audit_bound("B9")
    assert "Jas-decay" in BOUND_AUDITS


@pytest.mark.slow
def test_jbk_slope_below_rate():
    slopes = jbk_slope()
    assert all(s <= -(math.pi - 0.1) for s in slopes.values())
