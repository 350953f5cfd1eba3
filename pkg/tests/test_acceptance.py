"""Acceptance checks, one test per criterion; each prints a single PASS/FAIL line.

Run with pytest, or directly: python3 tests/test_acceptance.py
"""
import itertools
import math
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import conftest  # noqa: E402
from oracles import asymptotic_residual  # noqa: E402
from test_conical import half_closed_form  # noqa: E402
from test_hypergamma import _axiom_residuals  # noqa: E402

from conprod import HyperbolicParams, run_identity, run_nonrel_identity  # noqa: E402
from conprod import limits, operators  # noqa: E402
from conprod.conical import (conical_closed_g1, conical_f_gamma, conical_f_hyp, conical_f_series,  # noqa: E402
                             log_gamma_euler)
from conprod.hypergamma import asymptotic_form  # noqa: E402

pytestmark = pytest.mark.slow


def record(n, ok, detail, started):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {detail} ({time.perf_counter() - started:.0f} s)"
    conftest.CRITERIA_LINES.append(line)
    print(line)
    assert ok, line


def _suite(names, nonrel=False, n_points=None):
    run = run_nonrel_identity if nonrel else run_identity
    reports = [run(name, n_points=n_points) for name in names]
    ok = all(r.verdict == "Pass" for r in reports)
    detail = ", ".join(f"{r.identity}={r.max_rel_err:.1e}" for r in reports)
    return ok, detail, reports


def test_gamma_axioms():
    t = time.perf_counter()
    res = _axiom_residuals(HyperbolicParams(1.3, 0.7))
    worst = max(res.values())
    record(1, worst < 1e-10, f"axioms at 100 points, worst residual {worst:.1e}", t)


def test_gamma_asymptotic_slope():
    t = time.perf_counter()
    xs = (6, 8, 10)
    res = [float(asymptotic_residual(1, 1, x)) for x in xs]
    slopes = [math.log(b / a) / (x2 - x1) for a, b, x1, x2 in zip(res, res[1:], xs, xs[1:])]
    r = asymptotic_form(HyperbolicParams(1.0, 1.0)).decay_rate_r
    record(2, all(s <= -r for s in slopes), f"log-slopes {[round(s, 2) for s in slopes]} vs -r = {-r:.2f}", t)


def test_fourier_formulas():
    t = time.perf_counter()
    ok, detail, _ = _suite(["fform", "gint2"])
    record(3, ok, detail, t)


def test_product_formulas():
    t = time.perf_counter()
    ok, detail, reps = _suite(["prform", "prformalt"], n_points=20)
    ok = ok and all(len(r.rows) == 20 for r in reps)
    record(4, ok, detail, t)


def test_free_case_product():
    t = time.perf_counter()
    ok, detail, _ = _suite(["prodap"], n_points=10)
    record(5, ok, detail, t)


def test_j_structure():
    from conprod.relativistic import j_fn

    t = time.perf_counter()
    ok, detail, _ = _suite(["jsym", "jeval", "ade", "kids"])
    p = HyperbolicParams(1.0, 1.0)
    worst = 0.0
    for b, x, y in ((0.8, 0.4, 0.7), (1.5, 1.3, 0.3), (0.4, 1.9, 1.1)):
        v = j_fn(p, b, x, y).value
        worst = max(worst, abs(v.imag) / abs(v))
        for sx, sy in ((-1, 1), (1, -1), (-1, -1)):
            worst = max(worst, abs(j_fn(p, b, sx * x, sy * y).value - v) / abs(v))
    ok = ok and worst < 1e-10
    record(6, ok, f"{detail}, even/real {worst:.1e}", t)


def test_triple_kernel_identities():
    t = time.perf_counter()
    ok, detail, _ = _suite(["id1", "id2", "iden1", "kerform"])
    record(7, ok, detail, t)


def test_pair_integral_equations():
    t = time.perf_counter()
    ok, detail, _ = _suite(["intEq", "intEqalt"])
    record(8, ok, detail, t)


def test_conical_representations():
    t = time.perf_counter()
    gs = (0.3, 0.7, 1.0, 1.6, 2.5)
    rs = np.linspace(0.1, 1.5, 5)
    ks = (0.05, 0.5, 1.2, 2.0, 3.0)
    agree = 0.0
    for g, r, k in itertools.product(gs, rs, ks):
        vals = [fn(g, r, k).value.real for fn in (conical_f_hyp, conical_f_gamma, conical_f_series)]
        scale = max(abs(v) for v in vals)
        agree = max(agree, (max(vals) - min(vals)) / scale)
    closed = 0.0
    for r, k in itertools.product((0.3, 0.9, 1.5), (0.2, 1.1, 2.4)):
        closed = max(closed, abs(conical_f_hyp(1.0, r, k).value.real - conical_closed_g1(r, k)))
        ref = half_closed_form(r, k)
        closed = max(closed, abs(conical_f_hyp(0.5, r, k).value.real - ref) / abs(ref))
    origin = 0.0
    for g, k in ((0.4, 0.3), (1.0, 1.0), (2.2, 2.5)):
        ref = 0.5 * math.exp(2 * log_gamma_euler(g + 1j * k).real - math.lgamma(2 * g))
        origin = max(origin, abs(conical_f_hyp(g, 0.0, k).value.real - ref) / ref)
    ok = agree < 1e-8 and closed < 1e-8 and origin < 1e-10
    record(9, ok, f"125-point agreement {agree:.1e}, closed forms {closed:.1e}, r=0 value {origin:.1e}", t)


def test_nonrel_product_formulas():
    t = time.perf_counter()
    ok, detail, reps = _suite(["fpr1", "fpr2", "mizony", "idnr1", "idnr2", "idennr1", "idennr2"], nonrel=True)
    mizony = next(r for r in reps if r.identity == "mizony")
    ok = ok and mizony.max_rel_err < 1e-8
    ok = ok and all(len({tuple(sorted(row.point.items())) for row in r.rows}) >= 15
                    for r in reps if r.identity in ("fpr1", "fpr2"))
    record(10, ok, detail, t)


def test_nonrel_pair_equations():
    t = time.perf_counter()
    ok, detail, _ = _suite(["intEqnr1", "intEqnr2"], nonrel=True)
    record(11, ok, detail, t)


def test_operator_refinement():
    t = time.perf_counter()
    base = operators.load_baseline()
    ok, parts = True, []
    for name in operators.STUDIES:
        levels = operators.refinement_study(name)
        res = [lv.residual for lv in levels]
        dec = operators.strictly_decreasing(res) and all(
            operators.strictly_decreasing(c) for c in zip(*(lv.commutators for lv in levels)))
        limit = base["studies"][name]["finest"]["residual"] * base["slack"]
        ok = ok and dec and res[-1] <= limit
        parts.append(f"{name} {res[0]:.3f}->{res[-1]:.3f}")
    rows = operators.unitarity_comparison()
    ratio = max(max(r["defect"], r["sine_defect"]) / min(r["defect"], r["sine_defect"]) for r in rows)
    ok = ok and ratio <= 2
    record(12, ok, f"{', '.join(parts)}, unitarity ratio {ratio:.6f}", t)


def test_limit_sweeps():
    t = time.perf_counter()
    bad = []
    for target in limits.LIMIT_TARGETS:
        for pt in limits.SWEEP_POINTS[target]:
            if not limits.sweep_monotone(limits.limit_sweep(limits.SweepSpec(target, pt))):
                bad.append(f"{target}{pt}")
    n = sum(len(v) for v in limits.SWEEP_POINTS.values())
    record(13, not bad, f"{n - len(bad)}/{n} sweeps decreasing" + (f"; failing {bad}" if bad else ""), t)


def test_bound_audits():
    t = time.perf_counter()
    reps = [limits.audit_bound(bid) for bid in limits.BOUND_AUDITS]
    ok = all(r.verdict == "Pass" for r in reps)
    shest = next(r for r in reps if r.bound_id == "shest")
    ok = ok and shest.sup <= 1 + 1e-12
    slopes = limits.jbk_slope()
    ok = ok and all(s <= -(math.pi - 0.1) for s in slopes.values())
    detail = ", ".join(f"{r.bound_id} {r.sup:.3g} ({r.stability:.1%})" for r in reps)
    record(14, ok, f"{detail}; Jbk slope max {max(slopes.values()):.3f}", t)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
