import json
import math

import pytest

from conprod import HyperbolicParams, run_identity, run_nonrel_identity
from conprod.identities import CATALOGUE, RELATIVISTIC_SUITE
from conprod.nonrel_identities import NONREL_CATALOGUE, NONREL_SUITE
from conprod.reports import FAIL, INDETERMINATE, PASS, Row, VerificationReport


def test_catalogues_cover_their_suites():
    assert set(RELATIVISTIC_SUITE) <= set(CATALOGUE)
    assert set(NONREL_SUITE) == set(NONREL_CATALOGUE)
    for case in list(CATALOGUE.values()) + list(NONREL_CATALOGUE.values()):
        assert case.tol > 0 and case.default_points > 0 and case.anchor


@pytest.mark.parametrize("name", ["prodap", "jeval", "kids", "gint2"])
def test_cheap_relativistic_cases_pass(name):
    rep = run_identity(name, n_points=3)
    assert rep.verdict == PASS, rep.to_json()
    assert len(rep.rows) >= 3


@pytest.mark.parametrize("name", ["fpr1", "mizony", "idennr2"])
def test_cheap_nonrel_cases_pass(name):
    rep = run_nonrel_identity(name, n_points=2)
    assert rep.verdict == PASS, rep.to_json()


def test_same_seed_gives_identical_report():
    a = run_identity("jeval", n_points=2, seed=7).to_json()
    b = run_identity("jeval", n_points=2, seed=7).to_json()
    assert a == b
    assert json.loads(a)["seed"] == 7


def test_explicit_points_are_used_verbatim():
    p = HyperbolicParams(1.0, 1.0)
    pt = {"b": 0.6, "v": 0.9}
    rep = run_identity("jeval", p, sample_points=[pt])
    assert rep.seed is None
    assert rep.rows[0].point == pt


def test_nondefault_parameters_pass():
    rep = run_identity("kids", HyperbolicParams(1.4, 0.8), n_points=2)
    assert rep.verdict == PASS


def test_verdict_rules():
    ok = Row({}, 1.0, 1.0 + 1e-12)
    bad = Row({}, 1.0, 1.1)
    unknown = Row({}, math.nan, math.nan, status="indeterminate")
    assert VerificationReport("x", "", {}, 1, [ok], 1e-8).verdict == PASS
    assert VerificationReport("x", "", {}, 1, [ok, bad], 1e-8).verdict == FAIL
    assert VerificationReport("x", "", {}, 1, [ok, unknown], 1e-8).verdict == INDETERMINATE
    assert VerificationReport("x", "", {}, 1, [bad, unknown], 1e-8).verdict == FAIL
    assert VerificationReport("x", "", {}, 1, [], 1e-8).verdict == INDETERMINATE


def test_report_serializes_complex_values():
    rep = VerificationReport("x", "anchor", {"a_plus": 1.0}, 3, [Row({"z": 0.5 + 1j}, 1 + 2j, 1 + 2j)], 1e-8)
    d = json.loads(rep.to_json())
    assert d["rows"][0]["lhs"] == {"re": 1.0, "im": 2.0}
    assert d["rows"][0]["point"]["z"] == {"re": 0.5, "im": 1.0}
    assert d["verdict"] == PASS and d["schema_version"]
    header = rep.to_csv().splitlines()[0].split(",")
    assert {"lhs_re", "lhs_im", "point.z_re", "params.a_plus"} <= set(header)
