import math

import numpy as np
import pytest

from conprod import HyperbolicParams
from conprod.errors import DomainViolation, GridMismatch, SizeOverflow
from conprod.operators import (STUDY_PARAMS, assemble_operator, build_grid, commutator_norm,
                               diagonalization_residual, hermiticity_defect, involution_defect, load_baseline,
                               sine_transform, strictly_decreasing, unitarity_defect, wedge_grid)


def test_grid_integrates_polynomials():
    g = build_grid(3.0, 8)
    assert g.weights.sum() == pytest.approx(3.0, rel=1e-14)
    assert np.dot(g.weights, g.nodes ** 5) == pytest.approx(3.0 ** 6 / 6, rel=1e-13)
    gp = build_grid(3.0, 24, "gauss-legendre/3")
    assert np.dot(gp.weights, np.exp(gp.nodes)) == pytest.approx(math.exp(3.0) - 1, rel=1e-13)


def test_grid_validation():
    with pytest.raises(DomainViolation):
        build_grid(-1.0, 8)
    with pytest.raises(DomainViolation):
        build_grid(1.0, 10, "gauss-legendre/3")
    with pytest.raises(DomainViolation):
        build_grid(1.0, 10, "trapezoid")


def test_wedge_grid_geometry():
    w = wedge_grid(8.0, 6)
    x1, x2 = w.coordinates()
    assert w.shape == (6, 6) and w.size == 36
    assert np.all(x1 > x2)
    assert w.centre.domain == pytest.approx((-2.0, 2.0))


def test_kind_and_grid_must_match():
    g = build_grid(4.0, 8)
    with pytest.raises(GridMismatch):
        assemble_operator("I2", STUDY_PARAMS, g, b=1.0)
    with pytest.raises(GridMismatch):
        assemble_operator("Iz", STUDY_PARAMS, wedge_grid(4.0, 4), b=1.0)
    with pytest.raises(DomainViolation):
        assemble_operator("Iz", STUDY_PARAMS, g, b=None)
    with pytest.raises(DomainViolation):
        assemble_operator("Jt", None, g, g=-1.0)
    with pytest.raises(SizeOverflow):
        assemble_operator("Iz", STUDY_PARAMS, g, b=1.0, max_entries=10)


@pytest.mark.parametrize("kind,kw", [("Iz", {"b": 1.6, "z": 1.0}), ("Jt", {"g": 1.5, "t": 0.7}),
                                      ("Jq_hat", {"g": 1.5, "q": 0.6})])
def test_self_adjoint_kinds_are_symmetric(kind, kw):
    op = assemble_operator(kind, STUDY_PARAMS, build_grid(8.0, 24), **kw)
    assert hermiticity_defect(op) < 1e-12


def test_free_transform_is_a_sine_transform():
    grid = build_grid(8.0, 32)
    F = assemble_operator("Ftransform", STUDY_PARAMS, grid, b=STUDY_PARAMS.a_plus)
    S = sine_transform(grid, STUDY_PARAMS.alpha / 2)
    assert np.max(np.abs(F.matrix - S.matrix)) < 1e-10
    assert unitarity_defect(F) == pytest.approx(unitarity_defect(S), rel=1e-8)
    assert involution_defect(F) == pytest.approx(involution_defect(S), rel=1e-8)


def test_f0_at_g1_is_a_sine_transform():
    grid = build_grid(8.0, 32)
    F0 = assemble_operator("F0transform", None, grid, g=1.0)
    S = sine_transform(grid, 1.0)
    assert np.max(np.abs(F0.matrix - S.matrix)) < 1e-10


def test_sine_transform_nearly_unitary_on_fine_grid():
    coarse = unitarity_defect(sine_transform(build_grid(20.0, 60), 1.0))
    fine = unitarity_defect(sine_transform(build_grid(20.0, 200), 1.0))
    assert fine < coarse


def test_commutator_norm_basics():
    grid = build_grid(6.0, 16)
    A = assemble_operator("Iz", STUDY_PARAMS, grid, b=1.6, z=1.0)
    assert commutator_norm(A, A) < 1e-15
    B = assemble_operator("Iz", STUDY_PARAMS, grid, b=1.6, z=2.0)
    assert commutator_norm(A, B) == pytest.approx(commutator_norm(B, A))
    with pytest.raises(GridMismatch):
        commutator_norm(A, assemble_operator("Iz", STUDY_PARAMS, build_grid(6.0, 12), b=1.6))


def test_residual_zero_for_exact_eigenpair():
    grid = build_grid(5.0, 10)
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(10, 10)))
    m = np.linspace(1, 2, 10)
    op_mat = q @ np.diag(m) @ q.T
    from conprod.operators import GridOperator

    op = GridOperator(grid, op_mat, "test")
    T = GridOperator(grid, q, "test")
    assert diagonalization_residual(op, T, m, adjoint="none") < 1e-13
    assert diagonalization_residual(op, T, m, adjoint="left", form="conjugated") < 1e-13


def test_baseline_record():
    base = load_baseline()
    assert base["provenance"].startswith("DERIVED")
    assert set(base["studies"]) == {"Iz", "Jt", "Jq_hat", "I2"}
    assert HyperbolicParams(**base["params"]) == STUDY_PARAMS
    for study in base["studies"].values():
        assert strictly_decreasing(lv["residual"] for lv in study["levels"])


def test_strictly_decreasing():
    assert strictly_decreasing([3, 2, 1])
    assert not strictly_decreasing([3, 3, 1])
