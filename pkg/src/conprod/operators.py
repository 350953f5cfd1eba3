"""Nystrom discretizations of the integral operators and unitary transforms.

Every matrix carries the quadrature weights symmetrically, M_ij = sqrt(w_i)
K(x_i, x_j) sqrt(w_j), so matrix norms approximate L2 operator norms and
kernels that are symmetric give exactly Hermitian matrices.

Two-particle operators live on the wedge x2 < x1, parametrized by the centre
X = (x1 + x2)/2 and the difference d = x1 - x2 (dx1 dx2 = dX dd).  The wedge
grid is the tensor product of a centre grid and a difference grid on (0, L).
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from importlib import resources

import numpy as np
from scipy.special import loggamma

from .conical import conical_f_batch, f0_from_f, log_hat_w0
from .errors import DomainViolation, GridMismatch, SizeOverflow
from .hypergamma import _log_2cosh
from .params import HyperbolicParams
from .relativistic import f_matrix, j_batch, kernel_K, mu_batch, ratio_R, weight

MAX_ENTRIES = 6_000_000

RELATIVISTIC_KINDS = ("Iz", "I2", "Ftransform", "F2transform")
NONREL_KINDS = ("Jt", "Jq_hat", "J2op", "J2hat", "F0transform", "F02transform")
SELF_ADJOINT_KINDS = ("Iz", "I2", "Jt", "Jq_hat", "J2op", "J2hat", "Ftransform")


@dataclass(frozen=True)
class Grid:
    nodes: np.ndarray
    weights: np.ndarray
    domain: tuple
    rule: str

    def __post_init__(self):
        if self.nodes.shape != self.weights.shape or self.nodes.ndim != 1:
            raise ValueError("nodes and weights must be matching 1-D arrays")
        if np.any(np.diff(self.nodes) <= 0) or np.any(self.weights <= 0):
            raise ValueError("grid needs increasing nodes and positive weights")

    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def root_weights(self) -> np.ndarray:
        return np.sqrt(self.weights)


@dataclass(frozen=True)
class WedgeGrid:
    """Tensor grid on the wedge x2 < x1: centre index outer, difference index inner."""
    centre: Grid
    diff: Grid

    @property
    def size(self) -> int:
        return self.centre.size * self.diff.size

    @property
    def shape(self) -> tuple:
        return (self.centre.size, self.diff.size)

    def coordinates(self):
        """(x1, x2) arrays of shape (n_centre, n_diff)."""
        c, d = np.meshgrid(self.centre.nodes, self.diff.nodes, indexing="ij")
        return c + d / 2, c - d / 2

    @property
    def root_weights(self) -> np.ndarray:
        return np.outer(self.centre.root_weights, self.diff.root_weights).ravel()


@dataclass
class GridOperator:
    grid: Grid | WedgeGrid
    matrix: np.ndarray
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        n = self.grid.size
        if self.matrix.shape != (n, n):
            raise GridMismatch(f"matrix shape {self.matrix.shape} does not match grid size {n}")


def build_grid(L: float, n: int, rule: str = "gauss-legendre", start: float = 0.0) -> Grid:
    """Gauss-Legendre nodes on (start, start + L).

    rule is 'gauss-legendre' for a single rule, or 'gauss-legendre/p' for p equal
    panels of n/p nodes each.
    """
    if not L > 0 or n < 2:
        raise DomainViolation("build_grid needs L > 0 and n >= 2")
    panels = 1
    if rule.startswith("gauss-legendre/"):
        panels = int(rule.split("/", 1)[1])
        if panels < 1 or n % panels:
            raise DomainViolation(f"{n} nodes do not split into {panels} panels")
    elif rule != "gauss-legendre":
        raise DomainViolation(f"unknown grid rule {rule!r}")
    t, w = np.polynomial.legendre.leggauss(n // panels)
    h = L / panels
    nodes = np.concatenate([start + h * (p + (t + 1) / 2) for p in range(panels)])
    weights = np.tile(w * h / 2, panels)
    return Grid(nodes, weights, (start, start + L), rule)


def wedge_grid(L: float, n: int, rule: str = "gauss-legendre", centre_fraction: float = 0.5) -> WedgeGrid:
    """n x n tensor grid: centre on (-cL/2, cL/2) with c = centre_fraction, difference on (0, L).

    The centre transform has twice the frequency of the difference transform,
    so a centre range of half the difference range keeps both resolved alike.
    """
    cl = centre_fraction * L
    return WedgeGrid(build_grid(cl, n, rule, start=-cl / 2), build_grid(L, n, rule))


def _check_budget(grid, max_entries):
    if grid.size ** 2 > max_entries:
        raise SizeOverflow(f"{grid.size}^2 matrix entries exceed the budget {max_entries}")


def _absorb(grid, kernel):
    rw = grid.root_weights
    return rw[:, None] * kernel * rw[None, :]


# ------------------------------------------------------------------ kernels


def _iz_kernel(params, b, z, x):
    X, Y = np.meshgrid(x, x, indexing="ij")
    rw = np.sqrt(weight(params, b, x))
    return rw[:, None] * kernel_K(params, b, X, Y, z) * rw[None, :]


def _f_kernel(params, b, x, y):
    X, Y = np.meshgrid(x, y, indexing="ij")
    v, _ = f_matrix(params, b, X, Y)
    return v / math.sqrt(2 * params.a_plus * params.a_minus)


def _i2_kernel(params, b, grid: WedgeGrid):
    x1, x2 = (v.ravel() for v in grid.coordinates())
    d = x1 - x2
    rw = np.sqrt(weight(params, b, d))
    out = rw[:, None] * rw[None, :]
    for xj in (x1, x2):
        for yk in (x1, x2):
            out = out * ratio_R(params, b, xj[:, None] - yk[None, :])
    return out


def _f2_kernel(params, b, grid: WedgeGrid):
    """(a+ a-)^{-1} F2 as a 4-index array (centre, diff, centre', diff')."""
    c, d = grid.centre.nodes, grid.diff.nodes
    centre = np.exp(2j * params.alpha * np.outer(c, c)) * math.sqrt(params.alpha / math.pi)
    diff = _f_kernel(params, b, d, d)
    return centre[:, None, :, None] * diff[None, :, None, :]


def _log_w0_root(g, r):
    return g * np.log(2 * np.sinh(r))


def _jt_kernel(g, t, r):
    R, S = np.meshgrid(r, r, indexing="ij")
    lc = sum(np.real(_log_2cosh((t + d1 * S + d2 * R) / 2)) for d1 in (1, -1) for d2 in (1, -1))
    lw = _log_w0_root(g, r)
    return np.exp(lw[:, None] + lw[None, :] - g * lc)


def _log_gamma_product(g, args):
    return np.real(sum(loggamma((g + 1j * a) / 2) + loggamma((g - 1j * a) / 2) for a in args))


def _jq_kernel(g, q, k):
    K, P = np.meshgrid(k, k, indexing="ij")
    lg = _log_gamma_product(g, (P + q + K, P + q - K, P - q + K, P - q - K))
    lw = np.real(log_hat_w0(g, k)) / 2
    return np.exp(lw[:, None] + lw[None, :] + lg)


def _f0_kernel(g, r, k):
    R, K = np.meshgrid(r, k, indexing="ij")
    fv, _ = conical_f_batch(g, R, K)
    return f0_from_f(g, R, K, fv) / math.sqrt(2 * math.pi)


def _j2_kernel(g, grid: WedgeGrid):
    r1, r2 = (v.ravel() for v in grid.coordinates())
    lw = _log_w0_root(g, r1 - r2)
    lc = 0.0
    for rj in (r1, r2):
        for zl in (r1, r2):
            lc = lc + np.real(_log_2cosh(rj[:, None] - zl[None, :]))
    return np.exp(lw[:, None] + lw[None, :] - g * lc)


def _j2hat_kernel(g, grid: WedgeGrid):
    k1, k2 = (v.ravel() for v in grid.coordinates())
    # hat w0 at half the pair difference, the spectral convention of F0,2
    lw = np.real(log_hat_w0(g, (k1 - k2) / 2)) / 2
    lg = 0.0
    for kj in (k1, k2):
        for pl in (k1, k2):
            lg = lg + _log_gamma_product(g, (kj[:, None] - pl[None, :],))
    return np.exp(lw[:, None] + lw[None, :] + lg)


def _f02_kernel(g, grid: WedgeGrid):
    """(2 pi)^{-1} F0,2 as a 4-index array (centre, diff, centre', diff')."""
    c, d = grid.centre.nodes, grid.diff.nodes
    centre = np.exp(2j * np.outer(c, c)) / math.sqrt(math.pi)
    diff = _f0_kernel(g, d, d / 2) * math.sqrt(2 * math.pi) / (2 * math.sqrt(math.pi))
    return centre[:, None, :, None] * diff[None, :, None, :]


# ------------------------------------------------------------------ assembly


def assemble_operator(kind: str, params, grid, *, b: float | None = None, g: float | None = None,
                      z: float = 0.0, t: float = 0.0, q: float = 0.0,
                      max_entries: int = MAX_ENTRIES) -> GridOperator:
    """Weight-symmetrized matrix of an operator or transform on a grid.

    Relativistic kinds take HyperbolicParams and b; nonrelativistic kinds take g
    (params is ignored for them and may be None).
    """
    _check_budget(grid, max_entries)
    two_particle = kind in ("I2", "F2transform", "J2op", "J2hat", "F02transform")
    if two_particle != isinstance(grid, WedgeGrid):
        raise GridMismatch(f"{kind} needs a {'wedge' if two_particle else 'half-line'} grid")
    if kind in RELATIVISTIC_KINDS:
        if not isinstance(params, HyperbolicParams) or b is None or not 0 < b < 2 * params.a:
            raise DomainViolation(f"{kind} needs HyperbolicParams and b in (0, 2a)")
        record = {"a_plus": params.a_plus, "a_minus": params.a_minus, "b": b}
    elif kind in NONREL_KINDS:
        if g is None or not g > 0:
            raise DomainViolation(f"{kind} needs g > 0")
        record = {"g": g}
    else:
        raise DomainViolation(f"unknown operator kind {kind!r}")
    if min(z, t, q) < 0:
        raise DomainViolation("z, t, q must be nonnegative")

    if kind == "Iz":
        record["z"] = z
        m = _absorb(grid, _iz_kernel(params, b, z, grid.nodes))
    elif kind == "Ftransform":
        m = _absorb(grid, _f_kernel(params, b, grid.nodes, grid.nodes))
    elif kind == "Jt":
        record["t"] = t
        m = _absorb(grid, _jt_kernel(g, t, grid.nodes))
    elif kind == "Jq_hat":
        record["q"] = q
        m = _absorb(grid, _jq_kernel(g, q, grid.nodes))
    elif kind == "F0transform":
        m = _absorb(grid, _f0_kernel(g, grid.nodes, grid.nodes))
    elif kind == "I2":
        m = _absorb(grid, _i2_kernel(params, b, grid))
    elif kind == "J2op":
        m = _absorb(grid, _j2_kernel(g, grid))
    elif kind == "J2hat":
        m = _absorb(grid, _j2hat_kernel(g, grid))
    else:
        k4 = _f2_kernel(params, b, grid) if kind == "F2transform" else _f02_kernel(g, grid)
        n = grid.size
        m = _absorb(grid, k4.reshape(n, n))
    return GridOperator(grid, m, kind, record)


# ------------------------------------------------------------------ measurements


def _same_grid(a: GridOperator, b: GridOperator):
    if a.matrix.shape != b.matrix.shape:
        raise GridMismatch("operators live on grids of different size")


def commutator_norm(A: GridOperator, B: GridOperator) -> float:
    """||AB - BA||_F / (||A||_F ||B||_F)."""
    _same_grid(A, B)
    denom = np.linalg.norm(A.matrix) * np.linalg.norm(B.matrix)
    if denom == 0:
        return 0.0
    return float(np.linalg.norm(A.matrix @ B.matrix - B.matrix @ A.matrix) / denom)


def diagonalization_residual(op: GridOperator, transform: GridOperator, multiplier, adjoint: str = "none",
                             form: str = "intertwining") -> float:
    """Relative Frobenius residual of the predicted diagonalization T' Op T = diag(m).

    adjoint picks the convention: 'none' for T Op T (T an involution), 'left'
    for T* Op T, 'right' for T Op T*.  form='conjugated' measures
    ||T' Op T - diag(m)|| / ||m|| literally; form='intertwining' measures the
    equivalent eigen-relation ||Op U - U diag(m)|| / ||U diag(m)||, with U = T
    (or T* for 'right'), which does not also charge the residual for the
    truncated transform's own distance from unitarity.
    multiplier is a callable on the spectral nodes or an array of its values.
    """
    _same_grid(op, transform)
    if adjoint not in ("none", "left", "right"):
        raise ValueError(f"unknown adjoint convention {adjoint!r}")
    T = transform.matrix
    m = np.asarray(multiplier(spectral_nodes(transform.grid)) if callable(multiplier) else multiplier).ravel()
    if form == "intertwining":
        U = T.conj().T if adjoint == "right" else T
        target = U * m[None, :]
        res = op.matrix @ U - target
        norm = np.linalg.norm(target)
    elif form == "conjugated":
        if adjoint == "left":
            core = T.conj().T @ op.matrix @ T
        elif adjoint == "right":
            core = T @ op.matrix @ T.conj().T
        else:
            core = T @ op.matrix @ T
        res = core - np.diag(m)
        norm = np.linalg.norm(m)
    else:
        raise ValueError(f"unknown residual form {form!r}")
    if norm == 0:
        return float(np.linalg.norm(res))
    return float(np.linalg.norm(res) / norm)


def spectral_nodes(grid):
    """Nodes of a grid as the transform's spectral variable (pairs for wedge grids)."""
    if isinstance(grid, WedgeGrid):
        return grid.coordinates()
    return grid.nodes


def unitarity_defect(transform: GridOperator) -> float:
    """||T T* - I||_F / ||I||_F."""
    T = transform.matrix
    n = T.shape[0]
    return float(np.linalg.norm(T @ T.conj().T - np.eye(n)) / math.sqrt(n))


def involution_defect(transform: GridOperator) -> float:
    """||T T - I||_F / ||I||_F, for transforms that are their own inverse."""
    T = transform.matrix
    n = T.shape[0]
    return float(np.linalg.norm(T @ T - np.eye(n)) / math.sqrt(n))


def sine_transform(grid: Grid, omega: float = 1.0) -> GridOperator:
    """Discretized sqrt(2 omega/pi) sin(omega x y), unitary on the half line."""
    X, Y = np.meshgrid(grid.nodes, grid.nodes, indexing="ij")
    kern = math.sqrt(2 * omega / math.pi) * np.sin(omega * X * Y)
    return GridOperator(grid, _absorb(grid, kern), "sine", {"omega": omega})


def hermiticity_defect(op: GridOperator) -> float:
    m = op.matrix
    scale = np.abs(m).max() or 1.0
    return float(np.abs(m - m.conj().T).max() / scale)


# ------------------------------------------------------------------ refinement studies

LADDER = ((48, 10.0), (64, 12.0), (96, 14.0))
STUDY_PARAMS = HyperbolicParams(2.0, 3.0)


@dataclass(frozen=True)
class StudyLevel:
    n: int
    L: float
    commutators: tuple
    residual: float
    seconds: float


def _nonrel_multiplier(g, fixed, nodes, spectral_first):
    r, k = (fixed, nodes) if spectral_first else (nodes, fixed)
    return 2 * conical_f_batch(g, r, k)[0]


def _study_level(name, n, L, params, b, g, s1, s2):
    """Commutators and the diagonalization residual for one study at one grid level."""
    if name == "Iz":
        grid = build_grid(L, n)
        A = assemble_operator("Iz", params, grid, b=b, z=s1)
        others = (assemble_operator("Iz", params, grid, b=b, z=s2),
                  assemble_operator("Iz", params, grid, b=2 * params.a - b, z=s2))
        T = assemble_operator("Ftransform", params, grid, b=b)
        m = 2 * j_batch(params, b, s1, grid.nodes)[0]
        adjoint = "none"
    elif name in ("Jt", "Jq_hat"):
        grid = build_grid(L, n)
        key = "t" if name == "Jt" else "q"
        A = assemble_operator(name, None, grid, g=g, **{key: s1})
        others = (assemble_operator(name, None, grid, g=g, **{key: s2}),)
        T = assemble_operator("F0transform", None, grid, g=g)
        # Jt is diagonal in k with 2F(g; t, 2k); Jq_hat is diagonal in r with 2F(g; r, 2q)
        m = _nonrel_multiplier(g, s1, grid.nodes, name == "Jt")
        adjoint = "left" if name == "Jt" else "right"
    elif name == "I2":
        grid = wedge_grid(L, n // 2)
        A = assemble_operator("I2", params, grid, b=b)
        others = (assemble_operator("I2", params, grid, b=2 * params.a - b),)
        T = assemble_operator("F2transform", params, grid, b=b)
        v1, v2 = grid.coordinates()
        m = mu_batch(params, b, v1.ravel(), v2.ravel())
        adjoint = "left"
    else:
        raise DomainViolation(f"unknown operator study {name!r}")
    comms = tuple(commutator_norm(A, B) for B in others)
    return comms, diagonalization_residual(A, T, m, adjoint=adjoint)


STUDIES = {
    # name: (b or None, g or None, first parameter, second parameter)
    "Iz": (1.6, None, 1.0, 2.0),
    "Jt": (None, 1.5, 0.7, 1.5),
    "Jq_hat": (None, 1.5, 0.6, 1.3),
    "I2": (1.6, None, None, None),
}


def refinement_study(name: str, ladder=LADDER, params: HyperbolicParams = STUDY_PARAMS,
                     b: float | None = None, g: float | None = None,
                     s1: float | None = None, s2: float | None = None) -> list:
    """Run one operator study along a ladder of (n, L) levels.

    I2 uses n/2 nodes per axis of the wedge tensor grid, so its matrices have
    n^2/4 rows.
    """
    if name not in STUDIES:
        raise DomainViolation(f"unknown operator study {name!r}")
    db, dg, d1, d2 = STUDIES[name]
    b = db if b is None else b
    g = dg if g is None else g
    s1 = d1 if s1 is None else s1
    s2 = d2 if s2 is None else s2
    levels = []
    for n, L in ladder:
        t0 = time.perf_counter()
        comms, res = _study_level(name, int(n), float(L), params, b, g, s1, s2)
        levels.append(StudyLevel(int(n), float(L), comms, res, time.perf_counter() - t0))
    return levels


def strictly_decreasing(values) -> bool:
    values = list(values)
    return all(b < a for a, b in zip(values, values[1:]))


def unitarity_comparison(ladder=LADDER, params: HyperbolicParams = STUDY_PARAMS) -> list:
    """Unitarity defects of F(b = a+) and F0(g = 1) next to the matching discretized sine transform.

    Both transforms reduce to a sine transform: F(a+) with frequency alpha/2
    and F0(1) with frequency 1.
    """
    rows = []
    for n, L in ladder:
        grid = build_grid(float(L), int(n))
        F = assemble_operator("Ftransform", params, grid, b=params.a_plus)
        S = sine_transform(grid, params.alpha / 2)
        rows.append({"transform": "F(b=a+)", "n": int(n), "L": float(L),
                     "defect": unitarity_defect(F), "involution_defect": involution_defect(F),
                     "sine_defect": unitarity_defect(S)})
        F0 = assemble_operator("F0transform", None, grid, g=1.0)
        S0 = sine_transform(grid, 1.0)
        rows.append({"transform": "F0(g=1)", "n": int(n), "L": float(L),
                     "defect": unitarity_defect(F0), "sine_defect": unitarity_defect(S0)})
    return rows


def load_baseline() -> dict:
    """Finest-level commutator and residual values recorded from the first full ladder run."""
    with resources.files("conprod").joinpath("data/operator_baseline.json").open() as fh:
        return json.load(fh)
