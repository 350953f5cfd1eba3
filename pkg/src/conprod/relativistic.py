"""Relativistic conical function J(b; x, y) and its relatives.

Everything here is assembled from the hyperbolic gamma function.  The one
real function that dominates the cost is

    R_b(s) = G(s - ib/2) / G(s + ib/2),

which is even, real for real s and b, and equals exp(-alpha b |s| / 2) once
|s| is past the asymptotic threshold of G.  J, the kernel K and the two
particle kernel S2 are all products of R_b at shifted arguments, so R_b is
tabulated once per (params, b) as a piecewise Chebyshev interpolant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainViolation, NegativeWeight
from .hypergamma import asymptotic_threshold, gamma_h, log_gamma, phi_fn, c_fn, w_fn
from .interp import ChebPanels
from .params import HyperbolicParams
from .quadrature import Envelope, EvalResult, QuadratureSpec, integrate_interval, integrate_real_line

_MAX_PANELS = 600


def _is_real(v) -> bool:
    return np.isrealobj(v) or not np.any(np.imag(v))


def _check_b(params, b):
    if not (_is_real(b) and 0 < float(np.real(b)) < 2 * params.a):
        raise DomainViolation(f"coupling b={b} must lie in (0, 2a)")
    return float(np.real(b))


@dataclass(frozen=True)
class RelPoint:
    b: complex
    x: complex
    y: complex


@dataclass(frozen=True)
class Wedge2:
    x1: float
    x2: float

    def __post_init__(self):
        if not self.x2 < self.x1:
            raise DomainViolation("wedge points need x2 < x1")


def _ratio_direct(params, b, s):
    s = np.asarray(s, dtype=complex)
    both = np.concatenate([s.ravel() - 0.5j * b, s.ravel() + 0.5j * b])
    lg = log_gamma(params, both)
    n = s.size
    return np.exp(lg[:n] - lg[n:]).reshape(s.shape)


class _RatioTable:
    """R_b on [0, s_max] by Chebyshev panels, exp(-alpha b s/2) beyond."""

    def __init__(self, params: HyperbolicParams, b: float):
        self.params, self.b = params, b
        self.rate = params.alpha * b / 2
        d = params.a - b / 2
        self.s_max = asymptotic_threshold(params) + b / 2 + params.a
        width = min(d, params.a)
        self.table = None
        if self.s_max / width <= _MAX_PANELS:
            self.table = ChebPanels(
                lambda s: _ratio_direct(params, b, s).real, 0.0, self.s_max, width, degree=24
            )

    def __call__(self, s):
        s = np.abs(np.atleast_1d(np.asarray(s, dtype=float)))
        if self.table is None:
            return _ratio_direct(self.params, self.b, s).real
        out = np.exp(-self.rate * s)
        inside = s < self.s_max
        out[inside] = self.table(s[inside])
        return out


@lru_cache(maxsize=64)
def _ratio_table(params: HyperbolicParams, b: float) -> _RatioTable:
    return _RatioTable(params, b)


def ratio_R(params: HyperbolicParams, b, s):
    """R_b(s) = G(s - ib/2)/G(s + ib/2); tabulated when b and s are real."""
    s_arr = np.asarray(s)
    if _is_real(b) and _is_real(s_arr) and 0 < np.real(b) < 2 * params.a:
        out = _ratio_table(params, float(np.real(b)))(np.real(s_arr)).reshape(s_arr.shape)
    else:
        out = _ratio_direct(params, b, s_arr)
    return out[()] if np.ndim(out) == 0 else out


class _WeightTable:
    """w(b; z) exp(-alpha b |z|) on [0, z_max]; w is even in z."""

    def __init__(self, params: HyperbolicParams, b: float):
        self.params, self.b = params, b
        self.rate = params.alpha * b
        self.z_max = asymptotic_threshold(params) + 2 * params.a
        width = min(b, 2 * params.a - b, params.a)
        self.table = None
        if self.z_max / width <= _MAX_PANELS:
            self.table = ChebPanels(
                lambda z: (w_fn(params, b, z) * np.exp(-self.rate * z)).real, 0.0, self.z_max, width, degree=24
            )

    def __call__(self, z):
        z = np.abs(np.atleast_1d(np.asarray(z, dtype=float)))
        out = np.empty(z.shape)
        inside = z < self.z_max
        if self.table is not None and np.any(inside):
            out[inside] = self.table(z[inside]) * np.exp(self.rate * z[inside])
        rest = ~inside if self.table is not None else np.ones(z.shape, bool)
        if np.any(rest):
            out[rest] = w_fn(self.params, self.b, z[rest]).real
        return out


@lru_cache(maxsize=64)
def _weight_table(params: HyperbolicParams, b: float) -> _WeightTable:
    return _WeightTable(params, b)


def weight(params: HyperbolicParams, b, z):
    """w(b; z); tabulated for real b in (0, 2a) and real z."""
    z_arr = np.asarray(z)
    if _is_real(b) and _is_real(z_arr) and 0 < np.real(b) < 2 * params.a:
        out = _weight_table(params, float(np.real(b)))(np.real(z_arr)).reshape(z_arr.shape)
    else:
        out = w_fn(params, b, z_arr)
    return out[()] if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------
# J(b; x, y)


def _route(params, b, x, y):
    """'direct' or 'dual' (through the J symmetry), whichever cancels less."""
    direct = params.alpha * (2 * params.a - b) * abs(y) / 2
    dual = params.alpha * b * abs(x) / 2
    return "dual" if direct > dual + 7 else "direct"


def _bent_path(sigma, X):
    """Imaginary offset h(s) of a contour passing the pole rows of the J integrand."""
    if X == 0:
        return lambda s: np.zeros_like(s), lambda s: np.zeros_like(s), []
    half = abs(X) / 2

    def h(s):
        return (sigma / 2) * np.clip(s / (X / 2), -1.0, 1.0)

    def dh(s):
        return np.where(np.abs(s) < half, sigma / X, 0.0)

    return h, dh, [-half, half]


def _j_integral(params, b, x, y, spec):
    """Evaluate the defining contour integral of J at one point."""
    alpha = params.alpha
    d = params.a - b / 2
    x = complex(x)
    y = complex(y)
    kappa = alpha * (b - abs(y.imag))
    if kappa <= 0:
        raise DomainViolation("|Im y| must stay below b for the integral representation")
    omega = alpha * abs(y.real) or None
    if x.imag == 0:
        X = x.real
        scale = float(ratio_R(params, b, X / 2)) ** 2

        def f(t):
            return ratio_R(params, b, t + X / 2) * ratio_R(params, b, t - X / 2) * np.exp(1j * alpha * t * y)

        env = Envelope(rate=kappa, t0=abs(X) / 2 + 2 * params.a)
        qs = QuadratureSpec(
            abs_tol=spec.abs_tol * max(scale, 1e-300),
            rel_tol=spec.rel_tol,
            max_subdivisions=spec.max_subdivisions,
            truncation_policy=spec.truncation_policy,
            oscillation_hint=omega,
        )
        return integrate_real_line(f, env, qs, breakpoints=[-abs(X) / 2, abs(X) / 2])

    sigma, X = x.imag, x.real
    if X == 0 and abs(sigma) >= 2 * d:
        raise DomainViolation("x lies on or beyond a pole hyperplane of J")
    h, dh, kinks = _bent_path(sigma, X)

    def f(s):
        t = s + 1j * h(s)
        val = ratio_R(params, b, t + x / 2) * ratio_R(params, b, t - x / 2) * np.exp(1j * alpha * t * y)
        return val * (1 + 1j * dh(s))

    env = Envelope(rate=kappa, t0=abs(X) / 2 + 2 * params.a)
    qs = QuadratureSpec(spec.abs_tol, spec.rel_tol, spec.max_subdivisions, spec.truncation_policy, omega)
    return integrate_real_line(f, env, qs, breakpoints=kinks)


def j_fn(params: HyperbolicParams, b, x, y, spec: QuadratureSpec | None = None, route: str = "auto") -> EvalResult:
    """J(b; x, y) by quadrature of its contour integral.

    route="direct" always uses the defining integral; "dual" goes through
    J(b; x, y) = G(ia - ib)^2 J(2a - b; y, x); "auto" picks the one with less
    cancellation.  Complex x is handled by bending the contour around the
    pole rows; complex y is allowed while |Im y| < b.
    """
    spec = spec or QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)
    b = _check_b(params, b)
    if route == "auto":
        route = "direct"
        if np.imag(x) == 0 and np.imag(y) == 0:
            route = _route(params, b, float(np.real(x)), float(np.real(y)))
    if route == "direct":
        return _j_integral(params, b, x, y, spec)
    if route == "dual":
        bd = 2 * params.a - b
        pref = complex(gamma_h(params, 1j * (params.a - b))) ** 2
        res = _j_integral(params, bd, y, x, spec)
        return EvalResult(pref * res.value, abs(pref) * res.error_estimate, res.n_evals, res.truncation_radius)
    raise ValueError("route must be 'auto', 'direct' or 'dual'")


def _trap_step(params, b, y_abs, extra):
    d = params.a - b / 2
    dp = 0.8 * d
    return 2 * math.pi * dp / (40 + params.alpha * dp * y_abs + extra)


def _j_trapezoid(params, b, x, y):
    """J for real arrays x, y at coupling b by the trapezoid rule on the real line.

    The integrand is analytic in |Im t| < a - b/2 and even in t, so the rule
    converges geometrically.  Returns values and a step-doubling error estimate.
    """
    alpha = params.alpha
    x = np.abs(np.asarray(x, dtype=float))
    y = np.abs(np.asarray(y, dtype=float))
    table = _ratio_table(params, b)
    out = np.empty(x.shape)
    err = np.empty(x.shape)
    if x.size == 0:
        return out, err
    cancel = alpha * (2 * params.a - b) * float(y.max()) / 2
    h = _trap_step(params, b, float(y.max()), cancel)
    reach = 39.0 / (alpha * b)
    for s in range(0, x.size, 64):
        xs, ys = x[s:s + 64], y[s:s + 64]
        K = int(math.ceil((xs.max() / 2 + reach) / h))
        K += K % 2
        t = h * np.arange(K + 1)
        P = table(t[None, :] + xs[:, None] / 2) * table(t[None, :] - xs[:, None] / 2)
        vals = P * np.cos(alpha * t[None, :] * ys[:, None])
        w = np.full(K + 1, 2.0)
        w[0] = 1.0
        fine = h * (vals @ w)
        w2 = np.zeros(K + 1)
        w2[::2] = 4.0
        w2[0] = 2.0
        coarse = h * (vals @ w2)
        out[s:s + 64] = fine
        err[s:s + 64] = np.abs(fine - coarse)
    return out, err


def j_batch(params: HyperbolicParams, b, x, y, route: str = "auto"):
    """J(b; x, y) for broadcast real arrays, returning (values, error estimates).

    Used inside nested integrals where many J values share b.
    """
    b = _check_b(params, b)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    x, y = x.ravel(), y.ravel()
    out = np.empty(x.size)
    err = np.empty(x.size)
    if route == "auto":
        direct = params.alpha * (2 * params.a - b) * np.abs(y) / 2
        dual = params.alpha * b * np.abs(x) / 2
        use_dual = direct > dual + 7
    else:
        use_dual = np.full(x.size, route == "dual")
    if np.any(~use_dual):
        m = ~use_dual
        out[m], err[m] = _j_trapezoid(params, b, x[m], y[m])
    if np.any(use_dual):
        bd = 2 * params.a - b
        pref = float(gamma_h(params, 1j * (params.a - b)).real) ** 2
        v, e = _j_trapezoid(params, bd, y[use_dual], x[use_dual])
        out[use_dual], err[use_dual] = pref * v, pref * e
    return out.reshape(shape), err.reshape(shape)


def j_eval_at_ib(params: HyperbolicParams, b, v) -> EvalResult:
    """Closed form sqrt(a+ a-) G(ia - 2ib) prod_d G(d v - ia + ib)."""
    if not 0 < b < params.a:
        raise DomainViolation("explicit evaluation needs b in (0, a)")
    ia = 1j * params.a
    g = gamma_h(params, np.array([ia - 2j * b, v - ia + 1j * b, -v - ia + 1j * b]))
    val = math.sqrt(params.a_plus * params.a_minus) * g[0] * g[1] * g[2]
    return EvalResult(complex(val), 1e-13 * abs(val), 3, 0.0)


def j_continued_at_ib(params: HyperbolicParams, b, v, spec: QuadratureSpec | None = None) -> EvalResult:
    """J(b; ib, v) from the integral, via G(ia-ib)^2 J(2a-b; v, ib) at complex y."""
    if not 0 < b < params.a:
        raise DomainViolation("continuation to y = ib needs b in (0, a)")
    spec = spec or QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)
    pref = complex(gamma_h(params, 1j * (params.a - b))) ** 2
    res = _j_integral(params, 2 * params.a - b, v, 1j * b, spec)
    return EvalResult(pref * res.value, abs(pref) * res.error_estimate, res.n_evals, res.truncation_radius)


def j_asymptotic(params: HyperbolicParams, b, x, y):
    """Leading Re x -> +inf form of J; use -x for Re x -> -inf."""
    x = np.asarray(x, dtype=complex)
    alpha = params.alpha
    bd = 2 * params.a - b
    pref = math.sqrt(params.a_plus * params.a_minus) * complex(gamma_h(params, 1j * (params.a - b)))
    cp = c_fn(params, bd, y)
    cm = c_fn(params, bd, -y)
    out = pref * np.exp(-alpha * b * x / 2) * (cp * np.exp(1j * alpha * x * y / 2) + cm * np.exp(-1j * alpha * x * y / 2))
    return out[()] if out.ndim == 0 else out


def r_fn(params: HyperbolicParams, b, x, y, spec=None) -> EvalResult:
    """R-function: (a+ a-)^{-1/2} G(2ib - ia) J prod_d G(d y + ia - ib)."""
    j = j_fn(params, b, x, y, spec)
    ia = 1j * params.a
    g = gamma_h(params, np.array([2j * b - ia, y + ia - 1j * b, -y + ia - 1j * b]))
    pref = g[0] * g[1] * g[2] / math.sqrt(params.a_plus * params.a_minus)
    return EvalResult(complex(pref * j.value), abs(pref) * j.error_estimate, j.n_evals, j.truncation_radius)


def e_fn(params: HyperbolicParams, b, x, y, spec=None) -> EvalResult:
    """E-function: (a+ a-)^{-1/2} phi(b) G(ib - ia) J / (c(b; x) c(2a - b; y))."""
    j = j_fn(params, b, x, y, spec)
    pref = phi_fn(params, b) * complex(gamma_h(params, 1j * (b - params.a)))
    pref /= math.sqrt(params.a_plus * params.a_minus) * c_fn(params, b, x) * c_fn(params, 2 * params.a - b, y)
    return EvalResult(complex(pref * j.value), abs(pref) * j.error_estimate, j.n_evals, j.truncation_radius)


def _positive_root(w, what):
    w = np.asarray(w)
    if np.any(np.real(w) <= 0):
        raise NegativeWeight(f"{what} has nonpositive real part")
    return np.sqrt(np.real(w))


def f_kernel(params: HyperbolicParams, b, x, y, spec=None) -> EvalResult:
    """Real symmetric transform kernel (a+ a-)^{-1/2} G(ib-ia) w(b;x)^{1/2} J w(2a-b;y)^{1/2}."""
    if not (x > 0 and y > 0):
        raise DomainViolation("f_kernel needs x, y > 0")
    j = j_fn(params, b, x, y, spec)
    pref = float(gamma_h(params, 1j * (b - params.a)).real) / math.sqrt(params.a_plus * params.a_minus)
    pref *= float(_positive_root(w_fn(params, b, x), "w(b;x)")) * float(
        _positive_root(w_fn(params, 2 * params.a - b, y), "w(2a-b;y)")
    )
    return EvalResult(complex(pref * j.value), abs(pref) * j.error_estimate, j.n_evals, j.truncation_radius)


def f_batch(params: HyperbolicParams, b, x, y):
    """f_kernel on broadcast positive real arrays via j_batch; returns (values, errors)."""
    b = _check_b(params, b)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    j, e = j_batch(params, b, x, y)
    pref = float(gamma_h(params, 1j * (b - params.a)).real) / math.sqrt(params.a_plus * params.a_minus)
    scale = pref * _positive_root(weight(params, b, x), "w(b;x)") * _positive_root(
        weight(params, 2 * params.a - b, y), "w(2a-b;y)"
    )
    return scale * j, np.abs(scale) * e


def _f_asymptotic(params, b, x, y):
    """F from the leading large-x form of J (x the larger argument)."""
    pref = float(gamma_h(params, 1j * (b - params.a)).real) / math.sqrt(params.a_plus * params.a_minus)
    j = np.real(j_asymptotic(params, b, x, y))
    return pref * np.sqrt(weight(params, b, x)) * j * np.sqrt(weight(params, 2 * params.a - b, y))


def f_matrix(params: HyperbolicParams, b, x, y):
    """F(b; x, y) on broadcast positive arrays, valid for arbitrarily large arguments.

    Inside the box max(x, y) < 30/(alpha a_s) the J quadrature is used; past it
    the leading asymptotic form in the larger argument, whose neglected part is
    below exp(-30) there.  Returns (values, errors).
    """
    b = _check_b(params, b)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainViolation("f_matrix needs x, y > 0")
    out = np.empty(x.shape)
    err = np.empty(x.shape)
    x_sw = 30.0 / (params.alpha * params.a_s)
    far_x = (x >= y) & (x >= x_sw)
    far_y = (y > x) & (y >= x_sw)
    near = ~(far_x | far_y)
    if np.any(near):
        out[near], err[near] = f_batch(params, b, x[near], y[near])
    if np.any(far_x):
        out[far_x] = _f_asymptotic(params, b, x[far_x], y[far_x])
        err[far_x] = math.exp(-30.0)
    if np.any(far_y):
        out[far_y] = _f_asymptotic(params, b, y[far_y], x[far_y])
        err[far_y] = math.exp(-30.0)
    return out, err


def kernel_K(params: HyperbolicParams, b, x, y, z):
    """K(b; x, y, z) = prod over eight sign choices of G((+-x +-y +-z - ib)/2)."""
    x, y, z = np.broadcast_arrays(*(np.asarray(v) for v in (x, y, z)))
    out = np.ones(x.shape, dtype=complex if not (_is_real(b) and _is_real(x) and _is_real(y) and _is_real(z)) else float)
    for d1 in (1, -1):
        for d2 in (1, -1):
            out = out * ratio_R(params, b, (d1 * x + d2 * y + z) / 2)
    return out[()] if out.ndim == 0 else out


def s2_kernel(params: HyperbolicParams, b, x, y):
    """S2(b; x, y) = prod_{j,k} G(x_j - y_k - ib/2)/G(x_j - y_k + ib/2) for pairs x, y.

    x and y are sequences of two broadcastable arrays.
    """
    out = 1.0
    for xj in x:
        for yk in y:
            out = out * ratio_R(params, b, np.asarray(xj) - np.asarray(yk))
    return out


def j2_fn(params: HyperbolicParams, b, x, y, spec=None) -> EvalResult:
    """Two-particle J: centre-of-mass plane wave times J of the differences."""
    (x1, x2), (y1, y2) = x, y
    j = j_fn(params, b, x1 - x2, y1 - y2, spec)
    phase = np.exp(1j * params.alpha * (x1 + x2) * (y1 + y2) / 2)
    return EvalResult(complex(phase * j.value), j.error_estimate, j.n_evals, j.truncation_radius)


def j2_direct(params: HyperbolicParams, b, x, y, spec: QuadratureSpec | None = None) -> EvalResult:
    """Two-particle J from its own z-integral over S2-sharp times a plane wave."""
    spec = spec or QuadratureSpec(abs_tol=1e-13, rel_tol=1e-11)
    b = _check_b(params, b)
    (x1, x2), (y1, y2) = x, y
    alpha = params.alpha
    dy = y1 - y2

    def f(z):
        return ratio_R(params, b, x1 - z) * ratio_R(params, b, x2 - z) * np.exp(1j * alpha * z * dy)

    c = (x1 + x2) / 2
    env = Envelope(rate=alpha * b, t0=abs(x1 - x2) / 2 + 2 * params.a, center=c)
    res = integrate_real_line(f, env, spec.with_oscillation(alpha * abs(dy) or None), breakpoints=[x1, x2])
    phase = np.exp(1j * alpha * y2 * (x1 + x2))
    return EvalResult(complex(phase * res.value), res.error_estimate, res.n_evals, res.truncation_radius)


def f2_kernel(params: HyperbolicParams, b, x: Wedge2, y: Wedge2, spec=None) -> EvalResult:
    f = f_kernel(params, b, x.x1 - x.x2, y.x1 - y.x2, spec)
    phase = np.exp(1j * params.alpha * (x.x1 + x.x2) * (y.x1 + y.x2) / 2)
    return EvalResult(complex(phase * f.value), f.error_estimate, f.n_evals, f.truncation_radius)


def mu_fn(params: HyperbolicParams, b, y):
    """mu(b; y) = a+ a- G(ia - ib)^2 prod_{j,d} G(d y_j + ib/2 - ia) for a pair y."""
    y1, y2 = (np.asarray(v, dtype=complex) for v in y)
    y1, y2 = np.broadcast_arrays(y1, y2)
    ia = 1j * params.a
    s = 0.5j * b - ia
    args = np.stack([y1 + s, -y1 + s, y2 + s, -y2 + s])
    lg = log_gamma(params, args).sum(axis=0)
    lg0 = 2 * log_gamma(params, ia - 1j * b)
    out = params.a_plus * params.a_minus * np.exp(lg + lg0)
    return out[()] if out.ndim == 0 else out


class _MuFactorTable:
    """m(v) = G(v - ic) G(-v - ic) with c = a - b/2, stored as m(v) exp(alpha c |v|).

    m is real, positive and even; its nearest poles sit at v = +-ib/2.
    """

    def __init__(self, params: HyperbolicParams, b: float):
        self.params, self.b = params, b
        self.c = params.a - b / 2
        self.rate = params.alpha * self.c
        self.v_max = asymptotic_threshold(params) + self.c + params.a
        self.table = ChebPanels(lambda v: self._direct(v) * np.exp(self.rate * v), 0.0, self.v_max,
                                min(b / 2, params.a), degree=24)

    def _direct(self, v):
        v = np.asarray(v, dtype=complex)
        lg = log_gamma(self.params, np.concatenate([v - 1j * self.c, -v - 1j * self.c]))
        n = v.size
        return np.exp(lg[:n] + lg[n:]).real

    def __call__(self, v):
        v = np.abs(np.atleast_1d(np.asarray(v, dtype=float)))
        out = np.exp(-self.rate * v)
        inside = v < self.v_max
        out[inside] *= self.table(v[inside])
        return out


@lru_cache(maxsize=32)
def _mu_factor_table(params: HyperbolicParams, b: float) -> _MuFactorTable:
    return _MuFactorTable(params, b)


def mu_batch(params: HyperbolicParams, b, v1, v2):
    """mu(b; (v1, v2)) for broadcast real arrays, from a tabulated one-variable factor."""
    b = _check_b(params, b)
    v1, v2 = np.broadcast_arrays(np.asarray(v1, dtype=float), np.asarray(v2, dtype=float))
    table = _mu_factor_table(params, b)
    g0 = float(gamma_h(params, 1j * (params.a - b)).real)
    out = params.a_plus * params.a_minus * g0 ** 2 * table(v1.ravel()) * table(v2.ravel())
    return out.reshape(v1.shape)


# --------------------------------------------------------------------------
# difference equations


def _s(params, delta, z):
    return np.sinh(np.pi * z / params.scale(delta))


def _c(params, delta, z):
    return np.cosh(np.pi * z / params.scale(delta))


def ado(params: HyperbolicParams, b, delta: int, z, f):
    """(A_delta(b; z) f)(z) for a callable f of one complex variable."""
    shift = 1j * params.scale(-delta)
    sz = _s(params, delta, z)
    return (_s(params, delta, z - 1j * b) / sz) * f(z - shift) + (_s(params, delta, z + 1j * b) / sz) * f(z + shift)


def ade_sides(params: HyperbolicParams, b, x, y, delta: int, side: str = "x", spec=None):
    """Both sides (A_delta J, 2 c_delta J) of the x- or y-difference equation for J.

    The y-equation acts with coupling 2a - b; it is evaluated through the J
    symmetry so that the shifted variable enters as a first argument.
    """
    spec = spec or QuadratureSpec(abs_tol=1e-14, rel_tol=1e-12)
    b = _check_b(params, b)
    if side == "x":
        def f(xx):
            return j_fn(params, b, xx, y, spec, route="direct").value

        lhs = ado(params, b, delta, complex(x), f)
        eig = 2 * _c(params, delta, y)
    elif side == "y":
        bd = 2 * params.a - b
        pref = complex(gamma_h(params, 1j * (params.a - b))) ** 2

        def f(yy):
            return pref * j_fn(params, bd, yy, x, spec, route="direct").value

        lhs = ado(params, bd, delta, complex(y), f)
        eig = 2 * _c(params, delta, x)
    else:
        raise ValueError("side must be 'x' or 'y'")
    j0 = j_fn(params, b, x, y, spec, route="direct").value
    return complex(lhs), complex(eig * j0)


def ade_residual(params: HyperbolicParams, b, x, y, delta: int, side: str = "x", spec=None) -> float:
    """Normalized residual of the x- or y-difference equation satisfied by J."""
    lhs, rhs = ade_sides(params, b, x, y, delta, side, spec)
    return float(abs(lhs - rhs) / abs(rhs))


def kernel_identity_residual(params: HyperbolicParams, b, x, y, z, delta: int) -> float:
    """Largest pairwise difference of A_delta applied to K in x, y and z, normalized."""
    def kx(v):
        return kernel_K(params, b, v, y, z)

    def ky(v):
        return kernel_K(params, b, x, v, z)

    def kz(v):
        return kernel_K(params, b, x, y, v)

    vals = [ado(params, b, delta, complex(x), kx), ado(params, b, delta, complex(y), ky),
            ado(params, b, delta, complex(z), kz)]
    scale = max(abs(v) for v in vals)
    diffs = [abs(vals[0] - vals[1]), abs(vals[1] - vals[2]), abs(vals[0] - vals[2])]
    return float(max(diffs) / scale)
