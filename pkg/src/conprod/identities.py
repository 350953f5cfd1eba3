"""Catalogue of relativistic identities checked pointwise by independent quadrature.

Each case evaluates both sides of one identity at a sample point.  Left and
right sides never share a quadrature: where one side is a closed form the
other is an integral, and where both are integrals they use different
integrands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import PoleProximity, QuadratureFailure
from .hypergamma import gamma_h, log_gamma
from .params import HyperbolicParams
from .quadrature import Envelope, QuadratureSpec, integrate_batch, integrate_half_line, integrate_real_line
from .relativistic import (
    ade_sides,
    ado,
    f_batch,
    j_batch,
    j_continued_at_ib,
    j_eval_at_ib,
    j_fn,
    kernel_K,
    mu_batch,
    mu_fn,
    s2_kernel,
    weight,
)
from .reports import Row, VerificationReport
from .sampling import map_points, sample_box

Evaluator = Callable[[HyperbolicParams, dict, QuadratureSpec], list]

DEFAULT_SPEC = QuadratureSpec(abs_tol=1e-14, rel_tol=1e-9)


@dataclass(frozen=True)
class IdentityCase:
    name: str
    anchor: str
    tol: float
    box: Callable[[HyperbolicParams], dict]
    evaluate: Evaluator
    default_points: int = 10
    tags: tuple = field(default_factory=tuple)


def _target(spec: QuadratureSpec, scale: float) -> QuadratureSpec:
    """Quadrature spec whose absolute tolerance tracks the size of the expected answer."""
    return QuadratureSpec(
        abs_tol=max(spec.rel_tol * abs(scale), spec.abs_tol),
        rel_tol=spec.rel_tol,
        max_subdivisions=spec.max_subdivisions,
        truncation_policy=spec.truncation_policy,
    )


def _rel_box(p: HyperbolicParams, **extra):
    box = {"b": (0.3 * p.a, 1.7 * p.a)}
    box.update(extra)
    return box


def _ga(p, b):
    """G(ia - ib), real for real b."""
    return float(gamma_h(p, 1j * (p.a - b)).real)


# ---------------------------------------------------------------- product formulas


def _prform(p, pt, spec):
    b, x, y, v = pt["b"], pt["x"], pt["y"], pt["v"]
    jspec = spec.tighter(100)
    lhs = j_fn(p, b, x, v, jspec).value.real * j_fn(p, b, y, v, jspec).value.real

    def f(z):
        return 0.5 * weight(p, b, z) * j_batch(p, b, z, v)[0] * kernel_K(p, b, x, y, z)

    env = Envelope(p.alpha * b / 2, t0=abs(x) + abs(y) + 2 * p.a)
    qs = _target(spec, lhs).with_oscillation(p.alpha * abs(v) / 2)
    rhs = integrate_half_line(f, env, qs, breakpoints=sorted({abs(x + y), abs(x - y)} - {0.0})).value
    return [({}, lhs, rhs)]


def _kernel_literal(p, b, t, u, v):
    """prod over eight sign choices of G((d1 t + d2 u + d3 v + ib)/2 - ia), term by term."""
    v = np.asarray(v, dtype=float)
    args = [(d1 * t + d2 * u + d3 * v + 1j * b) / 2 - 1j * p.a
            for d1 in (1, -1) for d2 in (1, -1) for d3 in (1, -1)]
    lg = log_gamma(p, np.stack(args))
    return np.exp(lg.sum(axis=0)).real


def _prformalt(p, pt, spec):
    b, x, t, u = pt["b"], pt["x"], pt["t"], pt["u"]
    bd = 2 * p.a - b
    jspec = spec.tighter(100)
    lhs = j_fn(p, b, x, t, jspec).value.real * j_fn(p, b, x, u, jspec).value.real
    g2 = _ga(p, b) ** 2

    def f(v):
        return 0.5 * g2 * weight(p, bd, v) * j_batch(p, b, x, v)[0] * _kernel_literal(p, b, t, u, v)

    env = Envelope(p.alpha * bd / 2, t0=abs(t) + abs(u) + 2 * p.a)
    qs = _target(spec, lhs).with_oscillation(p.alpha * abs(x) / 2)
    rhs = integrate_half_line(f, env, qs, breakpoints=sorted({abs(t + u), abs(t - u)} - {0.0})).value
    return [({}, lhs, rhs)]


def _free_product(p: HyperbolicParams, x, y, v, spec):
    """Both sides of the elementary product formula at b = a+ (with a- in the integrand)."""
    ap, am = p.a_plus, p.a_minus
    alpha = p.alpha

    def f(z):
        num = np.sinh(np.pi * z / am) * np.sin(alpha * z * v / 2)
        den = np.ones_like(z)
        for d1 in (1, -1):
            for d2 in (1, -1):
                den = den * np.cosh(np.pi * (z + d1 * x + d2 * y) / (2 * am))
        return num / den

    rhs = 4 * am / np.sinh(np.pi * v / ap) * np.sin(alpha * x * v / 2) / np.sinh(np.pi * x / am)
    rhs *= np.sin(alpha * y * v / 2) / np.sinh(np.pi * y / am)
    env = Envelope(np.pi / am, t0=abs(x) + abs(y) + am)
    lhs = integrate_half_line(f, env, _target(spec, rhs).with_oscillation(alpha * abs(v) / 2)).value
    return lhs, float(rhs)


def _prodap(p, pt, spec):
    x, y, v = pt["x"], pt["y"], pt["v"]
    rows = []
    for label, q in (("a+", p), ("a-", p.swapped())):
        lhs, rhs = _free_product(q, x, y, v, spec.tighter(10))
        rows.append(({"coupling": label}, lhs, rhs))
    return rows


# ---------------------------------------------------------------- Fourier formula


def fourier_sides(p: HyperbolicParams, mu: complex, nu: complex, y: complex, spec: QuadratureSpec):
    """Both sides of the Fourier transform of G(z - nu)/G(z - mu)."""
    if not -p.a < mu.imag < nu.imag < p.a:
        raise PoleProximity("need -a < Im mu < Im nu < a")
    if not abs(y.imag) < (nu - mu).imag / 2:
        raise PoleProximity("need |Im y| < Im(nu - mu)/2")
    alpha = p.alpha
    ia = 1j * p.a
    g = gamma_h(p, np.array([ia + mu - nu, y - ia + (nu - mu) / 2, -y - ia + (nu - mu) / 2]))
    rhs = math.sqrt(p.a_plus * p.a_minus) * np.exp(1j * alpha * y * (mu + nu) / 2) * g[0] * g[1] * g[2]

    def f(z):
        z = np.asarray(z, dtype=complex)
        lg = log_gamma(p, np.concatenate([z - nu, z - mu]))
        n = z.size
        return np.exp(1j * alpha * z * y + lg[:n] - lg[n:])

    rate = alpha * ((nu - mu).imag / 2 - abs(y.imag))
    centre = float(((mu + nu) / 2).real)
    env = Envelope(rate, t0=abs((nu - mu).real) / 2 + 2 * p.a, center=centre)
    qs = _target(spec, abs(rhs)).with_oscillation(alpha * abs(y.real) + alpha * abs((nu - mu).imag) / 4)
    lhs = integrate_real_line(f, env, qs, breakpoints=[float(mu.real), float(nu.real)]).value
    return complex(lhs), complex(rhs)


def _fform(p, pt, spec):
    mu = complex(pt["mu_re"], pt["mu_im"])
    nu = complex(pt["nu_re"], pt["nu_im"])
    y = complex(pt["y_re"], pt["y_frac"] * (nu - mu).imag / 2)
    lhs, rhs = fourier_sides(p, mu, nu, y, spec.tighter(10))
    return [({}, lhs, rhs)]


def _gint2(p, pt, spec):
    b, v = pt["b"], pt["v"]
    lhs, rhs = fourier_sides(p, -1j * b, 1j * b, complex(v), spec.tighter(10))
    return [({}, lhs, rhs)]


# ---------------------------------------------------------------- J structure


def _jsym(p, pt, spec):
    b, x, y = pt["b"], pt["x"], pt["y"]
    js = spec.tighter(10)
    lhs = j_fn(p, b, x, y, js, route="direct").value
    rhs = _ga(p, b) ** 2 * j_fn(p, 2 * p.a - b, y, x, js, route="direct").value
    return [({}, lhs, rhs)]


def _jeval(p, pt, spec):
    b, v = pt["b"], pt["v"]
    lhs = j_continued_at_ib(p, b, v, spec.tighter(1000)).value
    rhs = j_eval_at_ib(p, b, v).value
    return [({}, lhs, rhs)]


def _ade(p, pt, spec):
    b, x, y = pt["b"], pt["x"], pt["y"]
    rows = []
    for side in ("x", "y"):
        for delta in (1, -1):
            lhs, rhs = ade_sides(p, b, x, y, delta, side, spec.tighter(10))
            rows.append(({"side": side, "delta": "+" if delta > 0 else "-"}, lhs, rhs))
    return rows


def _kids(p, pt, spec):
    x, y, z = pt["x"], pt["y"], pt["z"]
    rows = []
    for b in (pt["b"], complex(pt["b"], 0.2 * p.a)):
        for delta in (1, -1):
            ax = ado(p, b, delta, complex(x), lambda s: kernel_K(p, b, s, y, z))
            ay = ado(p, b, delta, complex(y), lambda s: kernel_K(p, b, x, s, z))
            az = ado(p, b, delta, complex(z), lambda s: kernel_K(p, b, x, y, s))
            tag = {"b_im": float(np.imag(b)), "delta": "+" if delta > 0 else "-"}
            rows.append(({**tag, "pair": "x,y"}, complex(ax), complex(ay)))
            rows.append(({**tag, "pair": "y,z"}, complex(ay), complex(az)))
    return rows


# ---------------------------------------------------------------- triple kernel identities


def _triple(p, b, x, y, z, spec, dual: bool):
    """Both sides of the w^{1/2} K w^{1/2} w^{1/2} = integral of three F kernels identity.

    dual=False uses coupling b on the left, dual=True uses 2a - b.
    """
    bd = 2 * p.a - b
    bl = bd if dual else b
    wl = np.sqrt(weight(p, bl, np.array([x, y, z])))
    lhs = float(np.prod(wl) * kernel_K(p, bl, x, y, z))
    pref = float(gamma_h(p, 1j * (b - p.a) if dual else 1j * (p.a - b)).real) / math.sqrt(p.a_plus * p.a_minus)
    wv = b if dual else bd
    xs = np.array([x, y, z])

    def f(v):
        fv = f_batch(p, b, xs[:, None], v[None, :])[0]
        return pref * fv.prod(axis=0) / np.sqrt(weight(p, wv, v))

    env = Envelope(p.alpha * wv / 2, t0=2 * p.a)
    qs = _target(spec, lhs).with_oscillation(p.alpha * (x + y + z) / 2)
    rhs = integrate_half_line(f, env, qs).value
    return lhs, rhs


def _id1(p, pt, spec):
    return [({}, *_triple(p, pt["b"], pt["x"], pt["y"], pt["z"], spec, dual=False))]


def _id2(p, pt, spec):
    return [({}, *_triple(p, pt["b"], pt["x"], pt["y"], pt["z"], spec, dual=True))]


def _mu_transform(p, b, v, z, tol):
    """Integral over r of mu(b; (r+v)/2, (r-v)/2) exp(i alpha r z / 2), for an array of v.

    The integrand is even in r, so this is twice a cosine integral over (0, inf).
    """
    v = np.asarray(v, dtype=float)
    rate = p.alpha * (2 * p.a - b) / 2
    reach = float(v.max()) + 40.0 / rate
    omega = p.alpha * abs(z) / 2
    width = min(b, math.pi / (4 * omega) if omega else b, p.a)

    def f(r):
        return 2 * mu_batch(p, b, (r[None, :] + v[:, None]) / 2, (r[None, :] - v[:, None]) / 2) * np.cos(
            p.alpha * r[None, :] * z / 2
        )

    vals, errs = integrate_batch(f, 0.0, reach, width, abs_tol=tol)
    return vals, errs


def reduced_pair_sides(p: HyperbolicParams, b, x, y, z, spec: QuadratureSpec):
    """Both sides of the sum/difference-variable form of the two particle identity.

    Left: w(b;x)^{1/2} K(b;x,y,z) w(b;y)^{1/2}.  Right: the double integral of
    mu against two F kernels, with the r-integral done numerically on a shared
    rule for each batch of v nodes.
    """
    lhs = float(math.sqrt(weight(p, b, x) * weight(p, b, y)) * kernel_K(p, b, x, y, z))
    pref = 1.0 / (2 * (p.a_plus * p.a_minus) ** 2)
    inner_tol = 0.1 * spec.rel_tol * abs(lhs) / pref

    def f(v):
        fv = f_batch(p, b, np.array([x, y])[:, None], v[None, :])[0]
        m, _ = _mu_transform(p, b, v, z, inner_tol / 10)
        return pref * fv[0] * fv[1] * m

    env = Envelope(p.alpha * (2 * p.a - b) / 2, t0=2 * p.a + abs(z))
    qs = _target(spec, lhs).with_oscillation(p.alpha * (x + y) / 2)
    rhs = integrate_half_line(f, env, qs).value
    return lhs, rhs


def _kerform(p, pt, spec):
    return [({}, *reduced_pair_sides(p, pt["b"], pt["x"], pt["y"], pt["z"], spec))]


def _iden1(p, pt, spec):
    b = pt["b"]
    x1, x2 = pt["xc"] + pt["dx"] / 2, pt["xc"] - pt["dx"] / 2
    y1, y2 = pt["yc"] + pt["dy"] / 2, pt["yc"] - pt["dy"] / 2
    lhs = float(math.sqrt(weight(p, b, x1 - x2) * weight(p, b, y1 - y2)) * s2_kernel(p, b, (x1, x2), (y1, y2)))
    _, rhs = reduced_pair_sides(p, b, x1 - x2, y1 - y2, (x1 + x2) - (y1 + y2), spec)
    return [({}, lhs, rhs)]


# ---------------------------------------------------------------- two particle integral equations


def _pair_equation_lhs(p, bw, x1, x2, sy, jz, spec_tol):
    """Integral over R^2 of w(bw; z1-z2) S2(bw; x, z) exp(i alpha (z1+z2) sy / 2) jz(z1 - z2).

    In sum/difference variables S = z1 + z2, Z = z1 - z2 the Z-integrand is
    even, so the inner integral runs over (0, inf) on a shared GK15 rule and
    the outer S-integral is adaptive.
    """
    X = x1 - x2
    cx = x1 + x2
    rate = p.alpha * bw / 2
    cache = {}

    def jvals(Z):
        key = (Z.size, float(Z[0]), float(Z[-1]))
        if key not in cache:
            cache.clear()
            cache[key] = weight(p, bw, Z) * jz(Z)
        return cache[key]

    width = min(bw, 2 * p.a - bw, p.a) / 2

    def f(S):
        S = np.asarray(S, dtype=float)
        reach = float(np.max(np.abs(S - cx))) + abs(X) + 2 * p.a + 36.0 / rate

        def g(Z):
            z1 = (S[:, None] + Z[None, :]) / 2
            z2 = (S[:, None] - Z[None, :]) / 2
            return s2_kernel(p, bw, (x1, x2), (z1, z2)) * jvals(Z)[None, :]

        inner, _ = integrate_batch(g, 0.0, reach, width, abs_tol=spec_tol / 10)
        return inner * np.exp(1j * p.alpha * S * sy / 2)

    return f


def _pair_points(pt):
    x1, x2 = pt["xc"] + pt["dx"] / 2, pt["xc"] - pt["dx"] / 2
    y1, y2 = pt["yc"] + pt["dy"] / 2, pt["yc"] - pt["dy"] / 2
    return x1, x2, y1, y2


def _int_eq(p, pt, spec):
    b = pt["b"]
    x1, x2, y1, y2 = _pair_points(pt)
    Y = y1 - y2
    mu = float(mu_fn(p, b, (y1, y2)).real)
    rhs = 2 * mu * np.exp(1j * p.alpha * (x1 + x2) * (y1 + y2) / 2) * j_fn(p, b, x1 - x2, Y, spec.tighter(100)).value
    tol = spec.rel_tol * abs(rhs)
    f = _pair_equation_lhs(p, b, x1, x2, y1 + y2, lambda Z: j_batch(p, b, Z, Y)[0], tol)
    env = Envelope(p.alpha * b / 2, t0=abs(x1 - x2) + 2 * p.a, center=x1 + x2)
    qs = _target(spec, abs(rhs)).with_oscillation(p.alpha * abs(y1 + y2) / 2)
    lhs = integrate_real_line(f, env, qs).value
    return [({}, complex(lhs), complex(rhs))]


def _int_eq_alt(p, pt, spec):
    b = pt["b"]
    bd = 2 * p.a - b
    x1, x2, y1, y2 = _pair_points(pt)
    Y = y1 - y2
    mu = float(mu_fn(p, bd, (y1, y2)).real)
    rhs = 2 * mu * np.exp(1j * p.alpha * (x1 + x2) * (y1 + y2) / 2) * j_fn(p, b, Y, x1 - x2, spec.tighter(100)).value
    tol = spec.rel_tol * abs(rhs)
    f = _pair_equation_lhs(p, bd, x1, x2, y1 + y2, lambda Z: j_batch(p, b, Y, Z)[0], tol)
    env = Envelope(p.alpha * bd / 2, t0=abs(x1 - x2) + 2 * p.a, center=x1 + x2)
    qs = _target(spec, abs(rhs)).with_oscillation(p.alpha * abs(y1 + y2) / 2)
    lhs = integrate_real_line(f, env, qs).value
    return [({}, complex(lhs), complex(rhs))]


# ---------------------------------------------------------------- catalogue

_XY = (0.2, 2.0)


def _pair_box(p):
    return _rel_box(p, dx=_XY, xc=(-1.0, 1.0), dy=_XY, yc=(-1.0, 1.0))


CATALOGUE: dict[str, IdentityCase] = {
    c.name: c
    for c in [
        IdentityCase("prform", "J(b;x,v) J(b;y,v) = (1/2) int_0^inf w(b;z) J(b;z,v) K(b;x,y,z) dz", 1e-5,
                     lambda p: _rel_box(p, x=_XY, y=_XY, v=_XY), _prform, 20),
        IdentityCase("prformalt",
                     "J(b;x,t) J(b;x,u) = (1/2) G(ia-ib)^2 int_0^inf w(2a-b;v) J(b;x,v) K(2a-b;t,u,v) dv",
                     1e-5, lambda p: _rel_box(p, x=_XY, t=_XY, u=_XY), _prformalt, 20),
        IdentityCase("prodap", "free case b = a+ (and a+, a- swapped) of the product formula", 1e-8,
                     lambda p: {"x": _XY, "y": _XY, "v": _XY}, _prodap, 10),
        IdentityCase("fform", "int exp(i alpha z y) G(z-nu)/G(z-mu) dz closed form", 1e-6,
                     lambda p: {"mu_re": (-0.5, 0.5), "mu_im": (-0.8 * p.a, -0.1 * p.a), "nu_re": (-0.5, 0.5),
                                "nu_im": (0.1 * p.a, 0.8 * p.a), "y_re": _XY, "y_frac": (-0.5, 0.5)}, _fform, 10),
        IdentityCase("gint2", "int exp(i alpha z v) prod_d G(d z - ib) dz closed form (nu = -mu = ib)", 1e-6,
                     lambda p: {"b": (0.1 * p.a, 0.9 * p.a), "v": _XY}, _gint2, 10),
        IdentityCase("jsym", "J(b;x,y) = G(ia-ib)^2 J(2a-b;y,x)", 1e-8,
                     lambda p: _rel_box(p, x=_XY, y=_XY), _jsym, 25),
        IdentityCase("id1", "w^{1/2}(x) w^{1/2}(y) w^{1/2}(z) K(b;x,y,z) = triple F integral with w(2a-b;v)^{-1/2}",
                     1e-4, lambda p: _rel_box(p, x=_XY, y=_XY, z=_XY), _id1, 10),
        IdentityCase("id2", "coupling 2a-b on the left, triple F integral with w(b;v)^{-1/2}", 1e-4,
                     lambda p: _rel_box(p, x=_XY, y=_XY, z=_XY), _id2, 10),
        IdentityCase("intEq", "int w(b;z1-z2) S2(b;x,z) J2(b;z,y) dz = 2 mu(b;y) J2(b;x,y)", 1e-4,
                     _pair_box, _int_eq, 5),
        IdentityCase("intEqalt", "int w(2a-b;z1-z2) S2(2a-b;x,z) J2(b;y,z) dz = 2 mu(2a-b;y) J2(b;y,x)", 1e-4,
                     _pair_box, _int_eq_alt, 5),
        IdentityCase("iden1", "w^{1/2} S2(b;x,y) w^{1/2} = (a+a-)^{-2} int mu F2 conj(F2) dv, via sum/difference variables",
                     1e-4, _pair_box, _iden1, 10),
        IdentityCase("kerform", "w(b;x)^{1/2} K(b;x,y,z) w(b;y)^{1/2} = double integral of mu e^{i alpha r z/2} F F",
                     1e-4, lambda p: _rel_box(p, x=_XY, y=_XY, z=(0.0, 2.0)), _kerform, 10),
        IdentityCase("jeval", "J(b;ib,v) = sqrt(a+a-) G(ia-2ib) prod_d G(d v - ia + ib)", 1e-7,
                     lambda p: {"b": (0.3 * p.a, 0.9 * p.a), "v": _XY}, _jeval, 10),
        IdentityCase("ade", "A_d(b;x) J = 2 c_d(y) J and A_d(2a-b;y) J = 2 c_d(x) J", 1e-6,
                     lambda p: _rel_box(p, x=_XY, y=_XY), _ade, 10),
        IdentityCase("kids", "A_d(b;x) K = A_d(b;y) K = A_d(b;z) K, real and complex b", 1e-8,
                     lambda p: _rel_box(p, x=_XY, y=_XY, z=_XY), _kids, 10),
    ]
}

RELATIVISTIC_SUITE = ("prform", "prformalt", "prodap", "fform", "jsym", "id1", "id2", "intEq", "intEqalt",
                      "iden1", "kerform", "jeval", "ade", "kids")

_INDETERMINATE = (QuadratureFailure, PoleProximity)


def evaluate_rows(case: IdentityCase, params, points, spec) -> list[Row]:
    """Evaluate a case at each point; quadrature failures become indeterminate rows."""

    def one(pt):
        try:
            return [Row({**pt, **extra}, lhs, rhs) for extra, lhs, rhs in case.evaluate(params, pt, spec)]
        except _INDETERMINATE as exc:
            return [Row(dict(pt), math.nan, math.nan, status="indeterminate", note=f"{type(exc).__name__}: {exc}")]

    return [row for rows in map_points(one, points) for row in rows]


def run_identity(case: IdentityCase | str, params: HyperbolicParams = HyperbolicParams(), sample_points=None,
                 spec: QuadratureSpec = DEFAULT_SPEC, seed: int = 42, n_points: int | None = None,
                 catalogue: dict | None = None) -> VerificationReport:
    """Check one catalogued identity at explicit points or at seeded sample points."""
    if isinstance(case, str):
        case = (catalogue or CATALOGUE)[case]
    if sample_points is None:
        sample_points = sample_box(case.box(params), n_points or case.default_points, seed)
        used_seed = seed
    else:
        used_seed = None
    rows = evaluate_rows(case, params, list(sample_points), spec)
    return VerificationReport(case.name, case.anchor, params.as_dict(), used_seed, rows, case.tol)
