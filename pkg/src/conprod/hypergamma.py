"""Hyperbolic gamma function G(a+, a-; z) and the coupling functions built from it.

Inside the strip |Im z| < a the function is exp(i g(z)) with g given by a
y-integral over (0, inf).  Outside the strip, and for accuracy near the strip
edges, the two first-order difference equations

    G(z + i a_d / 2) = 2 cosh(pi z / a_{-d}) G(z - i a_d / 2)

move the argument.  Internally everything is carried as log G so that long
products of cosh factors and the large-|Re z| asymptotics stay in range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleProximity, QuadratureFailure, StripViolation
from .params import HyperbolicParams

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)

# absolute accuracy aimed at for g(z); G inherits it as a relative error
_G_ABS_TOL = 1e-17
_POLE_RADIUS = 1e-8
_CHUNK = 256


@dataclass(frozen=True)
class PoleZeroMap:
    zeros: list  # (order, location)
    poles: list


@dataclass(frozen=True)
class AsymptoticForm:
    chi: float
    decay_rate_r: float
    bound: float

    def __post_init__(self):
        if not 0 < self.decay_rate_r < self.bound:
            raise ValueError("decay rate must lie in (0, alpha * a_s)")


def asymptotic_form(params: HyperbolicParams, fraction: float = 0.95) -> AsymptoticForm:
    bound = params.alpha * params.a_s
    chi = math.pi / 24 * (params.a_plus / params.a_minus + params.a_minus / params.a_plus)
    return AsymptoticForm(chi=chi, decay_rate_r=fraction * bound, bound=bound)


def _panels(edges):
    lo, hi = edges[:-1], edges[1:]
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
    weights = half[:, None] * _GL_W[None, :]
    return nodes.ravel(), weights.ravel()


def _split(lo, hi, width):
    n = max(1, int(math.ceil((hi - lo) / width)))
    return np.linspace(lo, hi, n + 1)


def _sinc_m1(w):
    """sin(w)/w - 1 without cancellation for small |w|."""
    w = np.asarray(w, dtype=complex)
    out = np.empty_like(w)
    small = np.abs(w) < 0.2
    ws = w[small]
    w2 = ws * ws
    out[small] = w2 * (-1 / 6 + w2 * (1 / 120 + w2 * (-1 / 5040 + w2 * (1 / 362880 - w2 / 39916800))))
    wl = w[~small]
    out[~small] = np.sin(wl) / wl - 1
    return out


def _sinhc_m1(u):
    """sinh(u)/u - 1 for real u >= 0."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    small = u < 0.2
    us = u[small]
    u2 = us * us
    out[small] = u2 * (1 / 6 + u2 * (1 / 120 + u2 * (1 / 5040 + u2 * (1 / 362880 + u2 / 39916800))))
    ul = u[~small]
    out[~small] = np.sinh(ul) / ul - 1
    return out


def _head_integrand(y, z, ap, am):
    """Integrand minus the counterterm z/(a+ a- y^2), stable as y -> 0."""
    s = _sinc_m1(2 * y[None, :] * z[:, None])
    A = _sinhc_m1(ap * y)[None, :]
    B = _sinhc_m1(am * y)[None, :]
    num = s - A - B - A * B
    return z[:, None] * num / ((1 + A) * (1 + B) * (ap * am * y * y)[None, :])


def _tail_integrand(y, z, ap, am):
    yy = y[None, :]
    u, v = ap * y, am * y
    den = (-np.expm1(-2 * u)) * (-np.expm1(-2 * v)) * y
    e_p = np.exp(2j * yy * z[:, None] - (u + v)[None, :])
    e_m = np.exp(-2j * yy * z[:, None] - (u + v)[None, :])
    return (e_p - e_m) / (1j * den[None, :])


def _truncation(params, eta):
    """Upper limit Y with tail of the y-integral below _G_ABS_TOL."""
    ap, am = params.a_plus, params.a_minus
    kappa = ap + am - 2 * eta
    if kappa <= 0:
        raise StripViolation("imaginary part reaches the strip edge")

    def log_env(y):
        return (
            -kappa * y
            + math.log(2.0)
            - math.log(y)
            - math.log(-math.expm1(-2 * ap * y))
            - math.log(-math.expm1(-2 * am * y))
        )

    target = math.log(_G_ABS_TOL * kappa)
    lo, hi = 1e-3 / params.a, 1.0 / params.a
    while log_env(hi) > target:
        hi *= 2
        if hi > 1e7:
            raise QuadratureFailure("cannot truncate the y-integral")
    for _ in range(60):
        mid = (lo + hi) / 2
        if log_env(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def _g_nodes(params, xmax, eta):
    ap, am = params.a_plus, params.a_minus
    y0 = 1.0 / params.a
    Y = max(_truncation(params, eta), 2 * y0)
    width = 3.0 / params.a_l
    if xmax > 0:
        width = min(width, 5.0 / (2 * xmax))
    hn, hw = _panels(_split(0.0, y0, min(width, y0)))
    tn, tw = _panels(_split(y0, Y, width))
    return y0, hn, hw, tn, tw


def _g_strip(params, z):
    """g(z) for an array inside the strip, by quadrature in y."""
    z = np.asarray(z, dtype=complex).ravel()
    out = np.empty(z.shape, dtype=complex)
    if z.size == 0:
        return out
    ap, am = params.a_plus, params.a_minus
    # bucket by |Re z| so that the oscillation resolution fits each group
    cls = np.ceil(np.log2(1 + np.abs(z.real)) * 2).astype(int)
    for c in np.unique(cls):
        idx = np.nonzero(cls == c)[0]
        zc = z[idx]
        xmax = float(np.max(np.abs(zc.real)))
        eta = float(np.max(np.abs(zc.imag)))
        y0, hn, hw, tn, tw = _g_nodes(params, xmax, eta)
        for s in range(0, idx.size, _CHUNK):
            zz = zc[s:s + _CHUNK]
            head = _head_integrand(hn, zz, ap, am) @ hw
            tail = _tail_integrand(tn, zz, ap, am) @ tw
            out[idx[s:s + _CHUNK]] = head + tail - zz / (ap * am * y0)
    return out


def log_gamma_h(params: HyperbolicParams, z):
    """g(a+, a-; z) with G = exp(i g), from the strip integral.

    Accepts scalars or arrays.  Raises StripViolation unless |Im z| < a.
    """
    arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(arr.imag) >= params.a):
        raise StripViolation("log_gamma_h requires |Im z| < a")
    out = _g_strip(params, arr).reshape(arr.shape)
    return out[()] if out.ndim == 0 else out


def _log_2cosh(w):
    w = np.asarray(w, dtype=complex)
    s = np.where(w.real >= 0, 1.0, -1.0)
    ws = s * w
    with np.errstate(divide="ignore"):
        return ws + np.log1p(np.exp(-2 * ws))


def asymptotic_threshold(params: HyperbolicParams) -> float:
    """|Re z| beyond which exp(-/+ i(chi + alpha z^2/4)) is exact in double precision."""
    ratio = params.a_s / params.a_l
    factor = min(1e3, 1 / max(2 * abs(math.sin(math.pi * ratio)), 1e-300))
    x = 1.0
    for _ in range(20):
        x = params.a_l / (2 * math.pi) * (
            math.log(1 / _G_ABS_TOL) + math.log(max(factor, 1.0)) + math.log(1 + 2 * math.pi * x / params.a_s) + 2
        )
    return x


def _log_asymptotic(params, z):
    chi = asymptotic_form(params).chi
    sign = np.where(np.real(z) >= 0, 1.0, -1.0)
    return -1j * sign * (chi + params.alpha * z * z / 4)


def _check_poles(params, z, radius):
    """Raise PoleProximity if any z lies within radius of a pole -ia - i p_kl."""
    cand = (np.abs(z.real) < radius) & (z.imag < -params.a + radius)
    if not np.any(cand):
        return
    ap, am = params.a_plus, params.a_minus
    for zz in z[cand]:
        p = -zz.imag - params.a
        for k in range(int(p / ap) + 2):
            rest = p - k * ap
            l = round(rest / am)
            if l >= 0 and abs(complex(zz.real, rest - l * am)) < radius:
                raise PoleProximity(f"z={zz} is within {radius:g} of a pole of G")


def _shift_counts(params, im, delta):
    step = params.scale(delta)
    n = np.floor((np.abs(im) - params.a) / step).astype(int) + 1
    return np.where(np.abs(im) >= params.a, n, 0)


def _apply_shifts(params, z, n, delta, acc):
    """Move z toward the real axis by n steps of i a_delta, accumulating log factors."""
    step = params.scale(delta)
    other = params.scale(-delta)
    up = z.imag < 0
    sgn = np.where(up, 1.0, -1.0)
    for j in range(int(n.max(initial=0))):
        m = n > j
        if not np.any(m):
            break
        # factor 2cosh(pi (w -/+ i a_d/2)/a_{-d}) for the current point w
        w = z[m] + sgn[m] * 0.5j * step
        lf = _log_2cosh(np.pi * w / other)
        acc[m] += np.where(up[m], -lf, lf)
        z[m] = z[m] + sgn[m] * 1j * step
    return z


def log_gamma(params: HyperbolicParams, z, path: str = "auto", radius: float | None = None):
    """Complex logarithm of G(a+, a-; z) (branch immaterial, use exp).

    path selects the difference equation used to re-enter the strip:
    "auto" takes the fewest steps (ties go to a_l), "+" or "-" forces a_+ or a_-.
    """
    arr = np.asarray(z, dtype=complex)
    zf = arr.ravel().copy()
    r = _POLE_RADIUS * params.a_s if radius is None else radius
    _check_poles(params, zf, r)
    acc = np.zeros(zf.shape, dtype=complex)

    outside = np.abs(zf.imag) >= params.a
    if np.any(outside):
        n_plus = _shift_counts(params, zf.imag, +1)
        n_minus = _shift_counts(params, zf.imag, -1)
        if path == "+":
            use_plus = np.ones(zf.shape, bool)
        elif path == "-":
            use_plus = np.zeros(zf.shape, bool)
        elif path == "auto":
            long_is_plus = params.a_plus >= params.a_minus
            tie = n_plus == n_minus
            use_plus = np.where(tie, long_is_plus, n_plus < n_minus)
        else:
            raise ValueError("path must be 'auto', '+' or '-'")
        for delta, mask in ((+1, use_plus), (-1, ~use_plus)):
            m = mask & outside
            if np.any(m):
                sub = zf[m]
                sub_acc = acc[m]
                n = np.where(delta > 0, n_plus, n_minus)[m]
                zf[m] = _apply_shifts(params, sub, n, delta, sub_acc)
                acc[m] = sub_acc

    # recentre into |Im z| <= a_s/2 so the y-integrand decays at rate >= a_l
    d_s = +1 if params.a_plus <= params.a_minus else -1
    n_s = np.rint(np.abs(zf.imag) / params.a_s).astype(int)
    n_s = np.where(np.abs(zf.imag) > params.a_s / 2, n_s, 0)
    if np.any(n_s):
        zf = _apply_shifts(params, zf, n_s, d_s, acc)

    x_as = asymptotic_threshold(params)
    far = np.abs(zf.real) >= x_as
    out = acc
    if np.any(far):
        out[far] += _log_asymptotic(params, zf[far])
    near = ~far
    if np.any(near):
        out[near] += 1j * _g_strip(params, zf[near])
    out = out.reshape(arr.shape)
    return out[()] if out.ndim == 0 else out


def gamma_h(params: HyperbolicParams, z, path: str = "auto", radius: float | None = None):
    """G(a+, a-; z) for scalar or array z off the poles."""
    with np.errstate(over="ignore"):
        return np.exp(log_gamma(params, z, path=path, radius=radius))


def gamma_h_asymptotic(params: HyperbolicParams, z, sign: int | None = None):
    """exp(-/+ i(chi + alpha z^2/4)), the Re z -> +/-inf form."""
    z = np.asarray(z, dtype=complex)
    if sign is None:
        sign = np.where(z.real >= 0, 1, -1)
    chi = asymptotic_form(params).chi
    out = np.exp(-1j * np.asarray(sign) * (chi + params.alpha * z * z / 4))
    return out[()] if out.ndim == 0 else out


def phi_fn(params: HyperbolicParams, b):
    return np.exp(1j * params.alpha * b * (b - 2 * params.a) / 4)


def log_c_fn(params: HyperbolicParams, b, z):
    z = np.asarray(z, dtype=complex)
    ia = 1j * params.a
    both = np.concatenate([np.ravel(z + ia - 1j * b), np.ravel(z + ia)])
    lg = log_gamma(params, both)
    n = z.size
    return (lg[:n] - lg[n:]).reshape(z.shape)


def c_fn(params: HyperbolicParams, b, z):
    """c(b; z) = G(z + ia - ib) / G(z + ia)."""
    out = np.exp(log_c_fn(params, b, z))
    return out[()] if out.ndim == 0 else out


def w_fn(params: HyperbolicParams, b, z):
    """w(b; z) = 1 / (c(b; z) c(b; -z))."""
    z = np.asarray(z, dtype=complex)
    both = log_c_fn(params, b, np.concatenate([z.ravel(), -z.ravel()]))
    n = z.size
    with np.errstate(over="ignore"):
        out = np.exp(-(both[:n] + both[n:])).reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def u_fn(params: HyperbolicParams, b, z):
    """u(b; z) = -c(b; z) / c(b; -z)."""
    z = np.asarray(z, dtype=complex)
    both = log_c_fn(params, b, np.concatenate([z.ravel(), -z.ravel()]))
    n = z.size
    out = -np.exp(both[:n] - both[n:]).reshape(z.shape)
    return out[()] if out.ndim == 0 else out


def pole_zero_map(params: HyperbolicParams, k_max: int, l_max: int, rtol: float = 1e-12) -> PoleZeroMap:
    """Zeros ia + i p_kl and poles -ia - i p_kl, p_kl = k a+ + l a-, with orders.

    Orders count index pairs in the box whose p values coincide to rtol.
    """
    if k_max < 0 or l_max < 0:
        raise ValueError("index box must be nonnegative")
    ps = sorted(
        (k * params.a_plus + l * params.a_minus) for k in range(k_max + 1) for l in range(l_max + 1)
    )
    groups: list[list[float]] = []
    for p in ps:
        if groups and abs(p - groups[-1][0]) <= rtol * max(1.0, abs(p)):
            groups[-1].append(p)
        else:
            groups.append([p])
    zeros = [(len(g), complex(0, params.a + g[0])) for g in groups]
    poles = [(order, -loc) for order, loc in zeros]
    return PoleZeroMap(zeros=zeros, poles=poles)
