"""Catalogue of nonrelativistic identities for the conical function F(g; r, 2k)."""
from __future__ import annotations

import math

import mpmath
import numpy as np
from scipy.special import loggamma

from .conical import (
    conical_f_batch,
    conical_f_hyp,
    cosh_kernel,
    f0_batch,
    gamma_kernel,
    log_hat_w0,
    mu0_fn,
    nonrel_weights,
)
from .identities import IdentityCase, _target, evaluate_rows
from .params import HyperbolicParams
from .quadrature import Envelope, QuadratureSpec, integrate_batch, integrate_half_line, integrate_real_line
from .reports import VerificationReport
from .sampling import sample_box

DEFAULT_SPEC = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-9)
_TIGHT = QuadratureSpec(abs_tol=1e-16, rel_tol=1e-13)


def _F(g, r, k):
    return conical_f_hyp(g, r, k, _TIGHT).value.real


def _log_2sinh(t):
    t = np.asarray(t, dtype=float)
    return t + np.log1p(-np.exp(-2 * t))


def _log_2cosh(t):
    t = np.abs(np.asarray(t, dtype=float))
    return t + np.log1p(np.exp(-2 * t))


# ---------------------------------------------------------------- product formulas


def _fpr1(pt, spec):
    g, r, s, k = pt["g"], pt["r"], pt["s"], pt["k"]
    lhs = _F(g, r, k) * _F(g, s, k)

    def f(t):
        lk = 2 * g * _log_2sinh(t) - g * sum(_log_2cosh((t + d1 * r + d2 * s) / 2) for d1 in (1, -1) for d2 in (1, -1))
        return 0.5 * conical_f_batch(g, t, k)[0] * np.exp(lk)

    env = Envelope(0.9 * g, t0=r + s + 2.0)
    qs = _target(spec, lhs).with_oscillation(k)
    rhs = integrate_half_line(f, env, qs, breakpoints=sorted({r + s, abs(r - s)} - {0.0})).value
    return [({}, lhs, rhs)]


def _fpr2(pt, spec):
    g, r, p, q = pt["g"], pt["r"], pt["p"], pt["q"]
    lhs = _F(g, r, p) * _F(g, r, q)

    def f(k):
        lg = sum(loggamma((g + 1j * (d1 * p + d2 * q + d3 * k)) / 2)
                 for d1 in (1, -1) for d2 in (1, -1) for d3 in (1, -1))
        # 1/(Gamma(g)^2 prod_d Gamma(idk) Gamma(g+idk)) = 4 pi hat w0(k)
        return conical_f_batch(g, r, k)[0] * np.exp((lg + log_hat_w0(g, k)).real) * 4 * math.pi / (8 * math.pi)

    env = Envelope(2.5, t0=p + q + 2.0)
    qs = _target(spec, lhs).with_oscillation(r)
    rhs = integrate_half_line(f, env, qs, breakpoints=sorted({p + q, abs(p - q)} - {0.0})).value
    return [({}, lhs, rhs)]


def _phi_half(r, x):
    """2F1(1/4 + ir/2, 1/4 - ir/2; 1; -sinh^2 x), computed by mpmath."""
    return float(mpmath.re(mpmath.hyp2f1(0.25 + 0.5j * r, 0.25 - 0.5j * r, 1, -mpmath.sinh(x) ** 2)))


def _mizony_half(r, s, x, spec):
    """phi(r,x) phi(s,x) = (1/2pi) int a(r,s,t) phi(t,x) pi t tanh(pi t) dt at g = 1/2."""
    lhs = _phi_half(r, x) * _phi_half(s, x)
    ch = math.log(math.cosh(math.pi * r)) + math.log(math.cosh(math.pi * s))

    def f(t):
        lg = sum(loggamma(0.25 + 0.5j * (d1 * r + d2 * s + d3 * t))
                 for d1 in (1, -1) for d2 in (1, -1) for d3 in (1, -1)).real
        la = ch + _log_2cosh(math.pi * t) - math.log(2) + lg - math.log(2 * math.pi ** 5)
        phi = np.array([_phi_half(tt, x) for tt in np.atleast_1d(t)])
        return np.exp(la) * phi * math.pi * t * np.tanh(math.pi * t) / (2 * math.pi)

    env = Envelope(2.5, t0=r + s + 2.0)
    rhs = integrate_half_line(f, env, _target(spec, lhs).with_oscillation(x)).value
    return lhs, rhs


def _mizony_one(r, s, x, spec):
    """phi(r,x) phi(s,x) = (1/2pi) int a(r,s,t) phi(t,x) t^2 dt at g = 1, phi = sin(rx)/(r sinh x)."""
    def phi(t):
        return np.sin(t * x) / (t * np.sinh(x))

    lhs = float(phi(r) * phi(s))

    def f(t):
        la = math.log(math.sinh(math.pi * r) * math.sinh(math.pi * s) / (r * s)) + _log_2sinh(math.pi * t) - math.log(2)
        la = la - sum(_log_2cosh(math.pi * (t + d1 * r + d2 * s) / 2) - math.log(2) for d1 in (1, -1) for d2 in (1, -1))
        a = math.pi * np.exp(la) / (2 * t)
        return a * phi(t) * t ** 2 / (2 * math.pi)

    env = Envelope(2.5, t0=r + s + 2.0)
    rhs = integrate_half_line(f, env, _target(spec, lhs).with_oscillation(x)).value
    return lhs, rhs


def _mizony(pt, spec):
    r, s, x = pt["r"], pt["s"], pt["x"]
    return [({"g": 0.5}, *_mizony_half(r, s, x, spec)), ({"g": 1.0}, *_mizony_one(r, s, x, spec))]


# ---------------------------------------------------------------- triple identities


def _idnr1(pt, spec):
    g, r, s, t = pt["g"], pt["r"], pt["s"], pt["t"]
    w = nonrel_weights(g, np.array([r, s, t]), "w0")
    lhs = float(np.sqrt(w).prod() * cosh_kernel(g, r, s, t))
    norm = 1 / (4 * math.pi ** 1.5 * math.gamma(g) ** 2)
    xs = np.array([r, s, t])

    def f(k):
        f0 = f0_batch(g, xs[:, None], k[None, :])[0]
        return norm * np.exp(-0.5 * log_hat_w0(g, k).real) * f0.prod(axis=0)

    env = Envelope(0.9 * math.pi, t0=2.0)
    rhs = integrate_half_line(f, env, _target(spec, lhs).with_oscillation(r + s + t)).value
    return [({}, lhs, rhs)]


def _idnr2(pt, spec):
    g, k, p, q = pt["g"], pt["k"], pt["p"], pt["q"]
    lw = log_hat_w0(g, np.array([k, p, q])).real
    lhs = float(np.exp(0.5 * lw.sum()) * gamma_kernel(g, k, p, q))
    norm = 1 / (4 * math.pi ** 1.5 * math.gamma(g) ** 2)
    ks = np.array([k, p, q])

    def f(r):
        f0 = f0_batch(g, r[None, :], ks[:, None])[0]
        return norm * np.exp(-g * _log_2sinh(r)) * f0.prod(axis=0)

    env = Envelope(0.9 * g, t0=2.0)
    rhs = integrate_half_line(f, env, _target(spec, lhs).with_oscillation(k + p + q)).value
    return [({}, lhs, rhs)]


def _pairs(pt, a, b):
    return (pt[a + "c"] + pt["d" + a] / 2, pt[a + "c"] - pt["d" + a] / 2)


def _idennr1(pt, spec):
    g = pt["g"]
    r1, r2 = _pairs(pt, "r", "r")
    s1, s2 = _pairs(pt, "s", "s")
    dr, ds = r1 - r2, s1 - s2
    lk = sum(_log_2cosh(rj - sl) for rj in (r1, r2) for sl in (s1, s2))
    lhs = float(np.exp(g * (_log_2sinh(dr) + _log_2sinh(ds)) - g * lk))
    shift = (r1 + r2) - (s1 + s2)
    tol = 0.01 * spec.rel_tol * abs(lhs)

    def inner(Q):
        reach = float(Q.max()) + 80.0 / math.pi
        omega = abs(shift) / 2
        width = min(1.0, math.pi / (4 * omega)) if omega else 1.0

        def h(K):
            k1 = (K[None, :] + Q[:, None]) / 2
            k2 = (K[None, :] - Q[:, None]) / 2
            return 2 * mu0_fn(g, k1, k2) * np.cos(K[None, :] * shift / 2)

        return integrate_batch(h, 0.0, reach, width, abs_tol=tol)[0]

    def f(Q):
        f0 = f0_batch(g, np.array([dr, ds])[:, None], Q[None, :] / 2)[0]
        return f0[0] * f0[1] * inner(Q) / (8 * math.pi ** 2)

    env = Envelope(1.2, t0=2.0)
    rhs = integrate_half_line(f, env, _target(spec, lhs).with_oscillation((dr + ds) / 2)).value
    return [({}, lhs, rhs)]


def idennr2_sides(g, k, q, spec, half_weight: bool = True):
    """Both sides of the dual two-particle identity.

    half_weight=True evaluates hat w0 at half the pair differences, matching the
    (k1 - k2)/2 argument of the two-particle kernel; False uses the full differences.
    """
    k1, k2 = k
    q1, q2 = q
    arg = 0.5 if half_weight else 1.0
    lw = log_hat_w0(g, np.array([arg * (k1 - k2), arg * (q1 - q2)])).real.sum()
    lg = sum(loggamma((g + 1j * d * (kj - ql)) / 2) for kj in (k1, k2) for ql in (q1, q2) for d in (1, -1)).real
    lhs = float(np.exp(0.5 * lw + lg))
    kappa_k, kappa_q = (k1 - k2) / 2, (q1 - q2) / 2
    shift = (k1 + k2) - (q1 + q2)
    tol = 0.01 * spec.rel_tol * abs(lhs)

    def inner(rho):
        reach = float(rho.max()) + 40.0 / g
        omega = abs(shift) / 2
        width = min(1.0, math.pi / (4 * omega)) if omega else 1.0

        def h(R):
            lc = _log_2cosh(R[None, :]) + np.log1p(np.exp(_log_2cosh(rho[:, None]) - _log_2cosh(R[None, :])))
            return 2 * np.exp(-g * lc) * np.cos(R[None, :] * shift / 2)

        return integrate_batch(h, 0.0, reach, width, abs_tol=tol)[0]

    def f(rho):
        f0 = f0_batch(g, rho[None, :], np.array([kappa_k, kappa_q])[:, None])[0]
        return f0[0] * f0[1] * inner(rho) / (2 * math.pi)

    env = Envelope(0.5 * g, t0=4.0)
    rhs = integrate_half_line(f, env, _target(spec, lhs).with_oscillation(kappa_k + kappa_q)).value
    return lhs, rhs


def _idennr2(pt, spec):
    k = _pairs(pt, "k", "k")
    q = _pairs(pt, "q", "q")
    return [({}, *idennr2_sides(pt["g"], k, q, spec))]


# ---------------------------------------------------------------- two particle integral equations


def _int_eq_nr1(pt, spec):
    g = pt["g"]
    r1, r2 = _pairs(pt, "r", "r")
    k1, k2 = _pairs(pt, "k", "k")
    kappa = (k1 - k2) / 2
    ksum = k1 + k2
    rhs = 2 * mu0_fn(g, k1, k2) * np.exp(1j * (r1 + r2) * ksum / 2) * _F(g, r1 - r2, kappa)
    tol = spec.rel_tol * abs(rhs)
    grids = {}

    def table(reach):
        # Z**(2g) at the origin is not smooth, so panels are graded geometrically there
        if reach not in grids:
            width = min(0.5, 0.5 / max(abs(kappa), 1e-9))
            edges = np.concatenate([[0.0], 2.0 ** np.arange(-40, 0), np.arange(1.0, reach, width), [reach]])
            edges = np.unique(edges)
            x, w = np.polynomial.legendre.leggauss(20)
            mid, half = (edges[1:] + edges[:-1]) / 2, (edges[1:] - edges[:-1]) / 2
            Z = (mid[:, None] + half[:, None] * x[None, :]).ravel()
            W = (half[:, None] * w[None, :]).ravel()
            grids[reach] = (Z, W * conical_f_batch(g, Z, kappa)[0] * np.exp(2 * g * _log_2sinh(Z)))
        return grids[reach]

    def f(S):
        reach = 10.0 * math.ceil((float(np.max(np.abs(S - (r1 + r2)))) + abs(r1 - r2) + 40.0 / g) / 10.0)
        Z, wf = table(reach)
        inner = np.empty(S.size, dtype=complex)
        for i0 in range(0, S.size, 64):
            s = S[i0:i0 + 64, None]
            z1, z2 = (s + Z[None, :]) / 2, (s - Z[None, :]) / 2
            lk = -g * sum(_log_2cosh(rj - zl) for rj in (r1, r2) for zl in (z1, z2))
            inner[i0:i0 + 64] = np.exp(lk) @ wf
        return inner * np.exp(1j * S * ksum / 2)

    env = Envelope(0.5 * g, t0=abs(r1 - r2) + 2.0, center=r1 + r2)
    lhs = integrate_real_line(f, env, _target(spec, abs(rhs)).with_oscillation(abs(ksum) / 2)).value
    return [({}, complex(lhs), complex(rhs))]


def _int_eq_nr2(pt, spec):
    g = pt["g"]
    r1, r2 = _pairs(pt, "r", "r")
    k1, k2 = _pairs(pt, "k", "k")
    rho = r1 - r2
    rhs = nonrel_weights(g, (r1, r2), "renorm") * np.exp(1j * (r1 + r2) * (k1 + k2) / 2) * _F(g, rho, (k1 - k2) / 2)
    tol = spec.rel_tol * abs(rhs)
    norm = 16 * math.pi * math.gamma(g) ** 2
    cache = {}

    def fq(Q):
        key = (Q.size, float(Q[0]), float(Q[-1]))
        if key not in cache:
            if len(cache) > 32:
                cache.clear()
            lden = sum(loggamma(1j * d * Q / 2) + loggamma(1j * d * Q / 2 + g) for d in (1, -1)).real
            cache[key] = conical_f_batch(g, rho, Q / 2)[0] * np.exp(-lden)
        return cache[key]

    def f(P):
        reach = 10.0 * math.ceil((float(np.max(np.abs(P - (k1 + k2)))) + abs(k1 - k2) + 80.0 / math.pi) / 10.0)

        def h(Q):
            p1 = (P[:, None] + Q[None, :]) / 2
            p2 = (P[:, None] - Q[None, :]) / 2
            ln = sum(loggamma((1j * d * (kj - pl) + g) / 2) for kj in (k1, k2) for pl in (p1, p2) for d in (1, -1))
            return np.exp(ln.real) * fq(Q)[None, :]

        inner = integrate_batch(h, 0.0, reach, min(0.5, math.pi / (4 * max(rho, 1e-9))), abs_tol=tol * norm / 10)[0]
        return inner * np.exp(1j * P * (r1 + r2) / 2) / norm

    env = Envelope(1.0, t0=abs(k1 - k2) + 2.0, center=k1 + k2)
    lhs = integrate_real_line(f, env, _target(spec, abs(rhs)).with_oscillation(abs(r1 + r2) / 2)).value
    return [({}, complex(lhs), complex(rhs))]


# ---------------------------------------------------------------- catalogue

_G = (0.5, 2.0)
_X = (0.2, 2.0)


def _adapt(fn):
    return lambda params, pt, spec: fn(pt, spec)


def _pair_box(a, b):
    return lambda p: {"g": _G, f"{a}c": (-1.0, 1.0), f"d{a}": _X, f"{b}c": (-1.0, 1.0), f"d{b}": _X}


NONREL_CATALOGUE: dict[str, IdentityCase] = {
    c.name: c
    for c in [
        IdentityCase("fpr1", "F(g;r,2k) F(g;s,2k) = (1/2) int_0^inf F(g;t,2k) [2 sinh t]^{2g} prod [2 cosh((t+-r+-s)/2)]^{-g} dt",
                     1e-5, lambda p: {"g": _G, "r": _X, "s": _X, "k": _X}, _adapt(_fpr1), 15),
        IdentityCase("fpr2", "F(g;r,2p) F(g;r,2q) = (1/8pi) int_0^inf F(g;r,2k) Gamma-product kernel dk", 1e-5,
                     lambda p: {"g": _G, "r": _X, "p": _X, "q": _X}, _adapt(_fpr2), 15),
        IdentityCase("mizony", "Mizony-normalized product formulas at g = 1/2 and g = 1 (measure t^2 at g = 1)", 1e-5,
                     lambda p: {"r": _X, "s": _X, "x": _X}, _adapt(_mizony), 15),
        IdentityCase("intEqnr1", "int (4 sinh^2(z1-z2)/prod 2cosh(r_j - z_l))^g F2(g;z,k) dz = 2 mu0(g;k) F2(g;r,k)", 1e-4,
                     _pair_box("r", "k"), _adapt(_int_eq_nr1), 5),
        IdentityCase("intEqnr2", "dual two-particle equation with eigenvalue 2 pi / [4 cosh r1 cosh r2]^g", 1e-4,
                     _pair_box("r", "k"), _adapt(_int_eq_nr2), 5),
        IdentityCase("idnr1", "w0^{1/2} w0^{1/2} w0^{1/2} cosh-kernel = triple F0 integral over k", 1e-4,
                     lambda p: {"g": _G, "r": _X, "s": _X, "t": _X}, _adapt(_idnr1), 10),
        IdentityCase("idnr2", "hat w0^{1/2} x3 Gamma-kernel = triple F0 integral over r", 1e-4,
                     lambda p: {"g": _G, "k": _X, "p": _X, "q": _X}, _adapt(_idnr2), 10),
        IdentityCase("idennr1", "two-particle cosh kernel = (1/4pi^2) int mu0 F02 conj(F02) dk", 1e-4,
                     _pair_box("r", "s"), _adapt(_idennr1), 10),
        IdentityCase("idennr2", "two-particle Gamma kernel = (1/pi) int F02 conj(F02) / [4 cosh r1 cosh r2]^g dr", 1e-4,
                     _pair_box("k", "q"), _adapt(_idennr2), 10),
    ]
}

NONREL_SUITE = tuple(NONREL_CATALOGUE)


def run_nonrel_identity(case: IdentityCase | str, params: HyperbolicParams | None = None, sample_points=None,
                        spec: QuadratureSpec = DEFAULT_SPEC, seed: int = 42,
                        n_points: int | None = None) -> VerificationReport:
    """Check one nonrelativistic identity; params only label the report."""
    if isinstance(case, str):
        case = NONREL_CATALOGUE[case]
    params = params or HyperbolicParams()
    if sample_points is None:
        sample_points = sample_box(case.box(params), n_points or case.default_points, seed)
        used_seed = seed
    else:
        used_seed = None
    rows = evaluate_rows(case, params, list(sample_points), spec)
    return VerificationReport(case.name, case.anchor, {"family": "nonrelativistic"}, used_seed, rows, case.tol)
