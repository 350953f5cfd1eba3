"""Nonrelativistic conical function F(g; r, 2k) and its Euler-gamma data.

Three independent representations are provided: the cosh-product Fourier
integral, the gamma-product Fourier integral, and the Gauss hypergeometric
series.  Arguments follow the F(g; r, 2k) convention, so ``k`` is half the
spectral variable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from .errors import DomainViolation, NegativeWeight, PoleProximity, SeriesDivergence
from .hypergamma import _log_2cosh
from .quadrature import Envelope, EvalResult, QuadratureSpec, integrate_batch, integrate_real_line

DEFAULT_SPEC = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-12)


@dataclass(frozen=True)
class NonrelPoint:
    g: complex
    r: complex
    k: complex

    def __post_init__(self):
        if not np.real(self.g) > 0:
            raise DomainViolation("need Re g > 0")
        if not abs(np.imag(self.r)) < math.pi / 2:
            raise DomainViolation("need |Im r| < pi/2")
        if not abs(np.imag(self.k)) < np.real(self.g):
            raise DomainViolation("need |Im k| < Re g")


def log_gamma_euler(z):
    """log Gamma(z) on the principal branch (scipy's loggamma)."""
    z = np.asarray(z, dtype=complex)
    near = np.abs(z - np.round(z.real)) < 1e-12
    if np.any(near & (np.round(z.real) <= 0)):
        raise PoleProximity("Gamma has a pole at nonpositive integers")
    out = loggamma(z)
    return out[()] if out.ndim == 0 else out


def _lg(z):
    return loggamma(np.asarray(z, dtype=complex))


# -------------------------------------------------------------- representations


def conical_f_hyp(g, r, k, spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """(1/2) int exp(itk) prod_d [2 cosh((t + d r)/2)]^{-g} dt."""
    NonrelPoint(g, r, k)
    g, r, k = complex(g), complex(r), complex(k)

    def f(t):
        lc = _log_2cosh((t + r) / 2) + _log_2cosh((t - r) / 2)
        return 0.5 * np.exp(1j * t * k - g * lc)

    rate = g.real - abs(k.imag)
    env = Envelope(rate, t0=abs(r.real) + 2.0)
    res = integrate_real_line(f, env, spec.with_oscillation(abs(k.real) or None),
                              breakpoints=[-abs(r.real), abs(r.real)])
    return res


def conical_f_gamma(g, r, k, spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """(8 pi Gamma(g)^2)^{-1} int exp(isr) prod_{d1,d2} Gamma((g + i d1 s + i d2 k)/2) ds."""
    NonrelPoint(g, r, k)
    g, r, k = complex(g), complex(r), complex(k)
    norm = 8 * math.pi * np.exp(2 * _lg(g))

    def f(s):
        s = np.asarray(s, dtype=complex)
        lg = sum(_lg((g + 1j * d1 * s + 1j * d2 * k) / 2) for d1 in (1, -1) for d2 in (1, -1))
        return np.exp(1j * s * r + lg) / norm

    rate = 0.9 * (math.pi - abs(r.imag))
    env = Envelope(rate, t0=2 * abs(k) + 2 * abs(g) + 2.0)
    res = integrate_real_line(f, env, spec.with_oscillation(abs(r.real) or None))
    return res


def conical_f_series(g, r, k, n_terms: int = 4000, tol: float = 1e-16) -> EvalResult:
    """Gamma(g+ik)Gamma(g-ik)/(2 Gamma(2g)) 2F1(g+ik, g-ik; g+1/2; -sinh^2(r/2)), summed directly.

    Only used inside |sinh^2(r/2)| < 0.8, where the series converges geometrically.
    """
    g, r, k = complex(g), complex(r), complex(k)
    x = -np.sinh(r / 2) ** 2
    if abs(x) >= 0.8:
        raise SeriesDivergence(f"|sinh^2(r/2)| = {abs(x):.3f} is outside the series disc")
    a1, a2, c = g + 1j * k, g - 1j * k, g + 0.5
    pref = np.exp(_lg(a1) + _lg(a2) - _lg(2 * g)) / 2
    term = 1.0 + 0j
    total = term
    for n in range(n_terms):
        ratio = (a1 + n) * (a2 + n) / ((c + n) * (n + 1)) * x
        term *= ratio
        total += term
        q = abs(ratio)
        if q < 1 and n > 2:
            tail = abs(term) * q / (1 - q)
            if tail <= tol * abs(total):
                return EvalResult(complex(pref * total), float(abs(pref) * tail), n + 2, 0.0)
    raise SeriesDivergence("series did not reach the requested tolerance")


def conical_closed_g1(r, k):
    """F(1; r, 2k) = pi sin(kr) / (2 sinh(pi k) sinh r)."""
    return math.pi * np.sin(k * r) / (2 * np.sinh(math.pi * k) * np.sinh(r))


def conical_f_batch(g: float, r, k, abs_tol: float = 2e-16):
    """F(g; r, 2k) for broadcast real arrays r, k at real g > 0; returns (values, errors).

    Uses the cosh-product integral on one shared composite rule, folded onto
    t > 0 (the integrand on a horizontal line obeys h(-conj t) = conj h(t)).
    For |k| > 4/pi the line is lifted to Im t = theta = pi - 4/|k| (capped
    below pi), which removes the exp(-pi |k|) cancellation of the real-line
    integral; abs_tol then applies relative to exp(-theta |k|).
    """
    if not g > 0:
        raise DomainViolation("need g > 0")
    r, k = np.broadcast_arrays(np.abs(np.asarray(r, dtype=float)), np.abs(np.asarray(k, dtype=float)))
    shape = r.shape
    rf, kf = r.ravel(), k.ravel()
    order = np.argsort(kf, kind="stable")
    vals = np.empty(rf.size)
    errs = np.empty(rf.size)
    for s in range(0, rf.size, 256):
        idx = order[s:s + 256]
        rr, kk = rf[idx], kf[idx]
        theta = np.clip(math.pi - 4.0 / np.maximum(kk, 1e-300), 0.0, math.pi - 0.15)
        shift = 1j * theta[:, None]
        reach = float(rr.max()) + 40.0 / g
        kmax = float(kk.max())
        width = min(1.0, math.pi / (4 * kmax)) if kmax > 0 else 1.0
        if np.any(theta > 0):
            width = min(width, 0.25 * (math.pi - float(theta.max())))

        def f(t):
            u = t[None, :] + shift
            lc = _log_2cosh((u + rr[:, None]) / 2) + _log_2cosh((u - rr[:, None]) / 2)
            return np.real(np.exp(1j * u * kk[:, None] - g * lc))

        v, e = integrate_batch(f, 0.0, reach, width, abs_tol=abs_tol)
        vals[idx], errs[idx] = v, e
    return vals.reshape(shape), errs.reshape(shape)


# -------------------------------------------------------------- weights and kernels


def log_hat_w0(g, k):
    """log of 1/(4 pi Gamma(g)^2 prod_d Gamma(i d k) Gamma(i d k + g)), real for real k != 0."""
    k = np.asarray(k, dtype=complex)
    if np.any(np.abs(k) < 1e-14):
        raise PoleProximity("hat w0 has a pole at k = 0")
    lg = _lg(1j * k) + _lg(-1j * k) + _lg(1j * k + g) + _lg(-1j * k + g)
    return -(math.log(4 * math.pi) + 2 * _lg(g) + lg)


def log_mu0_factor(g, k):
    """log prod_d Gamma((i d k + g)/2) for one particle."""
    k = np.asarray(k, dtype=complex)
    return _lg((1j * k + g) / 2) + _lg((-1j * k + g) / 2)


def nonrel_weights(g, argument, kind: str):
    """Weight data: 'w0', 'hatw0', 'mu0' (argument is a pair) or 'renorm' (argument is a pair r)."""
    if kind == "w0":
        r = np.asarray(argument, dtype=float)
        if np.any(r <= 0):
            raise DomainViolation("w0 needs r > 0")
        return (2 * np.sinh(r)) ** (2 * g)
    if kind == "hatw0":
        out = np.exp(log_hat_w0(g, argument))
        return out.real if np.isrealobj(argument) else out
    if kind == "mu0":
        k1, k2 = argument
        lg = log_mu0_factor(g, k1) + log_mu0_factor(g, k2) - 2 * _lg(g)
        out = np.exp(lg) / 4
        return out.real if np.isrealobj(k1) and np.isrealobj(k2) else out
    if kind == "renorm":
        r1, r2 = argument
        return 2 * math.pi / (4 * np.cosh(r1) * np.cosh(r2)) ** g
    raise ValueError(f"unknown weight kind {kind!r}")


def mu0_fn(g, k1, k2):
    return nonrel_weights(g, (k1, k2), "mu0")


def f0_from_f(g, r, k, fval):
    """Kernel F0 = 2 Gamma(g) (2 sinh r)^g F(g;r,2k) (prod_d Gamma(idk) Gamma(idk+g))^{-1/2}."""
    r = np.asarray(r, dtype=float)
    k = np.asarray(k, dtype=float)
    lg = _lg(1j * k) + _lg(-1j * k) + _lg(1j * k + g) + _lg(-1j * k + g)
    # conjugate pairs: the product is |Gamma(ik) Gamma(g+ik)|^2, so its log must be real
    if np.any(np.abs(np.remainder(lg.imag + math.pi, 2 * math.pi) - math.pi) > 1e-8):
        raise NegativeWeight("Gamma-pair product must be positive for real k")
    log_scale = math.log(2 * math.gamma(g)) + g * np.log(2 * np.sinh(r)) - lg.real / 2
    return np.exp(log_scale) * fval


def f0_kernel(g, r, k, spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """Real transform kernel F0(g; r, k) for g, r, k > 0."""
    if not (g > 0 and r > 0 and k > 0):
        raise DomainViolation("f0_kernel needs g, r, k > 0")
    res = conical_f_hyp(g, r, k, spec)
    val = f0_from_f(g, r, k, res.value.real)
    scale = abs(val / res.value.real) if res.value.real else 0.0
    return EvalResult(complex(val), scale * res.error_estimate, res.n_evals, res.truncation_radius)


def f0_batch(g, r, k):
    fv, fe = conical_f_batch(g, r, k)
    v = f0_from_f(g, r, k, fv)
    return v, np.abs(f0_from_f(g, r, k, fe))


def f02_kernel(g, r, k, spec: QuadratureSpec = DEFAULT_SPEC) -> EvalResult:
    """Two-particle kernel: plane wave in the centres times F0 of (r1 - r2, (k1 - k2)/2)."""
    (r1, r2), (k1, k2) = r, k
    if not (r2 < r1 and k2 < k1):
        raise DomainViolation("f02_kernel needs both pairs in the wedge x2 < x1")
    f = f0_kernel(g, r1 - r2, (k1 - k2) / 2, spec)
    phase = np.exp(1j * (r1 + r2) * (k1 + k2) / 2)
    return EvalResult(complex(phase * f.value), f.error_estimate, f.n_evals, f.truncation_radius)


def cosh_kernel(g, r, s, t):
    """prod_{d1,d2} [2 cosh((t + d1 s + d2 r)/2)]^{-g}, real logarithm."""
    r, s, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r, s, t)))
    lc = sum(np.real(_log_2cosh((t + d1 * s + d2 * r) / 2)) for d1 in (1, -1) for d2 in (1, -1))
    return np.exp(-g * lc)


def gamma_kernel(g, p, q, k):
    """prod over eight sign choices of Gamma((g + i d1 p + i d2 q + i d3 k)/2), real for real args."""
    p, q, k = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (p, q, k)))
    lg = sum(_lg((g + 1j * (d1 * p + d2 * q + d3 * k)) / 2)
             for d1 in (1, -1) for d2 in (1, -1) for d3 in (1, -1))
    return np.exp(lg).real
