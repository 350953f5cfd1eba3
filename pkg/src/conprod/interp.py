"""Piecewise Chebyshev interpolation of smooth functions on a real interval."""
from __future__ import annotations

import math

import numpy as np
from scipy.fft import dct


class ChebPanels:
    """Interpolant of f on [lo, hi] using equal panels of at most max_width.

    f is vectorized and may be complex valued.  Coefficients come from a
    type-II DCT of values at Chebyshev points of the first kind.
    """

    def __init__(self, f, lo: float, hi: float, max_width: float, degree: int = 40):
        self.lo, self.hi, self.degree = float(lo), float(hi), degree
        n_pan = max(1, int(math.ceil((hi - lo) / max_width)))
        self.width = (hi - lo) / n_pan
        k = np.arange(degree + 1)
        x = np.cos(np.pi * (k + 0.5) / (degree + 1))
        centers = lo + self.width * (np.arange(n_pan) + 0.5)
        t = centers[:, None] + 0.5 * self.width * x[None, :]
        vals = np.asarray(f(t.ravel())).reshape(t.shape)
        coef_re = dct(vals.real, type=2, axis=1) / (degree + 1)
        coef = coef_re.astype(complex)
        if np.iscomplexobj(vals):
            coef = coef + 1j * dct(vals.imag, type=2, axis=1) / (degree + 1)
        coef[:, 0] /= 2
        self.coef = coef if np.iscomplexobj(vals) else coef.real
        self.n_panels = n_pan
        # tail coefficient size is a cheap accuracy indicator
        scale = np.max(np.abs(self.coef), axis=1)
        self.tail_ratio = float(np.max(np.abs(self.coef[:, -3:]).max(axis=1) / np.where(scale > 0, scale, 1)))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        flat = t.ravel()
        idx = np.clip(((flat - self.lo) // self.width).astype(int), 0, self.n_panels - 1)
        x = 2 * (flat - self.lo - (idx + 0.5) * self.width) / self.width
        c = self.coef[idx]
        b1 = np.zeros_like(c[:, 0])
        b2 = np.zeros_like(b1)
        for j in range(self.degree, 0, -1):
            b1, b2 = c[:, j] + 2 * x * b1 - b2, b1
        out = c[:, 0] + x * b1 - b2
        return out.reshape(t.shape)
