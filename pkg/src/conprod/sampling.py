"""Seeded low-discrepancy sample points over parameter boxes."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.stats import qmc


def sample_box(box: dict, n: int, seed: int) -> list[dict]:
    """n scrambled-Halton points in the product of intervals box[name] = (lo, hi)."""
    names = list(box)
    if not names:
        return [{} for _ in range(n)]
    sampler = qmc.Halton(d=len(names), scramble=True, seed=seed)
    u = sampler.random(n)
    lo = np.array([box[k][0] for k in names], dtype=float)
    hi = np.array([box[k][1] for k in names], dtype=float)
    pts = lo + u * (hi - lo)
    return [{k: float(v) for k, v in zip(names, row)} for row in pts]


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CONPROD_THREADS", "1")))
    except ValueError:
        return 1


def map_points(fn, points):
    """Apply fn to each point, concurrently when CONPROD_THREADS > 1, keeping order."""
    n = thread_count()
    if n == 1 or len(points) < 2:
        return [fn(p) for p in points]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, points))
