"""Deterministic sample grids: a Halton half plus a seeded uniform half."""

from __future__ import annotations

import numpy as np
from scipy.stats import qmc

DEFAULT_SEED = 42


def _halton(n, skip=0):
    return qmc.Halton(d=2, scramble=False).random(n + skip)[skip:]


def disk_grid(n=256, seed=DEFAULT_SEED, rmax=0.98, skip=1):
    """``n`` points in ``|z| <= rmax``, area-uniform.

    ``skip=1`` drops the Halton origin so grids avoid ``z = 0`` by default.
    """
    n_low = n // 2
    u = _halton(n_low, skip)
    low = rmax * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
    rng = np.random.default_rng(seed)
    m = n - n_low
    rand = rmax * np.sqrt(rng.random(m)) * np.exp(2j * np.pi * rng.random(m))
    return np.concatenate([low, rand])


def disk_pairs(n=256, seed=DEFAULT_SEED, rmax=0.98):
    """Two independent disk grids, paired elementwise."""
    first = disk_grid(n, seed, rmax, skip=1)
    second = disk_grid(n, seed + 1, rmax, skip=n + 1)
    return first, second


def uhp_grid(n=256, seed=DEFAULT_SEED, xmax=4.0, ymin=1e-2, ymax=4.0, skip=1):
    """Points with ``|Re| <= xmax`` and ``Im`` log-uniform in ``[ymin, ymax]``."""
    n_low = n // 2
    u = _halton(n_low, skip)
    rng = np.random.default_rng(seed)
    v = rng.random((n - n_low, 2))
    uv = np.vstack([u, v])
    x = xmax * (2 * uv[:, 0] - 1)
    y = ymin * (ymax / ymin) ** uv[:, 1]
    return x + 1j * y


def uhp_pairs(n=256, seed=DEFAULT_SEED, **kw):
    return uhp_grid(n, seed, skip=1, **kw), uhp_grid(n, seed + 1, skip=n + 1, **kw)


def circle_points(n, radius=1.0, phase=0.0):
    return radius * np.exp(1j * (phase + 2 * np.pi * np.arange(n) / n))
