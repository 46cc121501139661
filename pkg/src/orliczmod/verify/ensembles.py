"""Probe ensembles that represent the same functions on every grid level.

Random members are drawn once on a reference grid and carried to finer
grids by trigonometric interpolation, then multiplied by a smooth
localizing factor evaluated pointwise.  Refining a level therefore changes
the discretization but not the function being probed.
"""

import numpy as np

from ..field import Grid, SampledField, make_signal, random_bandlimited, spectral_resample

__all__ = ["STRUCTURED", "reference_grid", "level_grids", "random_members",
           "structured_members", "probe_ensemble", "pair_ensemble",
           "compact_members", "smooth_bump"]

STRUCTURED = (("gaussian", 1.0), ("chirped_gaussian", 1.0, 0.5),
              ("two_bump", 4.0), ("modulated_bump", 3.0))

# envelope width as a fraction of the box side; keeps boundary mass < 1e-6
# even after one convolution
ENVELOPE_FRACTION = 1.0 / 16


def level_grids(grid, levels=2):
    """``levels`` grids on the box of ``grid``, finest one equal to ``grid``."""
    factor = 2 ** (levels - 1)
    if grid.n % factor:
        raise ValueError("grid too coarse for the requested levels")
    coarse = Grid(grid.d, grid.n // factor, grid.dx * factor)
    return [coarse.refined(2 ** k) if k else coarse for k in range(levels)]


def reference_grid(grid, reference_n):
    return Grid(grid.d, reference_n, grid.length / reference_n)


def _envelope(grid):
    s = ENVELOPE_FRACTION * grid.length
    r2 = sum(c ** 2 for c in grid.positions())
    return np.exp(-r2 / (2 * s ** 2))


def _unit(f):
    norm = f.l2_norm()
    return f * (1.0 / norm) if norm > 0 else f


def _carry(base, grid):
    if base.grid.n == grid.n:
        return base
    return spectral_resample(base, grid.n)


def random_members(grid, size, seed, band_fraction=0.5, reference_n=None):
    """Localized band-limited random fields, identical functions across levels.

    The band is taken relative to the reference grid with ``reference_n``
    points on the same box (default: ``grid`` itself).
    """
    ref = reference_grid(grid, reference_n or grid.n)
    out = []
    for i in range(size):
        base = random_bandlimited(ref, band_fraction, seed=seed * 1000 + i)
        f = _carry(base, grid)
        out.append(_unit(f.with_values(f.values * _envelope(grid))))
    return out


def structured_members(grid):
    return [make_signal(spec[0], grid, *spec[1:]) for spec in STRUCTURED]


def probe_ensemble(grid, size=16, seed=0, band_fraction=0.5, reference_n=None,
                   structured=True):
    """``size`` random members followed by the structured fields."""
    out = random_members(grid, size, seed, band_fraction, reference_n)
    return out + (structured_members(grid) if structured else [])


def pair_ensemble(grid, size=16, seed=0, band_fraction=0.5, reference_n=None):
    """``size`` pairs ``(f, g)`` of independent random members."""
    fs = random_members(grid, size, seed, band_fraction, reference_n)
    gs = random_members(grid, size, seed + 7919, band_fraction, reference_n)
    return list(zip(fs, gs))


def smooth_bump(t):
    """``exp(1 - 1/(1 - t^2))`` on ``|t| < 1``, zero elsewhere."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    out[inside] = np.exp(1 - 1 / (1 - t[inside] ** 2))
    return out


def compact_members(grid, size, seed, radius=None, band_fraction=0.25, reference_n=None):
    """Random fields times a smooth bump, supported in ``|x_i| < radius``.

    ``radius`` defaults to ``0.95 L / 8``, inside the central quarter of the box.
    """
    radius = 0.95 * grid.length / 8 if radius is None else radius
    ref = reference_grid(grid, reference_n or grid.n)
    bump = np.prod([smooth_bump(c / radius) for c in grid.positions()], axis=0)
    out = []
    for i in range(size):
        base = random_bandlimited(ref, band_fraction, seed=seed * 1000 + i)
        f = _carry(base, grid)
        out.append(_unit(SampledField(grid, f.values * bump)))
    return out
