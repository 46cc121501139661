"""Short-time Fourier transforms and the metaplectic chirp operator.

Two conventions are provided::

    V_phi f(x, xi) = (2 pi)^(-d/2) int f(y) conj(phi(y - x)) exp(-i<y, xi>) dy
    T_phi f(x, xi) = (2 pi)^(-d/2) int f(y + x) conj(phi(y)) exp(-i<y, xi>) dy

They differ by the phase ``exp(i<x, xi>)``.  Position shifts are periodic
on the grid torus; each shift costs one FFT of the windowed product.
"""

import math
from dataclasses import dataclass

import numpy as np

from .field import Grid, SampledField, SQRT_2PI, cfft, forward_fourier, inverse_fourier

__all__ = [
    "TimeFrequencyField", "stft", "stft_T", "chirp_operator",
    "fourier_stft_symmetry_check",
]

# shifts processed per FFT batch; bounds memory for d = 2
_CHUNK_ELEMENTS = 1 << 22


@dataclass
class TimeFrequencyField:
    """Samples ``F(x, xi)`` on (position grid) x (frequency grid).

    ``values`` has shape ``position_grid.shape + frequency_grid.shape``.
    The frequencies are the *positions* of ``frequency_grid`` (a dual
    grid), so ``frequency_grid.cell`` is the frequency cell volume.
    """

    position_grid: Grid
    frequency_grid: Grid
    values: np.ndarray

    def __post_init__(self):
        shape = self.position_grid.shape + self.frequency_grid.shape
        values = np.asarray(self.values)
        if values.shape != shape:
            raise ValueError(f"values of shape {values.shape}, expected {shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("time-frequency values must be finite")
        self.values = values

    @property
    def d(self):
        return self.position_grid.d

    @property
    def x(self):
        return self.position_grid.x

    @property
    def xi(self):
        return self.frequency_grid.x

    def matrix(self):
        """``values`` reshaped to (positions, frequencies)."""
        return self.values.reshape(self.position_grid.n ** self.d, -1)

    def l2_norm(self):
        mass = np.sum(np.abs(self.values) ** 2)
        return math.sqrt(float(mass) * self.position_grid.cell * self.frequency_grid.cell)


def _validate(f, phi):
    if f.grid != phi.grid:
        raise ValueError(f"grid mismatch: {f.grid} vs {phi.grid}")
    if not np.any(phi.values):
        raise ValueError("window must not vanish identically")


def _shift_chunks(grid):
    n, d = grid.n, grid.d
    shifts = np.stack(np.unravel_index(np.arange(n ** d), grid.shape), axis=-1)
    size = max(1, _CHUNK_ELEMENTS // (n ** d))
    for start in range(0, len(shifts), size):
        yield start, shifts[start:start + size]


def _gather(values, shifts, sign):
    """Rows ``values[(j + sign*(m - n/2)) mod n]`` for each shift ``m``."""
    n, d = values.shape[0], values.ndim
    j = np.arange(n)
    idx = [(j[None, :] + sign * (shifts[:, a, None] - n // 2)) % n for a in range(d)]
    if d == 1:
        return values[idx[0]]
    return values[idx[0][:, :, None], idx[1][:, None, :]]


def _windowed_transform(f, phi, oversample, which):
    _validate(f, phi)
    g = f.grid
    s = int(oversample)
    if s < 1 or s & (s - 1):
        raise ValueError("oversample must be a power of two")
    freq_grid = Grid(g.d, g.n * s, g.dx).dual()
    out = np.empty(g.shape + freq_grid.shape, dtype=complex)
    flat = out.reshape((g.n ** g.d,) + freq_grid.shape)
    axes = tuple(range(1, g.d + 1))
    scale = (g.dx / SQRT_2PI) ** g.d
    pad = [(0, 0)] + [((g.n * s - g.n) // 2,) * 2] * g.d
    for start, shifts in _shift_chunks(g):
        if which == "V":
            prod = f.values[None] * np.conj(_gather(phi.values, shifts, -1))
        else:
            prod = _gather(f.values, shifts, +1) * np.conj(phi.values)[None]
        if s > 1:
            prod = np.pad(prod, pad)
        flat[start:start + len(shifts)] = scale * cfft(prod, axes)
    return TimeFrequencyField(g, freq_grid, out)


def stft(f, phi, oversample=1):
    """Short-time Fourier transform ``V_phi f`` on the grid.

    Parameters
    ----------
    f, phi : SampledField
        Signal and window on the same grid.
    oversample : int
        Zero-padding factor of the frequency axis (1 keeps the field's own
        frequency grid).
    """
    return _windowed_transform(f, phi, oversample, "V")


def stft_T(f, phi, oversample=1):
    """Translated-signal transform ``T_phi f``; ``|T_phi f| = |V_phi f|``."""
    return _windowed_transform(f, phi, oversample, "T")


def chirp_operator(f, A):
    """Apply ``exp(i <A D, D>)``, i.e. multiply the spectrum by ``exp(i <A xi, xi>)``."""
    d = f.grid.d
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.shape != (d, d):
        raise ValueError(f"A must be {d}x{d}")
    if not np.allclose(A, A.T):
        raise ValueError("A must be symmetric")
    F = forward_fourier(f)
    xi = F.grid.positions()
    phase = sum(A[i, j] * xi[i] * xi[j] for i in range(d) for j in range(d))
    return inverse_fourier(F.with_values(F.values * np.exp(1j * phase)))


def fourier_stft_symmetry_check(f, phi):
    """Max over the grid of ``| |V_phi f(x, xi)| - |V_phihat fhat(xi, -x)| |``.

    On the grid torus the two magnitudes agree to rounding, mirroring the
    continuum identity ``V_phi f(x, xi) = exp(-i<x, xi>) V_phihat fhat(xi, -x)``.
    """
    _validate(f, phi)
    d, n = f.grid.d, f.grid.n
    lhs = np.abs(stft(f, phi).values)
    rhs = np.abs(stft(forward_fourier(f), forward_fourier(phi)).values)
    neg = (n - np.arange(n)) % n
    for axis in range(d, 2 * d):
        rhs = np.take(rhs, neg, axis=axis)
    rhs = np.transpose(rhs, tuple(range(d, 2 * d)) + tuple(range(d)))
    return float(np.max(np.abs(lhs - rhs)))
