"""
Short-time Fourier transform and modulation norms
=================================================

The STFT of a Gaussian against a Gaussian window, Moyal's identity, and the
two mixed-norm orders that give modulation and Wiener-type norms.
"""

import numpy as np

from orliczmod.field import Grid, make_signal, make_window, random_bandlimited
from orliczmod.norms import NormSpec, modulation_norm, wiener_space_norm
from orliczmod.tfa import fourier_stft_symmetry_check, stft

grid = Grid(1, 256, 0.125)
phi = make_window("gaussian", grid, 1.0)

# |V_phi phi(x, xi)| = exp(-(x^2 + xi^2)/4) / sqrt(2 pi)
V = stft(phi, phi)
exact = np.exp(-(V.x[:, None] ** 2 + V.xi[None, :] ** 2) / 4) / np.sqrt(2 * np.pi)
print("Gaussian STFT error:", np.abs(np.abs(V.values) - exact).max())

# Moyal: ||V_phi f||_2 = ||f||_2 ||phi||_2
f = random_bandlimited(grid, 0.5, seed=1)
print("M^{2,2} / L^2:", modulation_norm(f, phi, NormSpec.lebesgue(2, 2)) / f.l2_norm())

# position-first (modulation) against frequency-first (Wiener) mixed norms
chirp = make_signal("chirped_gaussian", grid, 1.0, 0.5)
for p, q in ((1, 2), (2, 1), (1, np.inf)):
    m = modulation_norm(chirp, phi, NormSpec.lebesgue(p, q))
    w = wiener_space_norm(chirp, phi, p, q)
    print(f"p={p} q={q}:  M {m:.6f}   W {w:.6f}")

print("Fourier symmetry of the STFT:", fourier_stft_symmetry_check(f, phi))
