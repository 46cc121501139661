"""
Chirps shear the time-frequency plane
=====================================

Applying exp(i a D^2) moves STFT magnitude along x by an amount
proportional to the frequency.  The shift is found by brute-force
correlation per frequency slice; the fitted slope comes out as 2a.
"""

from orliczmod.field import Grid, make_signal, make_window
from orliczmod.verify import check_chirp_covariance

grid = Grid(1, 512, 0.125)
f = make_signal("gaussian", grid, 1.0)
phi = make_window("gaussian", grid, 1.0)

for a in (0.05, 0.1, 0.2, -0.2):
    B, deviation, info = check_chirp_covariance(a, f, phi)
    print(f"a = {a:+.2f}   fitted B = {B:+.10f}   2a = {2 * a:+.2f}   "
          f"first pass {info['first_pass']:+.4f}   deviation {deviation:.1e}")
