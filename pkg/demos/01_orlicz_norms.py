"""
Orlicz norms of sampled functions
=================================

Luxemburg norms for a few quasi-Young functions, their Lebesgue exponents,
and the Delta_2 verdicts.
"""

import math

import numpy as np

from orliczmod.field import Grid, make_signal
from orliczmod.norms import luxemburg_norm
from orliczmod.young import ExpMinusOne, Power, PowerLog, is_delta2, lebesgue_exponents

grid = Grid(1, 512, 0.125)
f = make_signal("two_bump", grid, 4.0)

# Power(p) reproduces the L^p norm, so Power(2) gives 1 for a unit-norm signal
for phi in (Power(0.5), Power(1), Power(2), PowerLog(1, 1), ExpMinusOne()):
    ex = lebesgue_exponents(phi)
    print(f"{phi!r:32s} norm {luxemburg_norm(f.values, grid.cell, phi):.6f}"
          f"   q_Phi {ex.q_lower:.3f}  p_Phi {ex.p_upper:.3f}  Delta_2 {is_delta2(phi)}")

# homogeneity: scaling the signal scales the norm
phi = PowerLog(1, 1)
base = luxemburg_norm(f.values, grid.cell, phi)
for c in (0.1, 10.0, 1e3):
    print(f"c = {c:g}: ratio {luxemburg_norm(c * f.values, grid.cell, phi) / base:.12g}")

# exp(t) - 1 grows too fast for Delta_2; its upper exponent is infinite
print("p_Phi for exp(t)-1:", lebesgue_exponents(ExpMinusOne()).p_upper, math.inf)
