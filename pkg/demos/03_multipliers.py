"""
Fourier multipliers and their condition functionals
===================================================

A rational symbol keeps its Mihlin functional as the frequency range grows;
the quadratic chirp exp(i xi^2) does not, its first-order term growing
fourfold per doubling.
"""

from orliczmod import multiplier as mult
from orliczmod.field import Grid, random_bandlimited

grid = Grid(1, 512, 0.125)

for label, m in (("rational", mult.rational_mihlin()),
                 ("chirp", mult.homogeneous_chirp(1.0, 2.0))):
    study = mult.mihlin_study(lambda g: m, grid, doublings=3)
    values, verdict = study[(1,)]
    print(f"{label:9s}", " ".join(f"{v:10.4g}" for v in values), verdict)

# Hormander functional at a few radii; the sign symbol is bounded but not smooth at 0
for m in (mult.rational_mihlin(), mult.sign_type()):
    print(m.name, mult.hormander_functional(m, grid, [1.0, 2.0, 4.0]))

# unimodular symbols preserve the L^2 norm; with a non-even power the origin
# sample is zeroed, which removes the mean of the signal
f = random_bandlimited(grid, 0.5, seed=4)
for alpha in (2.0, 1.5):
    g = mult.apply_multiplier(mult.homogeneous_chirp(0.3, alpha), f)
    print(f"alpha {alpha}: L^2 before/after", f.l2_norm(), g.l2_norm())

# the localized chirp exp(i|xi|^1.5) chi(xi) as a Taylor series in mu
terms = mult.taylor_terms(grid, 30)
print("terms:", len(terms), " remainder bound:", mult.taylor_tail_bound(2 ** 1.5, 30))
