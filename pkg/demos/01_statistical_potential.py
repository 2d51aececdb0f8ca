"""
The statistical pair potential
==============================

Fermions repel and bosons attract through the exchange-induced potential
v(s) = -alpha ln(1 -/+ exp(-alpha s^2)).  In units of k_B T it depends only on
r / lambda, and it is negligible beyond one thermal wavelength.
"""

import math

import numpy as np

from paulicrystal import PairPotentialSpec, pair_value

# %%
# v/(k_B T) as a function of x = r/lambda.  With 2 pi / lambda^2 = alpha / l0^2
# we have alpha s^2 = 2 pi x^2, so for alpha = 1, s = sqrt(2 pi) x.
x = np.linspace(0.05, 1.2, 12)
s = np.sqrt(2 * math.pi) * x
fermion = pair_value(PairPotentialSpec.fermion(1.0), s)
boson = pair_value(PairPotentialSpec.boson(1.0), s)
for xi, f, b in zip(x, fermion, boson):
    print(f"x = {xi:4.2f}   fermion {f:9.5f}   boson {b:9.5f}")

# %%
# At r = lambda both potentials are already tiny.
print("v_F(lambda) / k_B T =", pair_value(PairPotentialSpec.fermion(1.0), math.sqrt(2 * math.pi)))

# %%
# Optional plot.
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    xs = np.linspace(0.02, 1.2, 300)
    ss = np.sqrt(2 * math.pi) * xs
    fig, ax = plt.subplots(2, 1, sharex=True)
    ax[0].plot(xs, pair_value(PairPotentialSpec.fermion(1.0), ss))
    ax[0].set_ylabel("fermions")
    ax[1].plot(xs, pair_value(PairPotentialSpec.boson(1.0), ss))
    ax[1].set_ylabel("bosons")
    ax[1].set_xlabel("r / lambda")
    fig.savefig("statistical_potential.png", dpi=120)
