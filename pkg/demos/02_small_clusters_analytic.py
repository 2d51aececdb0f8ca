"""
Small clusters: closed forms and ring templates
===============================================

For N = 3 and N = 4 the optimal ring radius has a closed form.  For N = 5 and
N = 6 we minimise the template energy in its single radius.  The annealer
then confirms that these constrained optima are the true minima.
"""

from paulicrystal import (
    AnnealSchedule,
    ModelParams,
    PairPotentialSpec,
    TemplateKind,
    minimize_template,
    multi_restart,
    square_solution,
    triangle_radius,
)
from paulicrystal.analytic import REPORTED_PENTAGON_RADIUS

alpha = 1.0

# %%
print(f"N=3 triangle radius  {triangle_radius(alpha):.6f}")
z, r4 = square_solution(alpha)
print(f"N=4 square           z = {z:.7f}, radius {r4:.6f}")
r5, e5 = minimize_template(alpha, TemplateKind.RING5)
print(f"N=5 pentagon         radius {r5:.6f}, E = {e5:.6f}")
r6, e6 = minimize_template(alpha, TemplateKind.PENTAGON_PLUS_CENTER6)
print(f"N=6 pentagon+centre  radius {r6:.6f}, E = {e6:.6f}")

# %%
# Comparison with the shell radius reconstructed from single-shot images.
print(f"relative discrepancy to r = {REPORTED_PENTAGON_RADIUS}: "
      f"{100 * (REPORTED_PENTAGON_RADIUS - r6) / REPORTED_PENTAGON_RADIUS:.2f}%")

# %%
# The unconstrained optimum agrees with the templates.
for n in (3, 4, 5, 6):
    rec = multi_restart(ModelParams(n, PairPotentialSpec.fermion(alpha)), AnnealSchedule(), 10, master_seed=1)
    print(f"N={n}: annealed shells {rec.shells.label}, E = {rec.best_energy:.8f}")
