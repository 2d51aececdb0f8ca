"""
N = 15 shell structure versus temperature
=========================================

Best of 20 annealing restarts at several alpha values.  The run records are
reproducible from the master seed.
"""

import numpy as np

from paulicrystal import AnnealSchedule, ModelParams, PairPotentialSpec, multi_restart
from paulicrystal.anneal import derive_seed

master_seed = 2718
alphas = [1.5, 2.0, 3.0]

# %%
for i, alpha in enumerate(alphas):
    rec = multi_restart(ModelParams(15, PairPotentialSpec.fermion(alpha)), AnnealSchedule(), 20,
                        derive_seed(master_seed, i))
    radii = ", ".join(f"{r:.3f}" for r in rec.shells.shell_radii)
    print(f"alpha = {alpha}: shells {rec.shells.label}  radii [{radii}]  E = {rec.best_energy:.8f}")
    spread = np.ptp(np.sort(rec.per_restart_energies)[:5])
    print(f"    spread of the 5 best restarts: {spread:.2e}")
