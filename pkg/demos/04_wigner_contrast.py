"""
Statistical clusters versus Wigner clusters
===========================================

Same trap and annealer, with the statistical potential replaced by a Coulomb
repulsion.  The stored classical reference structures are printed alongside.
"""

from paulicrystal import AnnealSchedule, ModelParams, PairPotentialSpec, multi_restart, reference_lookup

seed = 2718

# %%
for n, alpha in [(15, 1.5), (30, 1.0)]:
    fermi = multi_restart(ModelParams(n, PairPotentialSpec.fermion(alpha)), AnnealSchedule(), 20, seed)
    coul = multi_restart(ModelParams(n, PairPotentialSpec.coulomb()), AnnealSchedule(), 20, seed)
    ref = reference_lookup(n, "wigner")
    print(f"N={n}: fermion(alpha={alpha}) {fermi.shells.label}   Coulomb {coul.shells.label}   "
          f"stored Wigner {ref.label}")
