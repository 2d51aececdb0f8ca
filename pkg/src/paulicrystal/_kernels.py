"""Compiled inner loops for the Metropolis chain."""

import math

import numpy as np
from numba import njit

FERMION, BOSON, COULOMB, NONE = 0, 1, 2, 3
_LN2 = math.log(2.0)
_CUTOFF = 700.0


@njit(cache=True)
def pair_energy(kind, alpha, strength, s2):
    if kind == FERMION:
        x = alpha * s2
        if x > _CUTOFF:
            return 0.0
        if x == 0.0:
            return math.inf
        if x <= _LN2:
            return -alpha * math.log(-math.expm1(-x))
        return -alpha * math.log1p(-math.exp(-x))
    if kind == BOSON:
        x = alpha * s2
        if x > _CUTOFF:
            return 0.0
        return -alpha * math.log1p(math.exp(-x))
    if kind == COULOMB:
        if s2 == 0.0:
            return math.inf
        return strength / math.sqrt(s2)
    return 0.0


@njit(cache=True)
def configuration_energy(pos, kind, alpha, strength, confinement):
    n = pos.shape[0]
    e = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            e += pair_energy(kind, alpha, strength, dx * dx + dy * dy)
    conf = 0.0
    for i in range(n):
        conf += pos[i, 0] * pos[i, 0] + pos[i, 1] * pos[i, 1]
    return e + 0.5 * confinement * conf


@njit(cache=True)
def metropolis_stage(pos, energy, best_pos, best_energy, kind, alpha, strength,
                     confinement, temperature, step, which, noise, uniform):
    """Run ``len(which)`` single-particle Gaussian moves in place.

    Returns ``(energy, best_energy, n_accepted)``; ``best_pos`` is updated
    whenever a lower energy is visited.
    """
    n = pos.shape[0]
    accepted = 0
    for m in range(which.shape[0]):
        i = which[m]
        ox = pos[i, 0]
        oy = pos[i, 1]
        nx = ox + step * noise[m, 0]
        ny = oy + step * noise[m, 1]
        delta = 0.5 * confinement * (nx * nx + ny * ny - ox * ox - oy * oy)
        for j in range(n):
            if j == i:
                continue
            px = pos[j, 0]
            py = pos[j, 1]
            new = pair_energy(kind, alpha, strength, (nx - px) ** 2 + (ny - py) ** 2)
            if new == math.inf:
                delta = math.inf
                break
            delta += new - pair_energy(kind, alpha, strength, (ox - px) ** 2 + (oy - py) ** 2)
        if delta == math.inf:
            continue
        if delta <= 0.0 or uniform[m] < math.exp(-delta / temperature):
            pos[i, 0] = nx
            pos[i, 1] = ny
            energy += delta
            accepted += 1
            if energy < best_energy:
                best_energy = energy
                best_pos[:, :] = pos
    return energy, best_energy, accepted
