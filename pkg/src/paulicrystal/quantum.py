"""
Non-interacting reference quantities for the 2D isotropic oscillator.

Coordinates are in units of ``l0``.  Orbitals are products of normalised
1D Hermite functions, evaluated by their three-term recurrence so that no
factorials or large Hermite values are formed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .potentials import DomainError


@dataclass(frozen=True)
class OrbitalIndex:
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 0 or self.ny < 0:
            raise DomainError("oscillator quantum numbers must be non-negative")

    @property
    def energy(self) -> int:
        """Single-particle energy ``nx + ny + 1`` in units of hbar omega."""
        return self.nx + self.ny + 1


def hermite_function(n: int, x):
    """Normalised 1D oscillator eigenfunction ``psi_n(x)``.

    ``psi_n = (2^n n! sqrt(pi))^{-1/2} H_n(x) exp(-x^2/2)``
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return prev
    cur = math.sqrt(2.0) * x * prev
    for k in range(1, n):
        prev, cur = cur, math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
    return cur


def orbital_value(idx: OrbitalIndex, x, y):
    """``phi_{nx,ny}(x, y) = psi_nx(x) psi_ny(y)``."""
    out = hermite_function(idx.nx, x) * hermite_function(idx.ny, y)
    return out if np.ndim(out) else float(out)


def level_degeneracy(k: int) -> int:
    """Number of states with energy ``k hbar omega`` (``k = nx + ny + 1``)."""
    if k < 1:
        raise DomainError("level index must be >= 1")
    return k


def level_orbitals(k: int) -> list[OrbitalIndex]:
    return [OrbitalIndex(nx, k - 1 - nx) for nx in range(level_degeneracy(k))]


def magic_numbers(max_shells: int) -> list[int]:
    """Particle counts of completely filled oscillator shells: 1, 3, 6, 10, ..."""
    if max_shells < 1:
        raise DomainError("max_shells must be >= 1")
    return [k * (k + 1) // 2 for k in range(1, max_shells + 1)]


@dataclass
class DensityGrid:
    extent: float
    resolution: int
    values: np.ndarray

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(-self.extent, self.extent, self.resolution)

    def integral(self) -> float:
        ax = self.axis
        return float(np.trapezoid(np.trapezoid(self.values, ax, axis=1), ax))

    def to_csv(self) -> str:
        """Matrix form; row ``i`` is ``y = axis[i]``, column ``j`` is ``x = axis[j]``."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self.values:
            writer.writerow([repr(float(v)) for v in row])
        return buf.getvalue()

    def to_columns(self) -> str:
        """Three columns ``x y rho`` with blank lines between scan lines (gnuplot ``splot``)."""
        ax = self.axis
        lines = []
        for i, y in enumerate(ax):
            for j, x in enumerate(ax):
                lines.append(f"{x:.10g} {y:.10g} {self.values[i, j]:.15g}")
            lines.append("")
        return "\n".join(lines)


def filled_shell_density(n_shells: int, extent: float, resolution: int) -> DensityGrid:
    """One-particle density of the closed-shell Slater determinant with ``n_shells`` levels."""
    if not extent > 0 or resolution < 3:
        raise DomainError("need extent > 0 and resolution >= 3")
    ax = np.linspace(-extent, extent, resolution)
    nmax = n_shells - 1
    psi = [hermite_function(n, ax) for n in range(nmax + 1)]
    rho = np.zeros((resolution, resolution))
    for k in range(1, n_shells + 1):
        for orb in level_orbitals(k):
            rho += np.outer(psi[orb.ny], psi[orb.nx]) ** 2
    # closed shells are symmetric under x <-> y; make that exact in floating point
    rho = 0.5 * (rho + rho.T)
    return DensityGrid(float(extent), int(resolution), rho)


def density_n3(extent: float = 4.0, resolution: int = 201) -> DensityGrid:
    """Ground-state density ``|phi00|^2 + |phi10|^2 + |phi01|^2`` of three fermions."""
    return filled_shell_density(2, extent, resolution)
