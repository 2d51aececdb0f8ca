"""
Closed-form and template-constrained minima for small N.

Each template puts ``n_ring`` particles on a regular polygon of radius ``r``
(optionally plus one particle at the trap centre) and reduces the energy to a
function of ``r`` alone.  For N=3 and N=4 the minimum is known in closed form;
the others are found by a 1-D golden-section search.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .energy import ModelParams, energy_gradient
from .potentials import DomainError, PairPotentialSpec, pair_value

#: Pentagon shell radius of the N=6 single-shot reconstruction at T = hbar omega / k_B.
REPORTED_PENTAGON_RADIUS = 1.265

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_RADIUS_BOUNDS = (1e-4, 50.0)


class TemplateKind(enum.Enum):
    TRIANGLE3 = "triangle3"
    SQUARE4 = "square4"
    RING5 = "ring5"
    PENTAGON_PLUS_CENTER6 = "pentagon_plus_center6"
    RING_PLUS_CENTER = "ring_plus_center"


_FIXED_LAYOUTS = {
    TemplateKind.TRIANGLE3: (3, False),
    TemplateKind.SQUARE4: (4, False),
    TemplateKind.RING5: (5, False),
    TemplateKind.PENTAGON_PLUS_CENTER6: (5, True),
}


class BracketError(RuntimeError):
    """No interior minimum of the template energy was found in the radius window."""


@dataclass(frozen=True)
class TemplateGeometry:
    """A regular ring of particles, optionally with one at the centre.

    ``n_ring`` and ``has_center`` are only read for ``RING_PLUS_CENTER``;
    the named kinds fix them.
    """

    kind: TemplateKind
    radius: float = 1.0
    phase: float = 0.0
    n_ring: int = 0
    has_center: bool = False

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", TemplateKind(self.kind))
        if self.kind in _FIXED_LAYOUTS:
            n_ring, has_center = _FIXED_LAYOUTS[self.kind]
            object.__setattr__(self, "n_ring", n_ring)
            object.__setattr__(self, "has_center", has_center)
        elif self.n_ring < 1:
            raise DomainError("ring_plus_center needs n_ring >= 1")
        if not self.radius > 0:
            raise DomainError(f"template radius must be positive, got {self.radius}")

    @property
    def n_particles(self) -> int:
        return self.n_ring + int(self.has_center)

    def with_radius(self, radius: float) -> TemplateGeometry:
        return TemplateGeometry(self.kind, radius, self.phase, self.n_ring, self.has_center)

    def realize(self) -> np.ndarray:
        """Explicit ``(N, 2)`` positions; the centre particle (if any) comes first."""
        t = self.phase + 2.0 * np.pi * np.arange(self.n_ring) / self.n_ring
        ring = self.radius * np.column_stack([np.cos(t), np.sin(t)])
        if self.has_center:
            return np.vstack([np.zeros((1, 2)), ring])
        return ring


def template(kind, radius: float = 1.0, phase: float = 0.0, n_ring: int = 0,
             has_center: bool = False) -> TemplateGeometry:
    return TemplateGeometry(TemplateKind(kind), radius, phase, n_ring, has_center)


def triangle_radius(alpha: float) -> float:
    """Equilateral-triangle radius ``sqrt(ln(6 alpha^2 + 1) / (3 alpha))`` for N=3."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    r = math.sqrt(math.log1p(6.0 * alpha * alpha) / (3.0 * alpha))
    _assert_stationary(alpha, TemplateGeometry(TemplateKind.TRIANGLE3, r))
    return r


def square_solution(alpha: float) -> tuple[float, float]:
    """Square (N=4) minimum as ``(z, radius)`` with ``z = exp(-2 alpha r^2)``.

    ``z`` is the positive root of the quadratic stationarity condition.
    """
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    a2 = alpha * alpha
    disc = math.sqrt(1.0 + 8.0 * a2 + 4.0 * a2 * a2)
    # rationalised form of (-2a^2 + disc)/(1 + 8a^2); no cancellation for large alpha
    z = 1.0 / (2.0 * a2 + disc)
    radius = math.sqrt(-math.log(z) / (2.0 * alpha))
    _assert_stationary(alpha, TemplateGeometry(TemplateKind.SQUARE4, radius))
    return z, radius


def template_energy(alpha: float, geom: TemplateGeometry,
                    potential: PairPotentialSpec | None = None) -> float:
    """Energy of a template as a function of its radius.

    Uses chord lengths ``2 r sin(pi k / n)`` of the regular ring, so a pentagon
    has neighbour distance ``2 r sin 36deg`` and next-neighbour ``2 r sin 72deg``.
    The fermionic statistical potential at ``alpha`` is used unless
    ``potential`` is given.
    """
    spec = potential if potential is not None else PairPotentialSpec.fermion(alpha)
    n, r = geom.n_ring, geom.radius
    energy = 0.5 * n * r * r
    if n > 1:
        k = np.arange(1, n)
        chords = 2.0 * r * np.sin(np.pi * k / n)
        energy += 0.5 * n * float(np.sum(pair_value(spec, chords)))
    if geom.has_center:
        energy += n * pair_value(spec, r)
    return float(energy)


def golden_section(f, a: float, b: float, tol: float = 1e-10) -> float:
    """Minimise a unimodal ``f`` on ``[a, b]`` until the bracket is narrower than ``tol``."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def bracket_minimum(f, x0: float = 1.0, step: float = 0.1,
                    bounds: tuple[float, float] = _RADIUS_BOUNDS) -> tuple[float, float]:
    """Expand downhill from ``x0`` until an interval ``[a, c]`` containing a minimum is found."""
    lo, hi = bounds
    grow = 1.0 + 1.0 / _INV_PHI
    a, b = x0, x0 + step
    fa, fb = f(a), f(b)
    if fb > fa:
        a, b, fa, fb = b, a, fb, fa
        step = -step
    while True:
        step *= grow
        c = min(max(b + step, lo), hi)
        fc = f(c)
        if fc > fb:
            return (a, c) if a < c else (c, a)
        if c in (lo, hi):
            raise BracketError(
                f"template energy keeps decreasing towards r = {c}; no minimum in {bounds}"
            )
        a, b, fa, fb = b, c, fb, fc


def minimize_template(alpha: float, kind, n_ring: int = 0, has_center: bool = False,
                      potential: PairPotentialSpec | None = None,
                      tol: float = 1e-10) -> tuple[float, float]:
    """Optimal radius and energy of a template, as ``(radius, energy)``."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    geom = template(kind, 1.0, 0.0, n_ring, has_center)

    def f(r):
        return template_energy(alpha, geom.with_radius(r), potential)

    a, c = bracket_minimum(f)
    r = golden_section(f, a, c, tol)
    return r, f(r)


def realized_minimum(alpha: float, kind, n_ring: int = 0, has_center: bool = False,
                     phase: float = 0.0) -> TemplateGeometry:
    """Template geometry at its optimal radius."""
    r, _ = minimize_template(alpha, kind, n_ring, has_center)
    return template(kind, r, phase, n_ring, has_center)


def _assert_stationary(alpha: float, geom: TemplateGeometry) -> None:
    params = ModelParams(geom.n_particles, PairPotentialSpec.fermion(alpha))
    g = np.abs(energy_gradient(params, geom.realize())).max()
    scale = max(1.0, alpha)
    if g > 1e-7 * scale:
        raise ArithmeticError(f"closed-form radius is not stationary (|grad| = {g:.3e})")
