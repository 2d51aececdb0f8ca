"""
Pair interaction laws for particles in a 2D isotropic harmonic trap.

All quantities are dimensionless: separations ``s`` are in units of the
oscillator length ``l0 = sqrt(hbar / (m omega))`` and energies in units of
``hbar omega``.  The statistical (Uhlenbeck) potential for fermions and bosons
reads

    v(s) = -alpha * ln(1 -/+ exp(-alpha s^2))

with ``alpha = k_B T / (hbar omega)``.  The ``-`` sign (fermions) is repulsive
and diverges logarithmically at contact, the ``+`` sign (bosons) is attractive
and finite everywhere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

#: Above this value of ``alpha s^2`` the statistical potentials are returned as 0.
UNDERFLOW_CUTOFF = 700.0

_LN2 = math.log(2.0)


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class PotentialKind(enum.Enum):
    STATISTICAL_FERMION = "fermion"
    STATISTICAL_BOSON = "boson"
    COULOMB = "coulomb"
    NONE = "none"

    @property
    def is_statistical(self) -> bool:
        return self in (PotentialKind.STATISTICAL_FERMION, PotentialKind.STATISTICAL_BOSON)

    @property
    def allows_contact(self) -> bool:
        """Whether two particles may sit on top of each other at finite energy."""
        return self in (PotentialKind.STATISTICAL_BOSON, PotentialKind.NONE)


# integer codes used by the compiled annealing kernel
KIND_CODES = {
    PotentialKind.STATISTICAL_FERMION: 0,
    PotentialKind.STATISTICAL_BOSON: 1,
    PotentialKind.COULOMB: 2,
    PotentialKind.NONE: 3,
}


@dataclass(frozen=True)
class PairPotentialSpec:
    """Choice of interaction law plus its parameters.

    ``alpha`` is only used by the statistical kinds and ``coulomb_strength``
    only by the Coulomb kind.  The Coulomb coupling defaults to 1; shell
    structures of the Coulomb-plus-parabola problem do not depend on it.
    """

    kind: PotentialKind
    alpha: float = 1.0
    coulomb_strength: float = 1.0

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", PotentialKind(self.kind))
        if self.kind.is_statistical and not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive for {self.kind.value}, got {self.alpha}")
        if self.kind is PotentialKind.COULOMB and not (
            math.isfinite(self.coulomb_strength) and self.coulomb_strength > 0
        ):
            raise DomainError(f"coulomb_strength must be positive, got {self.coulomb_strength}")

    @classmethod
    def fermion(cls, alpha: float) -> PairPotentialSpec:
        return cls(PotentialKind.STATISTICAL_FERMION, alpha=alpha)

    @classmethod
    def boson(cls, alpha: float) -> PairPotentialSpec:
        return cls(PotentialKind.STATISTICAL_BOSON, alpha=alpha)

    @classmethod
    def coulomb(cls, strength: float = 1.0) -> PairPotentialSpec:
        return cls(PotentialKind.COULOMB, coulomb_strength=strength)

    @classmethod
    def none(cls) -> PairPotentialSpec:
        return cls(PotentialKind.NONE)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "alpha": float(self.alpha),
            "coulomb_strength": float(self.coulomb_strength),
        }

    @classmethod
    def from_dict(cls, data: dict) -> PairPotentialSpec:
        return cls(
            PotentialKind(data["kind"]),
            alpha=float(data.get("alpha", 1.0)),
            coulomb_strength=float(data.get("coulomb_strength", 1.0)),
        )


def _log1mexp(x):
    """ln(1 - exp(-x)) for x > 0, accurate for both small and large x."""
    x = np.asarray(x, dtype=float)
    small = x <= _LN2
    with np.errstate(divide="ignore"):
        return np.where(
            small,
            np.log(-np.expm1(-np.where(small, x, 1.0))),
            np.log1p(-np.exp(-np.where(small, 1.0, x))),
        )


def _check_separation(spec: PairPotentialSpec, s: np.ndarray) -> None:
    if not np.all(np.isfinite(s)):
        raise DomainError(f"non-finite separation for {spec.kind.value} potential")
    if spec.kind.allows_contact:
        if np.any(s < 0):
            raise DomainError(f"negative separation for {spec.kind.value} potential")
    elif np.any(s <= 0):
        raise DomainError(f"{spec.kind.value} potential requires s > 0")


def pair_value(spec: PairPotentialSpec, s):
    """Pair energy ``v(s)`` in units of hbar omega.

    Accepts a scalar or an array of separations; returns the same shape.
    """
    s_arr = np.asarray(s, dtype=float)
    _check_separation(spec, s_arr)
    kind = spec.kind
    if kind is PotentialKind.NONE:
        out = np.zeros_like(s_arr)
    elif kind is PotentialKind.COULOMB:
        out = spec.coulomb_strength / s_arr
    else:
        a = spec.alpha
        x = a * s_arr * s_arr
        live = x <= UNDERFLOW_CUTOFF
        if kind is PotentialKind.STATISTICAL_FERMION:
            inner = _log1mexp(np.where(live, x, 1.0))
        else:
            inner = np.log1p(np.exp(-np.where(live, x, 1.0)))
        out = np.where(live, -a * inner, 0.0)
    return out if out.ndim else float(out)


def pair_derivative(spec: PairPotentialSpec, s):
    """Radial derivative ``dv/ds`` of :func:`pair_value`."""
    s_arr = np.asarray(s, dtype=float)
    _check_separation(spec, s_arr)
    kind = spec.kind
    if kind is PotentialKind.NONE:
        out = np.zeros_like(s_arr)
    elif kind is PotentialKind.COULOMB:
        out = -spec.coulomb_strength / (s_arr * s_arr)
    else:
        out = s_arr * pair_derivative_over_s(spec, s_arr * s_arr)
    return out if out.ndim else float(out)


def pair_derivative_over_s(spec: PairPotentialSpec, s2):
    """``(dv/ds) / s`` as a function of the squared separation.

    This combination is what enters the Cartesian gradient
    ``(dv/ds) (r_i - r_j) / s``; it stays finite at ``s -> 0`` for bosons.
    No domain checks are done here.
    """
    s2 = np.asarray(s2, dtype=float)
    kind = spec.kind
    if kind is PotentialKind.NONE:
        return np.zeros_like(s2)
    if kind is PotentialKind.COULOMB:
        with np.errstate(divide="ignore"):
            return -spec.coulomb_strength / (s2 * np.sqrt(s2))
    a = spec.alpha
    x = a * s2
    live = x <= UNDERFLOW_CUTOFF
    xs = np.where(live, x, 1.0)
    if kind is PotentialKind.STATISTICAL_FERMION:
        with np.errstate(divide="ignore"):
            val = -2.0 * a * a / np.expm1(xs)
    else:
        val = 2.0 * a * a / (np.exp(xs) + 1.0)
    return np.where(live, val, 0.0)


def thermal_wavelength(mass: float, temperature: float) -> float:
    """Thermal wavelength ``sqrt(2 pi hbar^2 / (m k_B T))`` in metres.

    ``mass`` in kg, ``temperature`` in K.
    """
    if not (mass > 0 and temperature > 0):
        raise DomainError("mass and temperature must be positive")
    return math.sqrt(2.0 * math.pi * constants.hbar**2 / (mass * constants.k * temperature))


def oscillator_length(mass: float, omega: float) -> float:
    """Harmonic oscillator length ``sqrt(hbar / (m omega))`` in metres."""
    if not (mass > 0 and omega > 0):
        raise DomainError("mass and omega must be positive")
    return math.sqrt(constants.hbar / (mass * omega))


def reduced_temperature(temperature: float, omega: float) -> float:
    """Dimensionless temperature ``alpha = k_B T / (hbar omega)``."""
    if not (temperature > 0 and omega > 0):
        raise DomainError("temperature and omega must be positive")
    return constants.k * temperature / (constants.hbar * omega)
