"""
Radial shell classification and orientation-free structure comparison.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np
from scipy.optimize import linear_sum_assignment

from .analytic import REPORTED_PENTAGON_RADIUS
from .energy import as_configuration
from .potentials import DomainError


@dataclass(frozen=True)
class ShellStructure:
    """Occupancies of concentric shells, innermost first, with mean shell radii."""

    occupancies: tuple[int, ...]
    shell_radii: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "occupancies", tuple(int(n) for n in self.occupancies))
        object.__setattr__(self, "shell_radii", tuple(float(r) for r in self.shell_radii))
        if any(n < 1 for n in self.occupancies):
            raise DomainError("shell occupancies must be positive")
        if self.shell_radii and len(self.shell_radii) != len(self.occupancies):
            raise DomainError("one radius per shell expected")

    @property
    def n_particles(self) -> int:
        return sum(self.occupancies)

    @property
    def label(self) -> str:
        return "(" + ",".join(str(n) for n in self.occupancies) + ")"

    def __str__(self) -> str:
        return self.label

    def to_dict(self) -> dict:
        return {"occupancies": list(self.occupancies), "shell_radii": list(self.shell_radii)}

    @classmethod
    def from_dict(cls, data: dict) -> ShellStructure:
        return cls(tuple(data["occupancies"]), tuple(data.get("shell_radii", ())))


def classify_shells(config, gap_factor: float = 1.8, center_threshold: float = 0.25,
                    abs_gap: float = 0.4) -> ShellStructure:
    """Group particles into shells by gaps in the sorted radii.

    Particles closer to the origin than ``center_threshold`` form the centre
    shell.  Beyond that a new shell starts wherever consecutive radii differ by
    more than a factor ``gap_factor`` or by more than ``abs_gap``.
    """
    pos = as_configuration(config)
    radii = np.sort(np.hypot(pos[:, 0], pos[:, 1]))
    groups: list[list[float]] = []
    center = radii[radii < center_threshold]
    if center.size:
        groups.append(list(center))
    prev = None
    for r in radii[radii >= center_threshold]:
        if prev is None or r > gap_factor * prev or r - prev > abs_gap:
            groups.append([])
        groups[-1].append(r)
        prev = r
    return ShellStructure(tuple(len(g) for g in groups), tuple(float(np.mean(g)) for g in groups))


def _rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _matched_distance(a: np.ndarray, b: np.ndarray) -> tuple[float, np.ndarray]:
    d2 = ((a[:, None, :] - b[None, :, :]) ** 2).sum(-1)
    rows, cols = linear_sum_assignment(d2)
    return math.sqrt(d2[rows, cols].max()), cols


def _procrustes_angle(a: np.ndarray, b: np.ndarray) -> float:
    """Rotation angle minimising ``sum |R a_k - b_k|^2`` in 2D."""
    cross = np.sum(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0])
    dot = np.sum(a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1])
    return math.atan2(cross, dot)


def alignment_distance(a, b) -> float:
    """Smallest max point distance between ``a`` and ``b`` over rotations, reflections
    and particle relabellings."""
    a = as_configuration(a)
    b = as_configuration(b, len(a))
    ra, rb = np.hypot(*a.T), np.hypot(*b.T)
    if ra.max() == 0.0 or rb.max() == 0.0:
        return _matched_distance(a, b)[0]
    anchor = int(np.argmax(ra))
    theta_b = np.arctan2(b[:, 1], b[:, 0])
    best = math.inf
    for reflect in (False, True):
        src = a * np.array([1.0, -1.0]) if reflect else a
        theta_a = math.atan2(src[anchor, 1], src[anchor, 0])
        # candidate rotations send the anchor onto a particle of b at a similar radius
        cands = np.flatnonzero(np.abs(rb - ra[anchor]) <= max(0.5, 0.25 * ra[anchor]))
        if cands.size == 0:
            cands = np.arange(len(b))
        for j in cands:
            rot = _rotation(theta_b[j] - theta_a)
            moved = src @ rot.T
            dist, cols = _matched_distance(moved, b)
            # polish the rotation for the found labelling
            rot = _rotation(_procrustes_angle(moved, b[cols])) @ rot
            dist2, _ = _matched_distance(src @ rot.T, b)
            best = min(best, dist, dist2)
    return best


def same_structure(a, b, tol: float = 1e-3, **classifier_kwargs) -> bool:
    """True when occupancies agree and some rotation/reflection/permutation
    brings ``a`` within ``tol`` of ``b`` at every particle."""
    a = as_configuration(a)
    b = as_configuration(b)
    if len(a) != len(b):
        raise DomainError("configurations have different particle numbers")
    sa = classify_shells(a, **classifier_kwargs)
    sb = classify_shells(b, **classifier_kwargs)
    if sa.occupancies != sb.occupancies:
        return False
    return alignment_distance(a, b) <= tol


class ReferenceKind(enum.Enum):
    PAULI_CRYSTAL_REPORTED = "pauli"
    WIGNER_CLASSICAL = "wigner"


# Published shell structures: Pauli crystals from single-shot reconstructions and
# classical Coulomb clusters in a parabolic well.
REFERENCE_TABLE = MappingProxyType({
    (6, ReferenceKind.PAULI_CRYSTAL_REPORTED): ShellStructure((1, 5), (0.0, REPORTED_PENTAGON_RADIUS)),
    (15, ReferenceKind.PAULI_CRYSTAL_REPORTED): ShellStructure((1, 5, 9)),
    (15, ReferenceKind.WIGNER_CLASSICAL): ShellStructure((5, 10)),
    (30, ReferenceKind.WIGNER_CLASSICAL): ShellStructure((5, 10, 15)),
})


def reference_lookup(n: int, kind) -> ShellStructure | None:
    return REFERENCE_TABLE.get((int(n), ReferenceKind(kind)))


def parse_reference_key(key: str) -> tuple[int, ReferenceKind]:
    """Parse ``"pauli:6"`` / ``"wigner:30"`` style keys."""
    try:
        kind, n = key.split(":")
        return int(n), ReferenceKind(kind)
    except ValueError as exc:
        raise DomainError(f"bad reference key {key!r}; expected e.g. 'pauli:6'") from exc
