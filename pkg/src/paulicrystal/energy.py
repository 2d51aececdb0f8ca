"""
Total energy of N particles in the trap and its analytic gradient.

A configuration is an ``(N, 2)`` float array of positions in units of ``l0``.
The energy in units of ``hbar omega`` is

    E = sum_{i<j} v(|r_i - r_j|) + c/2 * sum_i |r_i|^2

with ``c = confinement_strength`` (``c = 1`` is the physical trap).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .potentials import (
    DomainError,
    PairPotentialSpec,
    pair_derivative_over_s,
    pair_value,
)


@dataclass(frozen=True)
class ModelParams:
    n_particles: int
    potential: PairPotentialSpec = field(default_factory=lambda: PairPotentialSpec.fermion(1.0))
    confinement_strength: float = 1.0

    def __post_init__(self):
        if int(self.n_particles) != self.n_particles or self.n_particles < 1:
            raise DomainError(f"n_particles must be a positive integer, got {self.n_particles}")
        if not self.confinement_strength > 0:
            raise DomainError("confinement_strength must be positive")

    @property
    def alpha(self) -> float:
        return self.potential.alpha

    def to_dict(self) -> dict:
        return {
            "n_particles": int(self.n_particles),
            "potential": self.potential.to_dict(),
            "confinement_strength": float(self.confinement_strength),
        }

    @classmethod
    def from_dict(cls, data: dict) -> ModelParams:
        return cls(
            int(data["n_particles"]),
            PairPotentialSpec.from_dict(data["potential"]),
            float(data.get("confinement_strength", 1.0)),
        )


def as_configuration(config, n_particles: int | None = None) -> np.ndarray:
    """Validate and convert ``config`` to an ``(N, 2)`` float array."""
    pos = np.array(config, dtype=float)
    if pos.ndim != 2 or pos.shape[1] != 2 or pos.shape[0] < 1:
        raise DomainError(f"configuration must have shape (N, 2), got {pos.shape}")
    if not np.all(np.isfinite(pos)):
        raise DomainError("configuration contains non-finite coordinates")
    if n_particles is not None and pos.shape[0] != n_particles:
        raise DomainError(f"expected {n_particles} particles, got {pos.shape[0]}")
    return pos


def _pair_geometry(pos: np.ndarray):
    # fixed lexicographic i<j ordering
    i, j = np.triu_indices(len(pos), k=1)
    diff = pos[i] - pos[j]
    s2 = np.einsum("ij,ij->i", diff, diff)
    return i, j, diff, s2


def _check_contacts(params: ModelParams, i, j, s2) -> None:
    if params.potential.kind.allows_contact:
        return
    bad = np.flatnonzero(s2 == 0.0)
    if bad.size:
        k = bad[0]
        raise DomainError(
            f"particles {i[k]} and {j[k]} coincide under the "
            f"{params.potential.kind.value} potential"
        )


def total_energy(params: ModelParams, config) -> float:
    pos = as_configuration(config, params.n_particles)
    conf = 0.5 * params.confinement_strength * float(np.sum(pos * pos))
    if len(pos) < 2:
        return conf
    i, j, _, s2 = _pair_geometry(pos)
    _check_contacts(params, i, j, s2)
    return float(np.sum(pair_value(params.potential, np.sqrt(s2)))) + conf


def energy_gradient(params: ModelParams, config) -> np.ndarray:
    """Analytic gradient ``dE/dr_i`` as an ``(N, 2)`` array."""
    pos = as_configuration(config, params.n_particles)
    grad = params.confinement_strength * pos
    if len(pos) < 2:
        return grad
    i, j, diff, s2 = _pair_geometry(pos)
    _check_contacts(params, i, j, s2)
    w = pair_derivative_over_s(params.potential, s2)
    force = w[:, None] * diff
    np.add.at(grad, i, force)
    np.add.at(grad, j, -force)
    return grad


def pair_separations(config) -> np.ndarray:
    """All ``N(N-1)/2`` separations in lexicographic i<j order."""
    pos = as_configuration(config)
    _, _, _, s2 = _pair_geometry(pos)
    return np.sqrt(s2)


# --- serialization ---------------------------------------------------------

def config_to_list(config) -> list[list[float]]:
    return [[float(x), float(y)] for x, y in as_configuration(config)]


def config_to_json(config) -> str:
    return json.dumps(config_to_list(config))


def config_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    if isinstance(data, dict):
        for key in ("best_config", "config", "positions"):
            if key in data:
                data = data[key]
                break
        else:
            raise DomainError("JSON object has no configuration field")
    return as_configuration(data)


def config_to_csv(config) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y"])
    for x, y in as_configuration(config):
        writer.writerow([repr(float(x)), repr(float(y))])
    return buf.getvalue()


def config_from_csv(text: str) -> np.ndarray:
    reader = csv.reader(io.StringIO(text))
    header = [h.strip() for h in next(reader)]
    if header != ["x", "y"]:
        raise DomainError(f"expected CSV header 'x,y', got {','.join(header)}")
    rows = [[float(a), float(b)] for a, b in (r for r in reader if r)]
    return as_configuration(rows)


def load_configuration(path) -> np.ndarray:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".csv":
        return config_from_csv(text)
    return config_from_json(text)


def save_configuration(config, path) -> None:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        path.write_text(config_to_csv(config))
    else:
        path.write_text(config_to_json(config) + "\n")
