"""Minimum-energy configurations of trapped particles with statistical pair potentials."""

__version__ = "0.1.0"

from .potentials import (  # noqa: E402
    DomainError,
    PairPotentialSpec,
    PotentialKind,
    pair_derivative,
    pair_value,
    thermal_wavelength,
)
from .energy import ModelParams, energy_gradient, total_energy  # noqa: E402
from .analytic import (  # noqa: E402
    REPORTED_PENTAGON_RADIUS,
    TemplateGeometry,
    TemplateKind,
    minimize_template,
    square_solution,
    template_energy,
    triangle_radius,
)
from .structure import (  # noqa: E402
    ReferenceKind,
    ShellStructure,
    classify_shells,
    reference_lookup,
    same_structure,
)
from .anneal import AnnealSchedule, RunRecord, anneal, multi_restart, refine  # noqa: E402
from .quantum import (  # noqa: E402
    OrbitalIndex,
    density_n3,
    level_degeneracy,
    magic_numbers,
    orbital_value,
)
