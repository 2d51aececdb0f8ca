import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paulicrystal.analytic import TemplateGeometry, TemplateKind, template
from paulicrystal.structure import (
    REFERENCE_TABLE,
    ReferenceKind,
    ShellStructure,
    alignment_distance,
    classify_shells,
    parse_reference_key,
    reference_lookup,
    same_structure,
)
from paulicrystal.potentials import DomainError


def rings(*shells, phases=None):
    """Stack of concentric regular rings given as (count, radius) pairs."""
    out = []
    for k, (n, r) in enumerate(shells):
        if n == 1 and r == 0:
            out.append([[0.0, 0.0]])
            continue
        ph = 0.0 if phases is None else phases[k]
        t = ph + 2 * np.pi * np.arange(n) / n
        out.append(np.column_stack([r * np.cos(t), r * np.sin(t)]))
    return np.vstack(out)


def rotate(pos, theta):
    c, s = math.cos(theta), math.sin(theta)
    return pos @ np.array([[c, -s], [s, c]]).T


PENTAGON6 = TemplateGeometry(TemplateKind.PENTAGON_PLUS_CENTER6, 1.226).realize()

# parameter-sensitivity fixtures: shell radii as found by relaxed minima
REFERENCE_LAYOUTS = {
    "pentagon+center": (PENTAGON6, (1, 5)),
    "triangle": (TemplateGeometry(TemplateKind.TRIANGLE3, 0.805).realize(), (3,)),
    "n15 two rings": (rings((5, 0.773), (5, 1.729), (5, 1.869), phases=[0, 0.2, 0.8]), (5, 10)),
    "n15 centre": (rings((1, 0), (4, 0.8), (10, 1.8)), (1, 4, 10)),
    "n30 wigner": (rings((5, 0.853), (5, 1.805), (5, 1.945), (10, 2.947), (5, 3.075),
                         phases=[0, 0.1, 0.7, 0.2, 0.4]), (5, 10, 15)),
    "n30 shells": (rings((4, 0.7), (10, 1.55), (16, 2.5)), (4, 10, 16)),
}


def test_pentagon_plus_center():
    s = classify_shells(PENTAGON6)
    assert s.occupancies == (1, 5)
    assert s.shell_radii[0] == 0.0 and s.shell_radii[1] == pytest.approx(1.226)
    assert s.label == "(1,5)"


def test_triangle():
    assert classify_shells(TemplateGeometry(TemplateKind.TRIANGLE3, 0.805).realize()).occupancies == (3,)


@pytest.mark.parametrize("name", REFERENCE_LAYOUTS)
@pytest.mark.parametrize("scale", [0.8, 1.0, 1.2])
def test_thresholds_robust_to_20_percent(name, scale):
    pos, expected = REFERENCE_LAYOUTS[name]
    for kw in ({"gap_factor": 1 + 0.8 * scale}, {"center_threshold": 0.25 * scale},
               {"abs_gap": 0.4 * scale}):
        assert classify_shells(pos, **kw).occupancies == expected


def test_radii_strictly_increasing_and_sum():
    pos, _ = REFERENCE_LAYOUTS["n30 wigner"]
    s = classify_shells(pos)
    assert s.n_particles == 30
    assert all(b > a for a, b in zip(s.shell_radii, s.shell_radii[1:]))


@settings(max_examples=50, deadline=None)
@given(theta=st.floats(-7, 7), seed=st.integers(0, 2**32 - 1), reflect=st.booleans(),
       name=st.sampled_from(sorted(REFERENCE_LAYOUTS)))
def test_classification_invariances(theta, seed, reflect, name):
    pos, expected = REFERENCE_LAYOUTS[name]
    moved = rotate(pos, theta)[np.random.default_rng(seed).permutation(len(pos))]
    if reflect:
        moved = moved * [1, -1]
    assert classify_shells(moved).occupancies == expected


def test_same_structure_rotation():
    pos, _ = REFERENCE_LAYOUTS["n15 two rings"]
    assert same_structure(pos, rotate(pos, math.radians(77)), tol=1e-8)


def test_same_structure_reflection_and_permutation(rng):
    pos = rings((1, 0), (4, 0.9), (7, 1.9), phases=[0, 0.3, 0.05])
    other = (rotate(pos, 1.1) * [1, -1])[rng.permutation(len(pos))]
    assert same_structure(pos, other, tol=1e-8)
    assert alignment_distance(pos, other) < 1e-10


def test_chiral_pair_needs_reflection():
    pos = rings((3, 1.0), (3, 2.0), phases=[0.0, 0.4])
    mirror = pos * [1, -1]
    assert same_structure(pos, mirror, tol=1e-8)


def test_pentagon_vs_hexagon():
    hexagon = TemplateGeometry(TemplateKind.RING_PLUS_CENTER, 1.3, n_ring=6).realize()
    assert not same_structure(PENTAGON6, hexagon, tol=1.0)


def test_distorted_differs():
    other = PENTAGON6.copy()
    other[2] *= 1.01
    assert same_structure(PENTAGON6, other, tol=0.02)
    assert not same_structure(PENTAGON6, other, tol=1e-3)


def test_equivalence_relation():
    a = rings((1, 0), (5, 1.2), (9, 2.2), phases=[0, 0.1, 0.2])
    b = rotate(a, 0.9)[::-1]
    c = rotate(b * [1, -1], -2.0)
    assert same_structure(a, a, 0.0 + 1e-12)
    assert same_structure(a, b, 1e-8) and same_structure(b, a, 1e-8)
    assert same_structure(b, c, 1e-8) and same_structure(a, c, 1e-8)


def test_same_structure_size_mismatch():
    with pytest.raises(DomainError):
        same_structure(PENTAGON6, PENTAGON6[:5])


def test_reference_table():
    assert reference_lookup(15, ReferenceKind.PAULI_CRYSTAL_REPORTED).occupancies == (1, 5, 9)
    assert reference_lookup(30, "wigner").occupancies == (5, 10, 15)
    assert reference_lookup(15, "wigner").occupancies == (5, 10)
    six = reference_lookup(6, "pauli")
    assert six.occupancies == (1, 5) and six.shell_radii[-1] == 1.265
    assert reference_lookup(7, "pauli") is None
    assert len(REFERENCE_TABLE) == 4
    with pytest.raises(TypeError):
        REFERENCE_TABLE[(7, ReferenceKind.WIGNER_CLASSICAL)] = ShellStructure((7,))


def test_reference_keys():
    assert parse_reference_key("wigner:30") == (30, ReferenceKind.WIGNER_CLASSICAL)
    with pytest.raises(DomainError):
        parse_reference_key("nonsense")


def test_shell_structure_json():
    s = ShellStructure((1, 4, 10), (0.0, 0.8, 1.8))
    assert ShellStructure.from_dict(s.to_dict()) == s
    assert s.to_dict() == {"occupancies": [1, 4, 10], "shell_radii": [0.0, 0.8, 1.8]}
