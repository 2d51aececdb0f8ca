import math

import numpy as np
import pytest

from paulicrystal.potentials import PairPotentialSpec

ALL_SPECS = [
    PairPotentialSpec.fermion(1.0),
    PairPotentialSpec.fermion(2.5),
    PairPotentialSpec.boson(1.0),
    PairPotentialSpec.boson(0.4),
    PairPotentialSpec.coulomb(1.0),
    PairPotentialSpec.coulomb(3.0),
    PairPotentialSpec.none(),
]

_ACCEPTANCE_LINES = []


def spread_configuration(rng, n, radius=None, min_sep=0.25):
    """Random points in a disk with a minimum pairwise separation."""
    radius = math.sqrt(n) if radius is None else radius
    pts = []
    while len(pts) < n:
        r = radius * math.sqrt(rng.random())
        t = 2 * math.pi * rng.random()
        p = np.array([r * math.cos(t), r * math.sin(t)])
        if all(np.hypot(*(p - q)) >= min_sep for q in pts):
            pts.append(p)
    return np.array(pts)


def central_difference_gradient(f, pos, h=1e-5):
    grad = np.zeros_like(pos)
    for idx in np.ndindex(pos.shape):
        up, dn = pos.copy(), pos.copy()
        up[idx] += h
        dn[idx] -= h
        grad[idx] = (f(up) - f(dn)) / (2 * h)
    return grad


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
