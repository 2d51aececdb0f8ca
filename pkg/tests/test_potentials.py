import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import constants

from paulicrystal.potentials import (
    DomainError,
    PairPotentialSpec,
    PotentialKind,
    oscillator_length,
    pair_derivative,
    pair_value,
    reduced_temperature,
    thermal_wavelength,
)

from conftest import ALL_SPECS

alphas = st.floats(min_value=0.05, max_value=20.0)


def test_boson_value_at_contact():
    assert pair_value(PairPotentialSpec.boson(1.0), 0.0) == pytest.approx(-math.log(2.0), rel=1e-15)


def test_fermion_diverges_at_contact():
    assert pair_value(PairPotentialSpec.fermion(1.0), 1e-8) > 10


def test_fermion_nearly_zero_at_thermal_wavelength():
    alpha = 1.7
    s = math.sqrt(2 * math.pi / alpha)
    value = pair_value(PairPotentialSpec.fermion(alpha), s)
    assert value == pytest.approx(-alpha * math.log(1 - math.exp(-2 * math.pi)), rel=1e-14)
    assert 0 < value < 2e-3 * alpha


def test_forms_against_direct_evaluation():
    s = np.linspace(0.3, 3.0, 12)
    a = 1.3
    np.testing.assert_allclose(pair_value(PairPotentialSpec.fermion(a), s),
                               -a * np.log(1 - np.exp(-a * s**2)), rtol=1e-10)
    np.testing.assert_allclose(pair_value(PairPotentialSpec.boson(a), s),
                               -a * np.log(1 + np.exp(-a * s**2)), rtol=1e-10)
    np.testing.assert_allclose(pair_value(PairPotentialSpec.coulomb(2.0), s), 2.0 / s, rtol=1e-15)
    assert np.all(pair_value(PairPotentialSpec.none(), s) == 0)


def test_small_argument_accuracy():
    # -ln(1 - e^-x) = -ln(x) + x/2 - x^2/24 + ...
    a, x = 1.0, 1e-9
    s = math.sqrt(x / a)
    expected = -a * (math.log(x) - x / 2 + x * x / 24)
    assert pair_value(PairPotentialSpec.fermion(a), s) == pytest.approx(expected, rel=1e-14)


def test_underflow_guard_returns_zero():
    for spec in (PairPotentialSpec.fermion(1.0), PairPotentialSpec.boson(1.0)):
        assert pair_value(spec, 30.0) == 0.0
        assert pair_derivative(spec, 30.0) == 0.0


@pytest.mark.parametrize("s", [0.0, -1.0, math.nan, math.inf])
def test_fermion_rejects_bad_separation(s):
    with pytest.raises(DomainError, match="fermion"):
        pair_value(PairPotentialSpec.fermion(1.0), s)


def test_coulomb_rejects_contact():
    with pytest.raises(DomainError, match="coulomb"):
        pair_value(PairPotentialSpec.coulomb(), 0.0)


def test_spec_validation():
    with pytest.raises(DomainError):
        PairPotentialSpec.fermion(0.0)
    with pytest.raises(DomainError):
        PairPotentialSpec.coulomb(-1.0)
    PairPotentialSpec(PotentialKind.COULOMB, alpha=-1.0)  # alpha unused here


def test_derivative_examples():
    assert pair_derivative(PairPotentialSpec.none(), 0.7) == 0.0
    assert pair_derivative(PairPotentialSpec.coulomb(1.0), 2.0) == pytest.approx(-0.25, rel=1e-15)
    spec = PairPotentialSpec.fermion(1.0)
    h = 1e-5
    fd = (pair_value(spec, 1 + h) - pair_value(spec, 1 - h)) / (2 * h)
    assert abs(pair_derivative(spec, 1.0) - fd) / abs(fd) < 1e-6


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: f"{s.kind.value}")
def test_derivative_matches_finite_difference(spec):
    h = 1e-5
    for s in np.linspace(0.1, 5.0, 50):
        d = pair_derivative(spec, s)
        fd = (pair_value(spec, s + h) - pair_value(spec, s - h)) / (2 * h)
        assert abs(d - fd) / max(1.0, abs(d)) < 1e-6


@given(alpha=alphas, s1=st.floats(0.01, 8.0), s2=st.floats(0.01, 8.0))
def test_fermion_decreasing_positive(alpha, s1, s2):
    spec = PairPotentialSpec.fermion(alpha)
    lo, hi = sorted((s1, s2))
    v_lo, v_hi = pair_value(spec, lo), pair_value(spec, hi)
    assert v_hi >= 0.0
    assert v_lo >= v_hi
    if alpha * hi * hi < 30:
        assert v_hi > 0
        if hi - lo > 1e-6:
            assert v_lo > v_hi
    assert pair_derivative(spec, hi) <= 0


@given(alpha=alphas, s1=st.floats(0.0, 8.0), s2=st.floats(0.0, 8.0))
def test_boson_increasing_negative(alpha, s1, s2):
    spec = PairPotentialSpec.boson(alpha)
    lo, hi = sorted((s1, s2))
    v_lo, v_hi = pair_value(spec, lo), pair_value(spec, hi)
    assert v_lo <= v_hi <= 0.0
    if alpha * hi * hi < 30 and hi - lo > 1e-6:
        assert v_lo < v_hi < 0
    if hi > 1e-300 and alpha * hi * hi < 30:
        assert pair_derivative(spec, hi) > 0


def test_fermion_tends_to_zero():
    spec = PairPotentialSpec.fermion(0.5)
    values = pair_value(spec, np.array([2.0, 4.0, 8.0, 16.0]))
    assert np.all(np.diff(values) < 0) and values[-1] < 1e-30


@settings(max_examples=30)
@given(alpha=alphas, s=st.floats(0.05, 6.0))
def test_bitwise_deterministic(alpha, s):
    spec = PairPotentialSpec.fermion(alpha)
    assert pair_value(spec, s) == pair_value(PairPotentialSpec.fermion(alpha), s)


def test_json_round_trip():
    spec = PairPotentialSpec.coulomb(2.5)
    data = spec.to_dict()
    assert set(data) == {"kind", "alpha", "coulomb_strength"}
    assert PairPotentialSpec.from_dict(data) == spec


class TestThermalWavelength:
    m = 6.0 * constants.atomic_mass
    T = 1e-7

    def test_temperature_scaling(self):
        assert thermal_wavelength(self.m, self.T) / thermal_wavelength(self.m, 4 * self.T) == pytest.approx(2.0, rel=1e-15)

    def test_mass_scaling(self):
        assert thermal_wavelength(self.m, self.T) / thermal_wavelength(4 * self.m, self.T) == pytest.approx(2.0, rel=1e-15)

    def test_reduced_units_identity(self):
        omega = 2 * math.pi * 1000.0
        lam = thermal_wavelength(self.m, self.T)
        l0 = oscillator_length(self.m, omega)
        alpha = reduced_temperature(self.T, omega)
        assert 2 * math.pi / lam**2 == pytest.approx(alpha / l0**2, rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            thermal_wavelength(0.0, 1.0)
        with pytest.raises(DomainError):
            thermal_wavelength(1.0, -1.0)
