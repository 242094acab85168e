import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kdquad import units as u
from kdquad.constants import CONSTANTS, EV, HBAR
from kdquad.core import (
    DomainError,
    GratingMode,
    Kind,
    PulseParams,
    Shape,
    TransitionSpec,
    build_potential,
    depth_from_rabi,
    field_from_intensity,
    intensity_from_field,
    pulse_area,
    rabi_dipole,
    rabi_from_depth,
    rabi_quadrupole,
    unit_audit,
)


def dipole_spec(a0=1e-8, element=1e-24, detuning=1e9):
    return TransitionSpec(Kind.DIPOLE, 1e7, detuning, element, a0)


def quad_spec(a0=1e-8, element=1e-33, detuning=1e9):
    return TransitionSpec(Kind.QUADRUPOLE, 1e3, detuning, element, a0)


def test_constants_read_only():
    with pytest.raises(TypeError):
        CONSTANTS["hbar"] = 1.0
    assert CONSTANTS["hbar"] == HBAR


@pytest.mark.parametrize("name", sorted(unit_audit()))
def test_unit_audit(name):
    computed, declared = unit_audit()[name]
    assert computed == declared, f"{name}: {computed} != {declared}"


def test_gaussian_rabi_form_would_fail_audit():
    d = u.CONSTANT_DIMS
    gaussian = d["e"] * u.VECTOR_POTENTIAL * u.MOMENTUM / (d["hbar"] * d["c"] * d["m_e"])
    assert gaussian != u.RATE


def test_dim_addition_checks():
    with pytest.raises(TypeError):
        u.ENERGY + u.RATE
    assert u.ENERGY + u.ENERGY == u.ENERGY


def test_mode_kind_shape_pairing():
    assert GratingMode.dipole(1.0, 1.0).shape is Shape.COS_SQ
    assert GratingMode.quadrupole(1.0, 1.0).shape is Shape.SIN_SQ
    with pytest.raises(DomainError):
        GratingMode(1.0, 1.0, Kind.DIPOLE, Shape.SIN_SQ)
    odd = GratingMode.with_shape(1.0, 1.0, Kind.DIPOLE, Shape.SIN_SQ)
    assert odd.shape is Shape.SIN_SQ


@pytest.mark.parametrize("k, depth", [(0.0, 1.0), (-1.0, 1.0), (1.0, -1e-30), (1.0, math.nan)])
def test_mode_invariants(k, depth):
    with pytest.raises(DomainError):
        GratingMode.dipole(k, depth)


def test_transition_and_pulse_invariants():
    with pytest.raises(DomainError):
        TransitionSpec(Kind.DIPOLE, 0.0, 1e9)
    with pytest.raises(DomainError):
        TransitionSpec(Kind.DIPOLE, 1.0, 0.0)
    with pytest.raises(DomainError):
        TransitionSpec(Kind.DIPOLE, 1.0, 1e9, -1.0)
    with pytest.raises(DomainError):
        PulseParams(0.0)


def test_depth_ev_accessor():
    assert GratingMode.dipole(1.0, 2 * EV).depth_ev == pytest.approx(2.0)


def test_rabi_zero_inputs():
    assert rabi_dipole(dipole_spec(element=0.0)) == 0.0
    assert rabi_dipole(dipole_spec(a0=0.0)) == 0.0
    assert rabi_quadrupole(quad_spec(element=0.0), 1e7) == 0.0


def test_rabi_kind_mismatch():
    with pytest.raises(DomainError):
        rabi_dipole(quad_spec())
    with pytest.raises(DomainError):
        rabi_quadrupole(dipole_spec(), 1e7)
    with pytest.raises(DomainError):
        rabi_quadrupole(quad_spec(), 0.0)


def test_rabi_quadrupole_linear_in_k():
    spec = quad_spec()
    assert rabi_quadrupole(spec, 2e7) == pytest.approx(2 * rabi_quadrupole(spec, 1e7), rel=1e-15)


def test_rabi_quadrupole_identity_with_scaled_dipole():
    spec, k = quad_spec(), 1.3e7
    synthetic = dipole_spec(a0=spec.field_amplitude, element=spec.matrix_element * k)
    assert rabi_quadrupole(spec, k) == pytest.approx(rabi_dipole(synthetic), rel=1e-15)


def test_rabi_ratio_shared_field():
    d, q, k = dipole_spec(), quad_spec(), 1.07e7
    ratio = rabi_quadrupole(q, k) / rabi_dipole(d)
    assert ratio == pytest.approx(k * q.matrix_element / d.matrix_element, rel=1e-14)


def test_depth_from_rabi_values():
    assert depth_from_rabi(0.0, 1e9) == 0.0
    depth = depth_from_rabi(2e8, 1e9)
    assert depth == pytest.approx(HBAR * 1e7, rel=1e-15)
    assert depth / EV == pytest.approx(6.58211956547607e-9, rel=1e-12)
    assert depth_from_rabi(2e8, 2e9) == pytest.approx(depth / 2, rel=1e-15)
    assert depth_from_rabi(2e8, -1e9) == -depth
    with pytest.raises(DomainError):
        depth_from_rabi(1.0, 0.0)


def test_sodium_rabi_round_trip():
    # V/hbar = 18e6 s^-1 at Delta = 1e9 s^-1
    omega = rabi_from_depth(HBAR * 18e6, 1e9)
    assert omega == pytest.approx(2.68328157299975e8, rel=1e-12)
    # choose A0 so that a unit-ish matrix element produces omega
    element = 1e-24
    a0 = omega / rabi_dipole(dipole_spec(a0=1.0, element=element))
    spec = dipole_spec(a0=a0, element=element)
    assert depth_from_rabi(rabi_dipole(spec), 1e9) / HBAR == pytest.approx(18e6, rel=1e-12)


def test_intensity_field_round_trip():
    omega_l = 3.2e15
    a0 = field_from_intensity(1e8, omega_l)
    assert intensity_from_field(a0, omega_l) == pytest.approx(1e8, rel=1e-14)


def test_pulse_area_sodium():
    assert pulse_area(HBAR * 18e6, 1e-6 / 14) == pytest.approx(1.2857142857142858, rel=1e-14)


def test_build_potential_endpoints():
    cos_field = build_potential([GratingMode.dipole(1.0, 1.0)])
    sin_field = build_potential([GratingMode.quadrupole(1.0, 1.0)])
    assert cos_field(0.0) == 1.0 and sin_field(0.0) == 0.0
    assert cos_field(math.pi / 2) == pytest.approx(0.0, abs=1e-16)
    assert sin_field(math.pi / 2) == pytest.approx(1.0, abs=1e-16)


def test_build_potential_two_mode_value():
    field = build_potential([GratingMode.dipole(1.0, 1.0), GratingMode.quadrupole(1.0, 0.8)])
    assert field(math.pi / 4) == pytest.approx(0.9, abs=1e-15)


def test_build_potential_mode_count():
    with pytest.raises(DomainError):
        build_potential([])
    m = GratingMode.dipole(1.0, 1.0)
    with pytest.raises(DomainError):
        build_potential([m, m, m])


@given(
    k=st.floats(0.1, 10.0),
    depth=st.floats(0.0, 5.0),
    x=st.floats(-100.0, 100.0),
    kind=st.sampled_from([Kind.DIPOLE, Kind.QUADRUPOLE]),
)
def test_single_mode_bounds_and_period(k, depth, x, kind):
    field = build_potential([GratingMode(k, depth, kind)])
    v = float(field(x))
    assert -1e-15 <= v <= depth * (1 + 1e-15) + 1e-300
    assert float(field(x + math.pi / k)) == pytest.approx(v, abs=1e-9 * max(depth, 1e-300) + 1e-12)


@given(
    kd=st.floats(0.1, 10.0),
    kq=st.floats(0.1, 10.0),
    vd=st.floats(0.0, 5.0),
    vq=st.floats(0.0, 5.0),
    x=st.floats(-100.0, 100.0),
)
def test_two_mode_bounds(kd, kq, vd, vq, x):
    field = build_potential([GratingMode.dipole(kd, vd), GratingMode.quadrupole(kq, vq)])
    v = float(field(x))
    assert -1e-15 <= v <= (vd + vq) * (1 + 1e-15) + 1e-300


@pytest.mark.parametrize("k", [0.7, 1.0, 3.3])
def test_sin_field_is_translated_cos_field(k):
    x = np.linspace(-20, 20, 2001)
    sin_field = build_potential([GratingMode.quadrupole(k, 1.0)])
    cos_field = build_potential([GratingMode.dipole(k, 1.0)])
    shifted = cos_field(x - math.pi / (2 * k))
    # relative on the field scale (V0 = 1)
    assert np.max(np.abs(sin_field(x) - shifted)) < 1e-12
