"""Grating modes, atomic transitions and the period-averaged optical potential.

Everything is SI with an explicit hbar. Energies are joules; ``.depth_ev`` and
the dimensionless pulse area ``w = V0 * tau / hbar`` are presentation helpers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import units as u
from .constants import C_LIGHT, E_CHARGE, EPS0, EV, HBAR, M_ELECTRON


class DomainError(ValueError):
    """Input outside an operation's domain (wrong kind, zero detuning, ...)."""


class Shape(enum.Enum):
    COS_SQ = "cos2"
    SIN_SQ = "sin2"


class Kind(enum.Enum):
    DIPOLE = "dipole"
    QUADRUPOLE = "quadrupole"


_SHAPE_FOR_KIND = {Kind.DIPOLE: Shape.COS_SQ, Kind.QUADRUPOLE: Shape.SIN_SQ}


@dataclass(frozen=True)
class GratingMode:
    """One standing-wave mode.

    A dipole-resonant mode has a cos^2 potential, a quadrupole-resonant one
    the sin^2 profile of the field gradient. Use :meth:`with_shape` to break
    that pairing deliberately.
    """

    wave_vector: float  # k_L, rad/m
    depth: float  # V0, J
    kind: Kind = Kind.DIPOLE
    shape: Shape | None = None
    _override: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.wave_vector > 0 and math.isfinite(self.wave_vector)):
            raise DomainError(f"wave vector must be positive, got {self.wave_vector}")
        if not (self.depth >= 0 and math.isfinite(self.depth)):
            raise DomainError(f"depth must be finite and >= 0, got {self.depth}")
        expected = _SHAPE_FOR_KIND[self.kind]
        if self.shape is None:
            object.__setattr__(self, "shape", expected)
        elif self.shape is not expected and not self._override:
            raise DomainError(
                f"{self.kind.value} mode requires {expected.value} shape; "
                "use GratingMode.with_shape to override"
            )

    @classmethod
    def with_shape(cls, wave_vector: float, depth: float, kind: Kind, shape: Shape) -> GratingMode:
        return cls(wave_vector, depth, kind, shape, _override=True)

    @classmethod
    def dipole(cls, wave_vector: float, depth: float) -> GratingMode:
        return cls(wave_vector, depth, Kind.DIPOLE)

    @classmethod
    def quadrupole(cls, wave_vector: float, depth: float) -> GratingMode:
        return cls(wave_vector, depth, Kind.QUADRUPOLE)

    @property
    def depth_ev(self) -> float:
        return self.depth / EV

    @property
    def period(self) -> float:
        """Spatial period of the potential, pi / k_L."""
        return math.pi / self.wave_vector

    def profile(self, x):
        arg = self.wave_vector * np.asarray(x, dtype=float)
        trig = np.cos(arg) if self.shape is Shape.COS_SQ else np.sin(arg)
        return trig * trig

    def phase(self, tau: float) -> float:
        return pulse_area(self.depth, tau)


@dataclass(frozen=True)
class TransitionSpec:
    """Atomic transition driven by the grating.

    ``matrix_element`` is |<e|p_z|g>| (kg m/s) for a dipole transition and
    |<e|x p_z|g>| (kg m^2/s) for a quadrupole one. ``detuning`` and ``gamma``
    are angular rates in s^-1. ``field_amplitude`` is the vector-potential
    amplitude A0 in T m.
    """

    kind: Kind
    gamma: float
    detuning: float
    matrix_element: float = 0.0
    field_amplitude: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise DomainError(f"gamma must be > 0, got {self.gamma}")
        if self.detuning == 0 or not math.isfinite(self.detuning):
            raise DomainError("detuning must be finite and nonzero")
        if not self.matrix_element >= 0:
            raise DomainError(f"matrix element must be >= 0, got {self.matrix_element}")


@dataclass(frozen=True)
class PulseParams:
    tau: float  # interaction time, s
    k0: float = 0.0  # initial atomic wave vector along the grating, rad/m

    def __post_init__(self):
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise DomainError(f"tau must be positive, got {self.tau}")


@dataclass(frozen=True)
class PotentialField:
    """Sum of one or two grating modes, V(X) = sum_i V0_i * shape_i(k_i X)."""

    modes: tuple[GratingMode, ...]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        total = np.zeros_like(x)
        for mode in self.modes:
            total = total + mode.depth * mode.profile(x)
        return total

    @property
    def max_depth(self) -> float:
        return sum(mode.depth for mode in self.modes)


# Formula bodies are shared between numeric evaluation and the unit audit.


def _rabi_expr(e, a0, element, hbar, m_e):
    return e * a0 * element / (hbar * m_e)


def _depth_expr(hbar, omega, detuning):
    return hbar * omega**2 / (4 * detuning)


def _intensity_expr(eps0, c, omega_l, a0):
    return eps0 * c * omega_l**2 * a0**2 / 2


def _pulse_area_expr(depth, tau, hbar):
    return depth * tau / hbar


def rabi_dipole(spec: TransitionSpec) -> float:
    """Dipole Rabi frequency e*A0*|<e|p_z|g>| / (hbar*m_e), in s^-1."""
    if spec.kind is not Kind.DIPOLE:
        raise DomainError("rabi_dipole needs a dipole transition")
    return _rabi_expr(E_CHARGE, spec.field_amplitude, spec.matrix_element, HBAR, M_ELECTRON)


def rabi_quadrupole(spec: TransitionSpec, wave_vector: float) -> float:
    """Quadrupole Rabi frequency; carries the extra factor of k_L."""
    if spec.kind is not Kind.QUADRUPOLE:
        raise DomainError("rabi_quadrupole needs a quadrupole transition")
    if not wave_vector > 0:
        raise DomainError("wave vector must be positive")
    return _rabi_expr(
        E_CHARGE, spec.field_amplitude, wave_vector * spec.matrix_element, HBAR, M_ELECTRON
    )


def depth_from_rabi(omega: float, detuning: float) -> float:
    """Optical potential depth hbar*Omega^2/(4*Delta) in J.

    The sign follows the detuning. Pattern code uses the magnitude.
    """
    if detuning == 0:
        raise DomainError("zero detuning")
    return _depth_expr(HBAR, omega, detuning)


def rabi_from_depth(depth: float, detuning: float) -> float:
    if detuning == 0:
        raise DomainError("zero detuning")
    ratio = 4 * detuning * depth / HBAR
    if ratio < 0:
        raise DomainError("depth and detuning must have the same sign")
    return math.sqrt(ratio)


def intensity_from_field(field_amplitude: float, omega_laser: float) -> float:
    """Intensity of one travelling-wave component, eps0*c*omega^2*A0^2/2."""
    return _intensity_expr(EPS0, C_LIGHT, omega_laser, field_amplitude)


def field_from_intensity(intensity: float, omega_laser: float) -> float:
    if intensity < 0 or omega_laser <= 0:
        raise DomainError("need intensity >= 0 and omega_laser > 0")
    return math.sqrt(2 * intensity / (EPS0 * C_LIGHT)) / omega_laser


def pulse_area(depth: float, tau: float) -> float:
    """Dimensionless w = |V0| tau / hbar."""
    return abs(_pulse_area_expr(depth, tau, HBAR))


def depth_from_pulse_area(w: float, tau: float) -> float:
    return w * HBAR / tau


def build_potential(modes: Sequence[GratingMode]) -> PotentialField:
    modes = tuple(modes)
    if not 1 <= len(modes) <= 2:
        raise DomainError(f"need one or two grating modes, got {len(modes)}")
    return PotentialField(modes)


def unit_audit() -> dict[str, tuple[u.Dim, u.Dim]]:
    """Evaluate each formula on dimensions: name -> (computed, declared)."""
    d = u.CONSTANT_DIMS
    omega_d = _rabi_expr(d["e"], u.VECTOR_POTENTIAL, u.MOMENTUM, d["hbar"], d["m_e"])
    omega_q = _rabi_expr(
        d["e"], u.VECTOR_POTENTIAL, u.WAVENUMBER * (u.MOMENTUM * u.METRE), d["hbar"], d["m_e"]
    )
    depth = _depth_expr(d["hbar"], omega_d, u.RATE)
    return {
        "rabi_dipole": (omega_d, u.RATE),
        "rabi_quadrupole": (omega_q, u.RATE),
        "depth_from_rabi": (depth, u.ENERGY),
        "intensity_from_field": (
            _intensity_expr(d["eps0"], d["c"], u.RATE, u.VECTOR_POTENTIAL),
            u.INTENSITY,
        ),
        "pulse_area": (_pulse_area_expr(depth, u.SECOND, d["hbar"]), u.DIMENSIONLESS),
    }

