"""Kapitza-Dirac diffraction of atoms by dipole and quadrupole standing waves."""

from .bragg import BraggResult, bragg_probabilities, two_mode_bragg
from .core import (
    DomainError,
    GratingMode,
    Kind,
    PotentialField,
    PulseParams,
    Shape,
    TransitionSpec,
    build_potential,
    depth_from_pulse_area,
    pulse_area,
)
from .feasibility import RegimeReport, check_regime, get_preset
from .raman_nath import DiffractionPattern, SweepConfig, pattern_sweep, single_mode_pattern, two_mode_pattern

__version__ = "0.1.0"
