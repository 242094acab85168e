"""Thick-grating (first-order Bragg) scattering.

At the Bragg condition k0 = k_L the plane waves k_L and -k_L have equal kinetic
energy and are coupled by the grating, so population swings between them:
P_transmit = cos^2(V0 tau / 4 hbar), P_scatter = sin^2(V0 tau / 4 hbar).
cos^2 and sin^2 gratings differ only by a translation, which leaves these
probabilities unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import HBAR
from .core import DomainError, GratingMode, Kind, PulseParams

BRAGG_TOLERANCE = 1e-3


@dataclass(frozen=True)
class BraggResult:
    p_transmit: float
    p_scatter: float
    resonant_mode: int | None = None
    detuned: bool = False


def is_bragg_resonant(mode: GratingMode, k0: float, tolerance: float = BRAGG_TOLERANCE) -> bool:
    return abs(abs(k0) - mode.wave_vector) < tolerance * mode.wave_vector


def pendellosung_angle(depth: float, tau: float) -> float:
    return abs(depth) * tau / (4 * HBAR)


def bragg_probabilities(
    mode: GratingMode, pulse: PulseParams, tolerance: float = BRAGG_TOLERANCE
) -> BraggResult:
    if not is_bragg_resonant(mode, pulse.k0, tolerance):
        mismatch = abs(abs(pulse.k0) - mode.wave_vector) / mode.wave_vector
        raise DomainError(
            f"Bragg condition violated: |k0|/k_L - 1 = {mismatch:.3g} exceeds {tolerance:g}; "
            "use the Raman-Nath pattern or the propagator instead"
        )
    theta = pendellosung_angle(mode.depth, pulse.tau)
    p_scatter = math.sin(theta) ** 2
    return BraggResult(1.0 - p_scatter, p_scatter)


def two_mode_bragg(
    dipole: GratingMode,
    quad: GratingMode,
    pulse: PulseParams,
    tolerance: float = BRAGG_TOLERANCE,
) -> BraggResult:
    """Bragg scattering with a dipole and a quadrupole mode present.

    Only the mode whose wave vector matches |k0| scatters; the other is inert.
    If neither matches, the atom is transmitted unchanged.
    """
    if dipole.kind is not Kind.DIPOLE or quad.kind is not Kind.QUADRUPOLE:
        raise DomainError("two_mode_bragg needs (dipole, quadrupole) modes in that order")
    hits = [
        index
        for index, mode in enumerate((dipole, quad))
        if is_bragg_resonant(mode, pulse.k0, tolerance)
    ]
    if len(hits) == 2:
        raise DomainError("both modes satisfy the Bragg condition; k_D and k_Q must differ")
    if not hits:
        return BraggResult(1.0, 0.0, None, True)
    index = hits[0]
    result = bragg_probabilities((dipole, quad)[index], pulse, tolerance)
    return BraggResult(result.p_transmit, result.p_scatter, index, False)
