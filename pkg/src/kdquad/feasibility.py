"""Experimental-regime checks for a Kapitza-Dirac run.

Three gates: adiabatic following (|Delta| tau > 1), negligible spontaneous
emission (|Delta| / Gamma above a threshold) and a pulse area w = V0 tau / hbar
of order unity. Laser-intensity estimates scale species anchor points with the
perturbative law V ~ I / Delta; they are order-of-magnitude numbers only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .constants import EV
from .core import DomainError, Kind, PulseParams, TransitionSpec, pulse_area

EMISSION_RATIO_THRESHOLD = 100.0
DEPTH_BAND = (0.1, 10.0)
# Above this the standing wave needs short counter-propagating pulses.
PULSED_INTENSITY = 1e10
PRESET_SCHEMA_VERSION = 1


class PresetError(DomainError):
    pass


@dataclass(frozen=True)
class Anchor:
    depth: float  # J
    intensity: float  # W/m^2
    detuning: float  # s^-1


@dataclass(frozen=True)
class SpeciesPreset:
    name: str
    gamma: float
    default_detuning: float
    anchors: tuple[Anchor, ...]
    kind: Kind = Kind.QUADRUPOLE

    def transition(self, detuning: float | None = None) -> TransitionSpec:
        return TransitionSpec(
            self.kind, self.gamma, self.default_detuning if detuning is None else detuning
        )


@dataclass(frozen=True)
class RegimeReport:
    adiabatic: bool
    adiabatic_margin: float  # |Delta| tau
    low_emission: bool
    emission_ratio: float  # |Delta| / Gamma
    depth_ok: bool
    w: float
    intensity_estimate: float | None = None  # W/m^2
    notes: tuple[str, ...] = ()

    @property
    def all_pass(self) -> bool:
        return self.adiabatic and self.low_emission and self.depth_ok


def _parse_species(entry: dict) -> SpeciesPreset:
    try:
        anchors = tuple(
            Anchor(
                float(a["depth_eV"]) * EV,
                float(a["intensity_W_m2"]),
                float(a["detuning_s^-1"]),
            )
            for a in entry["anchors"]
        )
        preset = SpeciesPreset(
            str(entry["name"]).lower(),
            float(entry["gamma_s^-1"]),
            float(entry["default_detuning_s^-1"]),
            anchors,
            Kind(entry.get("transition", "quadrupole")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise PresetError(f"malformed species entry {entry!r}: {exc}") from exc
    if preset.gamma <= 0:
        raise PresetError(f"{preset.name}: gamma must be positive")
    for anchor in anchors:
        if anchor.depth <= 0 or anchor.intensity <= 0 or anchor.detuning == 0:
            raise PresetError(f"{preset.name}: anchor values must be positive")
    return preset


def parse_presets(document: dict) -> dict[str, SpeciesPreset]:
    if document.get("version") != PRESET_SCHEMA_VERSION:
        raise PresetError(f"unsupported preset file version {document.get('version')!r}")
    presets = {}
    for entry in document.get("species", []):
        preset = _parse_species(entry)
        presets[preset.name] = preset
    return presets


@lru_cache(maxsize=None)
def _builtin_presets() -> dict[str, SpeciesPreset]:
    text = resources.files("kdquad").joinpath("data/presets.json").read_text()
    return parse_presets(json.loads(text))


def load_presets(path: str | Path | None = None) -> dict[str, SpeciesPreset]:
    if path is None:
        return dict(_builtin_presets())
    with open(path) as fh:
        return parse_presets(json.load(fh))


def get_preset(name: str, path: str | Path | None = None) -> SpeciesPreset:
    presets = load_presets(path)
    try:
        return presets[name.lower()]
    except KeyError:
        raise PresetError(f"unknown species {name!r}; known: {sorted(presets)}") from None


def _scaled(anchor: Anchor, target_depth: float, detuning: float) -> float:
    return anchor.intensity * (abs(target_depth) / anchor.depth) * (abs(detuning) / abs(anchor.detuning))


def required_intensity_range(
    preset: SpeciesPreset, target_depth: float, detuning: float
) -> tuple[float, float]:
    if not preset.anchors:
        raise PresetError(f"{preset.name}: no intensity anchors")
    values = [_scaled(a, target_depth, detuning) for a in preset.anchors]
    return min(values), max(values)


def required_intensity(preset: SpeciesPreset, target_depth: float, detuning: float) -> float:
    """Intensity for ``target_depth`` (J) at ``detuning`` via V ~ I / Delta.

    With several anchors the geometric mean of their extrapolations is
    returned.
    """
    if not preset.anchors:
        raise PresetError(f"{preset.name}: no intensity anchors")
    logs = [math.log(_scaled(a, target_depth, detuning)) for a in preset.anchors]
    return math.exp(math.fsum(logs) / len(logs))


def check_regime(
    spec: TransitionSpec,
    pulse: PulseParams,
    depth: float,
    preset: SpeciesPreset | None = None,
    emission_threshold: float = EMISSION_RATIO_THRESHOLD,
    depth_band: tuple[float, float] = DEPTH_BAND,
) -> RegimeReport:
    margin = abs(spec.detuning) * pulse.tau
    ratio = abs(spec.detuning) / spec.gamma
    w = pulse_area(depth, pulse.tau)
    notes = []
    if spec.detuning < 0:
        notes.append("red detuning: potential depth is negative; patterns use |V0|")
    if not margin > 1:
        notes.append(f"non-adiabatic: |Delta| tau = {margin:.3g} <= 1")
    if not ratio > emission_threshold:
        notes.append(f"spontaneous emission not negligible: |Delta|/Gamma = {ratio:.3g}")
    if not depth_band[0] <= w <= depth_band[1]:
        notes.append(f"pulse area w = {w:.3g} outside [{depth_band[0]:g}, {depth_band[1]:g}]")
    intensity = None
    if preset is not None and preset.anchors and depth != 0:
        intensity = required_intensity(preset, depth, spec.detuning)
        if intensity > PULSED_INTENSITY:
            notes.append(
                f"intensity {intensity:.2g} W/m^2 needs pulsed counter-propagating beams "
                "(~10 ns), shorter than the interaction time"
            )
    return RegimeReport(
        margin > 1,
        margin,
        ratio > emission_threshold,
        ratio,
        depth_band[0] <= w <= depth_band[1],
        w,
        intensity,
        tuple(notes),
    )
