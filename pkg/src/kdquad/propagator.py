"""Split-operator integration of the 1-D Schroedinger equation in a grating.

The box is periodic and holds an integer number of potential periods, so every
ladder momentum k0 + 2n k_D + 2m k_Q falls exactly on the FFT lattice and the
momentum populations can be read off without leakage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import HBAR
from .core import DomainError, GratingMode, PotentialField, PulseParams, build_potential
from .raman_nath import _order_probabilities, default_truncation

LATTICE_TOLERANCE = 1e-9
MAX_DENOMINATOR = 16


@dataclass(frozen=True)
class WavefunctionGrid:
    amplitudes: np.ndarray
    box_length: float
    mass: float  # kg; math.inf switches the kinetic term off

    def __post_init__(self):
        points = len(self.amplitudes)
        if points < 2 or points & (points - 1):
            raise DomainError(f"grid size must be a power of two, got {points}")
        if not self.box_length > 0:
            raise DomainError("box length must be positive")
        if not self.mass > 0:
            raise DomainError("mass must be positive")

    @property
    def points(self) -> int:
        return len(self.amplitudes)

    @property
    def dx(self) -> float:
        return self.box_length / self.points

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.points) * self.dx

    @property
    def k(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.points, d=self.dx)

    @property
    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real * self.dx)

    def replace(self, amplitudes: np.ndarray) -> WavefunctionGrid:
        return WavefunctionGrid(amplitudes, self.box_length, self.mass)


@dataclass(frozen=True)
class MomentumSpectrum:
    entries: tuple[tuple[float, float], ...]  # (k, population) at the requested ladder
    off_ladder: float  # population on every other lattice momentum

    @property
    def total(self) -> float:
        return math.fsum(p for _, p in self.entries) + self.off_ladder

    def population(self, k: float) -> float:
        for kk, p in self.entries:
            if abs(kk - k) <= LATTICE_TOLERANCE * max(abs(k), abs(kk), 1e-300):
                return p
        raise KeyError(k)

    def populations(self) -> np.ndarray:
        return np.array([p for _, p in self.entries])


def _rational_ratio(value: float, max_denominator: int = MAX_DENOMINATOR) -> Fraction:
    frac = Fraction(value).limit_denominator(max_denominator)
    if abs(float(frac) - value) > LATTICE_TOLERANCE * abs(value):
        raise DomainError(
            f"wave-vector ratio {value!r} is not a rational with denominator <= {max_denominator}; "
            "use the analytic pattern instead"
        )
    return frac


def common_period(potential: PotentialField) -> float:
    """Smallest length holding a whole number of periods of every mode."""
    base = potential.modes[0]
    if len(potential.modes) == 1:
        return base.period
    ratio = _rational_ratio(potential.modes[1].wave_vector / base.wave_vector)
    # periods are p*u and q*u with u = pi / (p * k_base)
    unit = math.pi / (ratio.numerator * base.wave_vector)
    return math.lcm(ratio.numerator, ratio.denominator) * unit


def _lattice_index(k: float, box_length: float) -> int:
    j = k * box_length / (2 * np.pi)
    index = round(j)
    if abs(j - index) > LATTICE_TOLERANCE * max(1.0, abs(j)):
        raise DomainError(f"momentum {k!r} is not on the reciprocal lattice of the box")
    return index


def check_commensurate(grid: WavefunctionGrid, potential: PotentialField) -> None:
    for mode in potential.modes:
        cells = grid.box_length / mode.period
        if abs(cells - round(cells)) > LATTICE_TOLERANCE * max(1.0, cells):
            raise DomainError(
                f"box length {grid.box_length!r} is not a whole number of potential periods "
                f"({cells:.6g} periods of the k={mode.wave_vector:.6g} mode)"
            )


def plane_wave(
    potential: PotentialField,
    k0: float = 0.0,
    points: int = 4096,
    periods: int = 32,
    mass: float = math.inf,
) -> WavefunctionGrid:
    """Normalised plane wave exp(i k0 X) on a box of ``periods`` common periods."""
    box = periods * common_period(potential)
    _lattice_index(k0, box)
    x = np.arange(points) * (box / points)
    psi = np.exp(1j * k0 * x) / math.sqrt(box)
    return WavefunctionGrid(psi, box, mass)


def evolve(
    grid: WavefunctionGrid,
    potential: PotentialField,
    pulse: PulseParams,
    steps: int,
    include_kinetic: bool = True,
) -> WavefunctionGrid:
    """Propagate for ``pulse.tau``.

    Without the kinetic term the result is exactly exp(-i V tau / hbar) psi,
    applied in one multiplication so it does not depend on ``steps``. With it,
    Strang splitting half-K, V, half-K is used, adjacent half steps fused.
    """
    if steps < 1:
        raise DomainError("steps must be >= 1")
    check_commensurate(grid, potential)
    v = potential(grid.x)
    psi = grid.amplitudes.astype(complex, copy=True)
    if not include_kinetic:
        return grid.replace(psi * np.exp(-1j * v * pulse.tau / HBAR))
    dt = pulse.tau / steps
    kinetic = HBAR * grid.k**2 / (2 * grid.mass)
    half_k = np.exp(-0.5j * kinetic * dt)
    full_k = half_k * half_k
    phase_v = np.exp(-1j * v * dt / HBAR)

    psi = np.fft.ifft(half_k * np.fft.fft(psi))
    for _ in range(steps - 1):
        psi *= phase_v
        psi = np.fft.ifft(full_k * np.fft.fft(psi))
    psi *= phase_v
    psi = np.fft.ifft(half_k * np.fft.fft(psi))
    return grid.replace(psi)


def momentum_amplitudes(grid: WavefunctionGrid) -> np.ndarray:
    """Plane-wave coefficients c_j with sum |c_j|^2 = norm (unitary scaling)."""
    return np.fft.fft(grid.amplitudes) * math.sqrt(grid.dx / grid.points)


def momentum_spectrum(grid: WavefunctionGrid, ladder) -> MomentumSpectrum:
    coeffs = momentum_amplitudes(grid)
    weights = (coeffs * coeffs.conj()).real
    half = grid.points // 2
    seen: dict[int, float] = {}
    entries = []
    for k in ladder:
        index = _lattice_index(k, grid.box_length)
        if not -half <= index < half:
            raise DomainError(f"momentum {k!r} lies beyond the grid's Nyquist limit")
        slot = index % grid.points
        if slot in seen:
            continue
        seen[slot] = k
        entries.append((float(k), float(weights[slot])))
    mask = np.ones(grid.points, dtype=bool)
    mask[list(seen)] = False
    return MomentumSpectrum(tuple(entries), float(math.fsum(weights[mask])))


def ladder_momenta(potential: PotentialField, k0: float, n_max: int) -> list[tuple[int, int, float]]:
    """(n, m, k0 + 2n k_D + 2m k_Q) for |n|, |m| <= n_max."""
    ks = [mode.wave_vector for mode in potential.modes]
    orders = range(-n_max, n_max + 1)
    if len(ks) == 1:
        return [(n, 0, k0 + 2 * n * ks[0]) for n in orders]
    return [(n, m, k0 + 2 * n * ks[0] + 2 * m * ks[1]) for n in orders for m in orders]


def recoil_frequency(wave_vector: float, mass: float) -> float:
    """omega_rec = hbar (2k)^2 / (2M)."""
    return HBAR * (2 * wave_vector) ** 2 / (2 * mass)


def mass_for_recoil_phase(wave_vector: float, tau: float, recoil_phase: float) -> float:
    """Atom mass giving omega_rec * tau = recoil_phase (math.inf for zero)."""
    if recoil_phase == 0:
        return math.inf
    return HBAR * (2 * wave_vector) ** 2 * tau / (2 * recoil_phase)


def default_steps(potential: PotentialField, pulse: PulseParams, mass: float) -> int:
    """Enough steps that V0 dt / hbar <= 0.01 and omega_rec dt <= 0.01."""
    phase_v = potential.max_depth * pulse.tau / HBAR
    phase_k = max(recoil_frequency(m.wave_vector, mass) for m in potential.modes) * pulse.tau
    return max(1, math.ceil(phase_v / 0.01), math.ceil(phase_k / 0.01))


@dataclass(frozen=True)
class GridSpec:
    points: int = 4096
    periods: int = 32
    steps: int | None = None


@dataclass(frozen=True)
class RamanNathReport:
    deviations: dict[int, float]  # order n -> |P_kinetic(n) - P_phase_only(n)|
    max_deviation: float
    recoil_phase: float  # omega_rec * tau
    steps: int
    analytic: dict[int, float] = field(default_factory=dict)  # J_n(w/2)^2


def raman_nath_error(
    mode: GratingMode,
    pulse: PulseParams,
    grid_spec: GridSpec = GridSpec(),
    atom_mass: float = math.inf,
) -> RamanNathReport:
    """Compare kinetic-on and kinetic-off evolution order by order."""
    potential = build_potential([mode])
    grid = plane_wave(potential, pulse.k0, grid_spec.points, grid_spec.periods, atom_mass)
    steps = grid_spec.steps or default_steps(potential, pulse, atom_mass)
    w = mode.phase(pulse.tau)
    n_max = default_truncation(w)
    ladder = ladder_momenta(potential, pulse.k0, n_max)
    ks = [k for _, _, k in ladder]
    with_kinetic = momentum_spectrum(evolve(grid, potential, pulse, steps, True), ks)
    phase_only = momentum_spectrum(evolve(grid, potential, pulse, steps, False), ks)
    deviations = {
        n: abs(a[1] - b[1])
        for (n, _, _), a, b in zip(ladder, with_kinetic.entries, phase_only.entries)
    }
    probs = _order_probabilities(w, n_max)
    return RamanNathReport(
        deviations,
        max(deviations.values()),
        recoil_frequency(mode.wave_vector, atom_mass) * pulse.tau,
        steps,
        {n: float(probs[abs(n)]) for n, _, _ in ladder},
    )


def unique_ladder(
    potential: PotentialField, k0: float, n_max: int, box_length: float
) -> list[tuple[tuple[int, int], float]]:
    """Ladder momenta with coincident points collapsed, sorted by momentum.

    Each lattice point keeps the label with the fewest photon pairs.
    """
    best: dict[int, tuple[tuple[int, int], float]] = {}
    for n, m, k in ladder_momenta(potential, k0, n_max):
        index = _lattice_index(k, box_length)
        if index not in best or _label_rank((n, m)) < _label_rank(best[index][0]):
            best[index] = ((n, m), k)
    return [best[i] for i in sorted(best)]


def _label_rank(nm: tuple[int, int]):
    n, m = nm
    return (abs(n) + abs(m), abs(n), n, m)
