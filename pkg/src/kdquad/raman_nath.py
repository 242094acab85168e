"""Thin-grating (Raman-Nath) diffraction patterns.

With the kinetic energy dropped, a pulse of area ``w = V0*tau/hbar`` imprints
the phase ``exp(-i*w*shape(kX))``. Writing cos^2 and sin^2 through cos(2kX)
and expanding with the Jacobi-Anger identity puts amplitude
``i^n J_n(+-w/2)`` on momentum ``k0 + 2nk``, so order n is detected with
probability ``J_n(w/2)^2`` whatever the shape. Two modes multiply: order
(n, m) sits at ``k0 + 2n*k_D + 2m*k_Q`` with probability
``J_n(w_D/2)^2 * J_m(w_Q/2)^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .bessel import bessel_j_orders
from .core import DomainError, GratingMode, Kind, PulseParams, Shape

MERGE_TOLERANCE = 1e-9
# Time-evolution sign: -1 is the Schroedinger factor exp(-i V tau / hbar).
SCHROEDINGER = -1
POSITIVE_PHASE = +1


@dataclass(frozen=True)
class DiffractionOrder:
    n: int
    m: int
    momentum_transfer: float  # 2n k_D + 2m k_Q, rad/m
    probability: float
    members: tuple[tuple[int, int], ...] = ()  # set when peaks were coalesced


@dataclass(frozen=True)
class DiffractionPattern:
    orders: tuple[DiffractionOrder, ...]
    truncation: int
    tail_bound: float
    merged: bool = False
    reference_k: float = 1.0  # k_L (or k_D) used for momentum_transfer_per_kL

    @cached_property
    def _index(self) -> dict[tuple[int, int], float]:
        index = {}
        for order in self.orders:
            index[(order.n, order.m)] = order.probability
            for nm in order.members:
                index[nm] = order.probability
        return index

    def probability(self, n: int, m: int = 0) -> float:
        """Probability of order (n, m); a merged peak answers for every member."""
        return self._index.get((n, m), 0.0)

    @property
    def total(self) -> float:
        return math.fsum(o.probability for o in self.orders)

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {(o.n, o.m): o.probability for o in self.orders}


def default_truncation(*ws: float) -> int:
    return max(10, math.ceil(max(ws, default=0.0)) + 15)


def _order_probabilities(w: float, truncation: int) -> np.ndarray:
    """P(n) for n = 0..N; negative orders reuse |n|."""
    j = bessel_j_orders(truncation, 0.5 * abs(w))
    return j * j


def single_mode_pattern(
    mode: GratingMode, pulse: PulseParams, truncation: int | None = None
) -> DiffractionPattern:
    w = mode.phase(pulse.tau)
    n_max = default_truncation(w) if truncation is None else int(truncation)
    if n_max < 0:
        raise DomainError("truncation must be >= 0")
    probs = _order_probabilities(w, n_max)
    orders = tuple(
        DiffractionOrder(n, 0, 2 * n * mode.wave_vector, float(probs[abs(n)]))
        for n in range(-n_max, n_max + 1)
    )
    total = math.fsum(o.probability for o in orders)
    return DiffractionPattern(orders, n_max, max(0.0, 1.0 - total), False, mode.wave_vector)


def _check_pair(dipole: GratingMode, quad: GratingMode) -> None:
    if dipole.kind is not Kind.DIPOLE or quad.kind is not Kind.QUADRUPOLE:
        raise DomainError("two-mode pattern needs (dipole, quadrupole) modes in that order")


def _coalesce(entries, scale: float, tol: float):
    """Group (momentum, payload) entries whose momenta agree to tol*scale."""
    entries = sorted(entries, key=lambda e: e[0])
    groups: list[list] = []
    for entry in entries:
        if groups and abs(entry[0] - groups[-1][0][0]) <= tol * scale:
            groups[-1].append(entry)
        else:
            groups.append([entry])
    return groups


def two_mode_pattern(
    dipole: GratingMode,
    quad: GratingMode,
    pulse: PulseParams,
    truncation: int | None = None,
    merge_tolerance: float = MERGE_TOLERANCE,
) -> DiffractionPattern:
    """Two-mode pattern. Coincident peaks are merged by adding probabilities."""
    _check_pair(dipole, quad)
    w_d, w_q = dipole.phase(pulse.tau), quad.phase(pulse.tau)
    n_max = default_truncation(w_d, w_q) if truncation is None else int(truncation)
    if n_max < 0:
        raise DomainError("truncation must be >= 0")
    p_d = _order_probabilities(w_d, n_max)
    p_q = _order_probabilities(w_q, n_max)
    k_d, k_q = dipole.wave_vector, quad.wave_vector

    entries = []
    for n in range(-n_max, n_max + 1):
        for m in range(-n_max, n_max + 1):
            q = 2 * n * k_d + 2 * m * k_q
            entries.append((q, n, m, float(p_d[abs(n)] * p_q[abs(m)])))

    groups = _coalesce(entries, max(k_d, k_q), merge_tolerance)
    merged = any(len(g) > 1 for g in groups)
    orders = []
    for group in groups:
        if len(group) == 1:
            q, n, m, p = group[0]
            orders.append(DiffractionOrder(n, m, q, p))
            continue
        members = tuple(sorted(((e[1], e[2]) for e in group), key=_label_key))
        n, m = members[0]
        orders.append(
            DiffractionOrder(
                n, m, 2 * n * k_d + 2 * m * k_q, math.fsum(e[3] for e in group), members
            )
        )
    orders.sort(key=lambda o: (o.momentum_transfer, o.n, o.m))
    total = math.fsum(o.probability for o in orders)
    return DiffractionPattern(tuple(orders), n_max, max(0.0, 1.0 - total), merged, k_d)


def _label_key(nm):
    n, m = nm
    return (abs(n) + abs(m), abs(n), n, m)


# Amplitudes (debug surface for the propagator cross-check)


@dataclass(frozen=True)
class LadderAmplitude:
    n: int
    m: int
    momentum_transfer: float
    amplitude: complex


def _mode_amplitudes(mode: GratingMode, tau: float, n_max: int, sign: int):
    """Global phase and i^n J_n(s*w/2) for n = -N..N of one mode."""
    w = mode.phase(tau)
    shape_sign = 1 if mode.shape is Shape.COS_SQ else -1
    arg = 0.5 * sign * shape_sign * w
    j = bessel_j_orders(n_max, arg)
    n = np.arange(-n_max, n_max + 1)
    jn = j[np.abs(n)] * np.where((n < 0) & (n % 2 == 1), -1.0, 1.0)
    return np.exp(0.5j * sign * w), (1j) ** (n % 4) * jn


def ladder_amplitudes(
    modes: Sequence[GratingMode],
    pulse: PulseParams,
    truncation: int | None = None,
    sign: int = SCHROEDINGER,
) -> list[LadderAmplitude]:
    """Exact Jacobi-Anger amplitudes of ``exp(sign*i*V(X)*tau/hbar)``.

    ``sign=-1`` matches :func:`kdquad.propagator.evolve`; ``sign=+1`` is the
    phase factor exp(+i V tau / hbar). Global phases are included.
    """
    modes = tuple(modes)
    if not 1 <= len(modes) <= 2:
        raise DomainError("need one or two modes")
    ws = [mode.phase(pulse.tau) for mode in modes]
    n_max = default_truncation(*ws) if truncation is None else int(truncation)
    orders = np.arange(-n_max, n_max + 1)
    phase0, first = _mode_amplitudes(modes[0], pulse.tau, n_max, sign)
    if len(modes) == 1:
        k = modes[0].wave_vector
        return [
            LadderAmplitude(int(n), 0, 2 * int(n) * k, complex(phase0 * a))
            for n, a in zip(orders, first)
        ]
    phase1, second = _mode_amplitudes(modes[1], pulse.tau, n_max, sign)
    k_d, k_q = modes[0].wave_vector, modes[1].wave_vector
    out = []
    for n, a in zip(orders, first):
        for m, b in zip(orders, second):
            out.append(
                LadderAmplitude(
                    int(n), int(m), 2 * int(n) * k_d + 2 * int(m) * k_q, complex(phase0 * phase1 * a * b)
                )
            )
    return out


def coherent_amplitudes(
    amplitudes: Iterable[LadderAmplitude], scale: float, tol: float = MERGE_TOLERANCE
) -> list[tuple[float, complex]]:
    """(momentum, summed amplitude) per distinct momentum, sorted by momentum."""
    groups = _coalesce(((a.momentum_transfer, a.amplitude) for a in amplitudes), scale, tol)
    return [(group[0][0], sum(e[1] for e in group)) for group in groups]


def coherent_populations(
    amplitudes: Iterable[LadderAmplitude], scale: float, tol: float = MERGE_TOLERANCE
) -> list[tuple[float, float]]:
    """(momentum, |summed amplitude|^2): what a detector sees when peaks coincide."""
    return [(q, abs(a) ** 2) for q, a in coherent_amplitudes(amplitudes, scale, tol)]


# Parameter sweep


@dataclass(frozen=True)
class SweepConfig:
    w_min: float = 0.0
    w_max: float = 12.0
    samples: int = 500
    ratio: float = 0.8  # V_Q0 / V_D0
    orders: tuple[tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1))


@dataclass(frozen=True)
class SweepRow:
    w: float
    label: str
    probability: float


def order_label(prefix: str, n: int, m: int) -> str:
    return f"{prefix}_n{n}_m{m}"


def sweep_labels(config: SweepConfig) -> list[str]:
    labels = []
    for n, m in config.orders:
        if n == 0 or m == 0:
            labels.append(order_label("single", n, m))
        labels.append(order_label("two", n, m))
    return labels


def parse_orders(text: str) -> tuple[tuple[int, int], ...]:
    """Parse ``"00,10,01"`` or ``"0:0,-1:0"`` into (n, m) pairs."""
    out = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if ":" in token:
            n, m = token.split(":")
            out.append((int(n), int(m)))
        elif len(token) == 2 and token.isdigit():
            out.append((int(token[0]), int(token[1])))
        else:
            raise DomainError(f"cannot parse order {token!r}; use 'nm' digits or 'n:m'")
    return tuple(out)


def pattern_sweep(config: SweepConfig) -> list[SweepRow]:
    """Single- and two-mode order probabilities against w = V_D0*tau/hbar.

    The single-mode curve for (n, 0) is the dipole grating alone at w; for
    (0, m) it is the quadrupole grating alone at ratio*w. Orders with both
    indices nonzero only exist for two modes.
    """
    if not config.orders:
        raise DomainError("no orders requested")
    if config.samples < 2:
        raise DomainError("need at least two samples")
    if not (math.isfinite(config.w_min) and math.isfinite(config.w_max)):
        raise DomainError("w range must be finite")
    if config.w_max < config.w_min:
        raise DomainError("w_max < w_min")
    n_top = max(max(abs(n), abs(m)) for n, m in config.orders)
    rows = []
    for w in np.linspace(config.w_min, config.w_max, config.samples):
        w = float(w)
        p_d = _order_probabilities(w, n_top)
        p_q = _order_probabilities(config.ratio * w, n_top)
        for n, m in config.orders:
            two = float(p_d[abs(n)] * p_q[abs(m)])
            if m == 0:
                rows.append(SweepRow(w, order_label("single", n, m), float(p_d[abs(n)])))
            elif n == 0:
                rows.append(SweepRow(w, order_label("single", n, m), float(p_q[abs(m)])))
            rows.append(SweepRow(w, order_label("two", n, m), two))
    return rows
