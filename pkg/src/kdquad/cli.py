"""Command-line interface.

    kdquad pattern     --w 2 --kind quadrupole
    kdquad two-mode    --w-d 1 --w-q 0.8 --k-ratio 0.86
    kdquad bragg       --depth-ev 1e-10 --tau 1e-5
    kdquad propagate   --w 2 --recoil-phase 0.1
    kdquad sweep       --w-max 12 --ratio 0.8 --orders 00,10,01
    kdquad feasibility --preset na --tau 7.14e-8 --depth-ev 1e-8

Exit codes: 0 ok, 2 bad configuration, 3 physics domain error, 4 I/O error.
Failures print a JSON object {"error": ..., "message": ...} on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import serialize
from .bragg import BRAGG_TOLERANCE, bragg_probabilities, two_mode_bragg
from .constants import AMU, EV, HBAR
from .core import DomainError, GratingMode, Kind, PulseParams, build_potential, depth_from_pulse_area
from .feasibility import EMISSION_RATIO_THRESHOLD, check_regime, get_preset
from .propagator import (
    default_steps,
    evolve,
    mass_for_recoil_phase,
    momentum_spectrum,
    plane_wave,
    unique_ladder,
)
from .raman_nath import (
    SweepConfig,
    default_truncation,
    parse_orders,
    pattern_sweep,
    single_mode_pattern,
    two_mode_pattern,
)

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4
COMMANDS = ("pattern", "two-mode", "bragg", "propagate", "sweep", "feasibility")
DEFAULT_TAU = 1e-6  # s; only fixes the SI scale when w is given directly
DEFAULT_K = 1e7  # rad/m; results are reported per k_L


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    format: str = "csv"
    out: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in serialize.FORMATS:
            raise ConfigError(f"unsupported format {self.format!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _ratio(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from exc


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=serialize.FORMATS, default=None, help="output format (csv)")
    p.add_argument("--out", default=None, help="output file (stdout)")
    p.add_argument("--config", default=None, help="JSON file with flag values (flags win)")


def _add_single(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w", type=float, help="pulse area V0*tau/hbar")
    p.add_argument("--depth-ev", type=float, help="potential depth V0 in eV (needs --tau)")
    p.add_argument("--tau", type=float, help="interaction time in s")
    p.add_argument("--kind", choices=[k.value for k in Kind], help="transition kind (quadrupole)")
    p.add_argument("--k-l", type=float, help=f"grating wave vector in rad/m ({DEFAULT_K:g})")


def _add_pair(p: argparse.ArgumentParser, single_too: bool) -> None:
    p.add_argument("--w-d", type=float, help="dipole-mode pulse area")
    p.add_argument("--w-q", type=float, help="quadrupole-mode pulse area")
    p.add_argument("--depth-d-ev", type=float, help="dipole-mode depth in eV (needs --tau)")
    p.add_argument("--depth-q-ev", type=float, help="quadrupole-mode depth in eV (needs --tau)")
    p.add_argument("--k-ratio", type=_ratio, help="k_Q / k_D, number or fraction like 2/3")
    if not single_too:
        p.add_argument("--tau", type=float, help="interaction time in s")
        p.add_argument("--k-l", type=float, help=f"dipole-mode wave vector in rad/m ({DEFAULT_K:g})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kdquad", description="Kapitza-Dirac diffraction with dipole and quadrupole gratings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pattern", help="single-mode Raman-Nath pattern")
    _add_single(p)
    p.add_argument("--orders", type=int, help="truncation N, orders -N..N (ceil(w)+15)")
    _add_common(p)

    p = sub.add_parser("two-mode", help="dipole + quadrupole Raman-Nath pattern")
    _add_pair(p, single_too=False)
    p.add_argument("--orders", type=int, help="truncation N for both indices")
    p.add_argument("--merge-tolerance", type=float, help="relative momentum tolerance (1e-9)")
    _add_common(p)

    p = sub.add_parser("bragg", help="first-order Bragg probabilities")
    _add_single(p)
    _add_pair(p, single_too=True)
    p.add_argument("--k0", type=float, help="incident wave vector in units of k_L or k_D (1)")
    p.add_argument("--tolerance", type=float, help=f"Bragg acceptance |dk|/k ({BRAGG_TOLERANCE:g})")
    _add_common(p)

    p = sub.add_parser("propagate", help="split-operator propagation, momentum populations")
    _add_single(p)
    _add_pair(p, single_too=True)
    p.add_argument("--recoil-phase", type=float, help="omega_rec*tau of the first mode (0: no recoil)")
    p.add_argument("--mass-amu", type=float, help="atom mass in u (instead of --recoil-phase)")
    p.add_argument("--no-kinetic", action="store_true", default=None, help="drop the kinetic term")
    p.add_argument("--points", type=int, help="grid points, power of two (4096)")
    p.add_argument("--periods", type=int, help="box length in potential periods (32)")
    p.add_argument("--steps", type=int, help="time steps (so that V0 dt/hbar <= 0.01)")
    p.add_argument("--orders", type=int, help="ladder truncation N")
    p.add_argument("--dump-density", help="also write |psi(x)|^2 as CSV to this path")
    _add_common(p)

    p = sub.add_parser("sweep", help="order probabilities against w (single and two mode)")
    p.add_argument("--w-min", type=float, help="first w (0)")
    p.add_argument("--w-max", type=float, help="last w (12)")
    p.add_argument("--samples", type=int, help="number of w samples (500)")
    p.add_argument("--ratio", type=float, help="V_Q0 / V_D0 (0.8)")
    p.add_argument("--orders", help="orders as nm digits or n:m, comma separated (00,10,01)")
    _add_common(p)

    p = sub.add_parser("feasibility", help="regime gates and intensity estimate")
    p.add_argument("--preset", help="species preset name (na, ca)")
    p.add_argument("--presets-file", help="alternative preset JSON file")
    p.add_argument("--tau", type=float, help="interaction time in s")
    p.add_argument("--depth-ev", type=float, help="potential depth in eV")
    p.add_argument("--w", type=float, help="pulse area instead of --depth-ev")
    p.add_argument("--detuning", type=float, help="angular detuning in s^-1 (preset default)")
    p.add_argument("--gamma", type=float, help="decay rate in s^-1 (preset value)")
    p.add_argument(
        "--emission-threshold", type=float, help=f"required |Delta|/Gamma ({EMISSION_RATIO_THRESHOLD:g})"
    )
    _add_common(p)
    return parser


def config_from_args(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format", "out", "config")}
    fmt, out = args.format, args.out
    if args.config:
        try:
            with open(args.config) as fh:
                document = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(document, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in document.items():
            dest = key.replace("-", "_")
            if dest == "format":
                fmt = fmt or value
            elif dest == "out":
                out = out or value
            elif dest not in params:
                raise ConfigError(f"unknown config key {key!r} for {args.command}")
            elif params[dest] is None:
                params[dest] = float(Fraction(value)) if dest == "k_ratio" and isinstance(value, str) else value
    config = RunConfig(args.command, params, fmt or "csv", out)
    config.validate()
    return config


# Input resolution


def _area(p: dict, w_key: str, depth_key: str, required: bool = True):
    """Pulse area and tau from either w or (depth in eV, tau)."""
    w, depth = p.get(w_key), p.get(depth_key)
    tau = p.get("tau")
    flag_w, flag_d = "--" + w_key.replace("_", "-"), "--" + depth_key.replace("_", "-")
    if w is not None and depth is not None:
        raise ConfigError(f"give either {flag_w} or {flag_d} with --tau, not both")
    if w is not None:
        if w < 0 or not math.isfinite(w):
            raise ConfigError(f"{flag_w} must be finite and >= 0")
        return w, tau or DEFAULT_TAU
    if depth is not None:
        if tau is None:
            raise ConfigError(f"{flag_d} needs --tau")
        if tau <= 0:
            raise ConfigError("--tau must be positive")
        return abs(depth) * EV * tau / HBAR, tau
    if required:
        raise ConfigError(f"missing {flag_w} (or {flag_d} with --tau)")
    return None


def _single_mode(p: dict) -> tuple[GratingMode, float]:
    w, tau = _area(p, "w", "depth_ev")
    kind = Kind(p.get("kind") or "quadrupole")
    k = p.get("k_l") or DEFAULT_K
    return GratingMode(k, depth_from_pulse_area(w, tau), kind), tau


def _has_pair(p: dict) -> bool:
    return any(p.get(k) is not None for k in ("w_d", "w_q", "depth_d_ev", "depth_q_ev"))


def _has_single(p: dict) -> bool:
    return any(p.get(k) is not None for k in ("w", "depth_ev", "kind"))


def _mode_pair(p: dict) -> tuple[GratingMode, GratingMode, float]:
    w_d, tau = _area(p, "w_d", "depth_d_ev")
    w_q, _ = _area(p, "w_q", "depth_q_ev")
    if p.get("k_ratio") is None:
        raise ConfigError("two-mode input needs --k-ratio (k_Q / k_D)")
    if not p["k_ratio"] > 0:
        raise ConfigError("--k-ratio must be positive")
    k_d = p.get("k_l") or DEFAULT_K
    dipole = GratingMode.dipole(k_d, depth_from_pulse_area(w_d, tau))
    quad = GratingMode.quadrupole(k_d * p["k_ratio"], depth_from_pulse_area(w_q, tau))
    return dipole, quad, tau


def _modes(p: dict):
    if _has_pair(p) and _has_single(p):
        raise ConfigError("mixed single-mode (--w/--depth-ev/--kind) and two-mode flags")
    if _has_pair(p):
        dipole, quad, tau = _mode_pair(p)
        return (dipole, quad), tau
    mode, tau = _single_mode(p)
    return (mode,), tau


# Commands


def _cmd_pattern(p: dict, fmt: str) -> str:
    mode, tau = _single_mode(p)
    pattern = single_mode_pattern(mode, PulseParams(tau), p.get("orders"))
    return serialize.serialize_pattern(pattern, fmt)


def _cmd_two_mode(p: dict, fmt: str) -> str:
    dipole, quad, tau = _mode_pair(p)
    kwargs = {}
    if p.get("merge_tolerance") is not None:
        kwargs["merge_tolerance"] = p["merge_tolerance"]
    pattern = two_mode_pattern(dipole, quad, PulseParams(tau), p.get("orders"), **kwargs)
    return serialize.serialize_pattern(pattern, fmt)


def _cmd_bragg(p: dict, fmt: str) -> str:
    modes, tau = _modes(p)
    k0 = (1.0 if p.get("k0") is None else p["k0"]) * modes[0].wave_vector
    tolerance = BRAGG_TOLERANCE if p.get("tolerance") is None else p["tolerance"]
    pulse = PulseParams(tau, k0)
    if len(modes) == 1:
        result = bragg_probabilities(modes[0], pulse, tolerance)
    else:
        result = two_mode_bragg(modes[0], modes[1], pulse, tolerance)
    return serialize.serialize_bragg(result, fmt)


def _check_rational(ratio: float) -> None:
    frac = Fraction(ratio).limit_denominator(16)
    if abs(float(frac) - ratio) > 1e-9 * ratio:
        raise ConfigError(
            f"--k-ratio {ratio!r} is not a small-denominator rational; the propagator needs "
            "a box commensurate with both gratings (use two-mode for the analytic pattern)"
        )


def _cmd_propagate(p: dict, fmt: str) -> str:
    modes, tau = _modes(p)
    if len(modes) == 2:
        _check_rational(p["k_ratio"])
    if p.get("recoil_phase") is not None and p.get("mass_amu") is not None:
        raise ConfigError("give either --recoil-phase or --mass-amu")
    if p.get("mass_amu") is not None:
        mass = p["mass_amu"] * AMU
    else:
        mass = mass_for_recoil_phase(modes[0].wave_vector, tau, p.get("recoil_phase") or 0.0)
    potential = build_potential(modes)
    grid = plane_wave(potential, 0.0, p.get("points") or 4096, p.get("periods") or 32, mass)
    pulse = PulseParams(tau)
    steps = p.get("steps") or default_steps(potential, pulse, mass)
    final = evolve(grid, potential, pulse, steps, not p.get("no_kinetic"))
    n_max = p.get("orders")
    if n_max is None:
        n_max = default_truncation(*(m.phase(tau) for m in modes))
    ladder = unique_ladder(potential, 0.0, n_max, grid.box_length)
    spectrum = momentum_spectrum(final, [k for _, k in ladder])
    if p.get("dump_density"):
        with open(p["dump_density"], "w") as fh:
            fh.write(serialize.serialize_density(final))
    return serialize.serialize_spectrum(
        spectrum, [nm for nm, _ in ladder], modes[0].wave_vector, 0.0, fmt
    )


def _cmd_sweep(p: dict, fmt: str) -> str:
    defaults = SweepConfig()
    orders = parse_orders(p["orders"]) if p.get("orders") else defaults.orders
    config = SweepConfig(
        defaults.w_min if p.get("w_min") is None else p["w_min"],
        defaults.w_max if p.get("w_max") is None else p["w_max"],
        defaults.samples if p.get("samples") is None else p["samples"],
        defaults.ratio if p.get("ratio") is None else p["ratio"],
        orders,
    )
    rows = pattern_sweep(config)
    meta = asdict(config)
    meta["orders"] = [list(o) for o in config.orders]
    return serialize.serialize_sweep(rows, fmt, meta)


def _cmd_feasibility(p: dict, fmt: str) -> str:
    if not p.get("preset"):
        raise ConfigError("missing --preset")
    if p.get("tau") is None:
        raise ConfigError("missing --tau")
    preset = get_preset(p["preset"], p.get("presets_file"))
    w, tau = _area(p, "w", "depth_ev")
    depth = depth_from_pulse_area(w, tau)
    spec = preset.transition(p.get("detuning"))
    if p.get("gamma") is not None:
        spec = type(spec)(spec.kind, p["gamma"], spec.detuning)
    threshold = EMISSION_RATIO_THRESHOLD if p.get("emission_threshold") is None else p["emission_threshold"]
    report = check_regime(spec, PulseParams(tau), depth, preset, threshold)
    extra = {"preset": preset.name, "detuning": spec.detuning, "gamma": spec.gamma, "tau": tau}
    return serialize.serialize_feasibility(report, fmt, extra)


_HANDLERS = {
    "pattern": _cmd_pattern,
    "two-mode": _cmd_two_mode,
    "bragg": _cmd_bragg,
    "propagate": _cmd_propagate,
    "sweep": _cmd_sweep,
    "feasibility": _cmd_feasibility,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute a validated config; returns (exit status, output or error JSON)."""
    try:
        config.validate()
        return EXIT_OK, _HANDLERS[config.command](config.params, config.format)
    except ConfigError as exc:
        return EXIT_CONFIG, _error("config", exc)
    except DomainError as exc:
        return EXIT_DOMAIN, _error("domain", exc)
    except OSError as exc:
        return EXIT_IO, _error("io", exc)


def _error(kind: str, exc: Exception) -> str:
    return json.dumps({"error": kind, "message": str(exc)}) + "\n"


def main(argv=None) -> int:
    try:
        config = config_from_args(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        sys.stderr.write(_error("config", exc))
        return EXIT_CONFIG
    except DomainError as exc:
        sys.stderr.write(_error("config", exc))
        return EXIT_CONFIG
    except OSError as exc:
        sys.stderr.write(_error("io", exc))
        return EXIT_IO
    status, text = run(config)
    if status != EXIT_OK:
        sys.stderr.write(text)
        return status
    try:
        if config.out:
            with open(config.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        sys.stderr.write(_error("io", exc))
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
