"""CSV and JSON encodings of patterns, sweeps and reports.

CSV floats are written with 17 significant digits so values round-trip
exactly. Column sets (schema version 1):

    pattern / spectrum  n, m, momentum_transfer_per_kL, probability
    sweep               w, label, probability
    bragg               p_transmit, p_scatter, resonant_mode, detuned
    feasibility         quantity, value, passed
    density             x_m, density
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict

from .bragg import BraggResult
from .core import DomainError
from .feasibility import RegimeReport
from .propagator import MomentumSpectrum, WavefunctionGrid
from .raman_nath import DiffractionOrder, DiffractionPattern, SweepRow

SCHEMA_VERSION = 1
FORMATS = ("csv", "json")

PATTERN_COLUMNS = ("n", "m", "momentum_transfer_per_kL", "probability")
SWEEP_COLUMNS = ("w", "label", "probability")
BRAGG_COLUMNS = ("p_transmit", "p_scatter", "resonant_mode", "detuned")
FEASIBILITY_COLUMNS = ("quantity", "value", "passed")
DENSITY_COLUMNS = ("x_m", "density")


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _json(document) -> str:
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


# Patterns


def pattern_to_dict(pattern: DiffractionPattern) -> dict:
    return {
        "schema": "kdquad.pattern",
        "version": SCHEMA_VERSION,
        "truncation": pattern.truncation,
        "tail_bound": pattern.tail_bound,
        "merged": pattern.merged,
        "reference_k": pattern.reference_k,
        "orders": [
            {
                "n": o.n,
                "m": o.m,
                "momentum_transfer": o.momentum_transfer,
                "momentum_transfer_per_kL": o.momentum_transfer / pattern.reference_k,
                "probability": o.probability,
                "members": [list(nm) for nm in o.members],
            }
            for o in pattern.orders
        ],
    }


def pattern_from_dict(document: dict) -> DiffractionPattern:
    if document.get("schema") != "kdquad.pattern":
        raise DomainError("not a pattern document")
    orders = tuple(
        DiffractionOrder(
            int(o["n"]),
            int(o["m"]),
            float(o["momentum_transfer"]),
            float(o["probability"]),
            tuple(tuple(nm) for nm in o.get("members", [])),
        )
        for o in document["orders"]
    )
    return DiffractionPattern(
        orders,
        int(document["truncation"]),
        float(document["tail_bound"]),
        bool(document["merged"]),
        float(document["reference_k"]),
    )


def pattern_rows(pattern: DiffractionPattern):
    for o in pattern.orders:
        yield (o.n, o.m, o.momentum_transfer / pattern.reference_k, o.probability)


def serialize_pattern(pattern: DiffractionPattern, fmt_name: str) -> str:
    if fmt_name == "csv":
        return _csv(PATTERN_COLUMNS, pattern_rows(pattern))
    if fmt_name == "json":
        return _json(pattern_to_dict(pattern))
    raise ValueError(f"unsupported format {fmt_name!r}")


# Propagator spectra


def spectrum_to_dict(spectrum: MomentumSpectrum, labels, reference_k: float, k0: float) -> dict:
    return {
        "schema": "kdquad.spectrum",
        "version": SCHEMA_VERSION,
        "reference_k": reference_k,
        "off_ladder": spectrum.off_ladder,
        "orders": [
            {
                "n": n,
                "m": m,
                "momentum_transfer_per_kL": (k - k0) / reference_k,
                "probability": p,
            }
            for (n, m), (k, p) in zip(labels, spectrum.entries)
        ],
    }


def serialize_spectrum(
    spectrum: MomentumSpectrum, labels, reference_k: float, k0: float, fmt_name: str
) -> str:
    """Pattern columns; the last CSV row (blank n, m) holds the off-ladder weight."""
    if fmt_name == "json":
        return _json(spectrum_to_dict(spectrum, labels, reference_k, k0))
    if fmt_name != "csv":
        raise ValueError(f"unsupported format {fmt_name!r}")
    rows = [
        (n, m, (k - k0) / reference_k, p) for (n, m), (k, p) in zip(labels, spectrum.entries)
    ]
    rows.append((None, None, "off_ladder", spectrum.off_ladder))
    return _csv(PATTERN_COLUMNS, rows)


def serialize_density(grid: WavefunctionGrid) -> str:
    density = (grid.amplitudes * grid.amplitudes.conj()).real
    return _csv(DENSITY_COLUMNS, zip(grid.x.tolist(), density.tolist()))


# Sweeps


def serialize_sweep(rows: list[SweepRow], fmt_name: str, config: dict | None = None) -> str:
    if fmt_name == "csv":
        return _csv(SWEEP_COLUMNS, ((r.w, r.label, r.probability) for r in rows))
    if fmt_name == "json":
        return _json(
            {
                "schema": "kdquad.sweep",
                "version": SCHEMA_VERSION,
                "config": config or {},
                "rows": [asdict(r) for r in rows],
            }
        )
    raise ValueError(f"unsupported format {fmt_name!r}")


# Bragg and feasibility


def serialize_bragg(result: BraggResult, fmt_name: str) -> str:
    if fmt_name == "csv":
        return _csv(BRAGG_COLUMNS, [astuple_bragg(result)])
    if fmt_name == "json":
        return _json({"schema": "kdquad.bragg", "version": SCHEMA_VERSION, **asdict(result)})
    raise ValueError(f"unsupported format {fmt_name!r}")


def astuple_bragg(result: BraggResult):
    return (result.p_transmit, result.p_scatter, result.resonant_mode, result.detuned)


def feasibility_rows(report: RegimeReport):
    return [
        ("adiabatic_margin", report.adiabatic_margin, report.adiabatic),
        ("emission_ratio", report.emission_ratio, report.low_emission),
        ("w", report.w, report.depth_ok),
        ("intensity_estimate_W_m2", report.intensity_estimate, None),
    ]


def serialize_feasibility(report: RegimeReport, fmt_name: str, extra: dict | None = None) -> str:
    if fmt_name == "csv":
        return _csv(FEASIBILITY_COLUMNS, feasibility_rows(report))
    if fmt_name == "json":
        document = {"schema": "kdquad.feasibility", "version": SCHEMA_VERSION}
        document.update(extra or {})
        document.update(asdict(report))
        document["notes"] = list(report.notes)
        document["all_pass"] = report.all_pass
        return _json(document)
    raise ValueError(f"unsupported format {fmt_name!r}")
