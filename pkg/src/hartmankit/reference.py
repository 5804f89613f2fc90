"""Reference tunneling-time table and its reproduction harness.

The table lives in ``data/table1.csv`` (times in seconds); parameters that
are not part of the table itself live in ``data/assumptions.json``, each
marked ``stated`` (quoted alongside the table) or ``reconstructed`` (chosen
by us to reproduce a tabulated value). ``HARTMANKIT_DATA`` may point to an
alternative table file, or to a directory holding both files.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import re
import statistics
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

from .errors import DatasetError
from .units import EV, energy_to_frequency
from .universal import esposito_ftir, esposito_quantum, particle_universal_time

FAMILIES = ("ftir", "photonic_lattice", "undersized_waveguide", "ionization", "acoustic")
COLUMNS = ["name", "reference", "tau_s", "T_s", "tauA_s", "family", "note"]
EXPECTED_ROWS = 8
UNIVERSAL_BAND = (0.8, 1.2)
OVERALL_BAND = (0.05, 1.5)


@dataclass(frozen=True)
class ExperimentRow:
    name: str
    reference_label: str
    tau_measured: float
    T: float
    tau_A: float
    family: str
    provenance_note: str
    recovered_parameters: Optional[dict] = None

    @property
    def key(self) -> str:
        return slug(self.reference_label)

    @property
    def tau_over_T(self) -> float:
        return self.tau_measured / self.T


@dataclass
class RowReproduction:
    row: ExperimentRow
    status: str  # complete | partial | incomplete
    tau_over_T: float
    T_recomputed: Optional[float] = None
    tau_A_recomputed: Dict[str, float] = field(default_factory=dict)
    relative_deviation: Dict[str, float] = field(default_factory=dict)
    consistent: Optional[bool] = None
    parameters: Optional[dict] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "reference": self.row.reference_label,
            "family": self.row.family,
            "status": self.status,
            "tau_measured_s": self.row.tau_measured,
            "T_s": self.row.T,
            "tauA_s": self.row.tau_A,
            "tau_over_T": self.tau_over_T,
            "T_recomputed_s": self.T_recomputed,
            "tauA_recomputed_s": dict(self.tau_A_recomputed),
            "relative_deviation": dict(self.relative_deviation),
            "consistent": self.consistent,
            "parameters": self.parameters,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class UniversalitySummary:
    ratios: Dict[str, float]
    minimum: float
    maximum: float
    median: float
    outside_band: List[str]  # rows other than ionization outside UNIVERSAL_BAND
    outside_overall: List[str]  # any row outside OVERALL_BAND

    @property
    def within_bounds(self) -> bool:
        return not self.outside_band and not self.outside_overall


def slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")


def _data_paths():
    override = os.environ.get("HARTMANKIT_DATA")
    pkg = resources.files("hartmankit") / "data"
    table, assumptions = pkg / "table1.csv", pkg / "assumptions.json"
    if override:
        p = Path(override)
        if p.is_dir():
            table, assumptions = p / "table1.csv", p / "assumptions.json"
        else:
            table = p
    return table, assumptions


def table_checksum() -> str:
    table, _ = _data_paths()
    try:
        return hashlib.sha256(table.read_bytes()).hexdigest()
    except OSError as exc:
        raise DatasetError(f"cannot read reference table: {exc}") from exc


def load_assumptions() -> dict:
    _, path = _data_paths()
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise DatasetError(f"cannot read assumptions file: {exc}") from exc


def load_table() -> List[ExperimentRow]:
    table, _ = _data_paths()
    try:
        text = table.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetError(f"cannot read reference table: {exc}") from exc
    reader = csv.DictReader(text.splitlines())
    if reader.fieldnames != COLUMNS:
        raise DatasetError(f"unexpected header {reader.fieldnames!r}")
    params = load_assumptions()
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        try:
            times = [float(rec[c]) for c in ("tau_s", "T_s", "tauA_s")]
        except (TypeError, ValueError) as exc:
            raise DatasetError(f"line {lineno}: bad time value ({exc})") from exc
        if not all(t > 0 and math.isfinite(t) for t in times):
            raise DatasetError(f"line {lineno}: times must be positive")
        if rec["family"] not in FAMILIES:
            raise DatasetError(f"line {lineno}: unknown family {rec['family']!r}")
        rows.append(ExperimentRow(rec["name"], rec["reference"], *times, rec["family"], rec["note"],
                                  params.get(rec["reference"])))
    if len(rows) != EXPECTED_ROWS:
        raise DatasetError(f"expected {EXPECTED_ROWS} rows, found {len(rows)}")
    return rows


def find_rows(rows: List[ExperimentRow], query: str) -> List[ExperimentRow]:
    """Rows whose family, name or reference (or its first word) matches ``query``."""
    q = slug(query)
    hits = []
    for row in rows:
        keys = {slug(row.family), slug(row.name), row.key, row.key.split("-")[0]}
        if q in keys:
            hits.append(row)
    return hits


def _rel(value: float, ref: float) -> float:
    return abs(value - ref) / ref


def reproduce_row(row: ExperimentRow) -> RowReproduction:
    """Recompute T and tau_A where the parameters are available."""
    rep = RowReproduction(row=row, status="incomplete", tau_over_T=row.tau_over_T,
                          parameters=row.recovered_parameters)
    p = row.recovered_parameters
    if row.family == "ionization" and p:
        E, V0 = p["E_eV"] * EV, p["V0_eV"] * EV
        rep.T_recomputed = particle_universal_time(E)
        res = esposito_quantum(E, V0)
        rep.tau_A_recomputed = {"ratio_form": res.tau_form_ratio, "sqrt_form": res.tau_form_sqrt}
        rep.consistent = res.consistent
        rep.relative_deviation = {
            "T": _rel(rep.T_recomputed, row.T),
            "tauA_ratio_form": _rel(res.tau_form_ratio, row.tau_A),
            "tauA_sqrt_form": _rel(res.tau_form_sqrt, row.tau_A),
        }
        rep.status = "complete"
        rep.notes.append(f"nu = E/h = {energy_to_frequency(E):.9e} Hz; electron mass; laser field neglected")
        if not res.consistent:
            rep.notes.append("the two forms of the square-barrier time disagree")
    elif row.family == "ftir" and p:
        theta = math.radians(p["theta_deg"])
        tau_a = esposito_ftir(p["n1"], p["n2"], theta, 1.0 / row.T)
        rep.tau_A_recomputed = {"ftir": tau_a}
        rep.relative_deviation = {"tauA_ftir": _rel(tau_a, row.tau_A)}
        rep.status = "partial" if p.get("kind") == "reconstructed" else "complete"
        if p.get("kind") == "reconstructed":
            rep.notes.append("prism parameters are a reconstruction, not source values")
    else:
        rep.notes.append("parameters not published with the table")
    return rep


def universality_summary(rows: List[ExperimentRow]) -> UniversalitySummary:
    ratios = {row.reference_label: row.tau_over_T for row in rows}
    vals = list(ratios.values())
    lo, hi = UNIVERSAL_BAND
    olo, ohi = OVERALL_BAND
    outside = [row.reference_label for row in rows
               if row.family != "ionization" and not lo <= row.tau_over_T <= hi]
    outside_all = [k for k, v in ratios.items() if not olo <= v <= ohi]
    return UniversalitySummary(ratios, min(vals), max(vals), statistics.median(vals), outside, outside_all)
