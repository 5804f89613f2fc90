"""Run-configuration files.

Grammar (one item per line, ``#`` starts a comment)::

    [barrier]
    family = quantum
    V0 = 10 eV
    d = 1 nm

    [grid]
    at = 5 eV

Numeric values must carry a unit (``-`` or ``1`` for dimensionless
numbers). Text keys (family, polarization, layers, format, path) do not.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple

from .barriers import (
    BarrierModel,
    DielectricStack,
    FtirGap,
    RectangularQuantumBarrier,
    UndersizedWaveguideBarrier,
    quarter_wave_stack,
)
from .errors import ConfigError, DimensionError
from .packets import GaussianPacketSpec
from .units import HBAR, M_E, Quantity, parse_quantity

TEXT_KEYS = {"family", "polarization", "layers", "format", "path"}
SECTIONS = {"barrier", "grid", "packet", "output"}
FAMILIES = ("quantum", "stack", "ftir", "waveguide", "vacuum")

_SECTION_RE = re.compile(r"^\[\s*([A-Za-z_]+)\s*\]$")
_ITEM_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")


@dataclass
class Entry:
    raw: str
    line: int
    value: object = None


@dataclass
class RunConfig:
    sections: Dict[str, Dict[str, Entry]] = field(default_factory=dict)
    source: str = "<config>"

    def section(self, name: str) -> Dict[str, Entry]:
        return self.sections.get(name, {})

    def has(self, section: str, key: str) -> bool:
        return key in self.section(section)

    def quantity(self, section: str, key: str, dimension: str, default: Optional[float] = None) -> float:
        sec = self.section(section)
        if key not in sec:
            if default is not None:
                return default
            raise ConfigError(f"missing [{section}] {key}")
        e = sec[key]
        try:
            return e.value.require(dimension)
        except DimensionError as exc:
            raise ConfigError(f"[{section}] {key}: {exc}", e.line) from None

    def text(self, section: str, key: str, default: Optional[str] = None) -> str:
        sec = self.section(section)
        if key not in sec:
            if default is not None:
                return default
            raise ConfigError(f"missing [{section}] {key}")
        return sec[key].value


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    cfg = RunConfig(source=source)
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SECTION_RE.match(line)
        if m:
            current = m.group(1).lower()
            if current not in SECTIONS:
                raise ConfigError(f"unknown section [{current}]", lineno)
            if current in cfg.sections:
                raise ConfigError(f"duplicate section [{current}]", lineno)
            cfg.sections[current] = {}
            continue
        m = _ITEM_RE.match(line)
        if m is None:
            raise ConfigError(f"cannot parse {raw.strip()!r}; expected 'key = value unit'", lineno)
        if current is None:
            raise ConfigError("key outside of any [section]", lineno)
        key, value = m.group(1), m.group(2).strip()
        if key in cfg.sections[current]:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        entry = Entry(value, lineno)
        if key in TEXT_KEYS:
            entry.value = value
        else:
            try:
                entry.value = parse_quantity(value)
            except DimensionError as exc:
                raise ConfigError(f"{key}: {exc} (every numeric value needs a unit)", lineno) from None
        cfg.sections[current][key] = entry
    if "barrier" not in cfg.sections:
        raise ConfigError("missing [barrier] section")
    return cfg


def load_config(path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {p}: {exc}") from None
    return parse_config(text, str(p))


def _parse_layers(entry: Entry):
    layers = []
    for item in entry.value.split(";"):
        item = item.strip()
        if not item:
            continue
        parts = item.split(None, 1)
        if len(parts) != 2:
            raise ConfigError(f"layer {item!r}: expected '<index> <thickness> <unit>'", entry.line)
        try:
            n = float(parts[0])
            thick = parse_quantity(parts[1]).require("length")
        except (ValueError, DimensionError) as exc:
            raise ConfigError(f"layer {item!r}: {exc}", entry.line) from None
        layers.append((n, thick))
    return tuple(layers)


def _dimless(cfg: RunConfig, section: str, key: str, default=None) -> float:
    return cfg.quantity(section, key, "dimensionless", default)


def evaluation_frequency(cfg: RunConfig, section: str = "grid", key: str = "at") -> float:
    """Angular frequency from a frequency or (particle) energy entry."""
    sec = cfg.section(section)
    if key not in sec:
        raise ConfigError(f"missing [{section}] {key}")
    return _angular(sec[key], f"[{section}] {key}")


def _angular(e: Entry, label: str) -> float:
    q: Quantity = e.value
    if q.dimension == "frequency":
        return 2 * math.pi * q.value
    if q.dimension == "energy":
        return q.value / HBAR
    raise ConfigError(f"{label} must be a frequency or an energy", e.line)


def grid_range(cfg: RunConfig) -> Optional[Tuple[float, float, int]]:
    """(start, stop) angular frequencies and sample count, if a sweep is configured."""
    sec = cfg.section("grid")
    keys = [k for k in ("start", "stop", "samples") if k in sec]
    if not keys:
        return None
    if len(keys) != 3:
        raise ConfigError("[grid] needs all of start, stop, samples for a sweep")
    n = _dimless(cfg, "grid", "samples")
    if n != int(n) or n < 9:
        raise ConfigError("[grid] samples must be an integer >= 9", sec["samples"].line)
    return _angular(sec["start"], "[grid] start"), _angular(sec["stop"], "[grid] stop"), int(n)


def build_barrier(cfg: RunConfig) -> BarrierModel:
    family = cfg.text("barrier", "family")
    if family not in FAMILIES:
        line = cfg.section("barrier")["family"].line
        raise ConfigError(f"unknown barrier family {family!r}; choose from {', '.join(FAMILIES)}", line)
    if family == "quantum":
        mass = _dimless(cfg, "barrier", "mass_me", 1.0) * M_E
        return RectangularQuantumBarrier(cfg.quantity("barrier", "V0", "energy"),
                                         cfg.quantity("barrier", "d", "length"), mass)
    if family == "vacuum":
        return DielectricStack(((1.0, cfg.quantity("barrier", "length", "length")),))
    if family == "stack":
        n_in = _dimless(cfg, "barrier", "n_in", 1.0)
        n_out = _dimless(cfg, "barrier", "n_out", 1.0)
        if cfg.has("barrier", "layers"):
            return DielectricStack(_parse_layers(cfg.section("barrier")["layers"]), n_in, n_out)
        periods = _dimless(cfg, "barrier", "periods")
        return quarter_wave_stack(_dimless(cfg, "barrier", "n_high"), _dimless(cfg, "barrier", "n_low"),
                                  int(periods), cfg.quantity("barrier", "design", "frequency"), n_in, n_out)
    if family == "ftir":
        if not cfg.has("barrier", "polarization"):
            raise ConfigError("[barrier] polarization must be given explicitly (s or p)")
        if cfg.has("barrier", "nu_ref"):
            nu_ref = cfg.quantity("barrier", "nu_ref", "frequency")
        elif cfg.has("packet", "carrier"):
            nu_ref = cfg.quantity("packet", "carrier", "frequency")
        else:
            nu_ref = evaluation_frequency(cfg) / (2 * math.pi)
        return FtirGap(_dimless(cfg, "barrier", "n1"), _dimless(cfg, "barrier", "n2"),
                       cfg.quantity("barrier", "theta", "angle"), cfg.quantity("barrier", "d", "length"),
                       cfg.text("barrier", "polarization"), nu_ref)
    return UndersizedWaveguideBarrier(cfg.quantity("barrier", "cutoff_wide", "frequency"),
                                      cfg.quantity("barrier", "cutoff_narrow", "frequency"),
                                      cfg.quantity("barrier", "length", "length"))


def build_packet(cfg: RunConfig) -> GaussianPacketSpec:
    if "packet" not in cfg.sections:
        raise ConfigError("missing [packet] section")
    carrier = evaluation_frequency(cfg, "packet", "carrier") / (2 * math.pi)
    bw = _dimless(cfg, "packet", "bandwidth")
    samples = int(_dimless(cfg, "packet", "samples", float(2 ** 14)))
    if cfg.has("packet", "t_start") or cfg.has("packet", "t_end"):
        return GaussianPacketSpec(carrier, bw, cfg.quantity("packet", "t_start", "time"),
                                  cfg.quantity("packet", "t_end", "time"), samples)
    sigmas = _dimless(cfg, "packet", "window_sigmas", 20.0)
    return GaussianPacketSpec.around(carrier, bw, sigmas, samples)
