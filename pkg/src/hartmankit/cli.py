"""Command-line front end.

Exit codes: 0 success, 2 usage or configuration error, 3 physics-domain
error (the message is the module's error text).
"""

from __future__ import annotations

import argparse
import math
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import __version__
from .barriers import FrequencyGrid, FtirGap, scatter
from .config import build_barrier, build_packet, evaluation_frequency, grid_range, load_config
from .errors import ConfigError, DimensionError, HartmanError
from .output import flatten, to_csv, to_json
from .packets import arrival_report, ftir_coincidence, incident_trace, propagate, synthesize_spectrum
from .phasetime import DEFAULT_REL_STEP, goos_haenchen_shift, group_delay, hartman_scan, tunneling_report, unwrap_phase
from .reference import find_rows, load_table, reproduce_row, universality_summary
from .units import EV, parse_quantity
from .universal import esposito_ftir, esposito_quantum, ftir_factor

EXIT_OK, EXIT_USAGE, EXIT_PHYSICS = 0, 2, 3


class UsageError(Exception):
    pass


def _emit(report: dict, args, cfg=None) -> None:
    """Write ``report`` to the configured path (or stdout) in JSON or CSV."""
    fmt = args.format
    path = args.output
    if cfg is not None:
        fmt = fmt or (cfg.text("output", "format", "json") if "output" in cfg.sections else None)
        path = path or (cfg.text("output", "path", "") if "output" in cfg.sections else None) or None
    fmt = fmt or "json"
    if fmt not in ("json", "csv"):
        raise ConfigError(f"unknown output format {fmt!r}")
    if not args.no_timestamp:
        report = {"generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"), **report}
    if fmt == "json":
        text = to_json(report)
    else:
        text = to_csv(["key", "value"], flatten(report))
    if path:
        Path(path).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


def _rel_step(cfg) -> float:
    if cfg.has("grid", "rel_step"):
        return cfg.quantity("grid", "rel_step", "dimensionless")
    return DEFAULT_REL_STEP


def cmd_delay(args) -> int:
    cfg = load_config(args.config)
    model = build_barrier(cfg)
    at = evaluation_frequency(cfg)
    rep = tunneling_report(model, at, rel_step=_rel_step(cfg))
    report = {"command": "delay", "units": "SI (s, rad/s, m, kg)", **rep.to_dict()}
    sweep = grid_range(cfg)
    if sweep is not None:
        start, stop, n = sweep
        grid = FrequencyGrid.linspace(start, stop, n)
        curve = unwrap_phase(scatter(model, grid), "transmission")
        report["sweep"] = [
            {"omega": float(w), "tau_s": d.tau, "error_s": d.error}
            for w in grid.samples[4:-4]
            for d in [group_delay(curve, float(w))]
        ]
    _emit(report, args, cfg)
    return EXIT_OK


def _parse_widths(text: str, unit: str) -> List[float]:
    items = [s for s in text.replace(",", " ").split() if s]
    if not items:
        raise UsageError("width list is empty")
    try:
        widths = [parse_quantity(f"{s} {unit}").require("length") for s in items]
    except DimensionError as exc:
        raise UsageError(str(exc)) from None
    if any(b <= a for a, b in zip(widths, widths[1:])):
        raise UsageError("widths must be strictly increasing")
    return widths


def cmd_hartman(args) -> int:
    widths = _parse_widths(args.widths, args.width_unit)
    cfg = load_config(args.config)
    model = build_barrier(cfg)
    at = evaluation_frequency(cfg)
    points = hartman_scan(model, widths, at, rel_step=_rel_step(cfg))
    text = to_csv(["width_m", "tau_s", "error_estimate_s"], points)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_packet(args) -> int:
    cfg = load_config(args.config)
    spec = build_packet(cfg)
    model = build_barrier(cfg)
    spectrum = synthesize_spectrum(spec)
    if isinstance(model, FtirGap):
        rep = ftir_coincidence(model, spec)
    else:
        rep = arrival_report(spectrum, scatter(model, spectrum.grid))
    resp = scatter(model, spectrum.grid)
    inc = incident_trace(spectrum)
    tr, rf = propagate(spectrum, resp)
    T = 1.0 / spec.nu0
    report = {
        "command": "packet",
        "family": type(model).__name__,
        "carrier_hz": spec.nu0,
        "T_universal_s": T,
        "rel_bandwidth": spec.rel_bandwidth,
        "samples": spec.samples,
        "window_s": [spec.t_start, spec.t_end],
        "t_peak_incident_reference_s": rep.t_peak_incident_reference,
        "t_peak_transmitted_s": rep.t_peak_transmitted,
        "t_peak_reflected_s": rep.t_peak_reflected,
        "delay_transmitted_s": rep.delay_transmitted,
        "delay_reflected_s": rep.delay_reflected,
        "coincidence_s": rep.coincidence,
        "coincidence_over_T": rep.coincidence / T,
        "t_perp_s": rep.t_perp,
        "opaque": rep.opaque,
        "energy_incident": inc.energy(),
        "energy_transmitted": tr.energy(),
        "energy_reflected": rf.energy(),
    }
    if args.traces:
        rows = zip(inc.times, inc.envelope, tr.envelope, rf.envelope)
        Path(args.traces).write_text(
            to_csv(["time_s", "incident", "transmitted", "reflected"], rows), encoding="utf-8", newline="")
    _emit(report, args, cfg)
    return EXIT_OK


def cmd_table1(args) -> int:
    rows = load_table()
    if args.row is not None:
        selected = find_rows(rows, args.row)
        if not selected:
            raise UsageError(f"no table row matches {args.row!r}")
    else:
        selected = rows
    reps = [reproduce_row(r).to_dict() for r in selected]
    summary = universality_summary(rows)
    report = {"command": "table1", "rows": reps}
    if args.row is None:
        report["universality"] = {
            "tau_over_T": summary.ratios,
            "min": summary.minimum,
            "max": summary.maximum,
            "median": summary.median,
            "outside_0.8_1.2_excluding_ionization": summary.outside_band,
            "outside_0.05_1.5": summary.outside_overall,
        }
    if not args.quiet:
        for r in reps:
            line = f"{r['reference']:<18} {r['family']:<22} tau/T = {r['tau_over_T']:.3f}  [{r['status']}]"
            for k, v in r["tauA_recomputed_s"].items():
                line += f"  tauA[{k}] = {v:.4g} s"
            print(line, file=sys.stderr)
    _emit(report, args)
    return EXIT_OK


def cmd_ftir_shift(args) -> int:
    cfg = load_config(args.config)
    model = build_barrier(cfg)
    if not isinstance(model, FtirGap):
        raise ConfigError("ftir-shift needs family = ftir")
    at = evaluation_frequency(cfg)
    gh = goos_haenchen_shift(model, at)
    report = {
        "command": "ftir-shift",
        "shift_m": gh.shift,
        "error_m": gh.error,
        "wavelength_m": 2 * math.pi * 299792458.0 / at,
        "kx_per_m": gh.kx,
        "kappa_d": gh.kappa_d,
        "ill_conditioned": gh.ill_conditioned,
        "tangential_velocity_m_per_s": gh.tangential_velocity,
        "interaction_time_s": gh.interaction_time,
    }
    _emit(report, args, cfg)
    return EXIT_OK


def _q(text: Optional[str], dimension: str, name: str) -> float:
    if text is None:
        raise UsageError(f"--{name} is required")
    try:
        return parse_quantity(text).require(dimension)
    except DimensionError as exc:
        raise UsageError(f"--{name}: {exc}") from None


def cmd_esposito(args) -> int:
    if args.kind == "quantum":
        E = _q(args.E, "energy", "E")
        V0 = _q(args.V0, "energy", "V0")
        res = esposito_quantum(E, V0)
        report = {"command": "esposito", "kind": "quantum", "E_J": E, "V0_J": V0,
                  "E_eV": E / EV, "V0_eV": V0 / EV, "mass": "electron",
                  "tau_form_sqrt_s": res.tau_form_sqrt, "tau_form_ratio_s": res.tau_form_ratio,
                  "consistent": res.consistent}
    else:
        n1 = _q(args.n1, "dimensionless", "n1")
        n2 = _q(args.n2, "dimensionless", "n2")
        theta = _q(args.theta, "angle", "theta")
        if args.nu is not None:
            nu = _q(args.nu, "frequency", "nu")
        else:
            nu = 1.0 / _q(args.T, "time", "T")
        report = {"command": "esposito", "kind": "ftir", "n1": n1, "n2": n2, "theta_rad": theta,
                  "nu_hz": nu, "A": ftir_factor(n1, n2, theta), "tau_A_s": esposito_ftir(n1, n2, theta, nu)}
    _emit(report, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), help="report format (default json)")
    common.add_argument("--no-timestamp", action="store_true", help="omit the generated_at field")

    p = argparse.ArgumentParser(prog="hartmankit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("delay", parents=[common], help="phase time and universal-time comparison")
    s.add_argument("config")
    s.set_defaults(func=cmd_delay)

    s = sub.add_parser("hartman", help="phase time versus barrier width (CSV)")
    s.add_argument("config")
    s.add_argument("--widths", required=True, help="comma or space separated widths")
    s.add_argument("--width-unit", default="m")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_hartman)

    s = sub.add_parser("packet", parents=[common], help="packet peak arrival times")
    s.add_argument("config")
    s.add_argument("--traces", help="CSV file for the incident/transmitted/reflected envelopes")
    s.set_defaults(func=cmd_packet)

    s = sub.add_parser("table1", parents=[common], help="reference table reproduction")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--row")
    g.add_argument("--all", action="store_true")
    s.add_argument("-q", "--quiet", action="store_true", help="no human-readable summary on stderr")
    s.set_defaults(func=cmd_table1)

    s = sub.add_parser("ftir-shift", parents=[common], help="Goos-Haenchen shift of an FTIR gap")
    s.add_argument("config")
    s.set_defaults(func=cmd_ftir_shift)

    s = sub.add_parser("esposito", parents=[common], help="evaluate the A-corrected times directly")
    s.add_argument("kind", choices=("quantum", "ftir"))
    s.add_argument("--E")
    s.add_argument("--V0")
    s.add_argument("--n1")
    s.add_argument("--n2")
    s.add_argument("--theta")
    s.add_argument("--nu")
    s.add_argument("--T")
    s.set_defaults(func=cmd_esposito)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    np.seterr(over="ignore", under="ignore")
    try:
        return args.func(args)
    except (ConfigError, UsageError) as exc:
        print(f"hartmankit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HartmanError as exc:
        print(f"hartmankit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    sys.exit(main())
