"""Acceptance criteria, one test each.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary lists one
PASS/FAIL line per criterion.
"""

import math
import statistics
import time

import numpy as np
import pytest

from hartmankit.barriers import (
    DielectricStack,
    FrequencyGrid,
    FtirGap,
    RectangularQuantumBarrier,
    UndersizedWaveguideBarrier,
    decay_exponent,
    ftir_amplitudes,
    quantum_amplitudes,
    quarter_wave_stack,
    scatter,
    stack_amplitudes,
    waveguide_amplitudes,
)
from hartmankit.packets import GaussianPacketSpec, arrival_report, ftir_coincidence, synthesize_spectrum
from hartmankit.phasetime import delay_of, hartman_scan
from hartmankit.reference import load_table, universality_summary
from hartmankit.units import C, EV, HBAR, M_E
from hartmankit.universal import esposito_ftir, esposito_quantum, particle_universal_time

AS = 1e-18
NU_FTIR = 8.345e9
LAMBDA_FTIR = C / NU_FTIR


def _report(record_property, detail):
    record_property("detail", detail)
    print(detail)


@pytest.mark.criterion(1, "ionization row: ratio form and h/E")
def test_ionization_row(record_property):
    E, V0 = 54.39 * EV, 78.98 * EV
    tau_a = esposito_quantum(E, V0).tau_form_ratio
    T = particle_universal_time(E)
    _report(record_property, f"tau_A = {tau_a / AS:.4f} as (4.25), T = {T / AS:.3f} as (75)")
    assert abs(tau_a - 4.25 * AS) <= 0.005 * 4.25 * AS
    assert abs(T - 75 * AS) <= 0.02 * 75 * AS


@pytest.mark.criterion(2, "square-barrier forms disagree and are flagged")
def test_square_barrier_inconsistency(record_property):
    res = esposito_quantum(54.39 * EV, 78.98 * EV)
    _report(record_property, f"sqrt form = {res.tau_form_sqrt / AS:.3f} as (18.0), consistent = {res.consistent}")
    assert abs(res.tau_form_sqrt - 18.0 * AS) <= 0.005 * 18.0 * AS
    assert res.consistent is False


@pytest.mark.criterion(3, "FTIR A-corrected time under the stored reconstruction")
def test_ftir_reconstruction(record_property):
    from hartmankit.reference import load_assumptions
    p = load_assumptions()["Haibel/Nimtz"]
    tau_a = esposito_ftir(p["n1"], p["n2"], math.radians(p["theta_deg"]), 1 / 120e-12)
    _report(record_property, f"tau_A = {tau_a * 1e12:.3f} ps (81)")
    assert abs(tau_a - 81e-12) <= 0.01 * 81e-12


@pytest.mark.criterion(4, "Hartman saturation over kappa*d in [10, 25]")
def test_hartman_saturation(record_property):
    t0 = time.perf_counter()
    E, V0 = 5 * EV, 10 * EV
    at = E / HBAR
    kappa = math.sqrt(2 * M_E * (V0 - E)) / HBAR
    widths = [kd / kappa for kd in np.linspace(10, 25, 16)]
    taus = np.array([p.tau for p in hartman_scan(RectangularQuantumBarrier(V0, 1e-9), widths, at)])
    spread = float(np.ptp(taus) / taus.mean())
    oracle = HBAR / math.sqrt(E * (V0 - E))
    dev = float(np.max(np.abs(taus - oracle)) / oracle)
    elapsed = time.perf_counter() - t0
    _report(record_property, f"spread = {spread:.2e}, max deviation from closed form = {dev:.2e}, {elapsed:.3f} s")
    assert spread < 1e-6
    assert dev < 1e-3
    assert elapsed < 1.0


@pytest.mark.criterion(5, "FTIR transmitted and reflected peaks coincide")
def test_zero_time_coincidence(record_property):
    t0 = time.perf_counter()
    g = FtirGap(1.6, 1.0, math.radians(45), 3 * LAMBDA_FTIR, "s", NU_FTIR)
    kd = decay_exponent(g, 2 * math.pi * NU_FTIR)
    rep = ftir_coincidence(g, GaussianPacketSpec.around(NU_FTIR, 0.01))
    T = 1 / NU_FTIR
    elapsed = time.perf_counter() - t0
    _report(record_property, f"kappa*d = {kd:.2f}, |delta| = {rep.coincidence / T:.2e} T, {elapsed:.3f} s")
    assert kd >= 5
    assert rep.coincidence < 0.02 * T
    assert elapsed < 5.0


@pytest.mark.criterion(6, "superluminal midgap delay of a quarter-wave stack")
def test_superluminal_stack(record_property):
    t0 = time.perf_counter()
    s = quarter_wave_stack(2.0, 1.0, 5, 1e14)
    tau = delay_of(s, 2 * math.pi * 1e14).tau
    limit = s.thickness / C
    elapsed = time.perf_counter() - t0
    _report(record_property, f"tau = {tau:.4e} s, thickness/c = {limit:.4e} s, {elapsed:.3f} s")
    assert tau < limit
    assert elapsed < 1.0


def _random_quantum(rng, n):
    worst = 0.0
    for _ in range(n):
        V0 = rng.uniform(0.01, 100) * EV
        b = RectangularQuantumBarrier(V0, rng.uniform(0, 5e-9), rng.uniform(0.01, 10) * M_E)
        E = np.sort(rng.uniform(1e-3, 0.999, 4)) * V0
        worst = max(worst, float(np.max(np.abs(quantum_amplitudes(b, E).flux() - 1))))
    return worst


def _random_stack(rng, n):
    worst = 0.0
    for _ in range(n):
        m = int(rng.integers(0, 25))
        layers = tuple(zip(rng.uniform(0.2, 4.0, m), rng.uniform(0, 2e-6, m)))
        w = np.sort(rng.uniform(1e14, 1e16, 4))
        resp = stack_amplitudes(DielectricStack(layers), FrequencyGrid(w))
        worst = max(worst, float(np.max(np.abs(np.abs(resp.t) ** 2 + np.abs(resp.r) ** 2 - 1))))
    return worst


def _random_ftir(rng, n):
    worst = 0.0
    for _ in range(n):
        n2 = rng.uniform(1.0, 2.0)
        n1 = n2 * rng.uniform(1.05, 2.5)
        crit = math.asin(n2 / n1)
        theta = crit + rng.uniform(0.02, 0.98) * (math.pi / 2 - crit)
        nu = rng.uniform(1e9, 1e15)
        g = FtirGap(n1, n2, theta, rng.uniform(0, 5) * C / nu, str(rng.choice(["s", "p"])), nu)
        lo, hi = g.kx * C / n1, g.kx * C / n2  # evanescent window in omega
        w = np.sort(rng.uniform(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo), 4))
        worst = max(worst, float(np.max(np.abs(ftir_amplitudes(g, FrequencyGrid(w)).flux() - 1))))
    return worst


def _random_waveguide(rng, n):
    worst = 0.0
    for _ in range(n):
        fw = rng.uniform(1e9, 2e10)
        fn = fw * rng.uniform(1.05, 3.0)
        w = UndersizedWaveguideBarrier(fw, fn, rng.uniform(0, 0.5))
        nu = np.sort(rng.uniform(fw + 1e-3 * (fn - fw), fn - 1e-3 * (fn - fw), 4))
        worst = max(worst, float(np.max(np.abs(waveguide_amplitudes(w, FrequencyGrid(2 * np.pi * nu)).flux() - 1))))
    return worst


@pytest.mark.criterion(7, "flux conservation on 1000 random configurations per family")
def test_flux_conservation(record_property):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240607)
    worst = {name: fn(rng, 1000) for name, fn in [("quantum", _random_quantum), ("stack", _random_stack),
                                                  ("ftir", _random_ftir), ("waveguide", _random_waveguide)]}
    elapsed = time.perf_counter() - t0
    _report(record_property, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()) + f", {elapsed:.2f} s")
    assert all(v <= 1e-12 for v in worst.values())
    assert elapsed < 10.0


@pytest.mark.criterion(8, "packet peak delay matches group delay at 1% bandwidth")
def test_stationary_phase(record_property):
    t0 = time.perf_counter()
    cases = {
        "quantum": (RectangularQuantumBarrier(10 * EV, 1e-9), 5 * EV / HBAR),
        "stack": (quarter_wave_stack(2.0, 1.0, 5, 1e14), 2 * math.pi * 1e14),
        "ftir": (FtirGap(1.6, 1.0, math.radians(45), 3 * LAMBDA_FTIR, "s", NU_FTIR), 2 * math.pi * NU_FTIR),
        "waveguide": (UndersizedWaveguideBarrier(6.557e9, 9.49e9, 0.040), 2 * math.pi * 8.7e9),
    }
    errors = {}
    for name, (model, omega) in cases.items():
        sp = synthesize_spectrum(GaussianPacketSpec.around(omega / (2 * math.pi), 0.01))
        peak = arrival_report(sp, scatter(model, sp.grid)).delay_transmitted
        tau = delay_of(model, omega).tau
        errors[name] = abs(peak - tau) / tau
    elapsed = time.perf_counter() - t0
    _report(record_property, ", ".join(f"{k} {v:.2%}" for k, v in errors.items()) + f", {elapsed:.2f} s")
    assert all(v < 0.01 for v in errors.values())
    assert elapsed < 30.0


@pytest.mark.criterion(9, "tau/T universality across the reference table")
def test_universality(record_property):
    rows = load_table()
    s = universality_summary(rows)
    ion = [r for r in rows if r.family == "ionization"][0]
    outside = {k: round(s.ratios[k], 3) for k in s.outside_band}
    _report(record_property, f"median = {s.median:.4f}, ionization = {ion.tau_over_T:.3f}, "
                             f"outside [0.8, 1.2]: {outside or 'none'}")
    assert ion.tau_over_T == pytest.approx(0.08)
    assert s.median == pytest.approx(0.98, abs=0.01)
    assert statistics.median(s.ratios.values()) == s.median
    assert s.outside_band == []
