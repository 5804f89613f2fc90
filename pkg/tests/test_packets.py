import dataclasses
import math
import warnings

import numpy as np
import pytest

from hartmankit.barriers import DielectricStack, FrequencyGrid, ScatteringResponse, scatter, with_width
from hartmankit.errors import (
    AmbiguousPeakError,
    ClippedWindowError,
    CoverageError,
    DomainError,
    NarrowbandError,
)
from hartmankit.packets import (
    GaussianPacketSpec,
    NonOpaqueWarning,
    PacketTrace,
    arrival_report,
    ftir_coincidence,
    incident_trace,
    peak_arrival,
    propagate,
    synthesize_spectrum,
)
from hartmankit.phasetime import delay_of
from hartmankit.units import C, EV, HBAR

from conftest import LAMBDA_FTIR, NU_FTIR


def _identity(spectrum):
    g = spectrum.grid
    return ScatteringResponse(g, np.ones(len(g)), np.zeros(len(g)))


class TestSpec:
    @pytest.mark.parametrize("bw", [0.0, -0.01, 0.1])
    def test_narrowband(self, bw):
        with pytest.raises(NarrowbandError):
            GaussianPacketSpec(1e10, bw, -1e-6, 1e-6)

    def test_short_window(self):
        with pytest.raises(DomainError):
            GaussianPacketSpec(1e10, 0.01, -1e-9, 1e-9)

    @pytest.mark.parametrize("n", [512, 3000])
    def test_samples(self, n):
        with pytest.raises(DomainError):
            GaussianPacketSpec.around(1e10, 0.01, samples=n)

    def test_sigma_t(self):
        s = GaussianPacketSpec.around(1e10, 0.01)
        assert s.sigma_t == pytest.approx(1 / (2 * math.pi * 1e8))
        assert s.t_center == 0.0


class TestSpectrum:
    def test_peak_and_symmetry(self):
        sp = synthesize_spectrum(GaussianPacketSpec.around(1e10, 0.01))
        mag = np.abs(sp.amplitudes)
        assert sp.grid.nu[np.argmax(mag)] == pytest.approx(1e10, rel=1e-12)
        assert np.allclose(mag, mag[::-1], rtol=1e-14)
        span = sp.grid.nu[-1] - sp.grid.nu[0]
        assert span >= 12 * 1e8

    def test_parseval(self):
        sp = synthesize_spectrum(GaussianPacketSpec.around(1e10, 0.01))
        assert incident_trace(sp).energy() == pytest.approx(sp.energy(), rel=1e-10)

    @pytest.mark.parametrize("bw", [0.001, 0.01, 0.05])
    def test_envelope_width(self, bw):
        spec = GaussianPacketSpec.around(1e10, bw)
        tr = incident_trace(synthesize_spectrum(spec))
        t, e = tr.times, tr.envelope
        w = e ** 2 / np.sum(e ** 2)
        std = math.sqrt(np.sum(w * t ** 2) - np.sum(w * t) ** 2)
        # |envelope|^2 has standard deviation sigma_t / sqrt(2)
        assert std == pytest.approx(spec.sigma_t / math.sqrt(2), rel=1e-6)


class TestPeak:
    def test_gaussian(self):
        t = np.linspace(0, 10e-9, 1001)
        env = np.exp(-0.5 * ((t - 5.0037e-9) / 1e-9) ** 2)
        trace = PacketTrace(t, env, "incident")
        assert abs(peak_arrival(trace) - 5.0037e-9) < trace.dt / 100

    def test_bimodal(self):
        t = np.linspace(0, 10, 1001)
        env = np.exp(-((t - 3) ** 2)) + np.exp(-((t - 7) ** 2))
        with pytest.raises(AmbiguousPeakError):
            peak_arrival(PacketTrace(t, env, "reflected"))

    def test_clipped(self):
        t = np.linspace(0, 10, 101)
        with pytest.raises(ClippedWindowError):
            peak_arrival(PacketTrace(t, np.exp(-t), "transmitted"))


class TestPropagate:
    def test_identity(self):
        sp = synthesize_spectrum(GaussianPacketSpec.around(1e10, 0.01))
        tr, rf = propagate(sp, _identity(sp))
        assert np.array_equal(tr.envelope, incident_trace(sp).envelope)
        assert np.all(rf.envelope == 0)

    def test_vacuum_delay(self):
        L = 0.3
        spec = GaussianPacketSpec.around(1e9, 0.01)
        sp = synthesize_spectrum(spec)
        rep = arrival_report(sp, scatter(DielectricStack(((1.0, L),)), sp.grid))
        assert rep.delay_transmitted == pytest.approx(L / C, abs=spec.dt / 100)
        assert math.isnan(rep.delay_reflected)

    def test_coverage(self, quantum_1nm):
        sp = synthesize_spectrum(GaussianPacketSpec.around(5 * EV / HBAR / (2 * math.pi), 0.01))
        narrow = scatter(quantum_1nm, FrequencyGrid.centered(5 * EV / HBAR, 1e-4))
        with pytest.raises(CoverageError):
            propagate(sp, narrow)

    def test_interpolated_response(self, quantum_1nm, omega_5ev):
        spec = GaussianPacketSpec.around(omega_5ev / (2 * math.pi), 0.01)
        sp = synthesize_spectrum(spec)
        dense = scatter(quantum_1nm, FrequencyGrid.linspace(0.9 * omega_5ev, 1.1 * omega_5ev, 20001))
        direct = arrival_report(sp, scatter(quantum_1nm, sp.grid))
        interp = arrival_report(sp, dense)
        assert interp.delay_transmitted == pytest.approx(direct.delay_transmitted, rel=1e-4)

    def test_energy_conservation(self, quantum_1nm, omega_5ev, bragg, waveguide, ftir_gap):
        cases = [(quantum_1nm, omega_5ev), (bragg, 2 * math.pi * 1e14),
                 (waveguide, 2 * math.pi * 8.7e9), (ftir_gap, 2 * math.pi * NU_FTIR)]
        for model, w in cases:
            sp = synthesize_spectrum(GaussianPacketSpec.around(w / (2 * math.pi), 0.01))
            tr, rf = propagate(sp, scatter(model, sp.grid))
            inc = incident_trace(sp).energy()
            assert (tr.energy() + rf.energy()) == pytest.approx(inc, rel=1e-8)

    def test_translation(self, quantum_1nm, omega_5ev):
        nu0 = omega_5ev / (2 * math.pi)
        base = GaussianPacketSpec.around(nu0, 0.01)
        shift = 3.3 * base.sigma_t
        moved = dataclasses.replace(base, t_center=shift)
        reps = []
        for spec in (base, moved):
            sp = synthesize_spectrum(spec)
            reps.append(arrival_report(sp, scatter(quantum_1nm, sp.grid)))
        a, b = reps
        assert b.t_peak_transmitted - a.t_peak_transmitted == pytest.approx(shift, abs=base.dt / 50)
        assert b.t_peak_reflected - a.t_peak_reflected == pytest.approx(shift, abs=base.dt / 50)

    def test_trace_csv(self, tmp_path):
        sp = synthesize_spectrum(GaussianPacketSpec.around(1e10, 0.01, samples=1024))
        path = tmp_path / "inc.csv"
        incident_trace(sp).to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "time_s,envelope"
        assert len(lines) == 1025


class TestStationaryPhase:
    def _rel_error(self, model, omega, bw):
        sp = synthesize_spectrum(GaussianPacketSpec.around(omega / (2 * math.pi), bw))
        rep = arrival_report(sp, scatter(model, sp.grid))
        tau = delay_of(model, omega).tau
        return abs(rep.delay_transmitted - tau) / tau

    def test_quantum(self, quantum_1nm, omega_5ev):
        assert self._rel_error(quantum_1nm, omega_5ev, 0.01) < 0.01

    @pytest.mark.parametrize("name", ["quantum", "stack"])
    def test_narrowband_convergence(self, name, quantum_1nm, omega_5ev, bragg):
        model, omega = {"quantum": (quantum_1nm, omega_5ev), "stack": (bragg, 2 * math.pi * 1e14)}[name]
        errs = [self._rel_error(model, omega, bw) for bw in (0.04, 0.02, 0.01)]
        assert errs[0] > errs[1] > errs[2]


class TestFtirCoincidence:
    def test_opaque_gap(self, ftir_gap):
        spec = GaussianPacketSpec.around(NU_FTIR, 0.01)
        rep = ftir_coincidence(ftir_gap, spec)
        assert rep.opaque
        assert rep.coincidence < 0.02 / NU_FTIR
        assert rep.t_perp == pytest.approx(rep.delay_transmitted - rep.delay_reflected)

    def test_doubling_gap(self, ftir_gap):
        spec = GaussianPacketSpec.around(NU_FTIR, 0.005)
        a = ftir_coincidence(ftir_gap, spec)
        b = ftir_coincidence(with_width(ftir_gap, 6 * LAMBDA_FTIR), spec)
        assert abs(b.delay_transmitted - a.delay_transmitted) < 1e-3 / NU_FTIR

    def test_zero_gap(self, ftir_gap):
        spec = GaussianPacketSpec.around(NU_FTIR, 0.01)
        with pytest.warns(NonOpaqueWarning):
            rep = ftir_coincidence(with_width(ftir_gap, 0.0), spec)
        assert rep.delay_transmitted == pytest.approx(0.0, abs=spec.dt / 100)
        assert math.isnan(rep.coincidence)
        assert rep.opaque is False

    def test_thin_gap_warns(self, ftir_gap):
        with pytest.warns(NonOpaqueWarning):
            ftir_coincidence(with_width(ftir_gap, 0.2 * LAMBDA_FTIR), GaussianPacketSpec.around(NU_FTIR, 0.01))
