"""Narrowband Gaussian packets pushed through a scattering response.

Signals are represented at complex baseband: the spectrum is sampled at
``nu0 + m/W`` (W = window length) and the time signal is the analytic
signal with the carrier factored out, so ``|signal|`` is the envelope.
Transmitted traces are the field at the exit face, reflected traces the
field at the entry face; the incident reference is the incident packet
at the entry face.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .barriers import FrequencyGrid, FtirGap, ScatteringResponse, ftir_amplitudes
from .errors import (
    AmbiguousPeakError,
    ClippedWindowError,
    CoverageError,
    DomainError,
    NarrowbandError,
)

MAX_REL_BANDWIDTH = 0.05
MIN_SAMPLES = 2 ** 10
SPAN_SIGMAS = 6.0
OPAQUE_KAPPA_D = 5.0


class NonOpaqueWarning(UserWarning):
    """The gap is too thin for the reflected/transmitted coincidence to hold."""


@dataclass(frozen=True)
class GaussianPacketSpec:
    nu0: float  # Hz
    rel_bandwidth: float  # sigma_nu / nu0
    t_start: float  # s
    t_end: float  # s
    samples: int = 2 ** 14
    t_center: Optional[float] = None  # s, incident envelope peak; default mid-window

    def __post_init__(self):
        if not self.nu0 > 0:
            raise DomainError("carrier frequency must be positive")
        if not 0 < self.rel_bandwidth <= MAX_REL_BANDWIDTH:
            raise NarrowbandError(
                f"narrowband violation: relative bandwidth {self.rel_bandwidth!r} not in (0, {MAX_REL_BANDWIDTH}]")
        if not self.t_end > self.t_start:
            raise DomainError("empty time window")
        n = int(self.samples)
        if n < MIN_SAMPLES or n & (n - 1):
            raise DomainError(f"samples must be a power of two >= {MIN_SAMPLES}")
        if self.t_center is None:
            object.__setattr__(self, "t_center", 0.5 * (self.t_start + self.t_end))
        tc, s = self.t_center, SPAN_SIGMAS * self.sigma_t
        if tc - s < self.t_start or tc + s > self.t_end:
            raise DomainError("time window does not contain +-6 sigma of the envelope")
        if 2 * self.half_modes + 1 > n:
            raise DomainError("too few samples to represent the spectrum")

    @classmethod
    def around(cls, nu0: float, rel_bandwidth: float, sigmas: float = 20.0,
               samples: int = 2 ** 14) -> "GaussianPacketSpec":
        """Window of +-``sigmas`` envelope widths centred on t = 0."""
        sigma_t = 1.0 / (2 * math.pi * rel_bandwidth * nu0) if rel_bandwidth > 0 and nu0 > 0 else 1.0
        return cls(nu0, rel_bandwidth, -sigmas * sigma_t, sigmas * sigma_t, samples)

    @property
    def sigma_nu(self) -> float:
        return self.rel_bandwidth * self.nu0

    @property
    def sigma_t(self) -> float:
        """Envelope standard deviation, ``1 / (2 pi sigma_nu)``."""
        return 1.0 / (2 * math.pi * self.sigma_nu)

    @property
    def window(self) -> float:
        return self.t_end - self.t_start

    @property
    def dt(self) -> float:
        return self.window / self.samples

    @property
    def half_modes(self) -> int:
        return int(math.ceil(SPAN_SIGMAS * self.sigma_nu * self.window))

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.samples)


@dataclass(frozen=True, eq=False)
class Spectrum:
    spec: GaussianPacketSpec
    grid: FrequencyGrid  # angular frequencies nu0 + m/W
    modes: np.ndarray  # integer offsets m
    amplitudes: np.ndarray  # complex

    def energy(self) -> float:
        """Time-integrated ``|signal|^2`` over one window, from the spectrum side."""
        return float(self.spec.window * np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True, eq=False)
class PacketTrace:
    times: np.ndarray
    envelope: np.ndarray
    channel: str

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    def energy(self) -> float:
        return float(np.sum(self.envelope ** 2) * self.dt)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["time_s", "envelope"])
            for t, e in zip(self.times, self.envelope):
                w.writerow([f"{t:.9e}", f"{e:.9e}"])


@dataclass(frozen=True)
class ArrivalReport:
    t_peak_transmitted: float
    t_peak_reflected: float
    t_peak_incident_reference: float
    delay_transmitted: float
    delay_reflected: float
    coincidence: float
    carrier: float
    rel_bandwidth: float
    samples: int
    window: Tuple[float, float]
    opaque: Optional[bool] = None

    @property
    def t_perp(self) -> float:
        """Delay of the transmitted peak beyond the reflected one."""
        return self.delay_transmitted - self.delay_reflected


def synthesize_spectrum(spec: GaussianPacketSpec) -> Spectrum:
    """Gaussian spectrum on the window-consistent frequency lattice, spanning +-6 sigma."""
    M = spec.half_modes
    m = np.arange(-M, M + 1)
    dnu = 1.0 / spec.window
    offset = m * dnu
    amp = np.exp(-0.5 * (offset / spec.sigma_nu) ** 2) * np.exp(2j * math.pi * offset * spec.t_center)
    grid = FrequencyGrid(2 * math.pi * (spec.nu0 + offset))
    return Spectrum(spec, grid, m, amp.astype(complex))


def _to_time(spectrum: Spectrum, amplitudes: np.ndarray, channel: str) -> PacketTrace:
    spec = spectrum.spec
    n = spec.samples
    m = spectrum.modes
    # reference the phase to t_start so that sample k sits at t_start + k*dt
    coeff = amplitudes * np.exp(-2j * math.pi * (m / spec.window) * spec.t_start)
    buf = np.zeros(n, dtype=complex)
    buf[m % n] = coeff
    signal = np.fft.fft(buf)
    return PacketTrace(spec.times, np.abs(signal), channel)


def incident_trace(spectrum: Spectrum) -> PacketTrace:
    return _to_time(spectrum, spectrum.amplitudes, "incident")


def _interp_channel(resp: ScatteringResponse, channel: str, omega: np.ndarray) -> np.ndarray:
    src = resp.grid.samples
    vals = resp.channel(channel)
    if src.size == omega.size and np.array_equal(src, omega):
        return vals
    mag = np.interp(omega, src, np.abs(vals))
    phase = np.interp(omega, src, np.unwrap(np.angle(vals)))
    return mag * np.exp(1j * phase)


def propagate(spectrum: Spectrum, resp: ScatteringResponse) -> Tuple[PacketTrace, PacketTrace]:
    """Transmitted and reflected envelopes for ``spectrum`` incident on ``resp``."""
    w = spectrum.grid.samples
    src = resp.grid.samples
    tol = 1e-12 * src[-1]
    if w[0] < src[0] - tol or w[-1] > src[-1] + tol:
        raise CoverageError("packet spectrum extends outside the response grid")
    t = _interp_channel(resp, "transmission", w)
    r = _interp_channel(resp, "reflection", w)
    return (_to_time(spectrum, spectrum.amplitudes * t, "transmitted"),
            _to_time(spectrum, spectrum.amplitudes * r, "reflected"))


def peak_arrival(trace: PacketTrace, ambiguity_rtol: float = 1e-12) -> float:
    """Peak time from a parabola through the discrete maximum and its neighbours."""
    env = np.asarray(trace.envelope, dtype=float)
    i = int(np.argmax(env))
    top = env[i]
    if i == 0 or i == env.size - 1:
        raise ClippedWindowError("envelope maximum at the window edge")
    interior = env[1:-1]
    is_max = (interior >= env[:-2]) & (interior >= env[2:])
    peaks = np.flatnonzero(is_max) + 1
    # neighbouring samples of one flat top are not separate peaks
    rivals = [j for j in peaks if abs(j - i) > 1 and env[j] >= top * (1 - ambiguity_rtol)]
    if rivals:
        raise AmbiguousPeakError(f"{len(rivals) + 1} equal maxima in the {trace.channel} trace")
    y0, y1, y2 = env[i - 1], env[i], env[i + 1]
    denom = y0 - 2 * y1 + y2
    shift = 0.0 if denom == 0 else 0.5 * (y0 - y2) / denom
    return float(trace.times[i] + shift * trace.dt)


def _arm_peak(trace: PacketTrace) -> float:
    # a channel with no signal at all (e.g. reflection off a matched layer) has no arrival
    if not np.any(trace.envelope > 0):
        return float("nan")
    return peak_arrival(trace)


def arrival_report(spectrum: Spectrum, resp: ScatteringResponse) -> ArrivalReport:
    spec = spectrum.spec
    t_ref = peak_arrival(incident_trace(spectrum))
    tr, rf = propagate(spectrum, resp)
    t_t = _arm_peak(tr)
    t_r = _arm_peak(rf)
    return ArrivalReport(
        t_peak_transmitted=t_t,
        t_peak_reflected=t_r,
        t_peak_incident_reference=t_ref,
        delay_transmitted=t_t - t_ref,
        delay_reflected=t_r - t_ref,
        coincidence=abs((t_t - t_ref) - (t_r - t_ref)),
        carrier=spec.nu0,
        rel_bandwidth=spec.rel_bandwidth,
        samples=spec.samples,
        window=(spec.t_start, spec.t_end),
    )


def ftir_coincidence(g: FtirGap, spec: GaussianPacketSpec) -> ArrivalReport:
    """Reflected vs transmitted peak arrival for a packet on an FTIR gap.

    Warns with :class:`NonOpaqueWarning` when ``kappa*d < 5`` at the carrier.
    """
    spectrum = synthesize_spectrum(spec)
    resp = ftir_amplitudes(g, spectrum.grid)
    kappa_d = float(g.kappa(2 * math.pi * spec.nu0)) * g.d
    opaque = kappa_d >= OPAQUE_KAPPA_D
    if not opaque:
        warnings.warn(f"kappa*d = {kappa_d:.3g} < {OPAQUE_KAPPA_D:g}: coincidence not expected",
                      NonOpaqueWarning, stacklevel=2)
    if g.d == 0:
        # no reflected packet exists; report the transmitted arm only
        tr, _ = propagate(spectrum, resp)
        t_ref = peak_arrival(incident_trace(spectrum))
        t_t = peak_arrival(tr)
        return ArrivalReport(t_t, float("nan"), t_ref, t_t - t_ref, float("nan"), float("nan"),
                             spec.nu0, spec.rel_bandwidth, spec.samples, (spec.t_start, spec.t_end), False)
    rep = arrival_report(spectrum, resp)
    return ArrivalReport(**{**rep.__dict__, "opaque": opaque})
