"""Phase-time extraction, Hartman saturation scans and the Goos-Haenchen shift.

Sign convention: with ``exp(-i*omega*t)`` time dependence the delay is
``tau = +d(arg t)/d(omega)``, positive for free forward propagation. Under
the opposite time convention ``exp(+i*omega*t)`` the phase flips sign and
the same delay reads ``tau = -d(phi)/d(omega)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence

import numpy as np

from . import kernels
from .barriers import (
    BarrierModel,
    DielectricStack,
    FrequencyGrid,
    FtirGap,
    RectangularQuantumBarrier,
    ScatteringResponse,
    UndersizedWaveguideBarrier,
    decay_exponent,
    scatter,
    with_width,
)
from .errors import (
    DomainError,
    NotEvanescentError,
    UnderResolvedGridError,
    UnsupportedConfigurationError,
)
from .units import C, HBAR
from .universal import compare_times, esposito_ftir, esposito_quantum

# A step this large between neighbours is treated as aliasing.
MAX_PHASE_STEP = 0.5 * math.pi
DEFAULT_REL_STEP = 1e-4

_EPS = np.finfo(float).eps


class IllConditionedWarning(UserWarning):
    """Result computed close to the critical angle or for a thin gap."""


@dataclass(frozen=True, eq=False)
class PhaseCurve:
    grid: FrequencyGrid
    phi: np.ndarray  # rad


class Delay(NamedTuple):
    tau: float  # s
    error: float  # s, Richardson (or interpolation) error estimate


class HartmanPoint(NamedTuple):
    d: float
    tau: float
    error: float


@dataclass(frozen=True)
class GoosHaenchenShift:
    shift: float  # m, along the first interface
    error: float  # m
    kx: float  # 1/m
    omega: float  # rad/s
    kappa_d: float
    ill_conditioned: bool

    @property
    def tangential_velocity(self) -> float:
        """Speed of the field pattern along the interface, ``omega / kx``."""
        return self.omega / self.kx

    @property
    def interaction_time(self) -> float:
        return self.shift / self.tangential_velocity


@dataclass
class TunnelingTimeReport:
    family: str
    omega: float
    tau_phase: float
    tau_phase_error: float
    tau_reflection: float
    T_universal: float
    tau_A: Dict[str, float] = field(default_factory=dict)
    ratio_T: float = float("nan")
    ratio_A: Dict[str, float] = field(default_factory=dict)
    consistent: Optional[bool] = None
    dtau_dd: Optional[float] = None
    kappa_d: Optional[float] = None
    mass: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def unwrap_phase(resp: ScatteringResponse, channel: str = "transmission",
                 max_step: float = MAX_PHASE_STEP) -> PhaseCurve:
    """Continuous phase of one channel; the first sample keeps its principal value.

    Raises UnderResolvedGridError if any unwrapped step reaches ``max_step``
    rather than guessing which branch an under-sampled jump belongs to.
    """
    vals = resp.channel(channel)
    # an exactly zero amplitude has no phase; avoid angle(-0-0j) = -pi
    phi = np.unwrap(np.angle(np.where(vals == 0, 0j, vals)))
    if phi.size > 1:
        steps = np.abs(np.diff(phi))
        worst = int(np.argmax(steps))
        if steps[worst] >= max_step:
            raise UnderResolvedGridError(
                f"phase step {steps[worst]:.3g} rad between samples {worst} and {worst + 1}; refine the grid")
    return PhaseCurve(resp.grid, phi)


def _five_point(f_m2, f_m1, f_p1, f_p2, h):
    return (f_m2 - 8.0 * f_m1 + 8.0 * f_p1 - f_p2) / (12.0 * h)


def richardson_derivative(values: np.ndarray, h: float) -> Delay:
    """Derivative at the centre of nine equally spaced samples.

    Five-point central stencils at spacings h and 2h, combined with one
    Richardson step. The error estimate is the Richardson correction plus a
    rounding floor.
    """
    f = np.asarray(values, dtype=float)
    if f.size != 9:
        raise ValueError("need exactly nine samples")
    d1 = _five_point(f[2], f[3], f[5], f[6], h)
    d2 = _five_point(f[0], f[2], f[6], f[8], 2 * h)
    corr = (d1 - d2) / 15.0
    # arg() carries ~eps absolute error even where the phase is near zero
    rounding = 10.0 * _EPS * max(float(np.max(np.abs(f))), 1.0) / abs(h)
    return Delay(float(d1 + corr), float(abs(corr) + rounding))


def _poly_derivative(x: np.ndarray, y: np.ndarray, at: float) -> float:
    scale = np.max(np.abs(x - at))
    coeffs = np.polynomial.polynomial.polyfit((x - at) / scale, y, x.size - 1)
    return coeffs[1] / scale


def group_delay(curve: PhaseCurve, at: float) -> Delay:
    """Phase time ``d(phi)/d(omega)`` at angular frequency ``at``.

    When ``at`` is a grid node with four uniformly spaced neighbours on each
    side, the Richardson stencil is used; otherwise a local interpolating
    polynomial through the nearest nodes.
    """
    w = curve.grid.samples
    phi = np.asarray(curve.phi, dtype=float)
    if w.size < 3:
        raise DomainError("need at least three samples to differentiate")
    span = w[-1] - w[0]
    if not (w[0] < at < w[-1]) or min(at - w[0], w[-1] - at) < 1e-12 * span:
        raise DomainError(f"omega={at!r} is not strictly inside the grid [{w[0]!r}, {w[-1]!r}]")
    i = int(np.argmin(np.abs(w - at)))
    local_h = np.min(np.diff(w[max(i - 1, 0):i + 2]))
    if abs(w[i] - at) <= 1e-9 * local_h and 4 <= i < w.size - 4:
        seg = w[i - 4:i + 5]
        steps = np.diff(seg)
        h = steps.mean()
        if np.all(np.abs(steps - h) <= 1e-6 * h):
            return richardson_derivative(phi[i - 4:i + 5], h)
    order = np.argsort(np.abs(w - at))
    n = min(9, w.size)
    near = np.sort(order[:n])
    deriv = _poly_derivative(w[near], phi[near], at)
    if n >= 5:
        coarse = np.sort(order[:n - 2])
        err = abs(deriv - _poly_derivative(w[coarse], phi[coarse], at))
    else:
        err = abs(deriv)
    return Delay(float(deriv), float(err))


def delay_of(model: BarrierModel, at: float, channel: str = "transmission",
             rel_step: float = DEFAULT_REL_STEP) -> Delay:
    """Phase time of ``model`` at ``at`` from a nine-point grid centred there."""
    resp = scatter(model, FrequencyGrid.centered(at, rel_step, half_width=4))
    return group_delay(unwrap_phase(resp, channel), at)


def hartman_scan(model: BarrierModel, widths: Sequence[float], at: float,
                 rel_step: float = DEFAULT_REL_STEP) -> List[HartmanPoint]:
    """Phase time versus barrier width at fixed frequency ``at``."""
    widths = [float(d) for d in widths]
    if not widths:
        raise DomainError("width list is empty")
    if any(b <= a for a, b in zip(widths, widths[1:])):
        raise DomainError("widths must be strictly increasing")
    if any(d < 0 for d in widths):
        raise DomainError("widths must be non-negative")
    out = []
    for d in widths:
        m = with_width(model, d)
        decay_exponent(m, at)  # raises in the propagating regime
        tau, err = delay_of(m, at, rel_step=rel_step)
        out.append(HartmanPoint(d, tau, err))
    return out


def reflection_delay_equals_transmission(resp: ScatteringResponse, at: float):
    """Return ``(tau_r, tau_t, |tau_r - tau_t|)`` for a symmetric barrier."""
    if not resp.symmetric:
        raise UnsupportedConfigurationError("reflection/transmission equality needs a symmetric barrier")
    tau_r = group_delay(unwrap_phase(resp, "reflection"), at).tau
    tau_t = group_delay(unwrap_phase(resp, "transmission"), at).tau
    return tau_r, tau_t, abs(tau_r - tau_t)


def _ftir_reflection_vs_kx(g: FtirGap, omega: float, kx: np.ndarray) -> np.ndarray:
    kz1 = np.sqrt((omega * g.n1 / C) ** 2 - kx ** 2)
    kappa = np.sqrt(kx ** 2 - (omega * g.n2 / C) ** 2)
    if g.polarization == "s":
        q, p = kz1, kappa
    else:
        q, p = kz1 / g.n1 ** 2, kappa / g.n2 ** 2
    return kernels.slab_amplitudes(q, p, kappa * g.d)[1]


def goos_haenchen_shift(g: FtirGap, at: float, rel_step: float = 1e-4) -> GoosHaenchenShift:
    """Lateral shift ``D = -d(arg r)/d(kx)`` of the reflected wave at fixed ``at``.

    The tangential wavenumber is varied around the prism value, i.e. the
    angle of incidence is varied at fixed frequency.
    """
    kx0 = g.kx
    k_lo, k_hi = at * g.n2 / C, at * g.n1 / C
    h = rel_step * kx0
    kx = kx0 + h * np.arange(-4, 5)
    if kx[0] <= k_lo or kx[-1] >= k_hi:
        raise NotEvanescentError("stencil leaves the total-reflection range; angle too close to critical or grazing")
    phi = np.unwrap(np.angle(_ftir_reflection_vs_kx(g, at, kx)))
    deriv = richardson_derivative(phi, h)
    kappa_d = math.sqrt(kx0 ** 2 - k_lo ** 2) * g.d
    ill = kappa_d < 2.0
    if ill:
        warnings.warn(f"kappa*d = {kappa_d:.3g} < 2: gap not opaque, shift ill-conditioned",
                      IllConditionedWarning, stacklevel=2)
    return GoosHaenchenShift(-deriv.tau, deriv.error, kx0, at, kappa_d, ill)


def _family(model: BarrierModel) -> str:
    return {
        RectangularQuantumBarrier: "quantum",
        DielectricStack: "stack",
        FtirGap: "ftir",
        UndersizedWaveguideBarrier: "waveguide",
    }[type(model)]


def tunneling_report(model: BarrierModel, at: float, rel_step: float = DEFAULT_REL_STEP) -> TunnelingTimeReport:
    """Phase time, universal time, applicable A-corrected times and their ratios."""
    resp = scatter(model, FrequencyGrid.centered(at, rel_step, half_width=4))
    tau = group_delay(unwrap_phase(resp, "transmission"), at)
    tau_r = group_delay(unwrap_phase(resp, "reflection"), at)
    nu = at / (2 * math.pi)
    family = _family(model)
    rep = TunnelingTimeReport(family=family, omega=at, tau_phase=tau.tau, tau_phase_error=tau.error,
                              tau_reflection=tau_r.tau, T_universal=1.0 / nu)
    rep.ratio_T = tau.tau * nu
    if isinstance(model, RectangularQuantumBarrier):
        res = esposito_quantum(HBAR * at, model.V0)
        rep.tau_A = {"sqrt_form": res.tau_form_sqrt, "ratio_form": res.tau_form_ratio}
        rep.consistent = res.consistent
        rep.mass = model.m
    elif isinstance(model, FtirGap):
        theta = math.asin(model.kx * C / (at * model.n1))
        rep.tau_A = {"ftir": esposito_ftir(model.n1, model.n2, theta, nu)}
    if rep.tau_A and tau.tau > 0:
        rep.ratio_A = {k: compare_times(tau.tau, nu, v).tau_over_tau_A for k, v in rep.tau_A.items()}
    if not isinstance(model, DielectricStack):
        rep.kappa_d = decay_exponent(model, at)
        if model.d > 0:
            dd = 1e-3 * model.d
            hi = delay_of(with_width(model, model.d + dd), at, rel_step=rel_step).tau
            lo = delay_of(with_width(model, model.d - dd), at, rel_step=rel_step).tau
            rep.dtau_dd = (hi - lo) / (2 * dd)
    return rep
