"""Barrier models and their complex scattering amplitudes.

Conventions used throughout the toolkit:

* time dependence ``exp(-i*omega*t)``, so free propagation over a length L
  in a medium of index n multiplies the field by ``exp(+i*omega*n*L/c)``;
* transmission amplitudes are referenced to the exit face of the barrier,
  reflection amplitudes to its entry face;
* evanescent propagation constants carry a positive imaginary part
  (``i*kappa``, kappa > 0), i.e. fields decay into the barrier.

The three single-slab families (quantum, FTIR gap, undersized waveguide)
share one closed form, :func:`hartmankit.kernels.slab_amplitudes`; they
differ only in how the outside admittance and the inside decay constant
depend on frequency.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from . import kernels
from .errors import (
    AboveBarrierError,
    CriticalAngleError,
    DomainError,
    NotEvanescentError,
    UnsupportedConfigurationError,
)
from .units import C, HBAR, M_E


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Strictly increasing, positive angular frequencies (rad/s)."""

    samples: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.samples, dtype=float).ravel()
        if w.size == 0:
            raise DomainError("frequency grid is empty")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            raise DomainError("frequency grid samples must be finite and positive")
        if w.size > 1 and np.any(np.diff(w) <= 0):
            raise DomainError("frequency grid must be strictly increasing")
        w.setflags(write=False)
        object.__setattr__(self, "samples", w)

    @classmethod
    def linspace(cls, start: float, stop: float, num: int) -> "FrequencyGrid":
        """Uniform grid in angular frequency."""
        return cls(np.linspace(start, stop, num))

    @classmethod
    def from_hz(cls, nu) -> "FrequencyGrid":
        return cls(2.0 * math.pi * np.asarray(nu, dtype=float))

    @classmethod
    def centered(cls, omega0: float, rel_step: float, half_width: int = 8) -> "FrequencyGrid":
        """``2*half_width + 1`` uniform samples around ``omega0``.

        ``omega0`` is an exact node, which is what :func:`group_delay` wants.
        """
        j = np.arange(-half_width, half_width + 1)
        return cls(omega0 + j * (rel_step * omega0))

    def __len__(self):
        return self.samples.size

    @property
    def nu(self) -> np.ndarray:
        return self.samples / (2.0 * math.pi)


@dataclass(frozen=True)
class RectangularQuantumBarrier:
    V0: float  # J
    d: float  # m
    m: float = M_E  # kg

    def __post_init__(self):
        if not (self.V0 > 0 and self.m > 0):
            raise DomainError("barrier height and mass must be positive")
        if not self.d >= 0:
            raise DomainError("barrier width must be non-negative")


@dataclass(frozen=True)
class DielectricStack:
    """Lossless layers at normal incidence; ``layers`` is a sequence of (n, thickness)."""

    layers: tuple = ()
    n_in: float = 1.0
    n_out: float = 1.0

    def __post_init__(self):
        layers = tuple((float(n), float(t)) for n, t in self.layers)
        object.__setattr__(self, "layers", layers)
        for n, t in layers:
            if not n > 0:
                raise DomainError(f"layer index must be positive, got {n}")
            if not t >= 0:
                raise DomainError(f"layer thickness must be non-negative, got {t}")
        if not (self.n_in > 0 and self.n_out > 0):
            raise DomainError("ambient indices must be positive")

    @property
    def thickness(self) -> float:
        return sum(t for _, t in self.layers)

    @property
    def is_symmetric(self) -> bool:
        return self.n_in == self.n_out and self.layers == self.layers[::-1]

    def reversed(self) -> "DielectricStack":
        return DielectricStack(self.layers[::-1], n_in=self.n_out, n_out=self.n_in)


def quarter_wave_stack(n_high: float, n_low: float, periods: int, nu0: float,
                       n_in: float = 1.0, n_out: float = 1.0) -> DielectricStack:
    """``(HL)^periods`` Bragg mirror with quarter-wave layers at ``nu0`` (Hz)."""
    lam0 = C / nu0
    pair = ((n_high, lam0 / (4 * n_high)), (n_low, lam0 / (4 * n_low)))
    return DielectricStack(pair * periods, n_in=n_in, n_out=n_out)


@dataclass(frozen=True)
class FtirGap:
    """Gap of index ``n2`` between two prisms of index ``n1``.

    ``theta`` is the angle of incidence at the reference frequency
    ``nu_ref``; frequency sweeps hold the tangential wavenumber
    ``kx = 2*pi*nu_ref*n1*sin(theta)/c`` fixed, which turns the gap into a
    one-dimensional barrier for the normal field component.
    """

    n1: float
    n2: float
    theta: float  # rad
    d: float  # m
    polarization: str
    nu_ref: float  # Hz

    def __post_init__(self):
        if self.polarization not in ("s", "p"):
            raise DomainError(f"polarization must be 's' or 'p', got {self.polarization!r}")
        if not (self.n1 > self.n2 > 0):
            raise DomainError("FTIR needs n1 > n2 > 0")
        if not (0 < self.theta < math.pi / 2):
            raise DomainError("incidence angle must lie in (0, pi/2)")
        if not self.d >= 0:
            raise DomainError("gap width must be non-negative")
        if not self.nu_ref > 0:
            raise DomainError("reference frequency must be positive")
        crit = self.critical_angle
        if math.isclose(self.theta, crit, rel_tol=1e-12, abs_tol=0.0):
            raise CriticalAngleError("incidence at the critical angle: gap decay constant is zero")
        if self.theta < crit:
            raise NotEvanescentError(
                f"theta={self.theta:.6g} rad is below the critical angle {crit:.6g} rad")

    @property
    def critical_angle(self) -> float:
        return math.asin(self.n2 / self.n1)

    @property
    def kx(self) -> float:
        """Tangential wavenumber (1/m) fixed by the prism geometry."""
        return 2 * math.pi * self.nu_ref * self.n1 * math.sin(self.theta) / C

    def kappa(self, omega) -> np.ndarray:
        """Decay constant in the gap at fixed tangential wavenumber."""
        return np.sqrt(self.kx ** 2 - (np.asarray(omega) * self.n2 / C) ** 2)


@dataclass(frozen=True)
class UndersizedWaveguideBarrier:
    cutoff_wide: float  # Hz
    cutoff_narrow: float  # Hz
    d: float  # m

    def __post_init__(self):
        if not (self.cutoff_narrow > self.cutoff_wide > 0):
            raise DomainError("need cutoff_narrow > cutoff_wide > 0")
        if not self.d >= 0:
            raise DomainError("section length must be non-negative")


BarrierModel = Union[RectangularQuantumBarrier, DielectricStack, FtirGap, UndersizedWaveguideBarrier]


@dataclass(frozen=True, eq=False)
class ScatteringResponse:
    """Complex t(omega), r(omega) on a grid.

    ``port_ratio`` is the output/input admittance ratio, so flux
    conservation reads ``|r|^2 + port_ratio*|t|^2 = 1``. ``symmetric``
    marks mirror-symmetric structures with the same medium on both sides.
    """

    grid: FrequencyGrid
    t: np.ndarray
    r: np.ndarray
    port_ratio: float = 1.0
    symmetric: bool = True

    def __post_init__(self):
        t = np.asarray(self.t, dtype=complex).ravel()
        r = np.asarray(self.r, dtype=complex).ravel()
        if not (t.size == r.size == len(self.grid)):
            raise DomainError("t, r and grid must have the same length")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "r", r)

    @property
    def omega(self) -> np.ndarray:
        return self.grid.samples

    def flux(self) -> np.ndarray:
        return np.abs(self.r) ** 2 + self.port_ratio * np.abs(self.t) ** 2

    def channel(self, name: str) -> np.ndarray:
        if name == "transmission":
            return self.t
        if name == "reflection":
            return self.r
        raise ValueError(f"unknown channel {name!r}")


def _as_grid(grid) -> FrequencyGrid:
    return grid if isinstance(grid, FrequencyGrid) else FrequencyGrid(grid)


def quantum_amplitudes(b: RectangularQuantumBarrier, energies: Sequence[float]) -> ScatteringResponse:
    """Square-barrier amplitudes at particle energies ``energies`` (J).

    The returned grid stores ``omega = E / hbar``.
    """
    E = np.asarray(energies, dtype=float).ravel()
    if E.size == 0:
        raise DomainError("empty energy grid")
    if np.any(E <= 0):
        raise DomainError("energies must be positive")
    if np.any(E >= b.V0):
        raise AboveBarrierError("above-barrier: every energy must lie below V0")
    k = np.sqrt(2.0 * b.m * E) / HBAR
    kappa = np.sqrt(2.0 * b.m * (b.V0 - E)) / HBAR
    t, r = kernels.slab_amplitudes(k, kappa, kappa * b.d)
    return ScatteringResponse(FrequencyGrid(E / HBAR), t, r)


def stack_amplitudes(s: DielectricStack, grid) -> ScatteringResponse:
    grid = _as_grid(grid)
    n = np.array([layer[0] for layer in s.layers], dtype=float)
    th = np.array([layer[1] for layer in s.layers], dtype=float)
    t, r = kernels.stack_amplitudes(n, th, s.n_in, s.n_out, grid.samples)
    return ScatteringResponse(grid, t, r, port_ratio=s.n_out / s.n_in, symmetric=s.is_symmetric)


def ftir_amplitudes(g: FtirGap, grid) -> ScatteringResponse:
    grid = _as_grid(grid)
    w = grid.samples
    kx2 = g.kx ** 2
    kz1_sq = (w * g.n1 / C) ** 2 - kx2
    kappa_sq = kx2 - (w * g.n2 / C) ** 2
    if np.any(kz1_sq <= 0):
        raise DomainError("frequency too low: the wave is evanescent inside the prism")
    if np.any(kappa_sq <= 0):
        raise NotEvanescentError("frequency too high: the gap field is propagating")
    kz1 = np.sqrt(kz1_sq)
    kappa = np.sqrt(kappa_sq)
    if g.polarization == "s":
        q, p = kz1, kappa
    else:
        q, p = kz1 / g.n1 ** 2, kappa / g.n2 ** 2
    t, r = kernels.slab_amplitudes(q, p, kappa * g.d)
    return ScatteringResponse(grid, t, r)


def waveguide_propagation_constants(w: UndersizedWaveguideBarrier, omega):
    """Return (beta_wide, |beta_narrow|) in 1/m for the dominant mode."""
    k0 = np.asarray(omega, dtype=float) / C
    beta = np.sqrt(k0 ** 2 - (2 * math.pi * w.cutoff_wide / C) ** 2)
    kappa = np.sqrt((2 * math.pi * w.cutoff_narrow / C) ** 2 - k0 ** 2)
    return beta, kappa


def waveguide_amplitudes(w: UndersizedWaveguideBarrier, grid) -> ScatteringResponse:
    grid = _as_grid(grid)
    nu = grid.nu
    if np.any(nu <= w.cutoff_wide) or np.any(nu >= w.cutoff_narrow):
        raise DomainError("every frequency must lie strictly between the two cutoffs")
    beta, kappa = waveguide_propagation_constants(w, grid.samples)
    t, r = kernels.slab_amplitudes(beta, kappa, kappa * w.d)
    return ScatteringResponse(grid, t, r)


def scatter(model: BarrierModel, grid) -> ScatteringResponse:
    """Dispatch on the barrier family; ``grid`` is angular frequency for every family."""
    if isinstance(model, RectangularQuantumBarrier):
        return quantum_amplitudes(model, _as_grid(grid).samples * HBAR)
    if isinstance(model, DielectricStack):
        return stack_amplitudes(model, grid)
    if isinstance(model, FtirGap):
        return ftir_amplitudes(model, grid)
    if isinstance(model, UndersizedWaveguideBarrier):
        return waveguide_amplitudes(model, grid)
    raise TypeError(f"not a barrier model: {type(model).__name__}")


def decay_exponent(model: BarrierModel, omega: float) -> float:
    """Attenuation exponent kappa*d of a single-slab model at ``omega``."""
    if isinstance(model, RectangularQuantumBarrier):
        E = HBAR * omega
        if not 0 < E < model.V0:
            raise AboveBarrierError("above-barrier: no evanescent decay")
        return math.sqrt(2.0 * model.m * (model.V0 - E)) / HBAR * model.d
    if isinstance(model, FtirGap):
        kappa_sq = model.kx ** 2 - (omega * model.n2 / C) ** 2
        if kappa_sq <= 0:
            raise NotEvanescentError("gap field is propagating at this frequency")
        return math.sqrt(kappa_sq) * model.d
    if isinstance(model, UndersizedWaveguideBarrier):
        nu = omega / (2 * math.pi)
        if not model.cutoff_wide < nu < model.cutoff_narrow:
            raise DomainError("frequency outside the evanescent band")
        return float(waveguide_propagation_constants(model, omega)[1]) * model.d
    raise UnsupportedConfigurationError(f"{type(model).__name__} has no single decay exponent")


def with_width(model: BarrierModel, d: float) -> BarrierModel:
    """Copy of a single-slab model with its width replaced."""
    if isinstance(model, DielectricStack):
        raise UnsupportedConfigurationError("a layer stack has no single variable width")
    return dataclasses.replace(model, d=d)


def layer_matrix(n: float, thickness: float, omega: float) -> np.ndarray:
    """2x2 characteristic matrix of one homogeneous layer (normal incidence)."""
    delta = omega * n * thickness / C
    cs, sn = math.cos(delta), math.sin(delta)
    return np.array([[cs, -1j * sn / n], [-1j * n * sn, cs]], dtype=complex)


def characteristic_matrix(s: DielectricStack, omega: float) -> np.ndarray:
    """Ordered product of the layer matrices of ``s`` at one frequency."""
    m = np.eye(2, dtype=complex)
    for n, th in s.layers:
        m = m @ layer_matrix(n, th, omega)
    return m
