"""Universal tunneling-time relations and the barrier-specific A factors.

``T = 1/nu`` is the reference time; the refined estimate is ``T * A`` with
A depending on the barrier. Two specialisations of A are provided: the
Schroedinger square barrier (two closed forms which disagree numerically,
so both are always reported) and frustrated total internal reflection
between two prisms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import CriticalAngleError, DomainError, NotEvanescentError
from .units import HBAR, energy_to_frequency

CONSISTENCY_RTOL = 0.01
NEAR_CRITICAL_A = 100.0


class NearCriticalWarning(UserWarning):
    """The FTIR A factor exceeds 100: the angle is close to critical."""


@dataclass(frozen=True)
class UniversalTime:
    T: float  # s
    nu: float  # Hz


@dataclass(frozen=True)
class EspositoQuantumResult:
    tau_form_sqrt: float  # s, hbar / sqrt(E (V0 - E))
    tau_form_ratio: float  # s, (1/nu) E / (4 pi^2 (V0 - E))
    consistent: bool

    @property
    def relative_gap(self) -> float:
        return abs(self.tau_form_sqrt - self.tau_form_ratio) / self.tau_form_ratio


@dataclass(frozen=True)
class TimeRatios:
    tau_over_T: float
    tau_over_tau_A: Optional[float] = None


def universal_time(nu: float) -> UniversalTime:
    if not nu > 0:
        raise DomainError(f"carrier frequency must be positive, got {nu!r}")
    return UniversalTime(T=1.0 / nu, nu=nu)


def particle_universal_time(E: float) -> float:
    """``h / E`` for a particle of energy ``E`` (J).

    Evaluated as ``1 / (E / h)`` so that it agrees bit-for-bit with
    ``universal_time(energy_to_frequency(E)).T``.
    """
    if not E > 0:
        raise DomainError(f"energy must be positive, got {E!r}")
    return universal_time(energy_to_frequency(E)).T


def esposito_quantum(E: float, V0: float) -> EspositoQuantumResult:
    """Both closed forms of the square-barrier time, with ``nu = E / h``.

    The square-root form is identical to the opaque-limit phase time
    ``2m / (hbar k kappa)`` of a rectangular barrier; the ratio form is the
    one that reproduces the ionization value in the reference table.
    """
    if not E > 0:
        raise DomainError(f"energy must be positive, got {E!r}")
    if E >= V0:
        raise DomainError(f"need E < V0 (E={E!r}, V0={V0!r})")
    nu = energy_to_frequency(E)
    tau_sqrt = HBAR / math.sqrt(E * (V0 - E))
    tau_ratio = (1.0 / nu) * E / (4.0 * math.pi ** 2 * (V0 - E))
    consistent = abs(tau_sqrt - tau_ratio) <= CONSISTENCY_RTOL * tau_ratio
    return EspositoQuantumResult(tau_sqrt, tau_ratio, consistent)


def ftir_factor(n1: float, n2: float, theta: float) -> float:
    """Dimensionless A for FTIR at double prisms."""
    if not n1 > n2 > 0:
        raise DomainError("need n1 > n2 > 0")
    if not 0 < theta < math.pi / 2:
        raise DomainError("theta must lie in (0, pi/2)")
    root_sq = n1 ** 2 * math.sin(theta) ** 2 - n2 ** 2
    if root_sq == 0 or math.isclose(theta, math.asin(n2 / n1), rel_tol=1e-12):
        raise CriticalAngleError("theta at the critical angle: A diverges")
    if root_sq < 0:
        raise NotEvanescentError("theta below the critical angle: no tunneling")
    return n1 * math.sin(theta) ** 2 / (math.pi * math.cos(theta) * math.sqrt(root_sq))


def esposito_ftir(n1: float, n2: float, theta: float, nu: float) -> float:
    """``(1/nu) * A`` for FTIR; warns with :class:`NearCriticalWarning` when A > 100."""
    if not nu > 0:
        raise DomainError(f"carrier frequency must be positive, got {nu!r}")
    A = ftir_factor(n1, n2, theta)
    if A > NEAR_CRITICAL_A:
        warnings.warn(f"A = {A:.4g} > {NEAR_CRITICAL_A:g}: angle is near critical", NearCriticalWarning,
                      stacklevel=2)
    return A / nu


def compare_times(tau_phase: float, nu: float, tau_A: Optional[float] = None) -> TimeRatios:
    if not (tau_phase > 0 and nu > 0):
        raise DomainError("tau_phase and nu must be positive")
    if tau_A is not None and not tau_A > 0:
        raise DomainError("tau_A must be positive")
    return TimeRatios(tau_phase * nu, None if tau_A is None else tau_phase / tau_A)
