"""Physical constants (CODATA 2018) and unit handling.

Everything inside the toolkit is SI. Prefixed units (eV, GHz, fs, as, ...)
are only accepted through :func:`parse_quantity` / :func:`to_si`, which is
what the config reader uses.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import AboveBarrierError, DimensionError, DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    h: float = 6.62607015e-34  # J s, exact
    hbar: float = 6.62607015e-34 / (2 * math.pi)  # J s
    c: float = 299792458.0  # m/s, exact
    m_e: float = 9.1093837015e-31  # kg
    eV: float = 1.602176634e-19  # J, exact


CONSTANTS = PhysicalConstants()

H = CONSTANTS.h
HBAR = CONSTANTS.hbar
C = CONSTANTS.c
M_E = CONSTANTS.m_e
EV = CONSTANTS.eV

DIMENSIONS = ("energy", "frequency", "time", "length", "angle", "dimensionless")

# unit symbol -> (dimension, factor to SI)
_UNITS = {
    "J": ("energy", 1.0),
    "eV": ("energy", EV),
    "meV": ("energy", 1e-3 * EV),
    "keV": ("energy", 1e3 * EV),
    "Hz": ("frequency", 1.0),
    "kHz": ("frequency", 1e3),
    "MHz": ("frequency", 1e6),
    "GHz": ("frequency", 1e9),
    "THz": ("frequency", 1e12),
    "PHz": ("frequency", 1e15),
    "s": ("time", 1.0),
    "ms": ("time", 1e-3),
    "us": ("time", 1e-6),
    "µs": ("time", 1e-6),
    "ns": ("time", 1e-9),
    "ps": ("time", 1e-12),
    "fs": ("time", 1e-15),
    "as": ("time", 1e-18),
    "m": ("length", 1.0),
    "cm": ("length", 1e-2),
    "mm": ("length", 1e-3),
    "um": ("length", 1e-6),
    "µm": ("length", 1e-6),
    "nm": ("length", 1e-9),
    "rad": ("angle", 1.0),
    "deg": ("angle", math.pi / 180.0),
    "1": ("dimensionless", 1.0),
    "-": ("dimensionless", 1.0),
}


@dataclass(frozen=True)
class Quantity:
    """A real value tagged with one of the supported dimensions (SI value)."""

    value: float
    dimension: str

    def __post_init__(self):
        if self.dimension not in DIMENSIONS:
            raise DimensionError(f"unknown dimension {self.dimension!r}")

    def _check(self, other) -> "Quantity":
        if not isinstance(other, Quantity):
            raise DimensionError(f"cannot combine Quantity with {type(other).__name__}")
        if other.dimension != self.dimension:
            raise DimensionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Quantity(self.value + other.value, self.dimension)

    def __sub__(self, other):
        other = self._check(other)
        return Quantity(self.value - other.value, self.dimension)

    def __lt__(self, other):
        return self.value < self._check(other).value

    def __le__(self, other):
        return self.value <= self._check(other).value

    def require(self, dimension: str) -> float:
        """Return the SI value, raising DimensionError if the dimension differs."""
        if self.dimension != dimension:
            raise DimensionError(f"expected {dimension}, got {self.dimension}")
        return self.value


def unit_dimension(unit: str) -> str:
    try:
        return _UNITS[unit][0]
    except KeyError:
        raise DimensionError(f"unknown unit {unit!r}") from None


def to_si(value: float, unit: str) -> Quantity:
    try:
        dimension, factor = _UNITS[unit]
    except KeyError:
        raise DimensionError(f"unknown unit {unit!r}") from None
    return Quantity(float(value) * factor, dimension)


_QTY_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s+(\S+)\s*$")


def parse_quantity(text: str) -> Quantity:
    """Parse ``"<number> <unit>"`` into an SI :class:`Quantity`.

    A bare number is rejected: every value must carry its unit (use ``1``
    or ``-`` for dimensionless values).
    """
    m = _QTY_RE.match(text)
    if m is None:
        raise DimensionError(f"expected '<number> <unit>', got {text!r}")
    return to_si(float(m.group(1)), m.group(2))


def energy_to_frequency(E: float) -> float:
    """Frequency (Hz) of a quantum with energy ``E`` (J), ``nu = E / h``."""
    if not E > 0:
        raise DomainError(f"energy must be positive, got {E!r}")
    return E / H


def quantum_wavenumbers(E: float, V0: float, m: float = M_E) -> tuple[float, float]:
    """Outside wavenumber ``k`` and under-barrier decay constant ``kappa`` (1/m).

    Under the barrier the wavenumber is ``i*kappa``; only its magnitude is
    returned.
    """
    if not (E > 0 and V0 > 0 and m > 0):
        raise DomainError(f"E, V0 and m must be positive (E={E!r}, V0={V0!r}, m={m!r})")
    if E >= V0:
        raise AboveBarrierError(f"above-barrier: E={E!r} J >= V0={V0!r} J")
    k = math.sqrt(2.0 * m * E) / HBAR
    kappa = math.sqrt(2.0 * m * (V0 - E)) / HBAR
    return k, kappa
