"""Exception hierarchy shared by all hartmankit modules."""


class HartmanError(Exception):
    """Base class for every physics or numerics error raised by the toolkit."""


class DomainError(HartmanError, ValueError):
    """An input lies outside the domain where the operation is defined."""


class AboveBarrierError(DomainError):
    """Particle energy at or above the barrier top; only tunneling is modeled."""


class NotEvanescentError(DomainError):
    """The field is propagating where an evanescent regime is required."""


class CriticalAngleError(NotEvanescentError):
    """Incidence exactly at the critical angle, where the gap decay constant vanishes."""


class DimensionError(HartmanError, TypeError):
    """Arithmetic or conversion between quantities of mismatched dimension."""


class UnderResolvedGridError(HartmanError):
    """Phase steps between neighbouring samples are too large to unwrap safely."""


class UnsupportedConfigurationError(HartmanError):
    """The requested analysis does not apply to this barrier configuration."""


class NarrowbandError(DomainError):
    """Packet bandwidth outside the narrowband regime (0, 5%]."""


class CoverageError(DomainError):
    """The packet spectrum extends outside the scattering response grid."""


class ClippedWindowError(HartmanError):
    """An envelope maximum sits on the edge of the time window."""


class AmbiguousPeakError(HartmanError):
    """Two or more envelope maxima are equal within tolerance."""


class DatasetError(HartmanError):
    """The reference dataset is missing or corrupt."""


class ConfigError(HartmanError):
    """A run configuration file is malformed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
