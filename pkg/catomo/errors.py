from typing import Optional


class CatomoError(Exception):
    """Base class for numerical failures raised by catomo."""

    def __init__(self, message: str, value: Optional[float] = None):
        super().__init__(message)
        self.value = value


class TruncationTooSmall(CatomoError):
    """Probability mass beyond the Fock cutoff exceeds the tolerance."""


class DegenerateProjection(CatomoError):
    """A quadrature outcome has (numerically) zero probability."""


class ZeroMeanPhotons(CatomoError):
    """Mandel Q is undefined for a state with no photons."""


class EmptyGrid(CatomoError):
    """A tomogram grid carries no usable samples."""


class ConfigurationError(CatomoError):
    """A settings file is missing or is not valid JSON."""
