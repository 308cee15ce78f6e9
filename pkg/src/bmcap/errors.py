"""Exception hierarchy used across the package."""


class BmcapError(Exception):
    """Base class for all errors raised by bmcap."""


class DimensionError(BmcapError, ValueError):
    """Invalid mode count or mismatched matrix shapes."""


class DomainError(BmcapError, ValueError):
    """Argument outside the mathematical domain of a function."""


class SpectralError(BmcapError, ValueError):
    """Matrix is not positive definite or its spectrum cannot be paired."""


class ConstraintViolation(BmcapError, ValueError):
    """Encoding parameters exceed the photon-number budget."""


class SolverError(BmcapError, RuntimeError):
    """An iterative root or extremum search failed to converge."""


class DivergenceError(SolverError):
    """Bracket expansion ran away without locating an interior maximum."""


class QuadratureError(BmcapError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class RangeError(BmcapError, OverflowError):
    """Argument would overflow double precision."""


class SweepError(BmcapError, RuntimeError):
    """A sweep grid point failed; the message names the offending point."""
