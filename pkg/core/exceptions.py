class RoomSimError(Exception):
    """Base class for every error raised by the simulator."""


class ConfigurationError(RoomSimError, ValueError):
    """A required parameter is missing or inconsistent."""


class DegenerateGeometryError(RoomSimError, ValueError):
    """Two points coincide where a direction is needed."""


class DomainError(RoomSimError, ValueError):
    """Argument outside the domain of a closed-form expression."""


class ResourceLimitError(RoomSimError, RuntimeError):
    """The mirror-index cube would exceed the configured cardinality cap."""


class OutOfHorizonError(RoomSimError, ValueError):
    """Query beyond the delay horizon a path set was enumerated for."""


class UndefinedMomentsError(RoomSimError, ValueError):
    """Delay moments of a zero-energy trace."""


class EmptySampleError(RoomSimError, ValueError):
    """No finite sample to build a statistic from."""
