__all__ = [
    "settings",
    "logger",
    "RoomSimError",
    "ConfigurationError",
    "DegenerateGeometryError",
    "DomainError",
    "ResourceLimitError",
    "OutOfHorizonError",
    "UndefinedMomentsError",
    "EmptySampleError",
]

from .config import settings
from .logger import logger
from .exceptions import (
    RoomSimError,
    ConfigurationError,
    DegenerateGeometryError,
    DomainError,
    ResourceLimitError,
    OutOfHorizonError,
    UndefinedMomentsError,
    EmptySampleError,
)
