from abc import ABC, abstractmethod
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import Field, field_validator

from .base import Base


class AntennaPattern(Base, ABC):
    """
    Lossless directional power gain G(Omega), normalised so that its
    integral over the sphere is 4*pi.

    Subclasses provide `gain` for an array of unit vectors and the beam
    coverage fraction; support membership is derived from the gain, so any
    non-negative pattern with a declared fraction plugs in unchanged.
    """
    kind: str
    orientation: tuple[float, float, float] = (0.0, 0.0, 1.0)

    @field_validator('orientation')
    def normalize_orientation(cls, v):
        norm = float(np.linalg.norm(v))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("Orientation must be a non-zero finite vector")
        return tuple(float(c) / norm for c in v)

    @property
    def zeta(self) -> np.ndarray:
        return np.asarray(self.orientation, dtype=np.float64)

    @property
    @abstractmethod
    def beam_fraction(self) -> float:
        ...

    @abstractmethod
    def gain(self, directions) -> np.ndarray:
        ...

    def in_support(self, directions) -> np.ndarray:
        return self.gain(directions) > 0.0

    def with_orientation(self, zeta) -> "AntennaPattern":
        return self.model_validate({**self.model_dump(), "orientation": tuple(np.asarray(zeta, dtype=np.float64))})


class IsotropicPattern(AntennaPattern):
    kind: Literal["isotropic"] = "isotropic"

    @property
    def beam_fraction(self) -> float:
        return 1.0

    def gain(self, directions) -> np.ndarray:
        d = np.asarray(directions, dtype=np.float64)
        return np.ones(d.shape[:-1])


class CapPattern(AntennaPattern):
    """Constant gain 1/fraction on the spherical cap Omega . zeta >= 1 - 2*fraction."""
    kind: Literal["cap"] = "cap"
    fraction: float = Field(default=0.5, gt=0.0, le=1.0)

    @property
    def beam_fraction(self) -> float:
        return self.fraction

    @property
    def threshold(self) -> float:
        return 1.0 - 2.0 * self.fraction

    def gain(self, directions) -> np.ndarray:
        d = np.asarray(directions, dtype=np.float64)
        inside = d @ self.zeta >= self.threshold
        return np.where(inside, 1.0 / self.fraction, 0.0)


PatternSpec = Annotated[Union[IsotropicPattern, CapPattern], Field(discriminator="kind")]


class Terminal(Base):
    """An antenna placed in the room: position plus pattern."""
    position: tuple[float, float, float]
    pattern: PatternSpec = IsotropicPattern()

    @property
    def r(self) -> np.ndarray:
        return np.asarray(self.position, dtype=np.float64)

    def pointed(self, zeta) -> "Terminal":
        return Terminal(position=self.position, pattern=self.pattern.with_orientation(zeta))
