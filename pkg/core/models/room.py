import math
from typing import NamedTuple

import numpy as np
from pydantic import field_validator

from .base import Base


class Position(NamedTuple):
    x: float
    y: float
    z: float


class MirrorIndex(NamedTuple):
    """Signed reflection counts per axis; (0, 0, 0) is the direct path."""
    kx: int
    ky: int
    kz: int

    @property
    def order(self) -> int:
        return abs(self.kx) + abs(self.ky) + abs(self.kz)


DIRECT_PATH = MirrorIndex(0, 0, 0)


class Room(Base):
    """
    Rectangular room spanning [0, Lx) x [0, Ly) x [0, Lz).

    Wall gains are power reflectances ordered W1..W6: W1/W2 are normal to x
    (W1 at x=0), W3/W4 normal to y, W5/W6 normal to z.
    """
    lengths: tuple[float, float, float] = (5.0, 5.0, 3.0)
    wall_gains: tuple[float, float, float, float, float, float] = (0.6,) * 6

    @field_validator('lengths')
    def validate_lengths(cls, v):
        if any(length <= 0 for length in v):
            raise ValueError("Room lengths must be positive")
        return v

    @field_validator('wall_gains', mode='before')
    def expand_wall_gains(cls, v):
        if isinstance(v, (int, float)):
            v = (float(v),) * 6
        return v

    @field_validator('wall_gains')
    def validate_wall_gains(cls, v):
        if any(not 0.0 <= gain <= 1.0 for gain in v):
            raise ValueError("Wall gains must lie in [0, 1]")
        return v

    @property
    def lx(self) -> float:
        return self.lengths[0]

    @property
    def ly(self) -> float:
        return self.lengths[1]

    @property
    def lz(self) -> float:
        return self.lengths[2]

    @property
    def volume(self) -> float:
        return self.lx * self.ly * self.lz

    @property
    def surface(self) -> float:
        return 2.0 * (self.lx * self.ly + self.lx * self.lz + self.ly * self.lz)

    @property
    def diagonal(self) -> float:
        return math.sqrt(self.lx ** 2 + self.ly ** 2 + self.lz ** 2)

    @property
    def equal_gain(self) -> float | None:
        """Common wall gain, or None when the walls differ."""
        first = self.wall_gains[0]
        return first if all(gain == first for gain in self.wall_gains) else None

    def contains(self, point) -> bool:
        p = np.asarray(point, dtype=np.float64)
        return bool(np.all(p >= 0.0) and np.all(p < np.asarray(self.lengths)))
