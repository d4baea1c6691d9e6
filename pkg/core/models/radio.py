import math
from typing import Literal

import numpy as np
from pydantic import Field, model_validator

from core import settings
from .base import Base

PhaseMode = Literal["carrier", "random"]


class RadioConfig(Base):
    """Carrier, bandwidth and propagation speed; defaults follow a 60 GHz / 2 GHz link."""
    center_frequency: float | None = Field(default=60e9, gt=0.0)
    wavelength: float | None = Field(default=None, gt=0.0)
    bandwidth: float = Field(default=2e9, gt=0.0)
    speed_of_light: float = Field(default_factory=lambda: settings.physics.speed_of_light, gt=0.0)
    phase_mode: PhaseMode = "carrier"

    @model_validator(mode='after')
    def check_carrier(self):
        if self.center_frequency is None and self.wavelength is None:
            raise ValueError("Either center_frequency or wavelength must be given")
        return self

    @property
    def carrier_wavelength(self) -> float:
        if self.wavelength is not None:
            return self.wavelength
        return self.speed_of_light / self.center_frequency


class SampleGrid(Base):
    start: float
    step: float = Field(gt=0.0)
    count: int = Field(ge=1)

    @property
    def times(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @classmethod
    def covering(cls, tau_max: float, radio: RadioConfig,
                 oversampling: int | None = None, padding: float | None = None) -> "SampleGrid":
        """
        Grid over [-padding/B, tau_max + padding/B] with step 1/(oversampling*B).

        :param tau_max: Largest path delay the grid must hold
        :param radio: Supplies the bandwidth B
        :return: Sample grid
        """
        oversampling = oversampling or settings.simulation.oversampling
        padding = settings.simulation.pulse_padding if padding is None else padding
        step = 1.0 / (oversampling * radio.bandwidth)
        pad = padding / radio.bandwidth
        count = int(math.ceil((tau_max + 2.0 * pad) / step)) + 1
        return cls(start=-pad, step=step, count=count)

    @classmethod
    def from_range(cls, start: float, stop: float, step: float) -> "SampleGrid":
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return cls(start=start, step=step, count=count)
