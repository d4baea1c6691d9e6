from pydantic import Field

from core.exceptions import ConfigurationError
from .antenna_pattern import AntennaPattern
from .base import Base
from .radio import RadioConfig
from .room import Room


class SceneSummary(Base):
    """Scalar description of a room/radio/antenna setup consumed by the closed-form results."""
    volume: float = Field(gt=0.0)
    surface: float = Field(gt=0.0)
    diagonal: float = Field(gt=0.0)
    wall_gain: float = Field(ge=0.0, le=1.0)
    speed_of_light: float = Field(gt=0.0)
    wavelength: float = Field(gt=0.0)
    bandwidth: float = Field(gt=0.0)
    omega_tx: float = Field(default=1.0, gt=0.0, le=1.0)
    omega_rx: float = Field(default=1.0, gt=0.0, le=1.0)
    tau0: float | None = Field(default=None, ge=0.0)

    @property
    def omega_product(self) -> float:
        return self.omega_tx * self.omega_rx

    @classmethod
    def from_setup(cls, room: Room, radio: RadioConfig,
                   tx_pattern: AntennaPattern | None = None,
                   rx_pattern: AntennaPattern | None = None,
                   tau0: float | None = None) -> "SceneSummary":
        g = room.equal_gain
        if g is None:
            raise ConfigurationError("Closed-form results need equal wall gains, got %s" % (room.wall_gains,))
        return cls(
            volume=room.volume,
            surface=room.surface,
            diagonal=room.diagonal,
            wall_gain=g,
            speed_of_light=radio.speed_of_light,
            wavelength=radio.carrier_wavelength,
            bandwidth=radio.bandwidth,
            omega_tx=tx_pattern.beam_fraction if tx_pattern is not None else 1.0,
            omega_rx=rx_pattern.beam_fraction if rx_pattern is not None else 1.0,
            tau0=tau0,
        )

    def with_beams(self, omega_tx: float, omega_rx: float) -> "SceneSummary":
        return self.model_copy(update={"omega_tx": omega_tx, "omega_rx": omega_rx})

    def with_tau0(self, tau0: float | None) -> "SceneSummary":
        return self.model_copy(update={"tau0": tau0})
