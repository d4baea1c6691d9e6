from typing import Literal

from pydantic import Field, model_validator

from core import settings
from .antenna_pattern import IsotropicPattern, PatternSpec
from .base import Base
from .radio import PhaseMode, RadioConfig, SampleGrid
from .room import Room

RandomizationMode = Literal["both-random", "fixed-rx", "fixed-orientation-tx", "fixed-distance"]


class GridSection(Base):
    start: float = Field(default=0.0, ge=0.0)
    stop: float = Field(default_factory=lambda: settings.simulation.curve_stop, gt=0.0)
    step: float = Field(default_factory=lambda: settings.simulation.curve_step, gt=0.0)

    @model_validator(mode='after')
    def check_order(self):
        if self.stop <= self.start:
            raise ValueError("grid.stop must exceed grid.start")
        return self

    def to_grid(self) -> SampleGrid:
        return SampleGrid.from_range(self.start, self.stop, self.step)


class Tolerances(Base):
    mean_count: float = Field(default=0.03, gt=0.0)
    min_expected_count: float = Field(default=100.0, ge=0.0)
    conditional_count: float = Field(default=0.05, gt=0.0)
    bound_sigma: float = Field(default=3.0, gt=0.0)
    power_sigma: float = Field(default=3.0, gt=0.0)
    decay_time: float = Field(default=0.05, gt=0.0)
    second_moment: float = Field(default=0.15, gt=0.0)
    second_moment_from: float = Field(default=40e-9, ge=0.0)


class McSection(Base):
    runs: int = Field(default_factory=lambda: settings.simulation.runs, ge=1)
    seed: int = Field(default_factory=lambda: settings.simulation.seed, ge=0, lt=2 ** 64)
    mode: RandomizationMode = "both-random"
    tau_max: float = Field(default_factory=lambda: settings.simulation.cutoff, gt=0.0)
    cutoff: float = Field(default_factory=lambda: settings.simulation.cutoff, gt=0.0)
    grid: GridSection = GridSection()
    phase_mode: PhaseMode = "random"
    distance: float | None = Field(default=None, gt=0.0)
    synthesize: bool = True
    workers: int = Field(default_factory=lambda: settings.simulation.workers, ge=1)
    fit_window: tuple[float, float] = (40e-9, 110e-9)
    tolerances: Tolerances = Tolerances()

    @model_validator(mode='after')
    def check_horizons(self):
        if self.tau_max < self.cutoff:
            raise ValueError("tau_max must be at least the moment cutoff")
        if self.grid.stop > self.tau_max * (1.0 + 1e-12):
            raise ValueError("grid must lie within [0, tau_max]")
        if self.fit_window[0] >= self.fit_window[1]:
            raise ValueError("fit_window must be increasing")
        return self


class McConfig(McSection):
    """Fully resolved Monte Carlo campaign."""
    room: Room = Room()
    radio: RadioConfig = RadioConfig()
    tx_pattern: PatternSpec = IsotropicPattern()
    rx_pattern: PatternSpec = IsotropicPattern()
    tx_position: tuple[float, float, float] | None = None
    rx_position: tuple[float, float, float] | None = None

    @model_validator(mode='after')
    def check_fixed_inputs(self):
        if self.mode in ("fixed-rx", "fixed-orientation-tx") and self.rx_position is None:
            raise ValueError(f"mode {self.mode} needs a receiver position")
        if self.mode == "fixed-distance" and self.distance is None and (
                self.tx_position is None or self.rx_position is None):
            raise ValueError("mode fixed-distance needs mc.distance or both positions")
        return self

    @property
    def curve_grid(self) -> SampleGrid:
        return self.grid.to_grid()


class AntennasSection(Base):
    tx: PatternSpec = IsotropicPattern()
    rx: PatternSpec = IsotropicPattern()
    aim: Literal["fixed", "los"] = "fixed"


class PositionsSection(Base):
    tx: tuple[float, float, float]
    rx: tuple[float, float, float]


class OutputSection(Base):
    directory: str = "out"
    tau_max: float = Field(default=30e-9, ge=0.0)


class RunConfigFile(Base):
    """Schema of the JSON run configuration (schema_version 1)."""
    schema_version: Literal[1] = 1
    room: Room = Room()
    radio: RadioConfig = RadioConfig()
    antennas: AntennasSection = AntennasSection()
    positions: PositionsSection | None = None
    mc: McSection | None = None
    output: OutputSection = OutputSection()

    @model_validator(mode='after')
    def check_positions_inside(self):
        if self.positions is not None:
            for name in ("tx", "rx"):
                if not self.room.contains(getattr(self.positions, name)):
                    raise ValueError(f"positions.{name} lies outside the room")
        return self

    def to_mc_config(self, **overrides) -> McConfig:
        """
        Merge the `mc` section with the scene sections; keyword overrides win.

        :return: Resolved Monte Carlo configuration
        """
        section = self.mc.model_dump() if self.mc is not None else {}
        section.update({k: v for k, v in overrides.items() if v is not None})
        return McConfig.model_validate({
            **section,
            "room": self.room.model_dump(),
            "radio": self.radio.model_dump(),
            "tx_pattern": self.antennas.tx.model_dump(),
            "rx_pattern": self.antennas.rx.model_dump(),
            "tx_position": self.positions.tx if self.positions else None,
            "rx_position": self.positions.rx if self.positions else None,
        })
