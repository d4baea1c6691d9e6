from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .room import MirrorIndex


@dataclass(frozen=True, eq=False)
class PathComponent:
    k: MirrorIndex
    delay: float
    dod: np.ndarray
    doa: np.ndarray
    power_gain: float
    phase: float


@dataclass(frozen=True, eq=False)
class PathSet:
    """
    Columnar list of path components enumerated up to `horizon`.

    Rows follow the lexicographic order of the mirror index; iterating
    yields `PathComponent` objects.
    """
    indices: np.ndarray        # (n, 3) int
    delays: np.ndarray         # (n,)
    dod: np.ndarray            # (n, 3)
    doa: np.ndarray            # (n, 3)
    power_gains: np.ndarray    # (n,)
    phases: np.ndarray         # (n,)
    horizon: float
    _sorted_delays: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_sorted_delays", np.sort(self.delays))

    @classmethod
    def empty(cls, horizon: float) -> "PathSet":
        return cls(
            indices=np.zeros((0, 3), dtype=np.int64),
            delays=np.zeros(0),
            dod=np.zeros((0, 3)),
            doa=np.zeros((0, 3)),
            power_gains=np.zeros(0),
            phases=np.zeros(0),
            horizon=horizon,
        )

    def __len__(self) -> int:
        return len(self.delays)

    def __getitem__(self, i: int) -> PathComponent:
        return PathComponent(
            k=MirrorIndex(*(int(c) for c in self.indices[i])),
            delay=float(self.delays[i]),
            dod=self.dod[i].copy(),
            doa=self.doa[i].copy(),
            power_gain=float(self.power_gains[i]),
            phase=float(self.phases[i]),
        )

    def __iter__(self) -> Iterator[PathComponent]:
        for i in range(len(self)):
            yield self[i]

    @property
    def sorted_delays(self) -> np.ndarray:
        return self._sorted_delays

    @property
    def amplitudes(self) -> np.ndarray:
        return np.sqrt(self.power_gains) * np.exp(1j * self.phases)

    def select(self, mask: np.ndarray) -> "PathSet":
        return PathSet(
            indices=self.indices[mask],
            delays=self.delays[mask],
            dod=self.dod[mask],
            doa=self.doa[mask],
            power_gains=self.power_gains[mask],
            phases=self.phases[mask],
            horizon=self.horizon,
        )

    def with_phases(self, phases: np.ndarray) -> "PathSet":
        return PathSet(
            indices=self.indices,
            delays=self.delays,
            dod=self.dod,
            doa=self.doa,
            power_gains=self.power_gains,
            phases=np.asarray(phases, dtype=np.float64),
            horizon=self.horizon,
        )

    def by_delay(self) -> "PathSet":
        order = np.argsort(self.delays, kind="stable")
        return self.select(order)


@dataclass(frozen=True, eq=False)
class SignalTrace:
    """Complex baseband samples y(start + n*step)."""
    start: float
    step: float
    samples: np.ndarray

    @property
    def times(self) -> np.ndarray:
        return self.start + self.step * np.arange(len(self.samples))

    @property
    def power(self) -> np.ndarray:
        return np.abs(self.samples) ** 2
