from dataclasses import dataclass
from typing import Literal

import numpy as np

CurveUnit = Literal["count", "count-squared", "rate", "power-density", "power"]


@dataclass(frozen=True, eq=False)
class Dirac:
    location: float
    weight: float


@dataclass(frozen=True, eq=False)
class TheoryCurve:
    """
    Sampled closed-form function with an optional symbolic Dirac component.

    The Dirac is never sampled; consumers that integrate or convolve the
    curve add it analytically.
    """
    delays: np.ndarray
    values: np.ndarray
    unit: CurveUnit
    dirac: Dirac | None = None

    def __post_init__(self):
        delays = np.atleast_1d(np.asarray(self.delays, dtype=np.float64))
        values = np.atleast_1d(np.asarray(self.values, dtype=np.float64))
        if delays.shape != values.shape:
            raise ValueError("delays and values must have the same shape")
        if np.any(np.diff(delays) <= 0.0):
            raise ValueError("Curve delays must be strictly increasing")
        if self.dirac is not None and self.dirac.weight < 0.0:
            raise ValueError("Dirac weight must be non-negative")
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "values", values)


@dataclass(frozen=True, eq=False)
class McEstimate:
    grid: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    runs: int

    @classmethod
    def from_samples(cls, grid: np.ndarray, samples: np.ndarray) -> "McEstimate":
        """
        Ensemble mean and standard error along axis 0.

        :param grid: Delays the columns belong to
        :param samples: (runs, len(grid)) array
        :return: Estimate
        """
        samples = np.asarray(samples, dtype=np.float64)
        runs = samples.shape[0]
        mean = samples.mean(axis=0)
        if runs > 1:
            stderr = samples.std(axis=0, ddof=1) / np.sqrt(runs)
        else:
            stderr = np.zeros_like(mean)
        return cls(grid=np.asarray(grid, dtype=np.float64), mean=mean, stderr=stderr, runs=runs)


@dataclass(frozen=True, eq=False)
class Ecdf:
    values: np.ndarray
    probabilities: np.ndarray
    missing: int = 0

    def __len__(self) -> int:
        return len(self.values)

    def evaluate(self, x) -> np.ndarray:
        """Right-continuous F(x) = #{v <= x} / n."""
        idx = np.searchsorted(self.values, np.asarray(x, dtype=np.float64), side="right")
        return idx / len(self.values)

    @property
    def median(self) -> float:
        return float(np.median(self.values))
