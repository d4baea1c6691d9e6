"""
Mirror-source construction for a rectangular room.

All arrays are float64; index arrays are (n, 3) int64 in (kx, ky, kz) order.
"""
import math
from dataclasses import dataclass

import numpy as np

from core import logger, settings
from core.exceptions import DegenerateGeometryError, ResourceLimitError
from core.models import MirrorIndex, Position, Room


@dataclass(frozen=True, eq=False)
class MirrorSourceTable:
    indices: np.ndarray     # (n, 3)
    positions: np.ndarray   # (n, 3)
    delays: np.ndarray      # (n,)
    horizon: float

    def __len__(self) -> int:
        return len(self.delays)


def _ceil_half(k: np.ndarray) -> np.ndarray:
    return -np.floor_divide(-k, 2)


def _parity_sign(k: np.ndarray) -> np.ndarray:
    return np.where(k % 2 == 0, 1.0, -1.0)


def _distance(diff: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(diff * diff, axis=-1))


def mirror_positions(lengths, point, indices) -> np.ndarray:
    """Vectorised mirror images of `point` for an (n, 3) index array."""
    k = np.asarray(indices, dtype=np.int64)
    L = np.asarray(lengths, dtype=np.float64)
    p = np.asarray(point, dtype=np.float64)
    return _ceil_half(k) * (2.0 * L) + _parity_sign(k) * p


def mirror_source_position(room: Room, source, k) -> Position:
    pos = mirror_positions(room.lengths, source, np.asarray(k, dtype=np.int64).reshape(1, 3))[0]
    return Position(*(float(c) for c in pos))


def mirror_receiver_position(room: Room, receiver, k) -> Position:
    """Mirror receiver with the same closed form as the mirror source."""
    return mirror_source_position(room, receiver, k)


def reciprocal_index(k) -> MirrorIndex:
    """
    Index of the mirror receiver that realises the same physical path as
    mirror source `k`: odd components are kept, even components negated.
    """
    return MirrorIndex(*(int(c) if int(c) % 2 else -int(c) for c in k))


def path_delay(mirror_pos, receiver, c: float) -> float:
    diff = np.asarray(mirror_pos, dtype=np.float64) - np.asarray(receiver, dtype=np.float64)
    return float(_distance(diff) / c)


def arrival_direction(mirror_pos, receiver) -> np.ndarray:
    diff = np.asarray(mirror_pos, dtype=np.float64) - np.asarray(receiver, dtype=np.float64)
    norm = float(_distance(diff))
    if norm == 0.0:
        raise DegenerateGeometryError("Direction between coincident points is undefined")
    return diff / norm


def departure_signs(indices) -> np.ndarray:
    """Diagonal of the matrix mapping arrival to departure direction: -(-1)^k per axis."""
    return -_parity_sign(np.asarray(indices, dtype=np.int64))


def departure_from_arrival(k, doa) -> np.ndarray:
    return departure_signs(k) * np.asarray(doa, dtype=np.float64)


def wall_interaction_counts(k) -> tuple[int, int, int, int, int, int]:
    counts = []
    for component in k:
        component = int(component)
        counts.append(abs(math.floor(component / 2)))
        counts.append(abs(math.ceil(component / 2)))
    return tuple(counts)


def reflection_gains(room: Room, indices) -> np.ndarray:
    k = np.asarray(indices, dtype=np.int64).reshape(-1, 3)
    gains = np.asarray(room.wall_gains, dtype=np.float64)
    low = np.abs(np.floor_divide(k, 2))
    high = np.abs(_ceil_half(k))
    result = np.ones(len(k))
    for axis in range(3):
        result *= gains[2 * axis] ** low[:, axis] * gains[2 * axis + 1] ** high[:, axis]
    return result


def reflection_gain(room: Room, k) -> float:
    return float(reflection_gains(room, k)[0])


def index_bounds(room: Room, tau_max: float, c: float) -> tuple[int, int, int]:
    """Per-axis |k| bound: the image along an axis is at least (|k|-1)*L away from the receiver."""
    reach = c * tau_max
    return tuple(int(math.ceil(reach / length)) + 1 for length in room.lengths)


def mirror_source_table(room: Room, source, receiver, tau_max: float, c: float) -> MirrorSourceTable:
    """
    All mirror sources with delay <= tau_max, lexicographic in k.

    :raises ResourceLimitError: index cube larger than settings.enumeration.max_indices
    """
    if tau_max < 0:
        return MirrorSourceTable(np.zeros((0, 3), dtype=np.int64), np.zeros((0, 3)), np.zeros(0), tau_max)

    bx, by, bz = index_bounds(room, tau_max, c)
    cube = (2 * bx + 1) * (2 * by + 1) * (2 * bz + 1)
    if cube > settings.enumeration.max_indices:
        raise ResourceLimitError(
            f"Index cube of {cube} entries exceeds the cap of {settings.enumeration.max_indices}")
    logger.debug("Enumerating %s mirror indices up to %s s", cube, tau_max)

    ky, kz = np.meshgrid(np.arange(-by, by + 1), np.arange(-bz, bz + 1), indexing="ij")
    plane = np.column_stack([np.zeros(ky.size, dtype=np.int64), ky.ravel(), kz.ravel()])
    receiver = np.asarray(receiver, dtype=np.float64)

    indices, positions, delays = [], [], []
    for kx in range(-bx, bx + 1):
        plane[:, 0] = kx
        pos = mirror_positions(room.lengths, source, plane)
        tau = _distance(pos - receiver) / c
        keep = tau <= tau_max
        if np.any(keep):
            indices.append(plane[keep].copy())
            positions.append(pos[keep])
            delays.append(tau[keep])

    if not indices:
        return MirrorSourceTable(np.zeros((0, 3), dtype=np.int64), np.zeros((0, 3)), np.zeros(0), tau_max)
    return MirrorSourceTable(
        indices=np.concatenate(indices),
        positions=np.concatenate(positions),
        delays=np.concatenate(delays),
        horizon=tau_max,
    )


def enumerate_indices(room: Room, source, receiver, tau_max: float,
                      c: float) -> list[tuple[MirrorIndex, Position, float]]:
    table = mirror_source_table(room, source, receiver, tau_max, c)
    return [
        (MirrorIndex(*(int(v) for v in k)), Position(*(float(v) for v in p)), float(t))
        for k, p, t in zip(table.indices, table.positions, table.delays)
    ]
