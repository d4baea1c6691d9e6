import numpy as np

from core.models import AntennaPattern, Position, Room


def gain(p: AntennaPattern, omega) -> np.ndarray | float:
    g = p.gain(omega)
    return float(g) if np.ndim(g) == 0 else g


def beam_fraction(p: AntennaPattern) -> float:
    return p.beam_fraction


def in_support(p: AntennaPattern, omega) -> np.ndarray | bool:
    s = p.in_support(omega)
    return bool(s) if np.ndim(s) == 0 else s


def half_beam_width(fraction: float) -> float:
    """Half-beam width of a spherical cap in radians, arccos(1 - 2*fraction)."""
    return float(np.arccos(1.0 - 2.0 * fraction))


def sample_orientation(rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """
    Uniform direction(s) on the unit sphere from normalised standard normal triples.

    :param rng: Caller-owned random stream
    :param size: Number of directions; None returns a single (3,) vector
    :return: Unit vector(s)
    """
    shape = (3,) if size is None else (size, 3)
    v = rng.standard_normal(shape)
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    # zero vectors have probability zero; redraw to stay total
    while np.any(norm == 0.0):
        v = rng.standard_normal(shape)
        norm = np.linalg.norm(v, axis=-1, keepdims=True)
    return v / norm


def sample_positions(rng: np.random.Generator, room: Room, size: int) -> np.ndarray:
    return rng.uniform(0.0, np.asarray(room.lengths), size=(size, 3))


def sample_position(rng: np.random.Generator, room: Room) -> Position:
    return Position(*(float(c) for c in sample_positions(rng, room, 1)[0]))
