import math

import numpy as np
from scipy.integrate import trapezoid

from core import logger, settings
from core.exceptions import (ConfigurationError, DegenerateGeometryError,
                             OutOfHorizonError, UndefinedMomentsError)
from core.models import PathSet, RadioConfig, Room, SampleGrid, SignalTrace, Terminal
from core.models.radio import PhaseMode
from services.geometry import departure_signs, mirror_source_table, reflection_gains

TWO_PI = 2.0 * math.pi
HORIZON_RTOL = 1e-12


def aim_at_line_of_sight(tx: Terminal, rx: Terminal) -> tuple[Terminal, Terminal]:
    """Point both boresights along the direct path."""
    los = rx.r - tx.r
    norm = float(np.linalg.norm(los))
    if norm == 0.0:
        raise DegenerateGeometryError("Transmitter and receiver coincide")
    return tx.pointed(los / norm), rx.pointed(-los / norm)


def _check_wavelength(room: Room, radio: RadioConfig) -> None:
    ratio = radio.carrier_wavelength / min(room.lengths)
    if ratio > settings.physics.wavelength_ratio_warning:
        logger.warning("Carrier wavelength %s m is not small against the room (ratio %s)",
                       radio.carrier_wavelength, ratio)


def carrier_phases(delays: np.ndarray, radio: RadioConfig) -> np.ndarray:
    """phi_k = -2*pi*c*tau_k/l_c, wrapped to [0, 2*pi)."""
    return np.mod(-TWO_PI * radio.speed_of_light * delays / radio.carrier_wavelength, TWO_PI)


def draw_phases(n: int, phase_mode: PhaseMode, delays: np.ndarray, radio: RadioConfig,
                rng: np.random.Generator | None) -> np.ndarray:
    if phase_mode == "carrier":
        return carrier_phases(delays, radio)
    if rng is None:
        raise ConfigurationError("Random phase mode needs a random stream")
    return rng.uniform(0.0, TWO_PI, size=n)


def enumerate_paths(room: Room, tx: Terminal, rx: Terminal, radio: RadioConfig, tau_max: float,
                    rng: np.random.Generator | None = None,
                    phase_mode: PhaseMode | None = None) -> PathSet:
    """
    Paths with delay <= tau_max whose departure and arrival directions fall
    inside the transmitter and receiver beam supports.

    :param rng: Needed only for the random phase mode
    :param phase_mode: Overrides radio.phase_mode
    :return: Path set in lexicographic mirror-index order
    """
    if np.array_equal(tx.r, rx.r):
        raise DegenerateGeometryError("Transmitter and receiver coincide")
    _check_wavelength(room, radio)

    c = radio.speed_of_light
    table = mirror_source_table(room, tx.r, rx.r, tau_max, c)
    if len(table) == 0:
        return PathSet.empty(tau_max)

    diff = table.positions - rx.r
    doa = diff / np.linalg.norm(diff, axis=1, keepdims=True)
    dod = departure_signs(table.indices) * doa

    g_tx = tx.pattern.gain(dod)
    g_rx = rx.pattern.gain(doa)
    keep = (g_tx > 0.0) & (g_rx > 0.0)

    delays = table.delays[keep]
    spreading = (4.0 * math.pi * c * delays / radio.carrier_wavelength) ** 2
    power = reflection_gains(room, table.indices[keep]) * g_tx[keep] * g_rx[keep] / spreading
    phases = draw_phases(len(delays), phase_mode or radio.phase_mode, delays, radio, rng)

    logger.debug("%s of %s mirror sources inside both beams", len(delays), len(table))
    return PathSet(
        indices=table.indices[keep],
        delays=delays,
        dod=dod[keep],
        doa=doa[keep],
        power_gains=power,
        phases=phases,
        horizon=tau_max,
    )


def arrival_count(paths: PathSet, tau):
    """
    N(tau) = #{k : tau_k <= tau}.

    :raises OutOfHorizonError: tau beyond the enumeration horizon
    """
    t = np.asarray(tau, dtype=np.float64)
    # grids built as start + n*step may overshoot the horizon by rounding
    if np.any(t > paths.horizon * (1.0 + HORIZON_RTOL)):
        raise OutOfHorizonError(f"Delay {np.max(t)} s exceeds the enumeration horizon {paths.horizon} s")
    count = np.searchsorted(paths.sorted_delays, t, side="right")
    return int(count) if count.ndim == 0 else count


def sinc_pulse(radio: RadioConfig, t) -> np.ndarray:
    """s(t) = sin(pi*B*t)/(pi*B*t) with s(0) = 1."""
    return np.sinc(radio.bandwidth * np.asarray(t, dtype=np.float64)).astype(np.complex128)


def synthesize_signal(paths: PathSet, radio: RadioConfig, grid: SampleGrid,
                      phase_mode: PhaseMode | None = None,
                      rng: np.random.Generator | None = None) -> SignalTrace:
    """
    y(t) = sum_k |alpha_k| e^{j phi_k} s(t - tau_k) on the grid.

    Phases stored on the paths are used unless `phase_mode` is given, in
    which case they are recomputed (carrier) or redrawn from `rng` (random).
    """
    t = grid.times
    y = np.zeros(len(t), dtype=np.complex128)
    if len(paths) == 0:
        return SignalTrace(start=grid.start, step=grid.step, samples=y)

    if phase_mode is not None:
        paths = paths.with_phases(draw_phases(len(paths), phase_mode, paths.delays, radio, rng))
    amplitudes = paths.amplitudes

    chunk = settings.enumeration.path_chunk
    for lo in range(0, len(paths), chunk):
        hi = lo + chunk
        pulses = sinc_pulse(radio, t[:, None] - paths.delays[None, lo:hi])
        y += pulses @ amplitudes[lo:hi]
    return SignalTrace(start=grid.start, step=grid.step, samples=y)


def signal_moments(trace: SignalTrace) -> tuple[float, float]:
    """
    Mean delay and rms delay spread of |y(t)|^2 (trapezoidal rule).

    :raises UndefinedMomentsError: zero-energy trace
    """
    t = trace.times
    p = trace.power
    energy = trapezoid(p, t)
    if not energy > 0.0:
        raise UndefinedMomentsError("Trace has no energy")
    mean_delay = trapezoid(t * p, t) / energy
    spread2 = trapezoid((t - mean_delay) ** 2 * p, t) / energy
    return float(mean_delay), float(math.sqrt(max(spread2, 0.0)))
