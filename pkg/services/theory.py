"""
Closed-form arrival counts, rates, gain moments and power-delay spectra.

Every function accepts scalar or array delays and returns the same shape.
Rates with a spike return (spike_weight, density); the spike sits at tau0.
"""
import math
from typing import Callable, Literal

import numpy as np
from scipy.integrate import trapezoid

from core import settings
from core.exceptions import ConfigurationError, DomainError
from core.models import Dirac, SceneSummary, TheoryCurve

GainMode = Literal["deterministic", "randomized"]


def _as_array(tau) -> np.ndarray:
    return np.asarray(tau, dtype=np.float64)


def _shape_like(value: np.ndarray, tau):
    return float(value) if np.ndim(tau) == 0 else value


def _ball_count(scene: SceneSummary, tau: np.ndarray) -> np.ndarray:
    c = scene.speed_of_light
    return 4.0 * math.pi * c ** 3 * tau ** 3 / (3.0 * scene.volume)


def _ball_rate(scene: SceneSummary, tau: np.ndarray) -> np.ndarray:
    c = scene.speed_of_light
    return 4.0 * math.pi * c ** 3 * tau ** 2 / scene.volume


def _require_tau0(scene: SceneSummary) -> float:
    if scene.tau0 is None:
        raise ConfigurationError("This approximation needs the direct-path delay tau0")
    return scene.tau0


def eyring_count(scene: SceneSummary, tau):
    t = _as_array(tau)
    return _shape_like(np.where(t > 0.0, _ball_count(scene, t), 0.0), tau)


def approx_count(scene: SceneSummary, tau):
    """Deterministic-placement count: 1(tau >= tau0)[1 + 4 pi c^3 (tau^3 - tau0^3)/3V] w_T w_R."""
    tau0 = _require_tau0(scene)
    t = _as_array(tau)
    bracket = 1.0 + _ball_count(scene, t) - _ball_count(scene, np.float64(tau0))
    return _shape_like(np.where(t >= tau0, bracket * scene.omega_product, 0.0), tau)


def approx_rate(scene: SceneSummary, tau):
    tau0 = _require_tau0(scene)
    t = _as_array(tau)
    density = np.where(t > tau0, _ball_rate(scene, t) * scene.omega_product, 0.0)
    return scene.omega_product, _shape_like(density, tau)


def mean_count(scene: SceneSummary, tau):
    """Ensemble mean for uniform placement and orientation; exact for the mirror-source model."""
    t = _as_array(tau)
    return _shape_like(np.where(t > 0.0, _ball_count(scene, t) * scene.omega_product, 0.0), tau)


def mean_rate(scene: SceneSummary, tau):
    t = _as_array(tau)
    return _shape_like(np.where(t > 0.0, _ball_rate(scene, t) * scene.omega_product, 0.0), tau)


def mixing_time(scene: SceneSummary, n_mix: float | None = None) -> float:
    """Delay where the mean rate reaches n_mix components per pulse duration 1/B."""
    n_mix = settings.physics.n_mix if n_mix is None else n_mix
    c = scene.speed_of_light
    return math.sqrt(n_mix * scene.bandwidth * scene.volume / (4.0 * math.pi * c ** 3 * scene.omega_product))


def mixing_time_table(volumes, b_over_omega, c: float | None = None,
                      n_mix: float | None = None) -> np.ndarray:
    """
    Mixing time over a (volume, B/(w_T w_R)) grid.

    :return: (len(volumes), len(b_over_omega)) array in seconds
    """
    c = settings.physics.speed_of_light if c is None else c
    n_mix = settings.physics.n_mix if n_mix is None else n_mix
    v = np.asarray(volumes, dtype=np.float64)[:, None]
    b = np.asarray(b_over_omega, dtype=np.float64)[None, :]
    return np.sqrt(n_mix * b * v / (4.0 * math.pi * c ** 3))


def _log_gain(g: float) -> float:
    if not 0.0 < g < 1.0:
        raise DomainError(f"Wall gain {g} must lie strictly between 0 and 1")
    return math.log(g)


def reverberation_time(scene: SceneSummary) -> float:
    return -4.0 * scene.volume / (scene.speed_of_light * scene.surface * _log_gain(scene.wall_gain))


def kuttruff_correction(g: float, gamma2: float | None = None) -> float:
    gamma2 = settings.physics.gamma_squared if gamma2 is None else gamma2
    if gamma2 < 0:
        raise DomainError("gamma^2 must be non-negative")
    return 1.0 / (1.0 + gamma2 * _log_gain(g) / 2.0)


def mean_interaction_order(scene: SceneSummary, tau):
    """Eyring's mean number of wall interactions, tau*c*S/(4V)."""
    t = _as_array(tau)
    return _shape_like(t * scene.speed_of_light * scene.surface / (4.0 * scene.volume), tau)


def gain_second_moment(scene: SceneSummary, tau, conditional_mode: GainMode = "randomized"):
    """
    Conditional mean path power at delay tau.

    Deterministic mode gives the direct path (tau == tau0) no wall loss.
    """
    t = _as_array(tau)
    if np.any(t <= 0.0):
        raise DomainError("Path gain moment is singular at tau <= 0")
    spreading = (4.0 * math.pi * scene.speed_of_light * t / scene.wavelength) ** 2
    walls = scene.wall_gain ** mean_interaction_order(scene, t)
    value = walls / spreading / scene.omega_product
    if conditional_mode == "deterministic":
        tau0 = _require_tau0(scene)
        if np.any(t < tau0):
            raise DomainError("Deterministic gain moment is defined for tau >= tau0 only")
        value = np.where(t == tau0, 1.0 / spreading / scene.omega_product, value)
    return _shape_like(value, tau)


def pds(scene: SceneSummary, mode: GainMode, tau, corrected: bool = False,
        gamma2: float | None = None) -> TheoryCurve:
    """
    Power-delay spectrum: exponential tail with optional direct-path spike.

    The tail amplitude l_c^2 c/(4 pi V) carries no beam fraction, so the
    curve is independent of the antennas.
    """
    t = _as_array(np.atleast_1d(tau))
    decay = reverberation_time(scene)
    if corrected:
        decay *= kuttruff_correction(scene.wall_gain, gamma2)
    level = scene.wavelength ** 2 * scene.speed_of_light / (4.0 * math.pi * scene.volume)

    if mode == "deterministic":
        tau0 = _require_tau0(scene)
        if tau0 <= 0.0:
            raise DomainError("The direct-path spike is singular for coincident terminals (tau0 = 0)")
        weight = (scene.wavelength / (4.0 * math.pi * scene.speed_of_light * tau0)) ** 2
        values = np.where(t > tau0, level * np.exp(-t / decay), 0.0)
        return TheoryCurve(delays=t, values=values, unit="power-density", dirac=Dirac(tau0, weight))

    values = np.where(t > 0.0, level * np.exp(-t / decay), 0.0)
    return TheoryCurve(delays=t, values=values, unit="power-density")


def expected_received_power(pds_curve: TheoryCurve, pulse: Callable[[np.ndarray], np.ndarray], tau):
    """
    E|y(tau)|^2 = integral P(tau - t)|s(t)|^2 dt.

    The sampled part is integrated with the trapezoidal rule over the curve
    abscissa (which must resolve the pulse); the Dirac adds a pulse replica.
    """
    t = _as_array(np.atleast_1d(tau))
    u = pds_curve.delays
    result = np.zeros(len(t))
    if len(u) > 1:
        kernel = np.abs(pulse(t[:, None] - u[None, :])) ** 2
        result = trapezoid(kernel * pds_curve.values[None, :], u, axis=1)
    if pds_curve.dirac is not None:
        result = result + pds_curve.dirac.weight * np.abs(pulse(t - pds_curve.dirac.location)) ** 2
    return _shape_like(result, tau)


def count_second_moment(scene: SceneSummary, tau):
    """Raw second moment E[N^2] ~ E[N]^2 + (E[N(tau + D/2c)] - E[N(tau - D/2c)])/4."""
    t = _as_array(tau)
    half = scene.diagonal / (2.0 * scene.speed_of_light)
    mean = mean_count(scene, t)
    shell = mean_count(scene, t + half) - mean_count(scene, t - half)
    return _shape_like(np.asarray(mean) ** 2 + 0.25 * np.asarray(shell), tau)


def count_variance(scene: SceneSummary, tau):
    t = _as_array(tau)
    value = np.asarray(count_second_moment(scene, t)) - np.asarray(mean_count(scene, t)) ** 2
    return _shape_like(value, tau)


def count_upper_bound(scene: SceneSummary, tau):
    """Mean count bound for random position with fixed orientation; tight when one antenna is isotropic."""
    t = _as_array(tau)
    narrow = min(scene.omega_tx, scene.omega_rx)
    return _shape_like(np.where(t > 0.0, _ball_count(scene, t) * narrow, 0.0), tau)


def rate_upper_bound(scene: SceneSummary, tau):
    t = _as_array(tau)
    narrow = min(scene.omega_tx, scene.omega_rx)
    return _shape_like(np.where(t > 0.0, _ball_rate(scene, t) * narrow, 0.0), tau)


def conditional_mean_count(scene: SceneSummary, tau, tau0: float):
    """Mean count given the direct-path delay; shares the deterministic approximation."""
    if tau0 <= 0:
        raise DomainError("tau0 must be positive")
    return approx_count(scene.with_tau0(tau0), tau)


def conditional_rate(scene: SceneSummary, tau, tau0: float):
    if tau0 <= 0:
        raise DomainError("tau0 must be positive")
    return approx_rate(scene.with_tau0(tau0), tau)
