import math

import numpy as np
import pytest

from core.exceptions import ConfigurationError, DegenerateGeometryError, OutOfHorizonError, UndefinedMomentsError
from core.models import CapPattern, PathSet, RadioConfig, Room, SampleGrid, SignalTrace, Terminal
from services.channel import (aim_at_line_of_sight, arrival_count, carrier_phases, enumerate_paths,
                              signal_moments, sinc_pulse, synthesize_signal)
from services.geometry import path_delay
from tests.helpers import C, REFERENCE_RX, REFERENCE_TX


def single_path(delay: float, power: float = 1.0, phase: float = 0.0, horizon: float = 1e-6) -> PathSet:
    return PathSet(
        indices=np.zeros((1, 3), dtype=np.int64),
        delays=np.array([delay]),
        dod=np.array([[1.0, 0.0, 0.0]]),
        doa=np.array([[-1.0, 0.0, 0.0]]),
        power_gains=np.array([power]),
        phases=np.array([phase]),
        horizon=horizon,
    )


def concat(a: PathSet, b: PathSet) -> PathSet:
    return PathSet(
        indices=np.vstack([a.indices, b.indices]),
        delays=np.concatenate([a.delays, b.delays]),
        dod=np.vstack([a.dod, b.dod]),
        doa=np.vstack([a.doa, b.doa]),
        power_gains=np.concatenate([a.power_gains, b.power_gains]),
        phases=np.concatenate([a.phases, b.phases]),
        horizon=max(a.horizon, b.horizon),
    )


@pytest.fixture
def reference_terminals():
    return Terminal(position=REFERENCE_TX), Terminal(position=REFERENCE_RX)


class TestEnumeratePaths:
    def test_friis_reduction(self, room):
        radio = RadioConfig(center_frequency=None, wavelength=5e-3)
        tx, rx = Terminal(position=(2.0, 2.5, 1.5)), Terminal(position=(3.0, 2.5, 1.5))
        paths = enumerate_paths(room, tx, rx, radio, 2.0 / C)
        assert len(paths) == 1
        direct = paths[0]
        assert tuple(direct.k) == (0, 0, 0)
        assert direct.power_gain == pytest.approx((5e-3 / (4 * math.pi)) ** 2)
        assert direct.power_gain == pytest.approx(1.583e-7, rel=1e-3)
        np.testing.assert_allclose(direct.dod, -direct.doa)

    def test_reference_direct_path_first(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 30e-9).by_delay()
        assert paths.delays[0] == pytest.approx(7.265e-9, abs=1e-12)
        assert tuple(paths.indices[0]) == (0, 0, 0)

    def test_gain_formula(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 30e-9)
        order = np.abs(paths.indices).sum(axis=1)
        expected = 0.6 ** order / (4 * math.pi * C * paths.delays / radio.carrier_wavelength) ** 2
        np.testing.assert_allclose(paths.power_gains, expected, rtol=1e-12)

    def test_lexicographic_order(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        keys = [tuple(k) for k in enumerate_paths(room, tx, rx, radio, 30e-9).indices]
        assert keys == sorted(keys)

    def test_beams_pointing_apart_drop_direct_path(self, room, radio):
        los = np.subtract(REFERENCE_RX, REFERENCE_TX) / math.sqrt(4.75)
        tx = Terminal(position=REFERENCE_TX, pattern=CapPattern(fraction=0.05, orientation=tuple(-los)))
        rx = Terminal(position=REFERENCE_RX, pattern=CapPattern(fraction=0.05, orientation=tuple(los)))
        paths = enumerate_paths(room, tx, rx, radio, 30e-9)
        assert (0, 0, 0) not in {tuple(k) for k in paths.indices}

    def test_aim_keeps_direct_path(self, room, radio):
        tx = Terminal(position=REFERENCE_TX, pattern=CapPattern(fraction=0.5))
        rx = Terminal(position=REFERENCE_RX, pattern=CapPattern(fraction=0.5))
        tx, rx = aim_at_line_of_sight(tx, rx)
        paths = enumerate_paths(room, tx, rx, radio, 30e-9)
        assert (0, 0, 0) in {tuple(k) for k in paths.indices}
        direct = paths[[tuple(k) for k in paths.indices].index((0, 0, 0))]
        # both hemispheres add a factor 2 each
        assert direct.power_gain == pytest.approx(4 * (radio.carrier_wavelength / (4 * math.pi * C * direct.delay)) ** 2)

    def test_swapping_terminals_keeps_the_channel(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        forward = enumerate_paths(room, tx, rx, radio, 25e-9)
        backward = enumerate_paths(room, rx, tx, radio, 25e-9)
        assert len(forward) == len(backward)
        np.testing.assert_allclose(np.sort(forward.delays), np.sort(backward.delays), rtol=1e-12)
        np.testing.assert_allclose(np.sort(forward.power_gains), np.sort(backward.power_gains), rtol=1e-9)

    def test_gains_decay_with_reflection_order(self, room, radio):
        tx = Terminal(position=REFERENCE_TX, pattern=CapPattern(fraction=0.25, orientation=(1.0, 0.0, 0.0)))
        rx = Terminal(position=REFERENCE_RX, pattern=CapPattern(fraction=0.5, orientation=(0.0, 0.0, 1.0)))
        paths = enumerate_paths(room, tx, rx, radio, 40e-9)
        order = np.abs(paths.indices).sum(axis=1)
        spreading = (4 * math.pi * C * paths.delays / radio.carrier_wavelength) ** 2
        bound = 0.6 ** order / spreading / (0.25 * 0.5)
        assert len(paths) > 0
        assert np.all(paths.power_gains <= bound * (1 + 1e-12))

    def test_directive_paths_are_a_subset(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        iso = enumerate_paths(room, tx, rx, radio, 40e-9)
        narrow = Terminal(position=REFERENCE_TX, pattern=CapPattern(fraction=0.25, orientation=(0.0, 1.0, 0.0)))
        directive = enumerate_paths(room, narrow, rx, radio, 40e-9)
        assert 0 < len(directive) < len(iso)
        assert {tuple(k) for k in directive.indices} <= {tuple(k) for k in iso.indices}

    def test_filters_commute_with_truncation(self, room, radio):
        tx = Terminal(position=REFERENCE_TX, pattern=CapPattern(fraction=0.25, orientation=(1.0, 0.0, 0.0)))
        rx = Terminal(position=REFERENCE_RX, pattern=CapPattern(fraction=0.5, orientation=(0.0, 0.0, 1.0)))
        long = enumerate_paths(room, tx, rx, radio, 40e-9)
        short = enumerate_paths(room, tx, rx, radio, 25e-9)
        truncated = long.select(long.delays <= 25e-9)
        np.testing.assert_array_equal(truncated.indices, short.indices)
        np.testing.assert_array_equal(truncated.delays, short.delays)

    def test_below_direct_delay_is_empty(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 5e-9)
        assert len(paths) == 0
        assert arrival_count(paths, 5e-9) == 0

    def test_coincident_terminals_raise(self, room, radio):
        with pytest.raises(DegenerateGeometryError):
            enumerate_paths(room, Terminal(position=REFERENCE_TX), Terminal(position=REFERENCE_TX), radio, 20e-9)

    def test_random_phases_need_a_stream(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        with pytest.raises(ConfigurationError):
            enumerate_paths(room, tx, rx, radio, 20e-9, phase_mode="random")

    def test_random_phases_are_seeded(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        a = enumerate_paths(room, tx, rx, radio, 20e-9, rng=np.random.default_rng(3), phase_mode="random")
        b = enumerate_paths(room, tx, rx, radio, 20e-9, rng=np.random.default_rng(3), phase_mode="random")
        np.testing.assert_array_equal(a.phases, b.phases)
        assert np.all((a.phases >= 0.0) & (a.phases < 2 * math.pi))

    def test_carrier_phases(self, radio):
        tau = np.array([0.0, 0.25, 0.5]) * radio.carrier_wavelength / C
        np.testing.assert_allclose(carrier_phases(tau, radio), [0.0, 1.5 * math.pi, math.pi], atol=1e-9)


class TestArrivalCount:
    def test_total_matches_list(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 40e-9)
        assert arrival_count(paths, 40e-9) == len(paths)

    def test_step_at_direct_delay(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 20e-9)
        tau0 = path_delay(REFERENCE_TX, REFERENCE_RX, C)
        assert arrival_count(paths, np.nextafter(tau0, 0.0)) == 0
        assert arrival_count(paths, tau0) == 1

    def test_vectorised_and_monotone(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 40e-9)
        counts = arrival_count(paths, np.linspace(0.0, 40e-9, 81))
        assert counts.shape == (81,)
        assert np.all(np.diff(counts) >= 0)

    def test_asymptote(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        tau = 100e-9
        paths = enumerate_paths(room, tx, rx, radio, tau)
        ratio = arrival_count(paths, tau) * 3 * room.volume / (4 * math.pi * C ** 3 * tau ** 3)
        assert 0.95 <= ratio <= 1.05

    def test_beyond_horizon(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 20e-9)
        with pytest.raises(OutOfHorizonError):
            arrival_count(paths, 21e-9)


class TestSincPulse:
    def test_peak_and_zeros(self, radio):
        assert sinc_pulse(radio, 0.0) == 1.0
        zeros = np.arange(1, 6) / radio.bandwidth
        np.testing.assert_allclose(sinc_pulse(radio, zeros), 0.0, atol=1e-12)
        np.testing.assert_allclose(sinc_pulse(radio, -zeros), 0.0, atol=1e-12)

    def test_flat_in_band(self, radio):
        step = 1.0 / (8 * radio.bandwidth)
        t = (np.arange(2 ** 16) - 2 ** 15) * step
        spectrum = np.abs(np.fft.fft(sinc_pulse(radio, t))) * step
        freqs = np.fft.fftfreq(len(t), step)
        in_band = np.abs(freqs) < 0.4 * radio.bandwidth
        np.testing.assert_allclose(spectrum[in_band], 1.0 / radio.bandwidth, rtol=0.01)


class TestSynthesis:
    def test_single_path_is_shifted_pulse(self, radio):
        grid = SampleGrid.covering(20e-9, radio)
        trace = synthesize_signal(single_path(10e-9), radio, grid)
        np.testing.assert_allclose(trace.samples, sinc_pulse(radio, grid.times - 10e-9), atol=1e-12)

    def test_opposite_phases_cancel(self, radio):
        grid = SampleGrid.covering(20e-9, radio)
        paths = concat(single_path(10e-9, phase=0.0), single_path(10e-9, phase=math.pi))
        trace = synthesize_signal(paths, radio, grid)
        np.testing.assert_allclose(np.abs(trace.samples), 0.0, atol=1e-12)

    def test_empty_path_set(self, radio):
        grid = SampleGrid.covering(10e-9, radio)
        trace = synthesize_signal(PathSet.empty(10e-9), radio, grid)
        assert np.all(trace.samples == 0)
        with pytest.raises(UndefinedMomentsError):
            signal_moments(trace)

    def test_chunking_does_not_change_result(self, room, radio, reference_terminals, monkeypatch):
        from core import settings
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 30e-9)
        grid = SampleGrid.covering(30e-9, radio)
        whole = synthesize_signal(paths, radio, grid)
        monkeypatch.setattr(settings.enumeration, "path_chunk", 7)
        chunked = synthesize_signal(paths, radio, grid)
        np.testing.assert_allclose(chunked.samples, whole.samples, rtol=1e-10, atol=1e-20)

    def test_phase_mode_override(self, radio):
        grid = SampleGrid.covering(20e-9, radio)
        carrier = synthesize_signal(single_path(10.004e-9, phase=1.0), radio, grid, phase_mode="carrier")
        expected_phase = carrier_phases(np.array([10.004e-9]), radio)[0]
        peak = carrier.samples[np.argmin(np.abs(grid.times - 10.004e-9))]
        assert np.angle(peak) % (2 * math.pi) == pytest.approx(expected_phase, abs=1e-9)


    def test_random_phases_average_to_incoherent_power(self, radio, rng):
        paths = concat(concat(single_path(10e-9, 1.0), single_path(10.3e-9, 0.5)), single_path(11e-9, 0.25))
        grid = SampleGrid.covering(15e-9, radio)
        draws = np.stack([synthesize_signal(paths, radio, grid, phase_mode="random", rng=rng).power
                          for _ in range(2000)])
        expected = sum(p * np.abs(sinc_pulse(radio, grid.times - d)) ** 2
                       for d, p in zip(paths.delays, paths.power_gains))
        stderr = draws.std(axis=0, ddof=1) / math.sqrt(len(draws))
        assert np.all(np.abs(draws.mean(axis=0) - expected) <= 5 * stderr + 1e-12)


class TestMoments:
    def test_single_path_centre(self, radio):
        grid = SampleGrid.covering(20e-9, radio)
        trace = synthesize_signal(single_path(7.265e-9), radio, grid)
        mean_delay, _ = signal_moments(trace)
        assert mean_delay == pytest.approx(7.265e-9, abs=grid.step)

    def test_two_separated_paths(self, radio):
        grid = SampleGrid.covering(60e-9, radio, padding=200)
        t1, t2 = 10e-9, 50e-9
        one = signal_moments(synthesize_signal(single_path(t1), radio, grid))
        paths = concat(single_path(t1), single_path(t2))
        mean_delay, spread = signal_moments(synthesize_signal(paths, radio, grid))
        assert mean_delay == pytest.approx((t1 + t2) / 2, rel=0.02)
        assert spread ** 2 == pytest.approx((t2 - t1) ** 2 / 4 + one[1] ** 2, rel=0.05)

    def test_scale_invariance(self, room, radio, reference_terminals):
        tx, rx = reference_terminals
        paths = enumerate_paths(room, tx, rx, radio, 30e-9)
        trace = synthesize_signal(paths, radio, SampleGrid.covering(30e-9, radio))
        a = signal_moments(trace)
        rescaled = SignalTrace(start=trace.start, step=trace.step, samples=trace.samples * (3.7 - 1.2j))
        b = signal_moments(rescaled)
        assert b == pytest.approx(a, rel=1e-9)

    def test_zero_trace(self):
        with pytest.raises(UndefinedMomentsError):
            signal_moments(SignalTrace(start=0.0, step=1e-10, samples=np.zeros(10, dtype=complex)))

    def test_rooms_of_different_size(self, radio):
        small = Room(lengths=(3.0, 3.0, 2.5))
        large = Room(lengths=(10.0, 8.0, 3.0))
        spreads = []
        for room in (small, large):
            tx, rx = Terminal(position=(1.0, 1.2, 1.1)), Terminal(position=(2.0, 2.1, 1.3))
            paths = enumerate_paths(room, tx, rx, radio, 80e-9)
            spreads.append(signal_moments(synthesize_signal(paths, radio, SampleGrid.covering(80e-9, radio)))[1])
        assert spreads[1] > spreads[0]
