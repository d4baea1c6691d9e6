from dataclasses import dataclass
from multiprocessing import Pool

import numpy as np

from core import logger
from core.exceptions import ConfigurationError, EmptySampleError, UndefinedMomentsError
from core.models import Ecdf, McConfig, McEstimate, SampleGrid, Terminal
from services.antenna import sample_orientation, sample_position
from services.channel import arrival_count, enumerate_paths, signal_moments, synthesize_signal
from services.geometry import path_delay

MAX_PLACEMENT_ATTEMPTS = 10_000


@dataclass(frozen=True, eq=False)
class RunRecord:
    run_index: int
    tx_position: tuple[float, float, float]
    rx_position: tuple[float, float, float]
    tau0: float
    n_paths: int
    mean_delay: float
    rms_spread: float
    missing: bool


@dataclass(frozen=True, eq=False)
class RunOutput:
    record: RunRecord
    counts: np.ndarray
    power: np.ndarray | None


@dataclass(frozen=True, eq=False)
class EnsembleResult:
    config: McConfig
    count: McEstimate
    count_squared: McEstimate
    power: McEstimate | None
    mean_delay: Ecdf | None
    rms_spread: Ecdf | None
    records: list[RunRecord]
    counts: np.ndarray

    @property
    def missing(self) -> int:
        return sum(record.missing for record in self.records)

    @property
    def count_variance(self) -> np.ndarray:
        ddof = 1 if self.counts.shape[0] > 1 else 0
        return self.counts.var(axis=0, ddof=ddof)


def run_stream(seed: int, run_index: int) -> np.random.Generator:
    """Independent stream per run, keyed by (seed, run_index) only."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(run_index,)))


def _random_terminal(cfg_pattern, rng: np.random.Generator, room, position=None) -> Terminal:
    position = sample_position(rng, room) if position is None else position
    return Terminal(position=tuple(position), pattern=cfg_pattern.with_orientation(sample_orientation(rng)))


def place_terminals(cfg: McConfig, rng: np.random.Generator) -> tuple[Terminal, Terminal]:
    """Draw transmitter and receiver placement according to the randomization mode."""
    room = cfg.room
    if cfg.mode == "both-random":
        tx = _random_terminal(cfg.tx_pattern, rng, room)
        rx = _random_terminal(cfg.rx_pattern, rng, room)
    elif cfg.mode == "fixed-rx":
        rx = Terminal(position=cfg.rx_position, pattern=cfg.rx_pattern)
        tx = _random_terminal(cfg.tx_pattern, rng, room)
    elif cfg.mode == "fixed-orientation-tx":
        rx = Terminal(position=cfg.rx_position, pattern=cfg.rx_pattern)
        tx = Terminal(position=tuple(sample_position(rng, room)), pattern=cfg.tx_pattern)
    else:
        distance = cfg.distance if cfg.distance is not None else float(
            np.linalg.norm(np.subtract(cfg.tx_position, cfg.rx_position)))
        rx = _random_terminal(cfg.rx_pattern, rng, room)
        for _ in range(MAX_PLACEMENT_ATTEMPTS):
            candidate = rx.r + distance * sample_orientation(rng)
            if room.contains(candidate):
                break
        else:
            raise ConfigurationError(f"Could not place a transmitter at distance {distance} m inside the room")
        tx = _random_terminal(cfg.tx_pattern, rng, room, position=candidate)
    return tx, rx


def simulate_run(cfg: McConfig, run_index: int) -> RunOutput:
    rng = run_stream(cfg.seed, run_index)
    tx, rx = place_terminals(cfg, rng)
    radio = cfg.radio
    grid = cfg.curve_grid

    paths = enumerate_paths(cfg.room, tx, rx, radio, cfg.tau_max, rng=rng, phase_mode=cfg.phase_mode)
    counts = arrival_count(paths, grid.times)
    tau0 = path_delay(tx.r, rx.r, radio.speed_of_light)

    power = None
    mean_delay, rms_spread, missing = np.nan, np.nan, False
    if cfg.synthesize:
        early = paths.select(paths.delays <= cfg.cutoff)
        trace_grid = SampleGrid.covering(cfg.cutoff, radio)
        trace = synthesize_signal(early, radio, trace_grid)
        try:
            mean_delay, rms_spread = signal_moments(trace)
        except UndefinedMomentsError:
            missing = True
        if cfg.tau_max == cfg.cutoff:
            power = np.interp(grid.times, trace.times, trace.power)
        else:
            power = synthesize_signal(paths, radio, grid).power

    record = RunRecord(
        run_index=run_index,
        tx_position=tuple(float(v) for v in tx.position),
        rx_position=tuple(float(v) for v in rx.position),
        tau0=tau0,
        n_paths=len(paths),
        mean_delay=mean_delay,
        rms_spread=rms_spread,
        missing=missing,
    )
    return RunOutput(record=record, counts=np.asarray(counts, dtype=np.int64), power=power)


def ecdf(samples) -> Ecdf:
    """
    Right-continuous empirical CDF of the finite samples; NaNs count as missing.

    :raises EmptySampleError: no finite sample
    """
    x = np.asarray(samples, dtype=np.float64).ravel()
    finite = np.isfinite(x)
    values = np.sort(x[finite])
    if len(values) == 0:
        raise EmptySampleError("ECDF needs at least one finite sample")
    probabilities = np.arange(1, len(values) + 1) / len(values)
    return Ecdf(values=values, probabilities=probabilities, missing=int(np.count_nonzero(~finite)))


def bootstrap_median(samples, rng: np.random.Generator, n_boot: int = 1000) -> tuple[float, float]:
    """
    Sample median and its bootstrap standard error.

    :return: (median, standard error)
    """
    x = np.asarray(samples, dtype=np.float64)
    x = x[np.isfinite(x)]
    if len(x) == 0:
        raise EmptySampleError("Bootstrap needs at least one finite sample")
    resampled = rng.choice(x, size=(n_boot, len(x)), replace=True)
    medians = np.median(resampled, axis=1)
    return float(np.median(x)), float(medians.std(ddof=1))


class EnsembleRunner:
    def __init__(self, cfg: McConfig):
        self.cfg = cfg

    def _outputs(self) -> list[RunOutput]:
        cfg = self.cfg
        tasks = [(cfg, i) for i in range(cfg.runs)]
        if cfg.workers == 1 or cfg.runs == 1:
            return [simulate_run(*task) for task in tasks]
        # starmap keeps run-index order regardless of scheduling
        with Pool(processes=cfg.workers) as pool:
            return pool.starmap(simulate_run, tasks, chunksize=max(1, cfg.runs // (4 * cfg.workers)))

    def run(self) -> EnsembleResult:
        cfg = self.cfg
        logger.info("Starting %s Monte Carlo runs (mode %s, seed %s, %s workers)",
                    cfg.runs, cfg.mode, cfg.seed, cfg.workers)
        outputs = self._outputs()

        grid = cfg.curve_grid.times
        counts = np.stack([out.counts for out in outputs])
        count = McEstimate.from_samples(grid, counts)
        count_squared = McEstimate.from_samples(grid, counts.astype(np.float64) ** 2)

        records = [out.record for out in outputs]
        power = mean_delay = rms_spread = None
        if cfg.synthesize:
            power = McEstimate.from_samples(grid, np.stack([out.power for out in outputs]))
            try:
                mean_delay = ecdf([r.mean_delay for r in records])
                rms_spread = ecdf([r.rms_spread for r in records])
            except EmptySampleError:
                logger.warning("No run received energy; delay statistics are undefined")

        result = EnsembleResult(
            config=cfg,
            count=count,
            count_squared=count_squared,
            power=power,
            mean_delay=mean_delay,
            rms_spread=rms_spread,
            records=records,
            counts=counts,
        )
        logger.info("Finished %s runs, %s without received energy", cfg.runs, result.missing)
        return result


def run_ensemble(cfg: McConfig) -> EnsembleResult:
    return EnsembleRunner(cfg).run()
