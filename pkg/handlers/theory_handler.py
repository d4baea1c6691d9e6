import argparse
from pathlib import Path

import numpy as np

from core import logger
from core.models import Dirac, SceneSummary, TheoryCurve
from core.models.run_config import GridSection
from services import theory
from utils import write_curve, write_rows
from .common import EXIT_OK, add_config_argument, command, grid_argument, load_run_config

CURVES = ("count", "rate", "pds", "mixing", "bound", "moment2", "mixing-sweep")

MIXING_SWEEP_VOLUMES = (10.0, 30.0, 100.0, 300.0, 1000.0)
MIXING_SWEEP_B_OVER_OMEGA = np.logspace(8.0, 11.0, 31)


def curves_argument(value: str) -> list[str]:
    names = [name.strip() for name in value.split(",") if name.strip()]
    unknown = [name for name in names if name not in CURVES]
    if unknown or not names:
        raise argparse.ArgumentTypeError(
            f"unknown curve(s) {', '.join(unknown) or '<none>'}; choose from {', '.join(CURVES)}")
    return names


def build_scene(cfg) -> SceneSummary:
    tau0 = None
    if cfg.positions is not None:
        tau0 = float(np.linalg.norm(np.subtract(cfg.positions.tx, cfg.positions.rx))) / cfg.radio.speed_of_light
    return SceneSummary.from_setup(cfg.room, cfg.radio, cfg.antennas.tx, cfg.antennas.rx, tau0=tau0)


def theory_curve(name: str, scene: SceneSummary, tau: np.ndarray, mode: str, corrected: bool) -> TheoryCurve:
    """Sampled curve for one of the delay-domain curve names."""
    deterministic = mode == "deterministic"
    if name == "count":
        values = theory.approx_count(scene, tau) if deterministic else theory.mean_count(scene, tau)
        return TheoryCurve(delays=tau, values=values, unit="count")
    if name == "rate":
        if deterministic:
            weight, density = theory.approx_rate(scene, tau)
            return TheoryCurve(delays=tau, values=density, unit="rate", dirac=Dirac(scene.tau0, weight))
        return TheoryCurve(delays=tau, values=theory.mean_rate(scene, tau), unit="rate")
    if name == "pds":
        return theory.pds(scene, mode, tau, corrected=corrected)
    if name == "bound":
        return TheoryCurve(delays=tau, values=theory.count_upper_bound(scene, tau), unit="count")
    return TheoryCurve(delays=tau, values=theory.count_second_moment(scene, tau), unit="count-squared")


def write_mixing(path: Path, scene: SceneSummary) -> None:
    tau_mix = theory.mixing_time(scene)
    write_rows(path, ("tau_mix_seconds", "volume_m3", "bandwidth_hz", "omega_product"),
               [(tau_mix, scene.volume, scene.bandwidth, scene.omega_product)])


def write_mixing_sweep(path: Path, scene: SceneSummary) -> None:
    table = theory.mixing_time_table(MIXING_SWEEP_VOLUMES, MIXING_SWEEP_B_OVER_OMEGA, scene.speed_of_light)
    rows = (
        (volume, b, table[i, j])
        for i, volume in enumerate(MIXING_SWEEP_VOLUMES)
        for j, b in enumerate(MIXING_SWEEP_B_OVER_OMEGA)
    )
    write_rows(path, ("volume_m3", "b_over_omega_hz", "tau_mix_seconds"), rows)


@command
def cmd_theory(args: argparse.Namespace) -> int:
    cfg = load_run_config(args.config)
    scene = build_scene(cfg)
    grid = (args.grid or GridSection()).to_grid()
    tau = grid.times

    out_dir = Path(args.out_dir or cfg.output.directory)
    out_dir.mkdir(parents=True, exist_ok=True)

    for name in dict.fromkeys(args.curves):
        target = out_dir / f"{name}.csv"
        if name == "mixing":
            write_mixing(target, scene)
        elif name == "mixing-sweep":
            write_mixing_sweep(target, scene)
        else:
            write_curve(target, theory_curve(name, scene, tau, args.mode, args.corrected))
        logger.info("Wrote %s curve to %s", name, target)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("theory", help="evaluate closed-form curves on a delay grid")
    add_config_argument(parser)
    parser.add_argument("--curves", type=curves_argument, default=["count", "rate", "pds", "mixing"],
                        help=f"comma-separated subset of {','.join(CURVES)}")
    parser.add_argument("--grid", type=grid_argument, default=None,
                        help="delay grid start:stop:step in seconds (default 0:120e-9:0.25e-9)")
    parser.add_argument("--mode", choices=("randomized", "deterministic"), default="randomized",
                        help="placement model for count, rate and pds; deterministic needs positions")
    parser.add_argument("--corrected", action="store_true",
                        help="apply the interaction-count variance correction to the pds decay time")
    parser.add_argument("--out-dir", default=None, help="directory for <curve>.csv (default: output.directory)")
    parser.set_defaults(handler=cmd_theory)
