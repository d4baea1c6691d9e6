import argparse

from core import logger
from core.models import SampleGrid
from services.channel import enumerate_paths, synthesize_signal
from utils import write_trace
from .common import (EXIT_OK, add_config_argument, command, grid_argument, load_run_config,
                     output_path, phase_stream, scene_terminals)


@command
def cmd_signal(args: argparse.Namespace) -> int:
    cfg = load_run_config(args.config)
    tx, rx = scene_terminals(cfg, args.aim)
    tau_max = cfg.output.tau_max if args.tau_max is None else args.tau_max

    if args.grid is not None:
        grid = args.grid.to_grid()
    else:
        grid = SampleGrid.covering(tau_max, cfg.radio)

    paths = enumerate_paths(cfg.room, tx, rx, cfg.radio, tau_max, rng=phase_stream(args.seed))
    trace = synthesize_signal(paths, cfg.radio, grid)
    target = output_path(args.out, cfg.output.directory, "signal.csv")
    write_trace(target, trace)
    logger.info("Synthesised %s samples from %s paths to %s", len(trace.samples), len(paths), target)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("signal", help="synthesise the received baseband signal of one scene")
    add_config_argument(parser)
    parser.add_argument("--tau-max", type=float, default=None,
                        help="largest path delay in seconds (overrides output.tau_max)")
    parser.add_argument("--grid", type=grid_argument, default=None,
                        help="sample grid start:stop:step in seconds (default: covers tau-max with padding)")
    parser.add_argument("--out", default=None, help="CSV file (default: <output.directory>/signal.csv)")
    parser.add_argument("--aim", choices=("fixed", "los"), default=None,
                        help="override antennas.aim; los points both beams along the direct path")
    parser.add_argument("--seed", type=int, default=None, help="seed for the random phase mode")
    parser.set_defaults(handler=cmd_signal)
