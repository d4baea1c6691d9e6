import argparse

from core import logger
from services.channel import enumerate_paths
from utils import write_paths
from .common import EXIT_OK, add_config_argument, command, load_run_config, output_path, phase_stream, scene_terminals


@command
def cmd_paths(args: argparse.Namespace) -> int:
    cfg = load_run_config(args.config)
    tx, rx = scene_terminals(cfg, args.aim)
    tau_max = cfg.output.tau_max if args.tau_max is None else args.tau_max

    paths = enumerate_paths(cfg.room, tx, rx, cfg.radio, tau_max, rng=phase_stream(args.seed))
    target = output_path(args.out, cfg.output.directory, "paths.csv")
    write_paths(target, paths)
    logger.info("Wrote %s paths up to %s s to %s", len(paths), tau_max, target)
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("paths", help="dump every path component of one scene as CSV")
    add_config_argument(parser)
    parser.add_argument("--tau-max", type=float, default=None,
                        help="enumeration horizon in seconds (overrides output.tau_max)")
    parser.add_argument("--out", default=None, help="CSV file (default: <output.directory>/paths.csv)")
    parser.add_argument("--aim", choices=("fixed", "los"), default=None,
                        help="override antennas.aim")
    parser.add_argument("--seed", type=int, default=None, help="seed for the random phase mode")
    parser.set_defaults(handler=cmd_paths)
