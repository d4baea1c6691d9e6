__all__ = [
    "build_parser",
    "EXIT_OK",
    "EXIT_CHECK_FAILED",
    "EXIT_USAGE",
    "EXIT_IO",
]
import argparse

from .common import EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_IO
from .paths_handler import register as register_paths
from .signal_handler import register as register_signal
from .theory_handler import register as register_theory
from .mc_handler import register as register_mc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roomsim",
        description="Mirror-source radio channel simulator for rectangular rooms.",
        epilog="exit codes: 0 success, 1 check failed, 2 usage or configuration error, 3 I/O error",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    register_paths(subparsers)
    register_signal(subparsers)
    register_theory(subparsers)
    register_mc(subparsers)
    return parser
