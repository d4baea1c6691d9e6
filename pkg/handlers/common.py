import argparse
import functools
import sys
from pathlib import Path
from typing import Callable

import numpy as np
from pydantic import ValidationError

from core import logger, settings
from core.exceptions import ConfigurationError, RoomSimError
from core.models import RunConfigFile, Terminal
from core.models.run_config import GridSection
from services.channel import aim_at_line_of_sight

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def load_run_config(path: str | None) -> RunConfigFile:
    """
    Parse and validate a JSON run configuration; no path gives the defaults.

    :raises ConfigurationError: the file does not exist
    :raises ValidationError: schema violation
    """
    if path is None:
        return RunConfigFile()
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigurationError(f"Config file {path} not found")
    return RunConfigFile.model_validate_json(config_path.read_text(encoding="utf-8"))


def grid_argument(value: str) -> GridSection:
    """argparse type for `start:stop:step` in seconds."""
    try:
        start, stop, step = (float(part) for part in value.split(":"))
        return GridSection(start=start, stop=stop, step=step)
    except (ValueError, ValidationError) as e:
        raise argparse.ArgumentTypeError(f"invalid grid '{value}', expected start:stop:step ({e})")


def add_config_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", "-c", default=None,
                        help="JSON run configuration (schema_version 1); defaults when omitted")


def scene_terminals(cfg: RunConfigFile, aim: str | None = None) -> tuple[Terminal, Terminal]:
    """
    Transmitter and receiver from the `positions` and `antennas` sections.

    :raises ConfigurationError: the config has no positions
    """
    if cfg.positions is None:
        raise ConfigurationError("This command needs a positions section with tx and rx")
    tx = Terminal(position=cfg.positions.tx, pattern=cfg.antennas.tx)
    rx = Terminal(position=cfg.positions.rx, pattern=cfg.antennas.rx)
    if (aim or cfg.antennas.aim) == "los":
        tx, rx = aim_at_line_of_sight(tx, rx)
    return tx, rx


def phase_stream(seed: int | None) -> np.random.Generator:
    return np.random.default_rng(settings.simulation.seed if seed is None else seed)


def output_path(explicit: str | None, directory: str, name: str) -> Path:
    """Explicit file path, or `name` inside `directory` (created on demand)."""
    if explicit is not None:
        return Path(explicit)
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    return out_dir / name


def report_validation_error(e: ValidationError) -> None:
    for error in e.errors():
        location = ".".join(str(part) for part in error["loc"]) or "<root>"
        print(f"config error at {location}: {error['msg']}", file=sys.stderr)


def command(func: Callable[[argparse.Namespace], int]) -> Callable[[argparse.Namespace], int]:
    """Map library failures of a command handler onto exit codes."""

    @functools.wraps(func)
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return func(args)
        except ValidationError as e:
            logger.error("%s: invalid configuration (%s errors)", args.command, e.error_count())
            report_validation_error(e)
            return EXIT_USAGE
        except RoomSimError as e:
            logger.error("%s failed: %s", args.command, e)
            print(f"error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except OSError as e:
            logger.error("%s could not write its output: %s", args.command, e)
            print(f"I/O error: {e}", file=sys.stderr)
            return EXIT_IO

    return wrapper
