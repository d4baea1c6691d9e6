import argparse
from pathlib import Path

from core import logger
from core.exceptions import ConfigurationError, DomainError
from core.models import IsotropicPattern, McConfig
from services.comparison import ComparisonReport, compare_with_theory
from services.montecarlo import EnsembleResult, run_ensemble
from utils import write_ecdf, write_estimate, write_json, write_rows
from .common import EXIT_CHECK_FAILED, EXIT_OK, add_config_argument, command, load_run_config

RUN_COLUMNS = ("run_index", "tx_x", "tx_y", "tx_z", "rx_x", "rx_y", "rx_z",
               "tau0_s", "n_paths", "mean_delay_s", "rms_spread_s", "missing")


def write_bundle(out_dir: Path, cfg: McConfig, result: EnsembleResult, report: dict) -> list[str]:
    """
    Write the results bundle; file contents depend only on the resolved config.

    :return: Names of the files written
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    files = ["counts.csv"]
    write_estimate(out_dir / "counts.csv", result.count, "count")
    if result.power is not None:
        write_estimate(out_dir / "power.csv", result.power, "power")
        files.append("power.csv")
    write_ecdf(out_dir / "ecdf_mean_delay.csv", result.mean_delay)
    write_ecdf(out_dir / "ecdf_rms.csv", result.rms_spread)
    write_rows(out_dir / "runs.csv", RUN_COLUMNS, (
        (r.run_index, *r.tx_position, *r.rx_position, r.tau0, r.n_paths, r.mean_delay, r.rms_spread, r.missing)
        for r in result.records
    ))
    write_json(out_dir / "report.json", report)
    files += ["ecdf_mean_delay.csv", "ecdf_rms.csv", "runs.csv", "report.json", "manifest.json"]
    write_json(out_dir / "manifest.json", {
        "schema_version": 1,
        "command": "mc",
        "seed": cfg.seed,
        "runs": cfg.runs,
        "config": cfg.model_dump(mode="json", exclude={"workers"}),
        "files": files,
    })
    return files


def isotropic_reference(cfg: McConfig) -> McConfig:
    """Same campaign with isotropic antennas on an independent seed."""
    return cfg.model_copy(update={
        "tx_pattern": IsotropicPattern(),
        "rx_pattern": IsotropicPattern(),
        "seed": (cfg.seed + 1) % 2 ** 64,
    })


@command
def cmd_mc(args: argparse.Namespace) -> int:
    file_cfg = load_run_config(args.config)
    if file_cfg.mc is None and args.mode is None:
        raise ConfigurationError("The config has no mc section; pass --mode to run with defaults")
    cfg = file_cfg.to_mc_config(runs=args.runs, seed=args.seed, workers=args.threads, mode=args.mode,
                                synthesize=False if args.counts_only else None)
    out_dir = Path(args.out_dir or file_cfg.output.directory)
    # fail on an unwritable directory before spending the campaign
    out_dir.mkdir(parents=True, exist_ok=True)

    result = run_ensemble(cfg)
    reference = None
    if args.against_isotropic:
        if cfg.synthesize:
            reference = run_ensemble(isotropic_reference(cfg))
        else:
            logger.warning("--against-isotropic needs synthesised power; ignored with --counts-only")
    try:
        report = compare_with_theory(result, reference=reference).to_dict()
    except (ConfigurationError, DomainError) as e:
        if args.check:
            raise
        logger.warning("Theory comparison skipped: %s", e)
        report = {**ComparisonReport(mode=cfg.mode, runs=cfg.runs, missing=result.missing).to_dict(),
                  "status": "SKIPPED", "reason": str(e)}

    write_bundle(out_dir, cfg, result, report)
    logger.info("Monte Carlo bundle written to %s (%s)", out_dir, report["status"])
    if args.check and report["status"] != "PASS":
        return EXIT_CHECK_FAILED
    return EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("mc", help="run a Monte Carlo campaign and write the results bundle")
    add_config_argument(parser)
    parser.add_argument("--runs", type=int, default=None, help="number of runs (overrides mc.runs)")
    parser.add_argument("--seed", type=int, default=None, help="master seed (overrides mc.seed)")
    parser.add_argument("--mode", default=None,
                        choices=("both-random", "fixed-rx", "fixed-orientation-tx", "fixed-distance"),
                        help="randomization mode (overrides mc.mode)")
    parser.add_argument("--threads", type=int, default=None, help="worker processes (overrides mc.workers)")
    parser.add_argument("--counts-only", action="store_true", help="skip signal synthesis")
    parser.add_argument("--out-dir", default=None, help="bundle directory (default: output.directory)")
    parser.add_argument("--against-isotropic", action="store_true",
                        help="also run an isotropic ensemble and check that mean power ignores directivity")
    parser.add_argument("--check", action="store_true",
                        help="exit 1 unless every theory check passes")
    parser.set_defaults(handler=cmd_mc)
