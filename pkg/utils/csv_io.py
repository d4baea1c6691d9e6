"""
Machine-readable writers shared by the commands and the results bundle.

Floats are written with 17 significant digits and a `.` decimal point so
values survive a text round trip unchanged.
"""
import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from core.models import Ecdf, McEstimate, PathSet, SignalTrace, TheoryCurve

PATH_COLUMNS = ("kx", "ky", "kz", "tau_s", "gain_pow",
                "dod_x", "dod_y", "dod_z", "doa_x", "doa_y", "doa_z", "phase_rad")


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def write_rows(path: Path | str, header: Sequence[str], rows: Iterable[Sequence],
               comments: Sequence[str] = ()) -> Path:
    """
    Write a CSV file with a header line, optional leading `#` comment lines.

    :raises OSError: the file cannot be created
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        for comment in comments:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def write_paths(path: Path | str, paths: PathSet) -> Path:
    ordered = paths.by_delay()
    rows = (
        (*ordered.indices[i], ordered.delays[i], ordered.power_gains[i],
         *ordered.dod[i], *ordered.doa[i], ordered.phases[i])
        for i in range(len(ordered))
    )
    return write_rows(path, PATH_COLUMNS, rows)


def write_trace(path: Path | str, trace: SignalTrace) -> Path:
    samples = trace.samples
    rows = zip(trace.times, samples.real, samples.imag, trace.power)
    return write_rows(path, ("t_seconds", "re", "im", "abs2"), rows)


def write_curve(path: Path | str, curve: TheoryCurve) -> Path:
    comments = ()
    if curve.dirac is not None:
        comments = ("dirac_location,dirac_weight", f"{fmt(curve.dirac.location)},{fmt(curve.dirac.weight)}")
    rows = ((tau, value, curve.unit) for tau, value in zip(curve.delays, curve.values))
    return write_rows(path, ("tau_seconds", "value", "unit"), rows, comments=comments)


def write_estimate(path: Path | str, estimate: McEstimate, name: str) -> Path:
    rows = zip(estimate.grid, estimate.mean, estimate.stderr)
    return write_rows(path, ("tau_seconds", f"{name}_mean", f"{name}_stderr"), rows,
                      comments=(f"runs={estimate.runs}",))


def write_ecdf(path: Path | str, distribution: Ecdf | None) -> Path:
    if distribution is None:
        return write_rows(path, ("value_seconds", "probability"), ())
    rows = zip(distribution.values, distribution.probabilities)
    return write_rows(path, ("value_seconds", "probability"), rows,
                      comments=(f"missing={distribution.missing}",))


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def write_json(path: Path | str, data) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True, default=_json_default, allow_nan=True)
        fh.write("\n")
    return path
