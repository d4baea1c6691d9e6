__all__ = [
    "PATH_COLUMNS",
    "fmt",
    "write_rows",
    "write_paths",
    "write_trace",
    "write_curve",
    "write_estimate",
    "write_ecdf",
    "write_json",
]

from .csv_io import (
    PATH_COLUMNS,
    fmt,
    write_rows,
    write_paths,
    write_trace,
    write_curve,
    write_estimate,
    write_ecdf,
    write_json,
)
