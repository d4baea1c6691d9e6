import csv

import numpy as np
import pytest

from core.models import Dirac, TheoryCurve
from utils.csv_io import fmt, write_curve


def read_rows(path) -> list[list[str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [row for row in csv.reader(fh) if row and not row[0].startswith("#")]


class TestFmt:
    @pytest.mark.parametrize("value, expected", [
        ("count", "count"),
        (True, "1"),
        (np.bool_(False), "0"),
        (np.int64(-3), "-3"),
        (0.1, "0.10000000000000001"),
    ])
    def test_values(self, value, expected):
        assert fmt(value) == expected


class TestWriteCurve:
    def test_unit_column_is_text(self, tmp_path):
        curve = TheoryCurve(delays=np.array([0.0, 0.5]), values=np.array([0.0, 2.5]), unit="count")
        rows = read_rows(write_curve(tmp_path / "count.csv", curve))
        assert rows[0] == ["tau_seconds", "value", "unit"]
        assert rows[1:] == [["0", "0", "count"], ["0.5", "2.5", "count"]]

    def test_dirac_goes_to_the_comment_header(self, tmp_path):
        curve = TheoryCurve(delays=np.array([0.0]), values=np.array([0.0]), unit="rate",
                            dirac=Dirac(location=0.25, weight=1.0))
        text = write_curve(tmp_path / "rate.csv", curve).read_text(encoding="utf-8")
        assert text.splitlines()[:2] == ["# dirac_location,dirac_weight", "# 0.25,1"]
