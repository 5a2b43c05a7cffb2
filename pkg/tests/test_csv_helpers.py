import math

import numpy as np
import pytest

from src.core.utils.csv_helpers import atomic_artifact, format_number, read_csv, write_csv


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (0.1, "0.1"),
        (0.0, "0"),
        (1e-12, "1e-12"),
        (123456.789, "123456.789"),
        (-2.5, "-2.5"),
        (7, "7"),
        (np.int64(3), "3"),
        (True, "true"),
        (np.bool_(False), "false"),
        (math.nan, "nan"),
        (-math.inf, "-inf"),
        ("gaussian", "gaussian"),
    ],
)
def test_format_number(value, expected):
    assert format_number(value) == expected


def test_format_number_precision():
    assert format_number(math.pi, 3) == "3.14"
    assert float(format_number(math.pi)) == math.pi


def test_write_and_read_csv(tmp_path):
    path = tmp_path / "sub" / "table.csv"
    write_csv(path, ["x", "value"], [[0.5, 1e-20], [1, math.nan]], ["k=0.5", "N=64"])

    header, columns, rows = read_csv(path)
    assert header == ["k=0.5", "N=64"]
    assert columns == ["x", "value"]
    assert rows == [["0.5", "1e-20"], ["1", "nan"]]
    assert not list(path.parent.glob(".*.partial"))


def test_atomic_artifact_removes_partial_file(tmp_path):
    path = tmp_path / "out.csv"
    with pytest.raises(RuntimeError):
        with atomic_artifact(path) as tmp:
            tmp.write_text("half", encoding="utf-8")
            raise RuntimeError("interrupted")

    assert not path.exists()
    assert list(tmp_path.iterdir()) == []


def test_atomic_artifact_keeps_previous_on_failure(tmp_path):
    path = tmp_path / "out.csv"
    path.write_text("old", encoding="utf-8")
    with pytest.raises(ValueError):
        with atomic_artifact(path) as tmp:
            tmp.write_text("new", encoding="utf-8")
            raise ValueError

    assert path.read_text(encoding="utf-8") == "old"
