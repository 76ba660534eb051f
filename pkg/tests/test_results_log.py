import json
import numpy as np
import pytest

from nstFrames.lib.results_log import ResultsLog, read_csv, to_plain, write_csv, write_json

def test_rows_and_float_digits(tmp_path):
    path = tmp_path / "deep" / "dir" / "out.csv"
    write_csv(path, [{"a": 0.1, "b": np.int64(3), "c": True}, {"a": 1.0 / 3.0, "b": 4, "c": False}])
    rows = read_csv(path)
    assert rows[0] == {"a": "0.10000000000000001", "b": "3", "c": "1"}
    assert float(rows[1]["a"]) == 1.0 / 3.0
    assert rows[1]["c"] == "0"

def test_unknown_column(tmp_path):
    with ResultsLog(tmp_path / "x.csv", ["a"]) as results:
        results.update({"a": 1})
        with pytest.raises(ValueError):
            results.update({"a": 2, "b": 3})
    assert len(read_csv(tmp_path / "x.csv")) == 1

def test_header_only(tmp_path):
    path = write_csv(tmp_path / "empty.csv", [], ["j", "ratio"])
    assert path.read_text() == "j,ratio\n"

def test_periodic_flush(tmp_path):
    path = tmp_path / "flush.csv"
    results = ResultsLog(path, flush_every=2)
    results.update({"n": 1})
    results.update({"n": 2})
    assert path.read_text() == "n\n1\n2\n"
    results.close()

def test_json(tmp_path):
    data = {"b": np.float64(0.5), "a": [np.int32(1), (2, 3)], "c": np.inf, "d": np.array([1.5])}
    assert to_plain(data) == {"b": 0.5, "a": [1, [2, 3]], "c": "inf", "d": [1.5]}
    path = write_json(tmp_path / "s.json", data)
    text = path.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text)["c"] == "inf"
