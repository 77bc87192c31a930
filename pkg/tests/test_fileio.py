import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from gbfinterp.errors import DuplicateEdgeError, FileFormatError
from gbfinterp.fileio import (
    format_float,
    json_safe,
    read_coords,
    read_edge_list,
    read_signal,
    write_csv,
    write_json,
    write_signal,
)


def test_format_float_is_shortest_roundtrip():
    assert format_float(0.1) == "0.1"
    assert format_float(1.0) == "1.0"
    assert format_float(1.0 / 3.0) == "0.3333333333333333"


class TestEdgeList:
    def test_roundtrip(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("n=3\n0 1 1.5\n\n1 2 2.0\n")
        g = read_edge_list(p)
        assert g.n == 3
        assert g.adjacency[0, 1] == 1.5
        assert g.adjacency[2, 1] == 2.0

    def test_missing_header(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("0 1 1.0\n")
        with pytest.raises(FileFormatError) as err:
            read_edge_list(p)
        assert err.value.line == 1

    def test_bad_count(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("n=three\n")
        with pytest.raises(FileFormatError):
            read_edge_list(p)

    def test_wrong_column_count(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("n=2\n0 1\n")
        with pytest.raises(FileFormatError) as err:
            read_edge_list(p)
        assert err.value.line == 2

    def test_non_numeric_edge(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("n=2\n0 1 heavy\n")
        with pytest.raises(FileFormatError):
            read_edge_list(p)

    def test_empty_file(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("")
        with pytest.raises(FileFormatError):
            read_edge_list(p)

    def test_semantic_errors_pass_through(self, tmp_path):
        p = tmp_path / "g.txt"
        p.write_text("n=3\n0 1 1.0\n1 0 1.0\n")
        with pytest.raises(DuplicateEdgeError):
            read_edge_list(p)


class TestCoords:
    def test_two_and_three_dim(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("0.0 1.0\n2.0 3.0\n")
        assert_allclose(read_coords(p), [[0.0, 1.0], [2.0, 3.0]])
        p.write_text("0 1 2\n3 4 5\n")
        assert read_coords(p).shape == (2, 3)

    def test_mixed_width_rejected(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("0.0 1.0\n2.0 3.0 4.0\n")
        with pytest.raises(FileFormatError):
            read_coords(p)

    def test_count_check(self, tmp_path):
        p = tmp_path / "c.txt"
        p.write_text("0.0 1.0\n")
        with pytest.raises(FileFormatError):
            read_coords(p, n=2)


class TestSignal:
    def test_roundtrip(self, tmp_path, rng):
        p = tmp_path / "s.txt"
        values = rng.standard_normal(7)
        write_signal(p, values)
        assert_allclose(read_signal(p, n=7), values)

    def test_bad_line(self, tmp_path):
        p = tmp_path / "s.txt"
        p.write_text("1.0\nabc\n")
        with pytest.raises(FileFormatError) as err:
            read_signal(p)
        assert err.value.line == 2

    def test_count_check(self, tmp_path):
        p = tmp_path / "s.txt"
        p.write_text("1.0\n")
        with pytest.raises(FileFormatError):
            read_signal(p, n=3)


class TestCSV:
    def test_exact_bytes(self, tmp_path):
        p = tmp_path / "t.csv"
        write_csv(p, ["index", "value"], [(0, 0.5), (1, 1.0 / 3.0)])
        assert p.read_text() == "index,value\n0,0.5\n1,0.3333333333333333\n"

    def test_rewrite_is_byte_identical(self, tmp_path, rng):
        rows = [(i, float(v)) for i, v in enumerate(rng.standard_normal(20))]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(a, ["i", "v"], rows)
        write_csv(b, ["i", "v"], rows)
        assert a.read_bytes() == b.read_bytes()


class TestJSON:
    def test_exact_bytes_sorted_and_indented(self, tmp_path):
        p = tmp_path / "t.json"
        write_json(p, {"b": 1, "a": 0.5})
        assert p.read_text() == '{\n  "a": 0.5,\n  "b": 1\n}\n'

    def test_json_safe_replaces_nonfinite(self):
        out = json_safe({"x": float("inf"), "y": [np.float64("nan"), 1.5], "z": np.int64(3)})
        assert out == {"x": None, "y": [None, 1.5], "z": 3}

    def test_json_safe_is_json_serializable(self):
        out = json_safe({"flag": np.bool_(True), "arr": (np.float64(1.0), 2)})
        json.dumps(out)
