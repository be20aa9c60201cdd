import json
import os

from unittest.mock import patch

from services.shared.bh_utilities.output import to_csv_text, to_json_text, write_atomic
from services.surface_service.app.dto.surface import CurveRecord


class TestWriters:
    """Test suite for the deterministic JSON, CSV and file writers."""

    def test_json_keys_are_sorted(self):
        """Test key order does not depend on insertion order."""
        assert to_json_text({"b": 1, "a": 2}) == to_json_text({"a": 2, "b": 1})
        assert to_json_text({"b": 1, "a": 2}).index('"a"') < to_json_text({"b": 1, "a": 2}).index('"b"')

    def test_json_of_a_model(self):
        """Test pydantic models are dumped in JSON mode."""
        text = to_json_text(CurveRecord(surface_id="S(0,5)", weights=[1, 0, 1]))

        assert json.loads(text) == {"surface_id": "S(0,5)", "weights": [1, 0, 1]}
        assert text.endswith("\n")

    def test_csv_floats_round_trip(self):
        """Test floats are written with repr so they read back exactly."""
        value = 0.1 + 0.2

        text = to_csv_text(["i", "length"], [(0, value)])

        assert text.splitlines() == ["i,length", f"0,{value!r}"]
        assert float(text.splitlines()[1].split(",")[1]) == value

    def test_write_atomic_creates_directories(self, tmp_path):
        """Test missing parent directories are created."""
        path = tmp_path / "a" / "b" / "out.json"

        write_atomic(path, "{}\n")

        assert path.read_text() == "{}\n"

    def test_write_atomic_keeps_the_old_file_on_failure(self, tmp_path):
        """Test a failed replace leaves the previous content and no temporary file."""
        path = tmp_path / "out.txt"
        path.write_text("old")

        with patch("services.shared.bh_utilities.output.os.replace", side_effect=OSError("disk full")):
            try:
                write_atomic(path, "new")
            except OSError:
                pass

        assert path.read_text() == "old"
        assert os.listdir(tmp_path) == ["out.txt"]
