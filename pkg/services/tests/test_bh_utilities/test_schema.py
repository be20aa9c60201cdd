import json

import pytest
from pydantic import BaseModel
from typing import List

from services.shared.bh_utilities.errors import SchemaViolationError
from services.shared.bh_utilities.schema import json_pointer, load_model, load_report_body, schema_text, validate_payload


class Curve(BaseModel):
    surface_id: str
    weights: List[int]


class Listing(BaseModel):
    curves: List[Curve]


class TestJsonPointer:
    """Test suite for pointers built from pydantic locations."""

    @pytest.mark.parametrize(
        "location,pointer",
        [((), ""), (("curves", 0, "weights"), "/curves/0/weights"), (("a/b",), "/a~1b"), (("m~n",), "/m~0n")],
    )
    def test_pointer(self, location, pointer):
        """Test slashes and tildes are escaped."""
        assert json_pointer(location) == pointer


class TestValidation:
    """Test suite for validate_payload, load_model and load_report_body."""

    def test_first_error_is_located(self):
        """Test the error names the model and points at the bad value."""
        with pytest.raises(SchemaViolationError, match="does not match Listing") as caught:
            validate_payload({"curves": [{"surface_id": "S(0,5)", "weights": ["x"]}]}, Listing)

        assert caught.value.details["pointer"] == "/curves/0/weights/0"
        assert caught.value.details["errors"][0]["pointer"] == "/curves/0/weights/0"

    def test_every_error_is_listed(self):
        """Test several violations are all reported."""
        with pytest.raises(SchemaViolationError) as caught:
            validate_payload({"curves": [{}]}, Listing)

        pointers = {e["pointer"] for e in caught.value.details["errors"]}
        assert pointers == {"/curves/0/surface_id", "/curves/0/weights"}

    def test_load_model(self, tmp_path):
        """Test a valid file loads."""
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"surface_id": "S(1,1)", "weights": [1, 1, 0]}))

        assert load_model(path, Curve).weights == [1, 1, 0]

    def test_report_body_is_unwrapped(self, tmp_path):
        """Test a CLI report is read through its result with pointers under /result."""
        path = tmp_path / "r.json"
        path.write_text(json.dumps({"meta": {}, "result": {"surface_id": "S(1,1)"}}))

        with pytest.raises(SchemaViolationError) as caught:
            load_report_body(path, Curve)

        assert caught.value.details["pointer"] == "/result/weights"

    def test_schema_text_is_stable(self):
        """Test the generated schema is sorted JSON."""
        text = schema_text(Curve)

        assert json.loads(text)["required"] == ["surface_id", "weights"]
        assert text == schema_text(Curve)
