import json

import pytest
from unittest.mock import Mock

from services.cli_service.app.dto.scenario import ScenarioFile
from services.cli_service.app.services.scenario_service import SCENARIO_DIR, ScenarioService
from services.metrics_service.app.services.mapping_class_service import mapping_class_from_record
from services.mlt_service.app.core.scenarios import nested_example
from services.shared.bh_utilities.errors import SchemaViolationError
from services.shared.bh_utilities.schema import load_model, validate_payload
from services.surface_service.app.services.curve_service import CurveService
from services.surface_service.app.services.surface_info import SurfaceService


def scenario_service(logger=None) -> ScenarioService:
    return ScenarioService(logger or Mock(), SurfaceService(Mock()), CurveService(Mock()))


def _word(f):
    return [(curve.weights, power) for curve, power in f.word]


class TestShippedScenarios:
    """Test class for the scenario files shipped with the repository"""

    def setup_method(self):
        self.mock_logger = Mock()
        self.service = scenario_service(self.mock_logger)

    def test_remark_matches_the_coded_example(self):
        """Test the remark scenario resolves to the same classes as nested_example"""
        resolved = self.service.shipped("remark")
        example = nested_example()

        assert resolved.surface == example.surface
        for name, f in (("f1", example.f1), ("f2", example.f2), ("f3", example.f3)):
            assert _word(mapping_class_from_record(resolved.surface, resolved.mapping_classes[name])) == _word(f)
        assert resolved.curves["q"].weights == example.q.weights
        self.mock_logger.info.assert_called_once()

    def test_remark_sequences_and_invariants(self):
        """Test the two sequences and the two candidate end invariants"""
        resolved = self.service.shipped("remark")

        assert sorted(resolved.sequences) == ["f1.f2", "f1.f3"]
        spec = resolved.sequences["f1.f3"]
        assert [factor.mapping_class.name for factor in spec.factors] == ["f1", "f3"]
        assert (spec.i_max, spec.candidate_budget) == (8, 10)
        with_pants = resolved.invariants["with-pants-curves"]
        assert len(with_pants.parabolics) == 3
        assert with_pants.endings[0].provenance == "stable(f1)"
        assert with_pants.endings[0].support_frontier == [list(resolved.curves["q"].weights)]
        assert len(resolved.invariants["without-pants-curves"].parabolics) == 1

    def test_topology_mismatch_scenario(self):
        """Test the mismatch scenario names two curves on S(0,5)"""
        resolved = self.service.shipped("topology_mismatch")

        assert resolved.surface.id == "S(0,5)"
        assert sorted(resolved.curves) == ["c", "d"]

    def test_every_shipped_scenario_validates(self):
        """Test every file in the scenario directory is a valid ScenarioFile"""
        for path in sorted(SCENARIO_DIR.glob("*.json")):
            assert load_model(path, ScenarioFile).schema_version == 1


class TestReferentialIntegrity:
    """Test class for names used before they are defined"""

    def setup_method(self):
        self.mock_logger = Mock()
        self.service = scenario_service(self.mock_logger)
        self.base = {
            "surface": {"genus": 0, "punctures": 5},
            "curves": [{"name": "a", "punctures": [0, 1]}, {"name": "b", "punctures": [1, 2]}],
            "mapping_classes": [{"name": "f", "word": [{"curve": "a", "power": 1}, {"curve": "b", "power": -1}]}],
        }

    def _resolve(self, **changes):
        payload = {**self.base, **changes}
        return self.service.resolve(validate_payload(payload, ScenarioFile))

    def test_undefined_curve_in_word(self):
        """Test a twist about an unknown curve is located by pointer"""
        word = [{"curve": "a", "power": 1}, {"curve": "z", "power": 1}]

        with pytest.raises(SchemaViolationError, match="used before it is defined") as caught:
            self._resolve(mapping_classes=[{"name": "f", "word": word}])

        assert caught.value.details["pointer"] == "/mapping_classes/0/word/1/curve"
        self.mock_logger.error.assert_called_once()

    def test_undefined_mapping_class_in_sequence(self):
        """Test a sequence factor must name a defined mapping class"""
        sequences = [{"name": "s", "factors": [{"mapping_class": "f"}, {"mapping_class": "g"}]}]

        with pytest.raises(SchemaViolationError) as caught:
            self._resolve(sequences=sequences)

        assert caught.value.details["pointer"] == "/sequences/0/factors/1/mapping_class"

    def test_undefined_frontier_curve(self):
        """Test an ending frontier must name defined curves"""
        invariants = [{"name": "p", "parabolics": ["a"], "endings": [{"mapping_class": "f", "support_frontier": ["x"]}]}]

        with pytest.raises(SchemaViolationError) as caught:
            self._resolve(invariants=invariants)

        assert caught.value.details["pointer"] == "/invariants/0/endings/0/support_frontier/0"

    def test_duplicate_name(self):
        """Test a name cannot be defined twice"""
        curves = self.base["curves"] + [{"name": "a", "punctures": [3, 4]}]

        with pytest.raises(SchemaViolationError, match="defined twice") as caught:
            self._resolve(curves=curves)

        assert caught.value.details["pointer"] == "/curves/2/name"

    def test_sequence_carries_its_settings(self):
        """Test sequence fields pass through to the resolved spec"""
        sequences = [{"name": "s", "factors": [{"mapping_class": "f", "rate": 2}], "i_max": 6, "modulus": 2}]

        spec = self._resolve(sequences=sequences).sequences["s"]

        assert spec.surface_id == "S(0,5)"
        assert (spec.i_max, spec.modulus, spec.factors[0].rate) == (6, 2, 2)


class TestScenarioValidation:
    """Test class for schema violations in scenario files"""

    @pytest.mark.parametrize(
        "payload,pointer",
        [
            ({"surface": {"genus": "one", "punctures": 5}}, "/surface/genus"),
            ({"surface": {"genus": 0, "punctures": 5}, "curves": [{"name": "a"}]}, "/curves/0"),
            ({"surface": {"genus": 0, "punctures": 5}, "curves": [{"name": "a", "weights": [1], "punctures": [0, 1]}]}, "/curves/0"),
            ({"surface": {"genus": 0, "punctures": 5}, "schema_version": 2}, "/schema_version"),
            ({}, "/surface"),
        ],
    )
    def test_violations_are_located(self, payload, pointer):
        """Test every violation reports the JSON pointer of the offending value"""
        with pytest.raises(SchemaViolationError) as caught:
            validate_payload(payload, ScenarioFile, "scenario")

        assert caught.value.details["pointer"] == pointer
        assert pointer in caught.value.message

    def test_round_curve_outside_the_sphere(self):
        """Test punctures that do not give a round curve are reported at their pointer"""
        service = scenario_service()
        scenario = validate_payload(
            {"surface": {"genus": 0, "punctures": 5}, "curves": [{"name": "a", "punctures": [0, 2]}]}, ScenarioFile
        )

        with pytest.raises(SchemaViolationError) as caught:
            service.resolve(scenario)

        assert caught.value.details["pointer"] == "/curves/0/punctures"

    def test_file_that_is_not_json(self, tmp_path):
        """Test a broken file reports its line"""
        path = tmp_path / "broken.json"
        path.write_text('{"surface": {\n  "genus": 0,,\n}', encoding="utf-8")

        with pytest.raises(SchemaViolationError, match="is not JSON") as caught:
            scenario_service().load(path)

        assert caught.value.details["line"] == 2

    def test_missing_file(self, tmp_path):
        """Test a missing file is a schema violation, not a crash"""
        with pytest.raises(SchemaViolationError, match="not found"):
            scenario_service().load(tmp_path / "absent.json")

    def test_scenario_round_trip_through_json(self, tmp_path):
        """Test a scenario written back out loads to the same names"""
        scenario = load_model(SCENARIO_DIR / "remark.json", ScenarioFile)
        path = tmp_path / "copy.json"
        path.write_text(json.dumps(scenario.model_dump(mode="json")), encoding="utf-8")

        assert load_model(path, ScenarioFile) == scenario
