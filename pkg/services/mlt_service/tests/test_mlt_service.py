import pytest
from unittest.mock import Mock

from services.boundary_service.app.models.end_invariant import EndInvariant, Ending
from services.limits_service.app.models.sequence import Factor, ProjectiveLimitReport, Subsequence, TeichSequence, Verdict
from services.limits_service.app.services.limit_service import LimitService
from services.metrics_service.app.models.mapping_class import MappingClass
from services.metrics_service.app.services.mapping_class_service import MappingClassService
from services.metrics_service.app.services.metric_service import MetricService
from services.mlt_service.app.core import unions
from services.mlt_service.app.core.scenarios import nested_example, random_factors
from services.mlt_service.app.models.mlt import PieceLimit
from services.mlt_service.app.services.mlt_service import MltService
from services.shared.bh_utilities.errors import ComplexityTooLowError, InconclusiveLayerError, SurfaceMismatchError
from services.shared.bh_utilities.settings import LimitsSettings, StableSettings
from services.surface_service.app.core.curves import basic_curves, enumerate_curves, intersection
from services.surface_service.app.core.laminations import leaf_intersection
from services.surface_service.app.core.named import round_curve, round_curves
from services.surface_service.app.models.curve import MultiCurve
from services.surface_service.app.models.surface import get_surface


def _service(**overrides):
    metric_service = MetricService(logger=Mock())
    mapping_class_service = MappingClassService(logger=Mock(), settings=StableSettings())
    settings = LimitsSettings(**overrides)
    limit_service = LimitService(Mock(), settings, metric_service, mapping_class_service)
    return MltService(Mock(), settings, limit_service), metric_service


class TestSingleLayer:
    """Test class for sequences whose limit fills one layer"""

    def setup_method(self):
        """Set up test fixtures"""
        self.service, self.metrics = _service(i_max=16)

    def test_twist_leaves_two_bounded_pieces(self):
        """Test T_d^i . m on S(0,5) has the single layer {d} and two bounded pieces"""
        sphere = get_surface(0, 5)
        d = round_curve(sphere, [1, 2])
        seq = TeichSequence(sphere.id, self.metrics.symmetric(sphere), (Factor(MappingClass.twist(d, 1, "t")),))

        result = self.service.multi_layered_limit(sphere, seq, enumerate_curves(sphere, 2), candidate_budget=8)

        assert len(result.layers) == 1
        assert unions.keys(result.layers[0].components) == ("curve:" + d.key(),)
        assert result.layers[0].cut == (d.key(),)
        assert len(result.bounded) == 2
        assert unions.keys(result.core) == unions.keys(result.extended) == ("curve:" + d.key(),)

    def test_filling_class_uses_the_whole_surface(self):
        """Test a filling class on S(1,1) leaves nothing for a second layer"""
        torus = get_surface(1, 1)
        a, b, _ = basic_curves(torus)
        f = MappingClass(torus.id, ((a, 1), (b, -1)), "f")
        seq = TeichSequence(torus.id, self.metrics.symmetric(torus), (Factor(f),))

        result = self.service.multi_layered_limit(torus, seq, enumerate_curves(torus, 2), candidate_budget=3)

        assert len(result.layers) == 1
        assert result.bounded == ()
        assert unions.keys(result.intermediate) == ("lamination:stable(f)",)

    def test_sequence_on_other_surface_is_refused(self):
        """Test a sequence on another surface is rejected before any layer is taken"""
        torus = get_surface(1, 1)
        sphere = get_surface(0, 5)
        seq = TeichSequence(sphere.id, self.metrics.symmetric(sphere))

        with pytest.raises(SurfaceMismatchError):
            self.service.multi_layered_limit(torus, seq, [])

    def test_result_record(self):
        """Test the JSON record lists layers, bounded pieces and unions"""
        sphere = get_surface(0, 5)
        d = round_curve(sphere, [1, 2])
        seq = TeichSequence(sphere.id, self.metrics.symmetric(sphere), (Factor(MappingClass.twist(d, 1, "t")),))
        result = self.service.multi_layered_limit(sphere, seq, enumerate_curves(sphere, 2), candidate_budget=8)

        record = self.service.result_record(sphere, result)

        assert record.surface_id == sphere.id
        assert [layer.depth for layer in record.layers] == [1]
        assert len(record.surfaces) == 2
        assert record.subsequences == [result.layers[0].subsequence.label()]
        assert [leaf.key for leaf in record.core] == ["curve:" + d.key()]


def _converging(modulus, residue, verdict=Verdict.CONVERGES):
    return ProjectiveLimitReport(verdict, None, 0.0, (), subsequence=Subsequence(modulus, residue))


class TestCommonSubsequence:
    """Test class for the subsequence shared by the pieces of one layer"""

    def setup_method(self):
        """Set up test fixtures"""
        self.service, _ = _service()
        self.rerun = Mock()

    def test_compatible_pieces_meet_without_rerunning(self):
        """Test pieces along i = 0 mod 2 and i = 1 mod 3 share i = 4 mod 6"""
        pieces = [PieceLimit(Mock(), _converging(2, 0)), PieceLimit(Mock(), _converging(3, 1))]

        common, settled = self.service.common_subsequence(2, pieces, self.rerun)

        assert common == Subsequence(6, 4)
        assert settled == pieces
        self.rerun.assert_not_called()

    def test_disjoint_piece_is_redone_along_the_first(self):
        """Test a piece along the odd indices is redone along the even ones and keeps its own report"""
        redone = _converging(4, 2)
        self.rerun.return_value = redone
        pieces = [PieceLimit(Mock(), _converging(2, 0)), PieceLimit(Mock(), _converging(2, 1))]

        common, settled = self.service.common_subsequence(2, pieces, self.rerun)

        self.rerun.assert_called_once_with(1, Subsequence(2, 0))
        assert common == Subsequence(4, 2)
        assert settled[0] is pieces[0]
        assert settled[1].report is redone
        assert [p.report.subsequence for p in settled] == [Subsequence(2, 0), Subsequence(4, 2)]

    def test_piece_failing_along_the_common_subsequence_is_inconclusive(self):
        """Test a redone piece that no longer converges stops the layer"""
        self.rerun.return_value = _converging(2, 0, Verdict.INCONCLUSIVE)
        pieces = [PieceLimit(Mock(), _converging(2, 0)), PieceLimit(Mock(), _converging(2, 1))]

        with pytest.raises(InconclusiveLayerError, match="does not converge along i = 0 mod 2"):
            self.service.common_subsequence(2, pieces, self.rerun)


class TestRandomWords:
    """Test class for structural guarantees on random generator words"""

    @classmethod
    def setup_class(cls):
        service, metrics = _service(i_max=12)
        cls.runs = {}
        for seed in range(50):
            surface = get_surface(0, 5 + seed % 2)
            factors = random_factors(surface, seed)
            seq = TeichSequence(surface.id, metrics.symmetric(surface), factors, name=f"w{seed}")
            try:
                found = service.multi_layered_limit(surface, seq, round_curves(surface), candidate_budget=8)
            except InconclusiveLayerError as e:
                found = e
            cls.runs[seed] = (surface, factors, found)

    def _finished(self):
        return [(surface, result) for surface, _, result in self.runs.values() if not isinstance(result, Exception)]

    def test_no_word_is_inconclusive(self):
        """Test every one of the 50 words reaches a verdict on every layer"""
        failed = {seed: str(found) for seed, (_, _, found) in self.runs.items() if isinstance(found, InconclusiveLayerError)}

        assert failed == {}

    def test_layers_are_disjoint_and_few(self):
        """Test layer count stays within xi and components of different layers are disjoint"""
        for surface, result in self._finished():
            assert 1 <= len(result.layers) <= surface.type.xi
            for k, layer in enumerate(result.layers):
                for later in result.layers[k + 1:]:
                    for leaf in layer.components:
                        for other in later.components:
                            assert leaf_intersection(surface, leaf, other) == pytest.approx(0.0, abs=1e-9)

    def test_some_words_need_a_second_layer(self):
        """Test a pseudo-Anosov next to a twist on S(0,6) leaves the twist for a deeper layer"""
        depths = [len(result.layers) for _, result in self._finished()]

        assert max(depths) >= 2

    def test_factors_live_on_disjoint_subsurfaces(self):
        """Test each word has two or three factors whose curves never cross"""
        for surface, factors, _ in self.runs.values():
            assert 2 <= len(factors) <= 3
            for k, first in enumerate(factors):
                for second in factors[k + 1:]:
                    for a in first.mapping_class.curves():
                        for b in second.mapping_class.curves():
                            assert intersection(surface, a, b) == 0

    def test_random_factors_are_reproducible(self):
        """Test the same seed draws the same word"""
        surface = get_surface(0, 6)

        def words(factors):
            return [[(c.weights, p) for c, p in f.mapping_class.word] for f in factors]

        assert words(random_factors(surface, 7)) == words(random_factors(surface, 7))

    def test_surface_without_room_is_refused(self):
        """Test S(0,4) cannot hold two disjoint generators"""
        with pytest.raises(ComplexityTooLowError, match="no room"):
            random_factors(get_surface(0, 4), 0)

class TestNestedExample:
    """Test class for f1^i f2^i and f1^i f3^i on S(0,7)"""

    @classmethod
    def setup_class(cls):
        cls.example = nested_example()
        cls.service, metrics = _service(i_max=8)
        base = metrics.symmetric(cls.example.surface)
        ex = cls.example
        cls.second = cls.service.multi_layered_limit(ex.surface, ex.sequence(base, ex.f2), ex.universe, 10)
        cls.third = cls.service.multi_layered_limit(ex.surface, ex.sequence(base, ex.f3), ex.universe, 10)

    def test_two_layers(self):
        """Test the first layer is stable(f1) and the second an arc in the pants P"""
        layers = self.second.layers

        assert len(layers) == 2
        assert unions.keys(layers[0].components) == ("lamination:stable(f1)",)
        assert all(leaf.key.startswith("arc:") for leaf in layers[1].components)

    def test_second_factor_does_not_change_the_limit(self):
        """Test f2 and f3 give the same layers and unions"""
        assert [unions.keys(layer.components) for layer in self.second.layers] == [
            unions.keys(layer.components) for layer in self.third.layers
        ]
        assert unions.keys(self.second.extended) == unions.keys(self.third.extended)

    def test_results_agree_at_the_default_tolerance(self):
        """Test the stored results of both sequences match in layers, subsequences, weights and residuals"""
        ex = self.example
        first = self.service.result_record(ex.surface, self.second)
        second = self.service.result_record(ex.surface, self.third)

        assert self.service.settings.tolerance == LimitsSettings().tolerance
        assert self.service.result_differences(first, second) == []

    def test_result_differences_name_a_changed_weight(self):
        """Test moving one weight past the tolerance is reported"""
        ex = self.example
        first = self.service.result_record(ex.surface, self.second)
        leaf = first.layers[0].components[0]
        moved = leaf.model_copy(update={"weight": leaf.weight + 0.5})
        layer = first.layers[0].model_copy(update={"components": [moved] + first.layers[0].components[1:]})
        changed = first.model_copy(update={"layers": [layer] + first.layers[1:]})

        differences = self.service.result_differences(first, changed)

        assert len(differences) == 1
        assert "weight" in differences[0]

    def test_extended_adds_the_other_pants_curves(self):
        """Test the extended union adds exactly c34 and c56 to the intermediate union"""
        ex = self.example
        added = set(unions.keys(self.second.extended)) - set(unions.keys(self.second.intermediate))

        assert added == {"curve:" + ex.c34.key(), "curve:" + ex.c56.key()}
        assert unions.keys(self.second.intermediate) == tuple(
            sorted(["curve:" + ex.q.key(), "lamination:stable(f1)"])
        )

    @pytest.mark.parametrize("with_pants", [True, False])
    def test_sandwich_holds_for_both_points(self, with_pants):
        """Test both end invariants between the unions pass the sandwich check"""
        ex = self.example
        first = self.second.layers[0]
        lamination = first.components[0]
        parabolics = [ex.q, ex.c34, ex.c56] if with_pants else [ex.q]
        target = EndInvariant(
            ex.surface.id,
            MultiCurve.of(ex.surface.id, parabolics),
            (Ending(lamination, first.support_of(lamination.key)),),
        )

        verdict = self.service.sandwich_check(ex.surface, self.second, target)

        assert verdict.passed

    @pytest.mark.parametrize("with_pants", [True, False])
    def test_sandwich_against_stored_result(self, with_pants):
        """Test the check on a written result record agrees with the in-memory one"""
        ex = self.example
        first = self.second.layers[0]
        lamination = first.components[0]
        parabolics = [ex.q, ex.c34, ex.c56] if with_pants else [ex.q]
        target = EndInvariant(
            ex.surface.id,
            MultiCurve.of(ex.surface.id, parabolics),
            (Ending(lamination, first.support_of(lamination.key)),),
        )
        record = self.service.result_record(ex.surface, self.third)

        verdict = self.service.sandwich_from_record(ex.surface, record, target)

        assert verdict.passed

    def test_stored_result_rejects_a_smaller_target(self):
        """Test leaving out the lamination fails the lower bound"""
        ex = self.example
        record = self.service.result_record(ex.surface, self.second)
        target = EndInvariant(ex.surface.id, MultiCurve.of(ex.surface.id, [ex.q]))

        verdict = self.service.sandwich_from_record(ex.surface, record, target)

        assert not verdict.lower_ok
        assert verdict.missing == ("lamination:stable(f1)",)
