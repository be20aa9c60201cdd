import pytest
from hypothesis import given, settings, strategies as st

from services.shared.bh_utilities.errors import FlipSequenceError
from services.surface_service.app.core.curves import basic_curves
from services.surface_service.app.core.flips import (
    act_on_weights,
    check_presentation,
    compose_presentations,
    flip_weights,
    invert_presentation,
    is_flippable,
    isomorphisms,
    quad,
    triangulations_along,
)
from services.surface_service.app.core.paths import path_intersection
from services.surface_service.app.core.tracing import check_matching, trace_components
from services.surface_service.app.core.triangulation import flip
from services.surface_service.app.models.surface import get_surface


def _traced(tri, weights):
    (component,) = trace_components(tri, weights)
    return component.path


def _flippable(tri):
    return [e for e in range(tri.n_edges) if is_flippable(tri, e)]


class TestFlip:
    """Test class for label preserving edge flips"""

    @pytest.mark.parametrize("genus,punctures", [(1, 1), (0, 5), (1, 2), (0, 7)])
    def test_flip_twice_is_the_identity(self, genus, punctures):
        """Test flipping an edge twice returns an isomorphic triangulation with the same labels"""
        tri = get_surface(genus, punctures).triangulation
        identity = tuple(range(tri.n_edges))

        for edge in range(tri.n_edges):
            if not is_flippable(tri, edge):
                continue
            twice = flip(flip(tri, edge), edge)
            assert identity in set(isomorphisms(twice, tri))

    @pytest.mark.parametrize("genus,punctures", [(1, 1), (0, 5), (1, 2)])
    def test_flip_keeps_punctures_and_labels(self, genus, punctures):
        """Test a flip keeps the puncture count and every edge label"""
        tri = get_surface(genus, punctures).triangulation

        for edge in _flippable(tri):
            flipped = flip(tri, edge)
            assert flipped.n_punctures == tri.n_punctures
            assert sorted(set(flipped.edge_of_dart)) == list(range(tri.n_edges))
            assert flipped.side_edges(tri.edges[edge][0][0]).count(edge) == 1

    def test_torus_flip_has_distinct_triangles(self):
        """Test every edge of S(1,1) borders both triangles"""
        tri = get_surface(1, 1).triangulation

        for edge in range(3):
            q = quad(tri, edge)
            assert sorted(q.forward + q.backward) == sorted(2 * [e for e in range(3) if e != edge])


class TestFlipWeights:
    """Test class for the flip rule on normal coordinates"""

    @pytest.mark.parametrize("genus,punctures", [(1, 1), (0, 5), (1, 2)])
    def test_flip_back_restores_weights(self, genus, punctures):
        """Test flipping an edge and flipping it back restores every basic curve"""
        surface = get_surface(genus, punctures)
        tri = surface.triangulation

        for curve in basic_curves(surface):
            for edge in _flippable(tri):
                once = flip_weights(tri, curve.weights, edge)
                assert tuple(flip_weights(flip(tri, edge), once, edge)) == curve.weights

    @pytest.mark.parametrize("genus,punctures", [(1, 1), (0, 5), (1, 2)])
    def test_flipped_curve_stays_connected(self, genus, punctures):
        """Test the flipped coordinates satisfy the matching conditions and trace one curve"""
        surface = get_surface(genus, punctures)
        tri = surface.triangulation

        for curve in basic_curves(surface):
            for edge in _flippable(tri):
                flipped = flip(tri, edge)
                weights = flip_weights(tri, curve.weights, edge)
                check_matching(flipped, weights)
                assert len(trace_components(flipped, weights)) == 1

    @pytest.mark.parametrize("genus,punctures", [(1, 1), (0, 5), (1, 2)])
    def test_puncture_links_map_to_puncture_links(self, genus, punctures):
        """Test the loop around a puncture is still a puncture loop after a flip"""
        tri = get_surface(genus, punctures).triangulation

        for edge in _flippable(tri):
            flipped = flip(tri, edge)
            for link in tri.link_weights:
                assert tuple(flip_weights(tri, link, edge)) in flipped.link_weights

    def test_intersections_survive_a_flip(self):
        """Test i(a, b) computed after a flip matches i(a, b) before it on S(0,5)"""
        surface = get_surface(0, 5)
        tri = surface.triangulation
        curves = basic_curves(surface)

        for edge in _flippable(tri)[::3]:
            flipped = flip(tri, edge)
            for a in curves[:6]:
                for b in curves[:6]:
                    before = path_intersection(tri, a.path, b.path)
                    after = path_intersection(
                        flipped,
                        _traced(flipped, flip_weights(tri, a.weights, edge)),
                        _traced(flipped, flip_weights(tri, b.weights, edge)),
                    )
                    assert after == before

    @settings(max_examples=60, deadline=None)
    @given(edges=st.lists(st.integers(0, 8), min_size=1, max_size=12), index=st.integers(0, 100))
    def test_random_flip_paths_keep_curves_connected(self, edges, index):
        """Test a curve carried along random flips stays one curve and returns when the flips are undone"""
        surface = get_surface(0, 5)
        curve = basic_curves(surface)[index % len(basic_curves(surface))]
        tri = surface.triangulation
        applied, weights = [], list(curve.weights)
        for edge in edges:
            if is_flippable(tri, edge):
                weights = flip_weights(tri, weights, edge)
                tri = flip(tri, edge)
                applied.append(edge)
        assert len(trace_components(tri, weights)) == 1

        for edge in reversed(applied):
            weights = flip_weights(tri, weights, edge)
            tri = flip(tri, edge)
        assert tuple(weights) == curve.weights


class TestPresentations:
    """Test class for flip sequences with a relabeling"""

    def setup_method(self):
        self.torus = get_surface(1, 1)
        self.tri = self.torus.triangulation

    def test_identity_relabel_is_accepted(self):
        """Test flipping an edge twice with the identity relabeling is a valid presentation"""
        check_presentation(self.tri, (0, 0), (0, 1, 2))

    def test_relabel_must_be_a_permutation(self):
        """Test a relabeling that repeats an edge is refused"""
        with pytest.raises(FlipSequenceError, match="permutation"):
            check_presentation(self.tri, (), (0, 0, 1))

    def test_relabel_must_be_an_isomorphism(self):
        """Test a permutation that does not match the flipped triangulation is refused"""
        tri = get_surface(0, 5).triangulation
        symmetries = set(isomorphisms(tri, tri))
        for other in range(1, tri.n_edges):
            swap = list(range(tri.n_edges))
            swap[0], swap[other] = swap[other], swap[0]
            if tuple(swap) not in symmetries:
                break

        with pytest.raises(FlipSequenceError, match="not an isomorphism"):
            check_presentation(tri, (), swap)

    def test_unknown_edge_is_refused(self):
        """Test a flip of an edge the surface does not have is refused"""
        with pytest.raises(FlipSequenceError, match="names edge 7"):
            triangulations_along(self.tri, (7,))

    def test_single_flip_presentations_of_the_torus(self):
        """Test each flip of S(1,1) returns to a triangulation isomorphic to the original"""
        for edge in range(3):
            flipped = flip(self.tri, edge)
            assert list(isomorphisms(flipped, self.tri))

    def test_inverse_undoes_the_action(self):
        """Test a presentation followed by its inverse fixes every basic curve"""
        edge = 0
        relabel = next(isomorphisms(flip(self.tri, edge), self.tri))
        inverse = invert_presentation((edge,), relabel)
        flips, composed = compose_presentations(inverse, ((edge,), relabel))

        for curve in basic_curves(self.torus):
            assert tuple(act_on_weights(self.tri, flips, composed, curve.weights)) == curve.weights
