import pytest

from services.boundary_service.app.core.simplex import simplex_endpoint, simplex_via_towers
from services.boundary_service.tests.test_poset import _poset
from services.shared.bh_utilities.errors import EnumerationBudgetExceededError, OverlapError
from services.surface_service.app.core.curves import are_disjoint, twist
from services.surface_service.app.core.named import round_curve, round_curves
from services.surface_service.app.models.surface import get_surface


class TestSimplexByTowers:
    """Test class for recognising simplices of the curve complex on S(0,6) from adherence alone"""

    @classmethod
    def setup_class(cls):
        """Build the adherence poset once"""
        cls.sphere = get_surface(0, 6)
        cls.poset, cls.universe = _poset(cls.sphere)
        cls.c01 = round_curve(cls.sphere, [0, 1])
        cls.c012 = round_curve(cls.sphere, [0, 1, 2])
        cls.c45 = round_curve(cls.sphere, [4, 5])
        cls.c12 = round_curve(cls.sphere, [1, 2])

    def test_vertex(self):
        """Test a single curve is its own endpoint"""
        endpoint = simplex_endpoint(self.sphere, [self.c01], self.poset)

        assert [c.weights for c in endpoint.parabolics] == [self.c01.weights]

    def test_edge(self):
        """Test two disjoint curves meet at the point of their union"""
        endpoint = simplex_endpoint(self.sphere, [self.c01, self.c45], self.poset)

        assert sorted(c.weights for c in endpoint.parabolics) == sorted([self.c01.weights, self.c45.weights])
        assert self.poset.height(endpoint) == 1

    def test_triangle(self):
        """Test a pants decomposition spans a 2-simplex reached at height 0"""
        curves = [self.c01, self.c012, self.c45]

        endpoint = simplex_endpoint(self.sphere, curves, self.poset)

        assert self.poset.height(endpoint) == 0
        assert len(endpoint.parabolics) == 3

    @pytest.mark.parametrize(
        "punctures",
        [
            [[0, 1], [1, 2]],
            [[0, 1], [4, 5], [1, 2]],
        ],
    )
    def test_crossing_curves_span_nothing(self, punctures):
        """Test curves that cross have no common endpoint"""
        curves = [round_curve(self.sphere, p) for p in punctures]

        assert not simplex_via_towers(self.sphere, curves, self.poset)

    def test_towers_agree_with_disjointness(self):
        """Test every pair of round curves spans an edge exactly when the curves are disjoint"""
        curves = round_curves(self.sphere)
        for i, a in enumerate(curves):
            for b in curves[i + 1:]:
                assert simplex_via_towers(self.sphere, [a, b], self.poset) == are_disjoint(self.sphere, [a, b])

    def test_repeated_vertex_raises(self):
        """Test a repeated curve is rejected"""
        with pytest.raises(OverlapError, match="repeat"):
            simplex_endpoint(self.sphere, [self.c01, self.c01], self.poset)

    def test_curve_outside_universe_raises(self):
        """Test a curve the poset never saw is reported as a budget problem"""
        outside = twist(self.sphere, self.c01, self.c12, 40)

        with pytest.raises(EnumerationBudgetExceededError, match="outside"):
            simplex_endpoint(self.sphere, [outside], self.poset)
