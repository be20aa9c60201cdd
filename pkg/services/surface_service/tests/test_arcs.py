import math

import pytest

from services.surface_service.app.core.arcs import (
    PantsArc,
    arc_arc_intersection,
    arc_curve_intersection,
    arc_length,
    arcs_of_pants,
    pants_holes,
)
from services.surface_service.app.core.cutting import cut_along
from services.surface_service.app.core.named import round_curve
from services.surface_service.app.models.surface import get_surface

HOLES = (("curve", ((1, 0), "L")), ("curve", ((0, 1), "R")), ("puncture", 3))


class TestArcTable:
    """Test class for arc intersection numbers inside one pants"""

    def test_loop_against_opposite_edge(self):
        """Test s_i meets the arc joining the other two holes once"""
        loop = PantsArc(HOLES, 0, 0)
        edge = PantsArc(HOLES, 1, 2)

        assert arc_arc_intersection(loop, edge) == 1

    def test_loop_against_touching_edge(self):
        """Test s_i misses arcs that end on hole i"""
        assert arc_arc_intersection(PantsArc(HOLES, 0, 0), PantsArc(HOLES, 0, 1)) == 0

    def test_two_loops(self):
        """Test distinct loop arcs meet twice and a loop misses itself"""
        assert arc_arc_intersection(PantsArc(HOLES, 0, 0), PantsArc(HOLES, 1, 1)) == 2
        assert arc_arc_intersection(PantsArc(HOLES, 0, 0), PantsArc(HOLES, 0, 0)) == 0

    def test_arcs_of_pants_respect_allowed_holes(self):
        """Test only curve holes in the allowed list carry arc endpoints"""
        arcs = arcs_of_pants(HOLES, allowed=[HOLES[0]])

        assert [a.label() for a in arcs] == [PantsArc(HOLES, 0, 0).label()]
        assert len(arcs_of_pants(HOLES, allowed=list(HOLES))) == 3


class TestArcLength:
    """Test class for orthogeodesic lengths in pants"""

    def test_edge_length_matches_hexagon_formula(self):
        """Test cosh d = (cosh(l3/2) + cosh(l1/2)cosh(l2/2)) / (sinh(l1/2)sinh(l2/2))"""
        lengths = (1.0, 2.0, 3.0)
        holes = (("curve", ((1,), "L")), ("curve", ((2,), "L")), ("curve", ((3,), "L")))
        expected = math.acosh(
            (math.cosh(1.5) + math.cosh(0.5) * math.cosh(1.0)) / (math.sinh(0.5) * math.sinh(1.0))
        )

        assert arc_length(PantsArc(holes, 0, 1), lengths) == pytest.approx(expected, rel=1e-12)

    def test_loop_length_matches_pentagon_formula(self):
        """Test cosh(s/2) = sinh(d_12) sinh(l2/2)"""
        lengths = (1.0, 2.0, 3.0)
        holes = (("curve", ((1,), "L")), ("curve", ((2,), "L")), ("curve", ((3,), "L")))
        d12 = arc_length(PantsArc(holes, 0, 1), lengths)
        expected = 2 * math.acosh(math.sinh(d12) * math.sinh(1.0))

        assert arc_length(PantsArc(holes, 0, 0), lengths) == pytest.approx(expected, rel=1e-9)

    def test_loop_around_two_cusps(self):
        """Test cosh(s/2) = coth(L/4) when the other holes are cusps"""
        holes = (("curve", ((1,), "L")), ("puncture", 1), ("puncture", 2))
        length = 2.5

        expected = 2 * math.acosh(1.0 / math.tanh(length / 4))

        assert arc_length(PantsArc(holes, 0, 0), (length, 0.0, 0.0)) == pytest.approx(expected, rel=1e-9)

    def test_long_boundary_does_not_overflow(self):
        """Test a loop arc on a very long boundary stays finite and short"""
        holes = (("curve", ((1,), "L")), ("curve", ((2,), "L")), ("curve", ((3,), "L")))

        value = arc_length(PantsArc(holes, 0, 0), (5000.0, 1.0, 1.5))

        assert math.isfinite(value)
        assert 0.0 <= value < 1.0


class TestPassages:
    """Test class for curve passages through the pants of S(0,5)"""

    def setup_method(self):
        self.sphere = get_surface(0, 5)
        self.c12 = round_curve(self.sphere, [1, 2])
        self.c34 = round_curve(self.sphere, [3, 4])
        self.cut = cut_along(self.sphere, [self.c12, self.c34])
        self.middle = next(p for p in self.cut.pieces if p.punctures == (0,))
        self.holes = pants_holes(self.cut, self.middle)

    def _hole_index(self, curve):
        return next(k for k, h in enumerate(self.holes) if h[0] == "curve" and h[1][0] == curve.weights)

    def test_middle_pants_has_two_curve_holes(self):
        """Test the pants holding puncture 0 is bounded by c12 and c34"""
        assert self.middle.type.is_pants()
        assert sum(1 for h in self.holes if h[0] == "curve") == 2

    def test_loop_arcs_cross_curves_around_the_other_hole(self):
        """Test s(c12) meets c40 twice and s(c34) meets c01 twice"""
        loop12 = PantsArc(self.holes, self._hole_index(self.c12), self._hole_index(self.c12))
        loop34 = PantsArc(self.holes, self._hole_index(self.c34), self._hole_index(self.c34))
        c40 = round_curve(self.sphere, [4, 0])
        c01 = round_curve(self.sphere, [0, 1])

        assert arc_curve_intersection(self.cut, loop12, c40.path) == 2
        assert arc_curve_intersection(self.cut, loop34, c01.path) == 2

    def test_edge_arc_misses_loops_through_its_holes(self):
        """Test e(c12, c34) meets neither c40 nor c01"""
        i, j = sorted((self._hole_index(self.c12), self._hole_index(self.c34)))
        edge = PantsArc(self.holes, i, j)

        assert arc_curve_intersection(self.cut, edge, round_curve(self.sphere, [4, 0]).path) == 0
        assert arc_curve_intersection(self.cut, edge, round_curve(self.sphere, [0, 1]).path) == 0

    def test_arc_misses_frame_curve(self):
        """Test an arc never meets the curves of its own frame"""
        loop12 = PantsArc(self.holes, self._hole_index(self.c12), self._hole_index(self.c12))

        assert arc_curve_intersection(self.cut, loop12, self.c12.path) == 0
